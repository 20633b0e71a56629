// Deciding whether a toric system is an augmentation, with replayable chains.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdp/checker.hpp"
#include "wdp/toric.hpp"

namespace wdp {

/// A toric system on a surface of rank <= 2 plus forward steps reproducing
/// the target.
struct AugmentChain {
  ToricSystem base;
  std::vector<Step> steps;
};
ToricSystem replay(const AugmentChain& chain);
std::string describe(const AugmentChain& chain);

struct AugmentVerdict {
  bool value = false;
  std::optional<AugmentChain> chain;
  /// Set when a budget cut the search short; value is then false but not a certificate.
  bool exhausted = false;
  std::uint64_t states = 0;
};

struct SearchOptions {
  /// Upper bound on visited states, 0 for unlimited.
  std::uint64_t max_states = 0;
  /// Graded searches also walk the shift/perm orbit when exposure chains fail.
  bool orbit_fallback = true;
};

AugmentVerdict standard_augmentation(const ToricSystem& a, const SearchOptions& opt = {});
AugmentVerdict weak_augmentation(const ToricSystem& a, const SearchOptions& opt = {});
/// Throws std::invalid_argument when a itself fails the grade.
AugmentVerdict graded_augmentation(const ToricSystem& a, Grade g, const SearchOptions& opt = {});

/// For every irreducible (-1)-curve E of the surface: E is exposable in a and
/// the system obtained by contracting E passes the same test, recursively.
struct ChainCheck {
  bool value = true;
  /// Exceptional classes leading to the first failure, outermost first.
  std::vector<DivisorClass> failing_path;
  std::uint64_t states = 0;
};
ChainCheck weak_along_every_chain(const ToricSystem& a);

inline bool is_standard_augmentation(const ToricSystem& a) { return standard_augmentation(a).value; }
inline bool is_weak_augmentation(const ToricSystem& a) { return weak_augmentation(a).value; }

/// Isometry-invariant key: A^2 together with the pairings of A with every simple root.
std::string system_key(const ToricSystem& a);

}  // namespace wdp
