// Test-side helpers: fixtures, random system generation and independent oracles.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wdp/augment.hpp"
#include "wdp/classify.hpp"

namespace wdp::test {

using Rng = std::mt19937_64;
inline constexpr std::uint64_t kSeed = 20240611;

SurfacePtr surf(const std::string& label);
/// Registry surfaces of rank >= 3 and degree >= 3.
std::vector<SurfacePtr> sampling_surfaces();
DivisorClass cls(const SurfacePtr& s, const std::string& text);
ToricSystem sys(const std::string& label, const std::vector<std::string>& classes);

/// Random systems on a fixed surface: contract random irreducible (-1)-curves
/// down to rank 2, pick a base system there, then climb back with random slots
/// interleaved with random shifts and transpositions.
class SystemSampler {
 public:
  explicit SystemSampler(SurfacePtr x) : x_(std::move(x)) {}
  ToricSystem sample(Rng& rng, int max_moves = 3);
  /// Systems with every square >= -2: the climb only uses slots whose
  /// neighbours keep square >= -2.
  ToricSystem sample_first_kind(Rng& rng, int max_moves = 3);

  struct Lift {
    ToricSystem lower;
    int slot;
    BlowDownPtr blow_down;
  };
  /// A system one rank lower together with a blow-down whose source is x.
  Lift sample_lift(Rng& rng);

 private:
  std::optional<ToricSystem> draw(Rng& rng, int max_moves, bool first_kind);
  SurfacePtr x_;
};

/// Base systems on rank <= 2 surfaces, (0,k,0,-k)-type patterns with |k| <= 3.
const std::vector<ToricSystem>& base_systems(const SurfacePtr& s);

/// Positive roots by brute force: all (-2)-classes sum of simple roots with
/// coefficients bounded by `bound`.
std::set<DivisorClass, CanonicalLess> brute_positive_roots(const Surface& s, int bound = 4);

/// Effectiveness by decomposition D = sum a_i C_i + P with C_i negative curves
/// and P nef, memoized, with coefficients bounded through an ample class H.
/// Branches leaving the dual of the nef classes with coefficients in [-2, 2]
/// are cut; effective classes never pair negatively with a nef class.
class DecompositionOracle {
 public:
  explicit DecompositionOracle(SurfacePtr s);
  bool effective(const DivisorClass& d);
  const DivisorClass& ample() const { return h_; }

 private:
  bool nef(const DivisorClass& d) const;
  SurfacePtr s_;
  std::vector<DivisorClass> curves_;
  std::vector<DivisorClass> nef_;
  DivisorClass h_;
  std::map<std::vector<std::int64_t>, bool> memo_;
};

std::vector<std::int64_t> vec(const DivisorClass& d);
std::set<DivisorClass, CanonicalLess> as_set(const std::vector<DivisorClass>& v);

}  // namespace wdp::test
