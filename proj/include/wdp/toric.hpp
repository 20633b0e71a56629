// Toric systems: cyclic sequences A_1..A_n with A_i.A_{i+1} = 1, other
// products 0 and sum -K. Indices are 1-based and taken modulo n.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wdp/surface.hpp"

namespace wdp {

class ToricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First violated axiom, or nullopt when the entries form a toric system.
std::optional<std::string> toric_violation(const PicardLattice& lattice, const std::vector<DivisorClass>& entries);

class ToricSystem {
 public:
  /// Throws ToricError with the violation report.
  ToricSystem(SurfacePtr surface, std::vector<DivisorClass> entries);

  const SurfacePtr& surface() const { return surface_; }
  const PicardLattice& lattice() const { return surface_->lattice(); }
  int size() const { return static_cast<int>(a_.size()); }
  /// 1-based, cyclic.
  const DivisorClass& at(int i) const;
  const std::vector<DivisorClass>& entries() const { return a_; }

  friend bool operator==(const ToricSystem& x, const ToricSystem& y) {
    return x.lattice() == y.lattice() && x.a_ == y.a_;
  }

  std::string to_string() const;

 private:
  SurfacePtr surface_;
  std::vector<DivisorClass> a_;
};

/// 1-based cyclic index normalization.
inline int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }
/// Number of indices in the cyclic segment [k..l].
inline int segment_length(int k, int l, int n) { return wrap(l - k + 1, n) == n ? n : (l - k + n) % n + 1; }

struct Segment {
  int k;
  int l;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// A_{k..l}; the full circle is an error.
DivisorClass segment_sum(const ToricSystem& a, int k, int l);
std::vector<int> segment_indices(int k, int l, int n);

std::vector<int> squares(const ToricSystem& a);
ToricSystem shift(const ToricSystem& a, int times = 1);
/// Requires A_k^2 = -2.
ToricSystem perm(const ToricSystem& a, int k);

/// Elementary augmentation along a blow-down: a must live on bd.target, the
/// result lives on bd.source with E inserted at slot m (1 <= m <= n+1).
ToricSystem augment_lattice(const ToricSystem& a, int m, const BlowDownPtr& bd);

struct DeAugmentation {
  ToricSystem system;  // on bd->target
  BlowDownPtr blow_down;
  int position;
};
/// Inverse of augment_lattice at slot m. Standard mode requires A_m in
/// i_irr; lattice mode accepts any (-1)-class and flags the result.
DeAugmentation blow_down_toric(const ToricSystem& a, int m, bool lattice_mode = false);

/// One element of I(X,A): the segment [k..l] whose only (-1)-square is at m.
struct ExposableSegment {
  int k;
  int l;
  int m;
  DivisorClass cls;
};
/// All segments with exactly one square -1 and the others -2, in order of
/// (k, length).
std::vector<ExposableSegment> exposable_segments(const ToricSystem& a);
/// The set I(X,A) in canonical order.
std::vector<DivisorClass> candidate_positions(const ToricSystem& a);

/// A step of a forward chain of operations on toric systems.
struct Step {
  enum class Kind { Shift, Perm, Augment } kind;
  int index = 0;           // perm index or augmentation slot
  BlowDownPtr blow_down;   // for Augment
};
ToricSystem apply_step(const ToricSystem& a, const Step& s);
std::string describe(const Step& s);

/// Steps that move A_{k..l} into slot `position` of the result: a shift by
/// k-1 followed by perm_k..perm_{m-1} and perm_l..perm_{m+1} (in shifted indices).
struct Exposure {
  std::vector<Step> steps;
  int position;
};
Exposure exposure_chain(const ToricSystem& a, const ExposableSegment& seg);

/// Integer sequence helpers shared with the admissible module.
std::vector<int> shift_sequence(const std::vector<int>& a, int times = 1);
std::vector<int> sym_sequence(const std::vector<int>& a);

}  // namespace wdp
