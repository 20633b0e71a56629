// Finite sets of classes with prescribed square and K-degree.
#pragma once

#include <vector>

#include "wdp/lattice.hpp"

namespace wdp {

/// All D with D^2 = square and D.K = k_degree, in canonical order.
/// Requires K^2 > 0. Hirzebruch lattices with exceptionals are supported
/// for odd d only (through hirzebruch_isometry).
std::vector<DivisorClass> enumerate_classes(const PicardLattice& lattice, std::int64_t square,
                                            std::int64_t k_degree);

/// Memoized enumerate_classes; the reference stays valid for the program lifetime.
const std::vector<DivisorClass>& class_set(const PicardLattice& lattice, std::int64_t square,
                                           std::int64_t k_degree);

inline const std::vector<DivisorClass>& minus_one_classes(const PicardLattice& l) {
  return class_set(l, -1, -1);
}
inline const std::vector<DivisorClass>& minus_two_classes(const PicardLattice& l) {
  return class_set(l, -2, 0);
}
inline const std::vector<DivisorClass>& zero_classes(const PicardLattice& l) {
  return class_set(l, 0, -2);
}
/// The r-classes: square r, K-degree -r-2.
inline const std::vector<DivisorClass>& r_classes(const PicardLattice& l, std::int64_t r) {
  return class_set(l, r, -r - 2);
}

/// Weyl reflection D + (D.r) r in a (-2)-class r.
DivisorClass reflect(const DivisorClass& d, const DivisorClass& root);

}  // namespace wdp
