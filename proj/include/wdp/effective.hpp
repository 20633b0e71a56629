// Effectiveness of divisor classes on registered weak del Pezzo surfaces.
#pragma once

#include <string>
#include <vector>

#include "wdp/surface.hpp"

namespace wdp {

enum class Residual {
  Zero,         // reduced to the empty divisor
  Nef,          // nef, hence effective
  RootSum,      // K-degree 0 and a nonnegative combination of r_irr
  NotRootSum,   // K-degree 0 but not a nonnegative combination of r_irr
  NegativeK,    // D.(-K) < 0
  ClosedForm,   // rank <= 2 cone test
};

struct Reduction {
  std::vector<DivisorClass> bites;
  DivisorClass residual;
  Residual kind;
  bool effective;
};

/// Bites negative curves C with D.C < 0 until the residual is zero, nef,
/// of K-degree <= 0, or (rank <= 2) settled by the explicit Mori cone.
Reduction zariski_reduce(const Surface& s, const DivisorClass& d);
bool is_effective(const Surface& s, const DivisorClass& d);
/// D.C >= 0 for every negative curve; on rank <= 2 the nef cone is used directly.
bool is_nef(const Surface& s, const DivisorClass& d);

std::string to_string(Residual r);

}  // namespace wdp
