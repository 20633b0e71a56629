#include "wdp/effective.hpp"

#include <cassert>

namespace wdp {

std::string to_string(Residual r) {
  switch (r) {
    case Residual::Zero: return "zero";
    case Residual::Nef: return "nef";
    case Residual::RootSum: return "root-sum";
    case Residual::NotRootSum: return "not-root-sum";
    case Residual::NegativeK: return "negative-anticanonical-degree";
    case Residual::ClosedForm: return "closed-form";
  }
  return "?";
}

namespace {

// Rank <= 2: the Mori cone is spanned by two explicit curves.
Reduction reduce_small(const Surface& s, DivisorClass d) {
  const PicardLattice& lat = s.lattice();
  Reduction out{{}, d, Residual::ClosedForm, false};
  if (lat.kind() == LatticeKind::Blowup && lat.exceptional_count() == 0) {
    out.effective = d[0] >= 0;
    out.kind = d.is_zero() ? Residual::Zero : Residual::ClosedForm;
    return out;
  }
  if (lat.kind() == LatticeKind::Blowup) {
    // Generators E1 and L - E1.
    const DivisorClass e1 = DivisorClass::exceptional(lat, 1);
    while (d[1] > 0 && d[0] >= 0) {
      d -= e1;
      out.bites.push_back(e1);
    }
    out.residual = d;
    out.effective = d[0] >= 0 && d[0] + d[1] >= 0;
  } else {
    // Generators F and B = S - dF; D.B is the F-coefficient.
    const std::int64_t deg = lat.hirzebruch_degree();
    const DivisorClass b(lat, {-deg, 1});
    if (deg > 0) {
      while (d[0] < 0 && d[1] > 0) {
        d -= b;
        out.bites.push_back(b);
      }
    }
    out.residual = d;
    out.effective = d[0] >= 0 && d[1] >= 0;
  }
  if (d.is_zero()) out.kind = Residual::Zero;
  return out;
}

}  // namespace

Reduction zariski_reduce(const Surface& s, const DivisorClass& d0) {
  if (!(d0.lattice() == s.lattice())) throw LatticeError("zariski_reduce: class over the wrong lattice");
  if (s.rank() <= 2) return reduce_small(s, d0);

  DivisorClass d = d0;
  Reduction out{{}, d, Residual::Zero, false};
  const DivisorClass& two_rho = s.two_rho();
  std::int64_t last_deg = 0;
  std::int64_t last_rho = 0;
  bool first = true;
  while (true) {
    const std::int64_t deg = -k_degree(d);
    const std::int64_t rho = -intersect(d, two_rho);
    if (!first) {
      // Termination potential (D.(-K), -D.2rho) strictly decreases lexicographically.
      if (!(deg < last_deg || (deg == last_deg && rho < last_rho)))
        throw std::logic_error("zariski_reduce: bite potential did not decrease");
    }
    first = false;
    last_deg = deg;
    last_rho = rho;
    out.residual = d;
    if (d.is_zero()) {
      out.kind = Residual::Zero;
      out.effective = true;
      return out;
    }
    if (deg < 0) {
      out.kind = Residual::NegativeK;
      out.effective = false;
      return out;
    }
    if (deg == 0) {
      const bool ok = s.root_coefficients(d).has_value();
      out.kind = ok ? Residual::RootSum : Residual::NotRootSum;
      out.effective = ok;
      return out;
    }
    const DivisorClass* bite = nullptr;
    for (const auto& c : s.negative_curves()) {
      if (intersect(d, c) < 0) {
        bite = &c;
        break;
      }
    }
    if (!bite) {
      out.kind = Residual::Nef;
      out.effective = true;
      return out;
    }
    out.bites.push_back(*bite);
    d -= *bite;
  }
}

bool is_effective(const Surface& s, const DivisorClass& d) { return zariski_reduce(s, d).effective; }

bool is_nef(const Surface& s, const DivisorClass& d) {
  const PicardLattice& lat = s.lattice();
  if (s.rank() <= 2) {
    if (lat.kind() == LatticeKind::Blowup && lat.exceptional_count() == 0) return d[0] >= 0;
    if (lat.kind() == LatticeKind::Blowup) {
      const DivisorClass e1 = DivisorClass::exceptional(lat, 1);
      return intersect(d, e1) >= 0 && intersect(d, DivisorClass::line(lat) - e1) >= 0;
    }
    const DivisorClass f(lat, {1, 0});
    const DivisorClass b(lat, {-static_cast<std::int64_t>(lat.hirzebruch_degree()), 1});
    return intersect(d, f) >= 0 && intersect(d, b) >= 0;
  }
  for (const auto& c : s.negative_curves())
    if (intersect(d, c) < 0) return false;
  return true;
}

}  // namespace wdp
