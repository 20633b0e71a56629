#include "wdp/toric.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wdp {

std::optional<std::string> toric_violation(const PicardLattice& lattice, const std::vector<DivisorClass>& a) {
  const int n = static_cast<int>(a.size());
  if (n != lattice.rank() + 2)
    return "length " + std::to_string(n) + " != rank + 2 = " + std::to_string(lattice.rank() + 2);
  for (const auto& x : a)
    if (!(x.lattice() == lattice)) return "entry " + x.to_string() + " is over the wrong lattice";
  DivisorClass sum(lattice);
  for (int i = 0; i < n; ++i) {
    sum += a[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const std::int64_t want = adjacent ? 1 : 0;
      const std::int64_t got = intersect(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
      if (got != want)
        return "A_" + std::to_string(i + 1) + ".A_" + std::to_string(j + 1) + " = " + std::to_string(got) +
               ", expected " + std::to_string(want);
    }
  }
  const DivisorClass minus_k = -DivisorClass::canonical(lattice);
  if (!(sum == minus_k)) return "sum " + sum.to_string() + " != -K = " + minus_k.to_string();
  return std::nullopt;
}

ToricSystem::ToricSystem(SurfacePtr surface, std::vector<DivisorClass> entries)
    : surface_(std::move(surface)), a_(std::move(entries)) {
  if (!surface_) throw ToricError("toric system without a surface");
  if (auto v = toric_violation(surface_->lattice(), a_)) throw ToricError("not a toric system: " + *v);
}

const DivisorClass& ToricSystem::at(int i) const { return a_[static_cast<std::size_t>(wrap(i, size()) - 1)]; }

std::string ToricSystem::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) out += ", ";
    out += a_[i].pretty();
  }
  return out + ")";
}

std::vector<int> segment_indices(int k, int l, int n) {
  const int len = (l - k + n) % n + 1;
  std::vector<int> idx;
  for (int t = 0; t < len; ++t) idx.push_back(wrap(k + t, n));
  return idx;
}

DivisorClass segment_sum(const ToricSystem& a, int k, int l) {
  const int n = a.size();
  if (k < 1 || k > n || l < 1 || l > n) throw ToricError("segment index out of range");
  if (wrap(l + 1, n) == k) throw ToricError("the full circle is not a segment");
  DivisorClass s(a.lattice());
  for (int i : segment_indices(k, l, n)) s += a.at(i);
  return s;
}

std::vector<int> squares(const ToricSystem& a) {
  std::vector<int> out;
  for (const auto& x : a.entries()) out.push_back(static_cast<int>(square(x)));
  return out;
}

ToricSystem shift(const ToricSystem& a, int times) {
  const int n = a.size();
  std::vector<DivisorClass> e;
  for (int i = 1; i <= n; ++i) e.push_back(a.at(i + times));
  return ToricSystem(a.surface(), std::move(e));
}

ToricSystem perm(const ToricSystem& a, int k) {
  const int n = a.size();
  if (k < 1 || k > n) throw ToricError("perm index out of range");
  if (square(a.at(k)) != -2) throw ToricError("perm_" + std::to_string(k) + " needs A_k^2 = -2");
  std::vector<DivisorClass> e = a.entries();
  auto& prev = e[static_cast<std::size_t>(wrap(k - 1, n) - 1)];
  auto& next = e[static_cast<std::size_t>(wrap(k + 1, n) - 1)];
  const DivisorClass ak = a.at(k);
  prev += ak;
  next += ak;
  e[static_cast<std::size_t>(k - 1)] = -ak;
  return ToricSystem(a.surface(), std::move(e));
}

ToricSystem augment_lattice(const ToricSystem& a, int m, const BlowDownPtr& bd) {
  const int n = a.size();
  if (!bd) throw ToricError("augment_lattice: missing blow-down");
  if (!(a.lattice() == bd->target->lattice()))
    throw ToricError("augment_lattice: system lives on " + a.lattice().name() + ", blow-down target is " +
                     bd->target->lattice().name());
  if (m < 1 || m > n + 1) throw ToricError("augment_lattice: slot out of range");
  std::vector<DivisorClass> pulled;
  for (const auto& x : a.entries()) pulled.push_back(bd->pullback.apply(x));
  const DivisorClass& e = bd->exceptional;
  pulled.insert(pulled.begin() + (m - 1), e);
  const int nn = n + 1;
  pulled[static_cast<std::size_t>(wrap(m - 1, nn) - 1)] -= e;
  pulled[static_cast<std::size_t>(wrap(m + 1, nn) - 1)] -= e;
  return ToricSystem(bd->source, std::move(pulled));
}

DeAugmentation blow_down_toric(const ToricSystem& a, int m, bool lattice_mode) {
  const int n = a.size();
  if (m < 1 || m > n) throw ToricError("blow_down_toric: slot out of range");
  const DivisorClass e = a.at(m);
  if (!is_r_class(e, -1)) throw ToricError("blow_down_toric: A_" + std::to_string(m) + " is not a (-1)-class");
  auto bd = blow_down(a.surface(), e, lattice_mode);
  std::vector<DivisorClass> out;
  for (int i = 1; i <= n; ++i) {
    if (i == m) continue;
    DivisorClass x = a.at(i);
    if (i == wrap(m - 1, n) || i == wrap(m + 1, n)) x += e;
    out.push_back(bd->pullback.preimage(x));
  }
  return {ToricSystem(bd->target, std::move(out)), bd, m};
}

std::vector<ExposableSegment> exposable_segments(const ToricSystem& a) {
  const int n = a.size();
  const auto sq = squares(a);
  std::vector<ExposableSegment> out;
  for (int k = 1; k <= n; ++k) {
    int m = 0;
    for (int len = 1; len < n; ++len) {
      const int i = wrap(k + len - 1, n);
      const int s = sq[static_cast<std::size_t>(i - 1)];
      if (s == -1) {
        if (m) break;
        m = i;
      } else if (s != -2) {
        break;
      }
      if (m) out.push_back({k, i, m, segment_sum(a, k, i)});
    }
  }
  return out;
}

std::vector<DivisorClass> candidate_positions(const ToricSystem& a) {
  std::set<DivisorClass, CanonicalLess> s;
  for (const auto& seg : exposable_segments(a)) s.insert(seg.cls);
  return {s.begin(), s.end()};
}

ToricSystem apply_step(const ToricSystem& a, const Step& s) {
  switch (s.kind) {
    case Step::Kind::Shift: return shift(a, s.index == 0 ? 1 : s.index);
    case Step::Kind::Perm: return perm(a, s.index);
    case Step::Kind::Augment: return augment_lattice(a, s.index, s.blow_down);
  }
  throw ToricError("unknown step");
}

std::string describe(const Step& s) {
  switch (s.kind) {
    case Step::Kind::Shift: return "sh^" + std::to_string(s.index == 0 ? 1 : s.index);
    case Step::Kind::Perm: return "perm_" + std::to_string(s.index);
    case Step::Kind::Augment:
      return "augm_" + std::to_string(s.index) + "[E=" + s.blow_down->exceptional.pretty() + "]";
  }
  return "?";
}

Exposure exposure_chain(const ToricSystem& a, const ExposableSegment& seg) {
  const int n = a.size();
  Exposure out;
  const int sh = seg.k - 1;
  if (sh > 0) out.steps.push_back({Step::Kind::Shift, sh, nullptr});
  const int len = segment_length(seg.k, seg.l, n);
  const int m = wrap(seg.m - sh, n);
  const int l = len;
  for (int i = 1; i < m; ++i) out.steps.push_back({Step::Kind::Perm, i, nullptr});
  for (int i = l; i > m; --i) out.steps.push_back({Step::Kind::Perm, i, nullptr});
  out.position = m;
  return out;
}

std::vector<int> shift_sequence(const std::vector<int>& a, int times) {
  const int n = static_cast<int>(a.size());
  std::vector<int> out(a.size());
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(((i + times) % n + n) % n)];
  return out;
}

std::vector<int> sym_sequence(const std::vector<int>& a) {
  const std::size_t n = a.size();
  std::vector<int> out;
  for (std::size_t i = n - 1; i-- > 0;) out.push_back(a[i]);
  out.push_back(a[n - 1]);
  return out;
}

}  // namespace wdp
