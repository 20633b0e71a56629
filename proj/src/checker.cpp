#include "wdp/checker.hpp"

#include <stdexcept>

namespace wdp {

namespace {

ClassVerdict by_effectiveness(const Surface& s, const DivisorClass& tested, bool want_effective, std::string rule) {
  Reduction red = zariski_reduce(s, tested);
  const bool v = red.effective == want_effective;
  return {v, std::move(rule), tested, std::move(red)};
}

void require_nlo(const DivisorClass& d) {
  if (!is_numerically_left_orthogonal(d))
    throw std::invalid_argument(d.to_string() + " is not numerically left-orthogonal");
}

}  // namespace

ClassVerdict left_orthogonal(const Surface& s, const DivisorClass& d) {
  require_nlo(d);
  const std::int64_t r = square(d);
  if (r <= -2) return by_effectiveness(s, -d, false, "r<=-2: -D not effective");
  if (r <= s.degree() - 3) return {true, "-1<=r<=d-3", std::nullopt, std::nullopt};
  return by_effectiveness(s, DivisorClass::canonical(s.lattice()) + d, false, "r>=d-2: K+D not effective");
}

ClassVerdict strong_left_orthogonal(const Surface& s, const DivisorClass& d) {
  require_nlo(d);
  const std::int64_t r = square(d);
  if (r <= -3) return {false, "r<=-3", std::nullopt, std::nullopt};
  if (r == -2) {
    auto plus = by_effectiveness(s, d, false, "r=-2: D not effective");
    if (!plus.value) return plus;
    return by_effectiveness(s, -d, false, "r=-2: -D not effective");
  }
  if (r <= s.degree() - 3) return {true, "-1<=r<=d-3", std::nullopt, std::nullopt};
  return by_effectiveness(s, DivisorClass::canonical(s.lattice()) + d, false, "r>=d-2: K+D not effective");
}

namespace {

Verdict fail(std::string path, int k, int l, DivisorClass seg, std::string reason, ClassVerdict detail) {
  return {false, std::move(path), Witness{k, l, std::move(seg), std::move(reason), std::move(detail)}};
}

bool is_full_circle(int k, int l, int n) { return wrap(l + 1, n) == k; }

// Segments [k..l] with every square -2; linear ones stay inside 1..n-1.
std::vector<Segment> minus_two_runs(const std::vector<int>& sq, bool cyclic) {
  const int n = static_cast<int>(sq.size());
  std::vector<Segment> out;
  for (int k = 1; k <= n; ++k) {
    const int max_len = cyclic ? n - 1 : n - k;
    for (int len = 1; len <= max_len; ++len) {
      const int l = wrap(k + len - 1, n);
      if (sq[static_cast<std::size_t>(l - 1)] != -2) break;
      out.push_back({k, l});
    }
  }
  return out;
}

Verdict exceptional_fast(const ToricSystem& a) {
  const int n = a.size();
  const auto sq = squares(a);
  const Surface& s = *a.surface();
  for (int i = 1; i <= n - 1; ++i)
    if (sq[static_cast<std::size_t>(i - 1)] < -2)
      throw std::invalid_argument("fast path needs A_i^2 >= -2 for i <= n-1");
  // (a), and (b) for wrap-around runs through n when A_n^2 <= -2.
  for (const auto& seg : minus_two_runs(sq, false)) {
    const DivisorClass d = segment_sum(a, seg.k, seg.l);
    Reduction red = zariski_reduce(s, -d);
    if (red.effective)
      return fail("fast", seg.k, seg.l, d, "-A_{k..l} is effective",
                  {false, "-2 run: -D not effective", -d, std::move(red)});
  }
  if (sq[static_cast<std::size_t>(n - 1)] <= -2) {
    int kmin = n;
    while (kmin > 1 && sq[static_cast<std::size_t>(kmin - 2)] == -2) --kmin;
    int lmax = 0;
    while (lmax < n - 1 && sq[static_cast<std::size_t>(lmax)] == -2) ++lmax;
    for (int k = kmin; k <= n; ++k)
      for (int l = 0; l <= lmax && l < k; ++l) {
        const int kk = k, ll = l == 0 ? n : l;
        if (l != 0 && is_full_circle(kk, ll, n)) continue;
        if (l == 0 && k == 1) continue;  // [1..n] is the full circle
        const DivisorClass d = segment_sum(a, kk, ll);
        Reduction red = zariski_reduce(s, -d);
        if (red.effective)
          return fail("fast", kk, ll, d, "-A_{k..n..l} is effective",
                      {false, "run through n: -D not effective", -d, std::move(red)});
      }
  }
  return {true, "fast", std::nullopt};
}

Verdict exceptional_general(const ToricSystem& a) {
  const int n = a.size();
  for (int k = 1; k <= n; ++k)
    for (int len = 1; len < n; ++len) {
      const int l = wrap(k + len - 1, n);
      const DivisorClass d = segment_sum(a, k, l);
      auto v = left_orthogonal(*a.surface(), d);
      if (!v.value) return fail("general", k, l, d, "A_{k..l} is not left-orthogonal", std::move(v));
    }
  return {true, "general", std::nullopt};
}

Verdict strong_general(const ToricSystem& a) {
  const int n = a.size();
  for (int k = 1; k <= n - 1; ++k)
    for (int l = k; l <= n - 1; ++l) {
      const DivisorClass d = segment_sum(a, k, l);
      auto v = strong_left_orthogonal(*a.surface(), d);
      if (!v.value) return fail("general", k, l, d, "A_{k..l} is not strong left-orthogonal", std::move(v));
    }
  return {true, "general", std::nullopt};
}

Verdict strong_fast(const ToricSystem& a) {
  const auto sq = squares(a);
  const int n = a.size();
  for (int i = 1; i <= n - 1; ++i)
    if (sq[static_cast<std::size_t>(i - 1)] < -2)
      return fail("fast", i, i, a.at(i), "A_i^2 < -2 for i <= n-1",
                  {false, "r<=-3", std::nullopt, std::nullopt});
  Verdict e = exceptional_fast(a);
  if (!e.value) return e;
  const Surface& s = *a.surface();
  for (const auto& seg : minus_two_runs(sq, false)) {
    const DivisorClass d = segment_sum(a, seg.k, seg.l);
    auto v = strong_left_orthogonal(s, d);
    if (!v.value) return fail("fast", seg.k, seg.l, d, "+-A_{k..l} is effective", std::move(v));
  }
  return {true, "fast", std::nullopt};
}

Verdict cyclic_fast(const ToricSystem& a) {
  const auto sq = squares(a);
  const int n = a.size();
  for (int i = 1; i <= n; ++i)
    if (sq[static_cast<std::size_t>(i - 1)] < -2)
      return fail("fast", i, i, a.at(i), "A_i^2 < -2", {false, "r<=-3", std::nullopt, std::nullopt});
  const Surface& s = *a.surface();
  for (const auto& seg : minus_two_runs(sq, true)) {
    const DivisorClass d = segment_sum(a, seg.k, seg.l);
    auto v = strong_left_orthogonal(s, d);
    if (!v.value) return fail("fast", seg.k, seg.l, d, "+-A_{k..l} is effective", std::move(v));
  }
  return {true, "fast", std::nullopt};
}

Verdict cyclic_general(const ToricSystem& a) {
  const int n = a.size();
  for (int t = 0; t < n; ++t) {
    Verdict v = strong_general(shift(a, t));
    if (!v.value) {
      // Translate the witness back to indices of a.
      v.witness->k = wrap(v.witness->k + t, n);
      v.witness->l = wrap(v.witness->l + t, n);
      return v;
    }
  }
  return {true, "general", std::nullopt};
}

bool fast_applicable_exceptional(const std::vector<int>& sq) {
  for (std::size_t i = 0; i + 1 < sq.size(); ++i)
    if (sq[i] < -2) return false;
  return true;
}

}  // namespace

Verdict check_exceptional(const ToricSystem& a, CheckPath path) {
  if (path == CheckPath::General) return exceptional_general(a);
  if (path == CheckPath::Fast || fast_applicable_exceptional(squares(a))) return exceptional_fast(a);
  return exceptional_general(a);
}

Verdict check_strong_exceptional(const ToricSystem& a, CheckPath path) {
  return path == CheckPath::General ? strong_general(a) : strong_fast(a);
}

Verdict check_cyclic_strong_exceptional(const ToricSystem& a, CheckPath path) {
  return path == CheckPath::General ? cyclic_general(a) : cyclic_fast(a);
}

Verdict check_grade(const ToricSystem& a, Grade g, CheckPath path) {
  switch (g) {
    case Grade::Exceptional: return check_exceptional(a, path);
    case Grade::Strong: return check_strong_exceptional(a, path);
    case Grade::Cyclic: return check_cyclic_strong_exceptional(a, path);
  }
  throw std::logic_error("unknown grade");
}

std::string to_string(Grade g) {
  switch (g) {
    case Grade::Exceptional: return "exceptional";
    case Grade::Strong: return "strong";
    case Grade::Cyclic: return "cyclic";
  }
  return "?";
}

Grade parse_grade(std::string_view s) {
  if (s == "exceptional" || s == "exc") return Grade::Exceptional;
  if (s == "strong") return Grade::Strong;
  if (s == "cyclic") return Grade::Cyclic;
  throw std::invalid_argument("unknown grade '" + std::string(s) + "'");
}

}  // namespace wdp
