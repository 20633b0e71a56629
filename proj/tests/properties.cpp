#include "properties.hpp"

#include <algorithm>
#include <numeric>

#include "wdp/checker.hpp"
#include "wdp/classes.hpp"

namespace wdp::test {

void PropertyResult::check(bool cond, const std::function<std::string()>& what) {
  ++cases;
  if (cond) return;
  if (failures++ == 0) first_failure = what();
}

namespace {

const SurfacePtr& any_surface(Rng& rng) {
  static const auto all = sampling_surfaces();
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string seq(const std::vector<int>& v) { return format_sequence(v); }

}  // namespace

PropertyResult prop_perm_involution(std::uint64_t seed, int cases) {
  PropertyResult r{"perm involution and squares invariance"};
  Rng rng(seed);
  while (r.cases < cases) {
    const ToricSystem a = SystemSampler(any_surface(rng)).sample(rng);
    std::vector<int> ks;
    for (int k = 1; k <= a.size(); ++k)
      if (square(a.at(k)) == -2) ks.push_back(k);
    if (ks.empty()) continue;
    const int k = ks[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ks.size()) - 1))];
    const ToricSystem b = perm(a, k);
    r.check(perm(b, k) == a && squares(b) == squares(a),
            [&] { return a.to_string() + " perm_" + std::to_string(k); });
  }
  return r;
}

PropertyResult prop_shift_identity(std::uint64_t seed, int cases) {
  PropertyResult r{"shift^n identity"};
  Rng rng(seed);
  while (r.cases < cases) {
    const ToricSystem a = SystemSampler(any_surface(rng)).sample(rng);
    const int n = a.size();
    const int s = uniform(rng, 0, 2 * n);
    ToricSystem b = a;
    for (int i = 0; i < n; ++i) b = shift(b);
    r.check(b == a && shift(shift(a, s), n - s) == a && squares(shift(a, s)) == shift_sequence(squares(a), s),
            [&] { return a.to_string(); });
  }
  return r;
}

PropertyResult prop_round_trip(std::uint64_t seed, int cases) {
  PropertyResult r{"augment / blow-down round trip"};
  Rng rng(seed);
  while (r.cases < cases) {
    const SurfacePtr& x = any_surface(rng);
    if (rng() % 2 == 0) {
      // Up, then down at the inserted slot.
      const auto lift = SystemSampler(x).sample_lift(rng);
      const ToricSystem up = augment_lattice(lift.lower, lift.slot, lift.blow_down);
      const auto down = blow_down_toric(up, lift.slot);
      r.check(down.system == lift.lower && up.at(lift.slot) == lift.blow_down->exceptional,
              [&] { return lift.lower.to_string() + " slot " + std::to_string(lift.slot); });
    } else {
      // Down along any (-1)-entry in lattice mode, then back up.
      const ToricSystem a = SystemSampler(x).sample(rng);
      std::vector<int> ms;
      for (int m = 1; m <= a.size(); ++m)
        if (square(a.at(m)) == -1) ms.push_back(m);
      if (ms.empty()) continue;
      const int m = ms[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ms.size()) - 1))];
      const auto down = blow_down_toric(a, m, true);
      r.check(augment_lattice(down.system, m, down.blow_down) == a,
              [&] { return a.to_string() + " slot " + std::to_string(m); });
    }
  }
  return r;
}

PropertyResult prop_augment_squares(std::uint64_t seed, int cases) {
  PropertyResult r{"augmentation squares compatibility"};
  Rng rng(seed);
  while (r.cases < cases) {
    const auto lift = SystemSampler(any_surface(rng)).sample_lift(rng);
    const auto lower = squares(lift.lower);
    const auto up = squares(augment_lattice(lift.lower, lift.slot, lift.blow_down));
    bool ok = up == augment_sequence(lower, lift.slot);
    if (ok && is_first_kind(up)) ok = is_first_kind(lower);
    r.check(ok, [&] { return seq(lower) + " at " + std::to_string(lift.slot) + " -> " + seq(up); });
  }
  return r;
}

PropertyResult prop_segment_square(std::uint64_t seed, int cases) {
  PropertyResult r{"segment square identity"};
  Rng rng(seed);
  while (r.cases < cases) {
    const ToricSystem a = SystemSampler(any_surface(rng)).sample(rng);
    const int n = a.size();
    const int k = uniform(rng, 1, n);
    const int len = uniform(rng, 1, n - 1);
    const int l = wrap(k + len - 1, n);
    const DivisorClass s = segment_sum(a, k, l);
    std::int64_t rhs = 0;
    for (int i : segment_indices(k, l, n)) rhs += square(a.at(i)) + 2;
    r.check(square(s) + 2 == rhs && is_numerically_left_orthogonal(s),
            [&] { return a.to_string() + " [" + std::to_string(k) + ".." + std::to_string(l) + "]"; });
  }
  return r;
}

PropertyResult prop_classes0(std::uint64_t seed, int cases) {
  PropertyResult r{"sum of nlo classes"};
  Rng rng(seed);
  while (r.cases < cases) {
    const auto lat = PicardLattice::blowup(uniform(rng, 2, 8));
    const auto& c1 = r_classes(lat, uniform(rng, -2, 0));
    const auto& c2 = r_classes(lat, uniform(rng, -2, 0));
    if (c1.empty() || c2.empty()) continue;
    const DivisorClass d1 = c1[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(c1.size()) - 1))];
    std::vector<DivisorClass> pool = c2;
    if (rng() % 2 == 0) {
      std::vector<DivisorClass> meet;
      std::copy_if(c2.begin(), c2.end(), std::back_inserter(meet),
                   [&](const DivisorClass& d) { return intersect(d1, d) == 1; });
      if (!meet.empty()) pool = std::move(meet);
    }
    const DivisorClass d2 = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
    const DivisorClass s = d1 + d2;
    const bool meets = intersect(d1, d2) == 1;
    bool ok = is_numerically_left_orthogonal(s) == meets;
    if (ok && meets)
      ok = euler_char(s) == euler_char(d1) + euler_char(d2) && square(s) == square(d1) + square(d2) + 2;
    r.check(ok, [&] { return d1.to_string() + " + " + d2.to_string(); });
  }
  return r;
}

PropertyResult prop_squares_admissible(std::uint64_t seed, int cases) {
  PropertyResult r{"squares of toric systems are admissible"};
  Rng rng(seed);
  while (r.cases < cases) {
    const ToricSystem a = SystemSampler(any_surface(rng)).sample(rng, 5);
    r.check(is_admissible(squares(a)), [&] { return a.to_string(); });
  }
  return r;
}

PropertyResult prop_fast_general(std::uint64_t seed, int per_surface) {
  PropertyResult r{"fast path agrees with general path"};
  Rng rng(seed);
  for (const auto& x : sampling_surfaces()) {
    SystemSampler sampler(x);
    for (int i = 0; i < per_surface; ++i) {
      const ToricSystem a = sampler.sample_first_kind(rng);
      bool ok = true;
      for (Grade g : {Grade::Exceptional, Grade::Strong, Grade::Cyclic})
        ok = ok && check_grade(a, g, CheckPath::Fast).value == check_grade(a, g, CheckPath::General).value;
      r.check(ok, [&] { return x->name() + " " + a.to_string(); });
    }
  }
  return r;
}

PropertyResult prop_weak_every_chain(std::uint64_t seed, int per_surface) {
  PropertyResult r{"first-kind systems are weak augmentations along every chain"};
  Rng rng(seed);
  for (const auto& x : sampling_surfaces()) {
    SystemSampler sampler(x);
    for (int i = 0; i < per_surface; ++i) {
      const ToricSystem a = sampler.sample_first_kind(rng);
      const auto c = weak_along_every_chain(a);
      r.check(c.value, [&] { return x->name() + " " + a.to_string(); });
    }
  }
  return r;
}

}  // namespace wdp::test
