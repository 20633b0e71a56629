#include "support.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "wdp/classes.hpp"

namespace wdp::test {

SurfacePtr surf(const std::string& label) { return Registry::builtin().get(label); }

std::vector<SurfacePtr> sampling_surfaces() {
  std::vector<SurfacePtr> out;
  for (const auto& s : Registry::builtin().all())
    if (s->rank() >= 3 && s->degree() >= 3) out.push_back(s);
  return out;
}

DivisorClass cls(const SurfacePtr& s, const std::string& text) { return parse_class(s->lattice(), text); }

ToricSystem sys(const std::string& label, const std::vector<std::string>& classes) {
  return make_system(surf(label), classes);
}

std::vector<std::int64_t> vec(const DivisorClass& d) { return {d.coeffs().begin(), d.coeffs().end()}; }

std::set<DivisorClass, CanonicalLess> as_set(const std::vector<DivisorClass>& v) { return {v.begin(), v.end()}; }

const std::vector<ToricSystem>& base_systems(const SurfacePtr& s) {
  static std::mutex mu;
  static std::map<const Surface*, std::vector<ToricSystem>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(s.get());
  if (it != cache.end()) return it->second;
  std::vector<ToricSystem> out;
  if (s->rank() == 1) {
    out.push_back(make_system(s, {"L", "L", "L"}));
  } else {
    std::set<Sequence> pats;
    for (int k = -3; k <= 3; ++k)
      for (const auto& p : dihedral_orbit({0, k, 0, -k})) pats.insert(p);
    for (const auto& p : pats)
      for (auto& a : enumerate_toric_systems(s, p).systems) out.push_back(std::move(a));
  }
  if (out.empty()) throw std::logic_error("no base systems on " + s->name());
  return cache.emplace(s.get(), std::move(out)).first->second;
}

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

ToricSystem random_moves(Rng& rng, ToricSystem a, int max_moves) {
  const int moves = std::uniform_int_distribution<int>(0, max_moves)(rng);
  for (int i = 0; i < moves; ++i) {
    std::vector<int> perms;
    for (int k = 1; k <= a.size(); ++k)
      if (square(a.at(k)) == -2) perms.push_back(k);
    if (perms.empty() || rng() % 3 == 0)
      a = shift(a, std::uniform_int_distribution<int>(1, a.size() - 1)(rng));
    else
      a = perm(a, pick(rng, perms));
  }
  return a;
}

}  // namespace

ToricSystem SystemSampler::sample(Rng& rng, int max_moves) { return *draw(rng, max_moves, false); }

std::optional<ToricSystem> SystemSampler::draw(Rng& rng, int max_moves, bool first_kind) {
  std::vector<BlowDownPtr> chain;
  SurfacePtr cur = x_;
  while (cur->rank() > 2 || (cur->rank() == 2 && cur->lattice().kind() == LatticeKind::Blowup && rng() % 4 == 0)) {
    if (cur->i_irr().empty()) break;
    auto bd = blow_down(cur, pick(rng, cur->i_irr()));
    chain.push_back(bd);
    cur = bd->target;
  }
  std::vector<ToricSystem> bases;
  for (const auto& b : base_systems(cur)) {
    const auto sq = squares(b);
    if (!first_kind || *std::min_element(sq.begin(), sq.end()) >= -2) bases.push_back(b);
  }
  if (bases.empty()) return std::nullopt;
  ToricSystem a = random_moves(rng, pick(rng, bases), max_moves);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    // Slot m sits between A_{m-1} and A_m, both of which lose one from their square.
    std::vector<int> slots;
    for (int m = 1; m <= a.size() + 1; ++m)
      if (!first_kind || (square(a.at(m - 1)) >= -1 && square(a.at(m)) >= -1)) slots.push_back(m);
    if (slots.empty()) return std::nullopt;
    a = random_moves(rng, augment_lattice(a, pick(rng, slots), *it), max_moves);
  }
  return a;
}

ToricSystem SystemSampler::sample_first_kind(Rng& rng, int max_moves) {
  for (int attempt = 0; attempt < 100000; ++attempt)
    if (auto a = draw(rng, max_moves, true)) return *a;
  throw std::runtime_error("no first-kind sample on " + x_->name());
}

SystemSampler::Lift SystemSampler::sample_lift(Rng& rng) {
  if (x_->rank() <= 2 && x_->lattice().kind() != LatticeKind::Blowup)
    throw std::logic_error("sample_lift on a Hirzebruch lattice");
  auto bd = blow_down(x_, pick(rng, x_->i_irr()));
  SystemSampler lower(bd->target);
  ToricSystem a = lower.sample(rng);
  const int m = std::uniform_int_distribution<int>(1, a.size() + 1)(rng);
  return {a, m, bd};
}

std::set<DivisorClass, CanonicalLess> brute_positive_roots(const Surface& s, int bound) {
  std::set<DivisorClass, CanonicalLess> out;
  const auto& simple = s.r_irr();
  const std::size_t r = simple.size();
  std::vector<int> c(r, 0);
  while (true) {
    std::size_t i = 0;
    while (i < r && c[i] == bound) c[i++] = 0;
    if (i == r) break;
    ++c[i];
    DivisorClass d(s.lattice());
    for (std::size_t j = 0; j < r; ++j) d += static_cast<std::int64_t>(c[j]) * simple[j];
    if (square(d) == -2) out.insert(d);
  }
  return out;
}

DecompositionOracle::DecompositionOracle(SurfacePtr s) : s_(std::move(s)), h_(s_->lattice()) {
  curves_ = s_->r_irr();
  curves_.insert(curves_.end(), s_->i_irr().begin(), s_->i_irr().end());
  // H = -N K + (sum of positive roots); positive on roots since the sum pairs
  // to -2 with every simple root, and on (-1)-curves once N is large.
  DivisorClass rho(s_->lattice());
  for (const auto& a : brute_positive_roots(*s_)) rho += a;
  const DivisorClass mk = -DivisorClass::canonical(s_->lattice());
  for (std::int64_t n = 1;; ++n) {
    DivisorClass h = n * mk - rho;
    if (std::all_of(curves_.begin(), curves_.end(), [&](const DivisorClass& c) { return intersect(h, c) > 0; }) &&
        square(h) > 0) {
      h_ = h;
      break;
    }
    if (n > 1000) throw std::logic_error("no ample class found");
  }
  const int r = s_->rank();
  std::vector<std::int64_t> c(static_cast<std::size_t>(r), -2);
  while (true) {
    DivisorClass p(s_->lattice(), c);
    if (!p.is_zero() && nef(p)) nef_.push_back(p);
    int i = 0;
    while (i < r && c[static_cast<std::size_t>(i)] == 2) c[static_cast<std::size_t>(i++)] = -2;
    if (i == r) break;
    ++c[static_cast<std::size_t>(i)];
  }
}

bool DecompositionOracle::nef(const DivisorClass& d) const {
  return std::all_of(curves_.begin(), curves_.end(), [&](const DivisorClass& c) { return intersect(d, c) >= 0; });
}

bool DecompositionOracle::effective(const DivisorClass& d) {
  if (intersect(h_, d) < 0) return false;
  if (d.is_zero() || nef(d)) return true;
  for (const auto& p : nef_)
    if (intersect(p, d) < 0) return false;
  const auto key = vec(d);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool ok = false;
  for (const auto& c : curves_) {
    if (effective(d - c)) {
      ok = true;
      break;
    }
  }
  if (memo_.size() > 20'000'000) throw std::runtime_error("decomposition oracle state limit");
  memo_[key] = ok;
  return ok;
}

}  // namespace wdp::test
