#include "wdp/augment.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace wdp {

ToricSystem replay(const AugmentChain& chain) {
  ToricSystem cur = chain.base;
  for (const auto& s : chain.steps) cur = apply_step(cur, s);
  return cur;
}

std::string describe(const AugmentChain& chain) {
  std::string out = chain.base.surface()->name() + " " + chain.base.to_string();
  for (const auto& s : chain.steps) out += " -> " + describe(s);
  return out;
}

std::string system_key(const ToricSystem& a) {
  std::string key;
  for (int s : squares(a)) key += std::to_string(s) + ",";
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& c : a.surface()->r_irr()) {
    std::vector<std::int64_t> row;
    for (const auto& x : a.entries()) row.push_back(intersect(c, x));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) {
    key += "|";
    for (auto v : r) key += std::to_string(v) + ",";
  }
  return key;
}

namespace {

bool is_base(const ToricSystem& a) { return a.lattice().rank() <= 2; }

std::vector<Step> inverse_steps(const std::vector<Step>& steps, int n) {
  std::vector<Step> inv;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->kind == Step::Kind::Shift) {
      const int t = ((n - (it->index == 0 ? 1 : it->index)) % n + n) % n;
      if (t) inv.push_back({Step::Kind::Shift, t, nullptr});
    } else if (it->kind == Step::Kind::Perm) {
      inv.push_back(*it);
    } else {
      throw std::logic_error("inverse_steps: augmentations are not invertible here");
    }
  }
  return inv;
}

AugmentChain extend(AugmentChain sub, int position, const BlowDownPtr& bd, const std::vector<Step>& tail) {
  sub.steps.push_back({Step::Kind::Augment, position, bd});
  sub.steps.insert(sub.steps.end(), tail.begin(), tail.end());
  return sub;
}

class StandardSearch {
 public:
  explicit StandardSearch(const SearchOptions& o) : opt_(o) {}

  std::optional<AugmentChain> run(const ToricSystem& a) {
    ++states;
    if (opt_.max_states && states > opt_.max_states) {
      exhausted = true;
      return std::nullopt;
    }
    if (is_base(a)) return AugmentChain{a, {}};
    const std::string key = system_key(a);
    if (failed_.count(key)) return std::nullopt;
    for (int m = 1; m <= a.size(); ++m) {
      if (!a.surface()->is_irreducible_minus_one(a.at(m))) continue;
      auto de = blow_down_toric(a, m);
      if (auto sub = run(de.system)) return extend(std::move(*sub), m, de.blow_down, {});
    }
    if (!exhausted) failed_.insert(key);
    return std::nullopt;
  }

  std::uint64_t states = 0;
  bool exhausted = false;

 private:
  SearchOptions opt_;
  std::unordered_set<std::string> failed_;
};

// Exposes irreducible (-1)-classes of I(X,A) through explicit perm chains;
// with a grade, every intermediate system must pass the grade check.
class ExposureSearch {
 public:
  ExposureSearch(const SearchOptions& o, std::optional<Grade> g) : opt_(o), grade_(g) {}

  std::optional<AugmentChain> run(const ToricSystem& a) {
    ++states;
    if (opt_.max_states && states > opt_.max_states) {
      exhausted = true;
      return std::nullopt;
    }
    if (is_base(a)) return AugmentChain{a, {}};
    const std::string key = system_key(a);
    if (failed_.count(key)) return std::nullopt;

    for (const auto& seg : exposable_segments(a)) {
      if (!a.surface()->is_irreducible_minus_one(seg.cls)) continue;
      const Exposure ex = exposure_chain(a, seg);
      std::optional<ToricSystem> cur = a;
      for (const auto& st : ex.steps) {
        cur = apply_step(*cur, st);
        if (grade_ && !check_grade(*cur, *grade_).value) {
          cur.reset();
          break;
        }
      }
      if (!cur) continue;
      if (auto c = descend(*cur, ex.position, inverse_steps(ex.steps, a.size()))) return c;
      if (exhausted) return std::nullopt;
    }
    if (grade_ && opt_.orbit_fallback) {
      if (auto c = orbit_search(a)) return c;
    }
    if (!exhausted) failed_.insert(key);
    return std::nullopt;
  }

  std::uint64_t states = 0;
  bool exhausted = false;

 private:
  std::optional<AugmentChain> descend(const ToricSystem& b, int position, const std::vector<Step>& tail) {
    auto de = blow_down_toric(b, position);
    if (grade_ && !check_grade(de.system, *grade_).value) return std::nullopt;
    if (auto sub = run(de.system)) return extend(std::move(*sub), position, de.blow_down, tail);
    return std::nullopt;
  }

  // Breadth-first walk over systems reachable by shifts and perms that stay
  // within the grade, looking for an entry that contracts.
  std::optional<AugmentChain> orbit_search(const ToricSystem& a) {
    const int n = a.size();
    struct Node {
      ToricSystem sys;
      int parent;
      Step step;
    };
    std::vector<Node> nodes{{a, -1, {Step::Kind::Shift, 0, nullptr}}};
    auto flat = [](const ToricSystem& t) {
      std::vector<std::int64_t> v;
      for (const auto& x : t.entries()) v.insert(v.end(), x.coeffs().begin(), x.coeffs().end());
      return v;
    };
    std::set<std::vector<std::int64_t>> seen{flat(a)};
    auto path_to = [&](int idx) {
      std::vector<Step> fwd;
      for (int i = idx; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
        fwd.push_back(nodes[static_cast<std::size_t>(i)].step);
      std::reverse(fwd.begin(), fwd.end());
      return fwd;
    };
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      if (opt_.max_states && ++states > opt_.max_states) {
        exhausted = true;
        return std::nullopt;
      }
      const ToricSystem cur = nodes[head].sys;
      for (int m = 1; m <= n; ++m) {
        if (!cur.surface()->is_irreducible_minus_one(cur.at(m))) continue;
        if (auto c = descend(cur, m, inverse_steps(path_to(static_cast<int>(head)), n))) return c;
        if (exhausted) return std::nullopt;
      }
      std::vector<Step> moves{{Step::Kind::Shift, 1, nullptr}};
      for (int k = 1; k <= n; ++k)
        if (square(cur.at(k)) == -2) moves.push_back({Step::Kind::Perm, k, nullptr});
      for (const auto& mv : moves) {
        ToricSystem nxt = apply_step(cur, mv);
        if (!seen.insert(flat(nxt)).second) continue;
        if (!check_grade(nxt, *grade_).value) continue;
        nodes.push_back({std::move(nxt), static_cast<int>(head), mv});
      }
    }
    return std::nullopt;
  }

  SearchOptions opt_;
  std::optional<Grade> grade_;
  std::unordered_set<std::string> failed_;
};

}  // namespace

AugmentVerdict standard_augmentation(const ToricSystem& a, const SearchOptions& opt) {
  StandardSearch s(opt);
  auto c = s.run(a);
  return {c.has_value(), std::move(c), s.exhausted && !c, s.states};
}

AugmentVerdict weak_augmentation(const ToricSystem& a, const SearchOptions& opt) {
  ExposureSearch s(opt, std::nullopt);
  auto c = s.run(a);
  return {c.has_value(), std::move(c), s.exhausted && !c, s.states};
}

AugmentVerdict graded_augmentation(const ToricSystem& a, Grade g, const SearchOptions& opt) {
  if (!check_grade(a, g).value)
    throw std::invalid_argument("system is not " + to_string(g) + " exceptional");
  ExposureSearch s(opt, g);
  auto c = s.run(a);
  return {c.has_value(), std::move(c), s.exhausted && !c, s.states};
}

namespace {

class EveryChain {
 public:
  bool run(const ToricSystem& a, std::vector<DivisorClass>& path) {
    ++states;
    if (is_base(a)) return true;
    const std::string key = system_key(a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = true;
    const auto segs = exposable_segments(a);
    for (const auto& e : a.surface()->i_irr()) {
      auto it = std::find_if(segs.begin(), segs.end(), [&](const ExposableSegment& s) { return s.cls == e; });
      if (it == segs.end()) {
        path.push_back(e);
        ok = false;
        break;
      }
      const Exposure ex = exposure_chain(a, *it);
      ToricSystem b = a;
      for (const auto& st : ex.steps) b = apply_step(b, st);
      auto de = blow_down_toric(b, ex.position);
      path.push_back(e);
      if (!run(de.system, path)) {
        ok = false;
        break;
      }
      path.pop_back();
    }
    memo_[key] = ok;
    return ok;
  }
  std::uint64_t states = 0;

 private:
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

ChainCheck weak_along_every_chain(const ToricSystem& a) {
  EveryChain ec;
  ChainCheck out;
  out.value = ec.run(a, out.failing_path);
  if (out.value) out.failing_path.clear();
  out.states = ec.states;
  return out;
}

}  // namespace wdp
