#include "wdp/classify.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wdp/classes.hpp"
#include "wdp_registry_data.hpp"

namespace wdp {

// ---------------------------------------------------------------------------
// Enumeration

namespace {

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int t = std::min<int>(jobs, static_cast<int>(count));
  for (int w = 0; w < t; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

class Enumerator {
 public:
  Enumerator(const SurfacePtr& s, const Sequence& sq, const EnumOptions& opt) : s_(s), sq_(sq), opt_(opt) {
    n_ = static_cast<int>(sq.size());
    if (n_ != s->rank() + 2) throw std::invalid_argument("squares sequence has the wrong length for " + s->name());
    std::map<int, std::vector<int>> by_r;
    for (int i = 0; i + 1 < n_; ++i) {
      const int r = sq[static_cast<std::size_t>(i)];
      if (by_r.count(r)) continue;
      auto& ids = by_r[r];
      for (const auto& c : r_classes(s->lattice(), r)) {
        ids.push_back(static_cast<int>(pool_.size()));
        pool_.push_back(c);
      }
    }
    for (int i = 0; i + 1 < n_; ++i) alph_.push_back(by_r[sq[static_cast<std::size_t>(i)]]);
    const std::size_t p = pool_.size();
    gram_.assign(p * p, 0);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b) {
        const auto v = static_cast<std::int16_t>(std::clamp<std::int64_t>(intersect(pool_[a], pool_[b]), -100, 100));
        gram_[a * p + b] = gram_[b * p + a] = v;
      }
  }

  std::size_t first_choices() const { return n_ >= 2 ? alph_[0].size() : 0; }

  // Enumerates the subtree with A_1 = alph[0][first].
  void run(std::size_t first, std::vector<ToricSystem>& out, std::uint64_t& nodes, bool& complete) const {
    std::vector<int> chosen(static_cast<std::size_t>(n_), -1);
    chosen[0] = alph_[0][first];
    Ctx ctx{out, nodes, complete, chosen};
    if (expired()) {
      complete = false;
      return;
    }
    if (!prefix_ok(ctx, 1)) return;
    dfs(ctx, 1);
  }

 private:
  struct Ctx {
    std::vector<ToricSystem>& out;
    std::uint64_t& nodes;
    bool& complete;
    std::vector<int>& chosen;
  };

  bool expired() const { return opt_.deadline && Clock::now() > *opt_.deadline; }

  std::int16_t g(int a, int b) const { return gram_[static_cast<std::size_t>(a) * pool_.size() + static_cast<std::size_t>(b)]; }

  bool prefix_ok(Ctx& ctx, int placed) const {
    if (!opt_.prefix_filter) return true;
    std::vector<DivisorClass> prefix;
    for (int j = 0; j < placed; ++j) prefix.push_back(pool_[static_cast<std::size_t>(ctx.chosen[static_cast<std::size_t>(j)])]);
    return opt_.prefix_filter(prefix);
  }

  void dfs(Ctx& ctx, int i) const {
    if (!ctx.complete) return;
    if ((++ctx.nodes & 0xFF) == 0 && expired()) {
      ctx.complete = false;
      return;
    }
    if (i == n_ - 1) {
      finish(ctx);
      return;
    }
    const int prev = ctx.chosen[static_cast<std::size_t>(i - 1)];
    for (int c : alph_[static_cast<std::size_t>(i)]) {
      if (g(c, prev) != 1) continue;
      bool ok = true;
      for (int j = 0; j + 1 < i && ok; ++j) ok = g(c, ctx.chosen[static_cast<std::size_t>(j)]) == 0;
      if (!ok) continue;
      ctx.chosen[static_cast<std::size_t>(i)] = c;
      if (prefix_ok(ctx, i + 1)) dfs(ctx, i + 1);
      if (!ctx.complete) return;
    }
  }

  void finish(Ctx& ctx) const {
    std::vector<DivisorClass> e;
    DivisorClass last = -DivisorClass::canonical(s_->lattice());
    for (int j = 0; j + 1 < n_; ++j) {
      e.push_back(pool_[static_cast<std::size_t>(ctx.chosen[static_cast<std::size_t>(j)])]);
      last -= e.back();
    }
    if (square(last) != sq_.back()) return;
    e.push_back(last);
    if (toric_violation(s_->lattice(), e)) return;
    ctx.out.emplace_back(s_, std::move(e));
  }

  SurfacePtr s_;
  Sequence sq_;
  const EnumOptions& opt_;
  int n_ = 0;
  std::vector<DivisorClass> pool_;
  std::vector<std::vector<int>> alph_;
  std::vector<std::int16_t> gram_;
};

}  // namespace

EnumResult enumerate_toric_systems(const SurfacePtr& s, const Sequence& squares, const EnumOptions& opt) {
  Enumerator en(s, squares, opt);
  const std::size_t m = en.first_choices();
  std::vector<std::vector<ToricSystem>> parts(m);
  std::vector<std::uint64_t> nodes(m, 0);
  std::vector<char> complete(m, 1);
  parallel_for(m, opt.jobs, [&](std::size_t i) {
    bool c = true;
    en.run(i, parts[i], nodes[i], c);
    complete[i] = c;
  });
  EnumResult r;
  for (std::size_t i = 0; i < m; ++i) {
    r.nodes += nodes[i];
    r.complete = r.complete && complete[i];
    for (auto& t : parts[i]) r.systems.push_back(std::move(t));
  }
  return r;
}

bool strong_prefix_ok(const Surface& s, const std::vector<DivisorClass>& prefix) {
  if (prefix.empty()) return true;
  DivisorClass d(s.lattice());
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    d += *it;
    if (!strong_left_orthogonal(s, d).value) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reports and data

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

namespace {

std::vector<std::string> strings(const nlohmann::json& j) { return j.get<std::vector<std::string>>(); }

std::vector<TablesData::Segment> segments(const nlohmann::json& j) {
  std::vector<TablesData::Segment> out;
  for (const auto& e : j) out.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::string>()});
  return out;
}

}  // namespace

TablesData TablesData::from_json_text(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.value("format", "") != "wdp-tables/1") throw std::runtime_error("tables: unknown format");
  TablesData t;
  t.table1_roots = doc.at("table1").at("roots").get<std::vector<int>>();
  t.table1_lines = doc.at("table1").at("lines").get<std::vector<int>>();
  for (const auto& r : doc.at("table2")) t.table2.emplace_back(r.at("label"), r.at("sequence").get<Sequence>());
  for (const auto& r : doc.at("yes"))
    t.yes.push_back({r.at("degree"), strings(r.at("types")), strings(r.at("maximal")), strings(r.at("system")),
                     strings(r.at("critical"))});
  for (const auto& r : doc.at("no")) {
    No n{r.at("surface"), std::nullopt};
    if (r.contains("blow_down")) n.blow_down = r.at("blow_down").get<std::string>();
    t.no.push_back(std::move(n));
  }
  const auto& c = doc.at("counterexample");
  auto& ce = t.counterexample;
  ce.surface = c.at("surface");
  ce.system = strings(c.at("system"));
  ce.squares = c.at("squares").get<Sequence>();
  ce.r_eff = strings(c.at("r_eff"));
  ce.i_irr = strings(c.at("i_irr"));
  ce.candidates = strings(c.at("candidates"));
  ce.minus_two = segments(c.at("minus_two"));
  ce.minus_three = segments(c.at("minus_three"));
  ce.bite_class = c.at("bite_chain").at("class");
  ce.bites = strings(c.at("bite_chain").at("bites"));
  ce.bite_residual = c.at("bite_chain").at("residual");
  const auto& b = doc.at("example_bad");
  auto& eb = t.example_bad;
  eb.surface = b.at("surface");
  eb.system = strings(b.at("system"));
  eb.squares = b.at("squares").get<Sequence>();
  eb.i_irr = strings(b.at("i_irr"));
  eb.perms = b.at("perms").get<std::vector<int>>();
  eb.position = b.at("position");
  eb.exposed = b.at("exposed");
  return t;
}

TablesData TablesData::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

const TablesData& TablesData::builtin() {
  static const TablesData t = from_json_text(kBuiltinTablesJson);
  return t;
}

ToricSystem make_system(const SurfacePtr& s, const std::vector<std::string>& classes) {
  std::vector<DivisorClass> e;
  for (const auto& c : classes) e.push_back(parse_class(s->lattice(), c));
  return ToricSystem(s, std::move(e));
}

namespace {

std::string join(const std::vector<DivisorClass>& v) {
  std::string out;
  for (const auto& d : v) out += (out.empty() ? "" : ", ") + d.pretty();
  return "{" + out + "}";
}

std::set<DivisorClass, CanonicalLess> class_set_of(const PicardLattice& l, const std::vector<std::string>& names) {
  std::set<DivisorClass, CanonicalLess> s;
  for (const auto& n : names) s.insert(parse_class(l, n));
  return s;
}

template <class Range>
std::set<DivisorClass, CanonicalLess> to_set(const Range& r) {
  return {r.begin(), r.end()};
}

std::optional<Clock::time_point> deadline_of(const SuiteOptions& o) {
  if (o.budget <= 0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(o.budget));
}

std::string verdict_text(const Verdict& v) {
  if (v.value) return v.path;
  std::string s = v.path;
  if (v.witness) s += " [" + std::to_string(v.witness->k) + ".." + std::to_string(v.witness->l) + "] " + v.witness->reason;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Suites

Report verify_table1(const SuiteOptions& opt) {
  Report r{"table1", {}, true};
  const auto& t = *opt.tables;
  for (int n = 0; n <= 8; ++n) {
    const auto lat = PicardLattice::blowup(n);
    const int roots = static_cast<int>(minus_two_classes(lat).size());
    const int lines = static_cast<int>(minus_one_classes(lat).size());
    const int wr = t.table1_roots[static_cast<std::size_t>(n)], wl = t.table1_lines[static_cast<std::size_t>(n)];
    r.add("n=" + std::to_string(n) + " |R|", roots == wr, std::to_string(roots) + " vs " + std::to_string(wr));
    r.add("n=" + std::to_string(n) + " |I|", lines == wl, std::to_string(lines) + " vs " + std::to_string(wl));
  }
  return r;
}

Report verify_table2(const SuiteOptions& opt) {
  Report r{"table2", {}, true};
  const auto got = enumerate_first_kind();
  std::set<Sequence> want;
  for (const auto& [label, seq] : opt.tables->table2) {
    const Sequence c = dihedral_canonical(seq);
    want.insert(c);
    r.add("row " + label + " admissible of the first kind", is_first_kind(seq), format_sequence(seq));
  }
  const std::set<Sequence> got_set(got.begin(), got.end());
  r.add("15 classes", got.size() == 15 && want.size() == 15, std::to_string(got.size()) + " classes");
  r.add("enumeration equals the table", got_set == want);
  std::size_t longest = 0;
  for (const auto& s : got) longest = std::max(longest, s.size());
  r.add("maximal length 9", longest == 9, std::to_string(longest));
  return r;
}

Report verify_table_yes(const SuiteOptions& opt) {
  Report r{"table-yes", {}, true};
  const auto& reg = *opt.registry;
  for (const auto& row : opt.tables->yes) {
    if (opt.degree && *opt.degree != row.degree) continue;
    const std::string tag = "degree " + std::to_string(row.degree) + " [" + row.types.front() + "]";
    for (const auto& type : row.types) {
      const auto s = reg.get(type);
      try {
        const ToricSystem a = make_system(s, row.system);
        const Verdict fast = check_cyclic_strong_exceptional(a, CheckPath::Fast);
        const Verdict general = check_cyclic_strong_exceptional(a, CheckPath::General);
        r.add(type + " cyclic strong exceptional", fast.value && general.value,
              "fast: " + verdict_text(fast) + "; general: " + verdict_text(general));
      } catch (const std::exception& e) {
        r.add(type + " validates", false, e.what());
      }
    }
    const auto s0 = reg.get(row.maximal.front());
    const ToricSystem a = make_system(s0, row.system);
    const auto sq = squares(a);
    std::set<DivisorClass, CanonicalLess> runs;
    const int n = a.size();
    for (int k = 1; k <= n; ++k)
      for (int len = 1; len < n; ++len) {
        const int l = wrap(k + len - 1, n);
        if (sq[static_cast<std::size_t>(l - 1)] != -2) break;
        runs.insert(segment_sum(a, k, l));
      }
    const auto want = class_set_of(s0->lattice(), row.critical);
    r.add(tag + " (-2)-run classes", runs == want, join({runs.begin(), runs.end()}));
    if (row.degree < 9) r.add(tag + " squares of the first kind", is_first_kind(sq), format_sequence(sq));
    r.add(tag + " standard augmentation", standard_augmentation(a).value);
  }
  return r;
}

std::vector<Sequence> first_kind_patterns(int length) {
  std::set<Sequence> out;
  for (const auto& s : enumerate_first_kind())
    if (static_cast<int>(s.size()) == length)
      for (auto& o : dihedral_orbit(s)) out.insert(o);
  return {out.begin(), out.end()};
}

Report verify_nonexistence(const std::string& surface, const SuiteOptions& opt) {
  const auto s = opt.registry->get(surface);
  Report r{"nonexistence " + s->name(), {}, true};
  const TablesData::No* row = nullptr;
  for (const auto& x : opt.tables->no)
    if (normalize_surface_name(x.surface) == normalize_surface_name(surface)) row = &x;

  if (row && row->blow_down) {
    std::optional<DivisorClass> via;
    for (const auto& e : s->i_irr()) {
      auto bd = blow_down(s, e);
      if (bd->target->name() == *row->blow_down) {
        via = e;
        break;
      }
    }
    r.add("blow-down to " + *row->blow_down, via.has_value(),
          via ? "contract " + via->pretty() : "no irreducible (-1)-curve contracts to that type");
  }

  const bool enumerate = s->degree() >= 4 || opt.enumerate_degree3;
  if (!enumerate) return r;
  const auto deadline = deadline_of(opt);
  std::uint64_t total = 0, hits = 0;
  std::string first_hit;
  const auto patterns = first_kind_patterns(s->rank() + 2);
  for (const auto& p : patterns) {
    EnumOptions eo;
    eo.deadline = deadline;
    eo.jobs = opt.jobs;
    auto res = enumerate_toric_systems(s, p, eo);
    total += res.systems.size();
    for (const auto& a : res.systems)
      if (check_cyclic_strong_exceptional(a).value) {
        if (!hits) first_hit = a.to_string();
        ++hits;
      }
    if (!res.complete) {
      r.complete = false;
      break;
    }
  }
  r.add("no cyclic strong exceptional system", hits == 0,
        std::to_string(patterns.size()) + " patterns, " + std::to_string(total) + " systems, " +
            std::to_string(hits) + " hits" + (first_hit.empty() ? "" : ", first " + first_hit) +
            (r.complete ? "" : " (budget exhausted)"));
  return r;
}

Report verify_table_no(const SuiteOptions& opt) {
  Report r{"table-no", {}, true};
  for (const auto& row : opt.tables->no) {
    const auto s = opt.registry->get(row.surface);
    if (opt.degree && *opt.degree != s->degree()) continue;
    Report sub = verify_nonexistence(row.surface, opt);
    for (auto& c : sub.checks) r.add(s->name() + ": " + c.name, c.pass, c.detail);
    r.complete = r.complete && sub.complete;
  }
  return r;
}

Report verify_partition(const SuiteOptions& opt) {
  Report r{"partition", {}, true};
  std::map<std::string, int> seen;
  for (const auto& row : opt.tables->yes)
    for (const auto& t : row.types) ++seen[opt.registry->get(t)->name()];
  for (const auto& row : opt.tables->no) ++seen[opt.registry->get(row.surface)->name()];
  for (const auto& s : opt.registry->all()) {
    if (s->degree() < 3 || s->degree() > 7) continue;
    const int c = seen.count(s->name()) ? seen[s->name()] : 0;
    r.add(s->name(), c == 1, std::to_string(c) + " table rows");
  }
  return r;
}

Report verify_counterexample(const SuiteOptions& opt) {
  const auto& ce = opt.tables->counterexample;
  Report r{"counterexample", {}, true};
  const auto s = opt.registry->get(ce.surface);
  const auto& lat = s->lattice();

  std::optional<ToricSystem> a;
  try {
    a = make_system(s, ce.system);
    r.add("1 toric system validates", true, a->to_string());
  } catch (const std::exception& e) {
    r.add("1 toric system validates", false, e.what());
    return r;
  }
  const auto sq = squares(*a);
  r.add("2 squares", sq == ce.squares, format_sequence(sq));
  r.add("3 R^eff has the listed classes", to_set(s->r_eff()) == class_set_of(lat, ce.r_eff) && s->r_eff().size() == 13,
        std::to_string(s->r_eff().size()) + " classes");
  r.add("4 I^irr", to_set(s->i_irr()) == class_set_of(lat, ce.i_irr), join(s->i_irr()));

  // Lemma-style condition set: the listed (-2)-classes and (-3)-classes.
  bool listed = true;
  std::string detail;
  for (const auto& m : ce.minus_two) {
    const DivisorClass d = segment_sum(*a, m.k, m.l);
    const bool ok = d == parse_class(lat, m.cls) && !is_effective(*s, d) && !is_effective(*s, -d);
    listed = listed && ok;
    if (!ok) detail += " A_{" + std::to_string(m.k) + ".." + std::to_string(m.l) + "}";
  }
  for (const auto& m : ce.minus_three) {
    const DivisorClass d = segment_sum(*a, m.k, m.l);
    const bool ok = d == parse_class(lat, m.cls) && !is_effective(*s, -d);
    listed = listed && ok;
    if (!ok) detail += " A_{" + std::to_string(m.k) + ".." + std::to_string(m.l) + "}";
  }
  const Verdict fast = check_strong_exceptional(*a, CheckPath::Fast);
  const Verdict general = check_strong_exceptional(*a, CheckPath::General);
  r.add("5 strong exceptional", listed && fast.value && general.value,
        "listed conditions " + std::string(listed ? "hold" : "fail:" + detail) + "; fast: " + verdict_text(fast) +
            "; general: " + verdict_text(general));

  const auto cand = candidate_positions(*a);
  r.add("6 I(X,A) has the 22 listed classes", to_set(cand) == class_set_of(lat, ce.candidates) && cand.size() == 22,
        std::to_string(cand.size()) + " classes");
  std::vector<DivisorClass> meet;
  for (const auto& c : cand)
    if (s->is_irreducible_minus_one(c)) meet.push_back(c);
  r.add("7 I(X,A) misses I^irr", meet.empty(), join(meet));
  const auto weak = weak_augmentation(*a);
  r.add("8 not a weak augmentation", !weak.value && !weak.exhausted, std::to_string(weak.states) + " states");

  const auto red = zariski_reduce(*s, parse_class(lat, ce.bite_class));
  std::vector<DivisorClass> want_bites;
  for (const auto& b : ce.bites) want_bites.push_back(parse_class(lat, b));
  r.add("bite chain", red.bites == want_bites && red.residual == parse_class(lat, ce.bite_residual) && !red.effective,
        join(red.bites) + " -> " + red.residual.pretty());
  return r;
}

Report verify_example_bad(const SuiteOptions& opt) {
  const auto& eb = opt.tables->example_bad;
  Report r{"example-bad", {}, true};
  const auto s = opt.registry->get(eb.surface);
  const auto& lat = s->lattice();
  std::optional<ToricSystem> a;
  try {
    a = make_system(s, eb.system);
    r.add("validates", true, a->to_string());
  } catch (const std::exception& e) {
    r.add("validates", false, e.what());
    return r;
  }
  r.add("squares", squares(*a) == eb.squares, format_sequence(squares(*a)));
  r.add("8 irreducible (-1)-curves", to_set(s->i_irr()) == class_set_of(lat, eb.i_irr) && s->i_irr().size() == 8,
        join(s->i_irr()));
  const Verdict v = check_cyclic_strong_exceptional(*a);
  r.add("cyclic strong exceptional", v.value, verdict_text(v));
  std::vector<DivisorClass> entries;
  for (const auto& e : a->entries())
    if (s->is_irreducible_minus_one(e)) entries.push_back(e);
  r.add("no entry is irreducible", entries.empty(), join(entries));
  std::vector<DivisorClass> exposable;
  for (const auto& seg : exposable_segments(*a))
    if (seg.k <= seg.l && seg.l <= 7 && s->is_irreducible_minus_one(seg.cls)) exposable.push_back(seg.cls);
  r.add("nothing irreducible exposable by perm_1..perm_7", exposable.empty(), join(exposable));
  r.add("not a standard augmentation", !standard_augmentation(*a).value);
  ToricSystem b = *a;
  for (int k : eb.perms) b = perm(b, k);
  const DivisorClass e = parse_class(lat, eb.exposed);
  const bool at = b.at(eb.position) == e;
  r.add("B_" + std::to_string(eb.position) + " = " + e.pretty(), at, b.to_string());
  bool de = false;
  std::string where;
  try {
    auto d = blow_down_toric(b, eb.position);
    de = augment_lattice(d.system, eb.position, d.blow_down) == b;
    where = d.system.surface()->name() + " " + d.system.to_string();
  } catch (const std::exception& ex) {
    where = ex.what();
  }
  r.add("de-augments at " + std::to_string(eb.position), de, where);
  r.add("weak augmentation", weak_augmentation(*a).value);
  return r;
}

SearchReport search_counterexamples(const SurfacePtr& s, const std::vector<Sequence>& patterns, const SuiteOptions& opt,
                                    std::size_t start_pattern) {
  SearchReport out;
  const auto deadline = deadline_of(opt);
  out.next_pattern = start_pattern;
  for (std::size_t i = start_pattern; i < patterns.size(); ++i) {
    EnumOptions eo;
    eo.deadline = deadline;
    eo.jobs = opt.jobs;
    const Surface& surf = *s;
    eo.prefix_filter = [&surf](const std::vector<DivisorClass>& p) { return strong_prefix_ok(surf, p); };
    auto res = enumerate_toric_systems(s, patterns[i], eo);
    out.systems += res.systems.size();
    for (auto& a : res.systems)
      if (check_strong_exceptional(a).value && !weak_augmentation(a).value) out.hits.push_back(std::move(a));
    if (!res.complete) {
      out.complete = false;
      return out;
    }
    out.next_pattern = i + 1;
  }
  return out;
}

}  // namespace wdp
