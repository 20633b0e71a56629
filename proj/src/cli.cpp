#include "wdp/cli.hpp"

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "wdp/classes.hpp"
#include "wdp/io.hpp"

namespace wdp {

namespace {

struct Globals {
  std::string format = "text";
  int jobs = 1;
  double budget = 0;
  std::string data;
};

class Context {
 public:
  Context(const Globals& g, std::ostream& out) : g_(g), out_(out) {
    if (!g.data.empty()) {
      const std::filesystem::path dir(g.data);
      if (std::filesystem::exists(dir / "registry.json"))
        registry_ = Registry::load_file((dir / "registry.json").string());
      if (std::filesystem::exists(dir / "tables.json"))
        tables_ = TablesData::load_file((dir / "tables.json").string());
    }
  }

  const Registry& registry() const { return registry_ ? *registry_ : Registry::builtin(); }
  const TablesData& tables() const { return tables_ ? *tables_ : TablesData::builtin(); }
  bool json() const { return g_.format == "json"; }
  SuiteOptions suite() const {
    SuiteOptions o;
    o.registry = &registry();
    o.tables = &tables();
    o.jobs = g_.jobs;
    o.budget = g_.budget;
    return o;
  }
  void emit(const Json& j) const { out_ << j.dump(2) << "\n"; }
  std::ostream& out() const { return out_; }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::optional<Registry> registry_;
  std::optional<TablesData> tables_;
};

int report_exit(const Context& ctx, const std::vector<Report>& reports) {
  bool ok = true;
  if (ctx.json()) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    ctx.emit(reports.size() == 1 ? arr[0] : arr);
  } else {
    for (const auto& r : reports) ctx.out() << to_text(r);
  }
  for (const auto& r : reports) ok = ok && r.pass();
  return ok ? 0 : 1;
}

std::string text_verdict(const Verdict& v) {
  std::string s = v.value ? "true" : "false";
  s += " (" + v.path + " path)";
  if (v.witness) {
    s += "\n  witness A_{" + std::to_string(v.witness->k) + ".." + std::to_string(v.witness->l) +
         "} = " + v.witness->segment.pretty() + ": " + v.witness->reason;
    if (v.witness->detail.reduction) {
      const auto& red = *v.witness->detail.reduction;
      s += "\n  " + v.witness->detail.tested->pretty() + " reduces by";
      for (const auto& b : red.bites) s += " " + b.pretty();
      s += " to " + red.residual.pretty() + " [" + to_string(red.kind) + "]";
    }
  }
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric systems and exceptional collections on weak del Pezzo surfaces", "wdp"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Time budget in seconds for search subcommands (0: none)");
  app.add_option("--data", g.data, "Directory with registry.json / tables.json overriding the built-in data");

  std::function<int(Context&)> action;

  // classes
  auto* classes = app.add_subcommand("classes", "Enumerate classes with given square and K-degree");
  std::string lattice_name;
  std::int64_t sq = 0, kdeg = 0;
  bool count_only = false;
  classes->add_option("--lattice", lattice_name, "P2, B<n>, F<d>")->required();
  classes->add_option("--square", sq)->required()->allow_extra_args(false);
  classes->add_option("--kdeg", kdeg)->required();
  classes->add_flag("--count-only", count_only);
  classes->callback([&] {
    action = [&](Context& ctx) {
      const auto l = PicardLattice::parse(lattice_name);
      const auto v = enumerate_classes(l, sq, kdeg);
      if (ctx.json()) {
        if (count_only) {
          ctx.emit({{"count", v.size()}});
        } else {
          Json arr = Json::array();
          for (const auto& d : v) arr.push_back(to_json(d));
          ctx.emit(arr);
        }
      } else if (count_only) {
        ctx.out() << v.size() << "\n";
      } else {
        for (const auto& d : v) ctx.out() << d.to_string() << "\n";
      }
      return 0;
    };
  });

  // surface
  auto* surface = app.add_subcommand("surface", "Surface types");
  surface->require_subcommand(1);
  auto* surface_show = surface->add_subcommand("show", "Print derived sets");
  std::string label;
  surface_show->add_option("label", label)->required();
  surface_show->callback([&] {
    action = [&](Context& ctx) {
      const auto s = ctx.registry().get(label);
      if (ctx.json()) {
        ctx.emit(to_json(*s));
        return 0;
      }
      auto list = [&](const char* name, const std::vector<DivisorClass>& v) {
        ctx.out() << name << " (" << v.size() << "):";
        for (const auto& d : v) ctx.out() << " " << d.pretty();
        ctx.out() << "\n";
      };
      ctx.out() << s->name() << "  lattice " << s->lattice().name() << "  degree " << s->degree() << "  type "
                << s->dynkin_label() << "\n";
      list("R^irr", s->r_irr());
      list("R^eff", s->r_eff());
      list("R^slo", s->r_slo());
      list("I^irr", s->i_irr());
      return 0;
    };
  });
  auto* surface_list = surface->add_subcommand("list", "List registered types");
  surface_list->callback([&] {
    action = [&](Context& ctx) {
      Json arr = Json::array();
      for (const auto& s : ctx.registry().all()) {
        if (ctx.json())
          arr.push_back({{"name", s->name()}, {"lattice", s->lattice().name()}, {"lines", s->i_irr().size()}});
        else
          ctx.out() << s->name() << "\t" << s->lattice().name() << "\t" << s->dynkin_label() << "\t"
                    << s->i_irr().size() << "\n";
      }
      if (ctx.json()) ctx.emit(arr);
      return 0;
    };
  });

  // effective
  auto* effective = app.add_subcommand("effective", "Decide effectiveness of a class");
  std::string surface_label, class_expr;
  bool witness = false;
  effective->add_option("--surface", surface_label)->required();
  effective->add_option("--class", class_expr)->required();
  effective->add_flag("--witness", witness);
  effective->callback([&] {
    action = [&](Context& ctx) {
      const auto s = ctx.registry().get(surface_label);
      const auto d = parse_class(s->lattice(), class_expr);
      const auto red = zariski_reduce(*s, d);
      if (ctx.json()) {
        Json j = to_json(red);
        j["class"] = d.pretty();
        ctx.emit(j);
      } else {
        ctx.out() << (red.effective ? "true" : "false") << "\n";
        if (witness || !red.effective) {
          ctx.out() << "  bites:";
          for (const auto& b : red.bites) ctx.out() << " " << b.pretty();
          if (red.bites.empty()) ctx.out() << " none";
          ctx.out() << "\n  residual: " << red.residual.pretty() << " [" << to_string(red.kind) << "]\n";
        }
      }
      return red.effective ? 0 : 1;
    };
  });

  // toric
  auto* toric = app.add_subcommand("toric", "Toric-system operations");
  toric->require_subcommand(1);
  std::string system_file;
  int index = 1;
  auto load = [&](const Context& ctx) { return load_system(system_file, ctx.registry(), surface_label); };
  auto emit_system = [](const Context& ctx, const ToricSystem& a) {
    if (ctx.json())
      ctx.emit(to_json(a));
    else
      ctx.out() << a.surface()->name() << " " << a.to_string() << "\n";
  };
  for (const char* name : {"validate", "squares", "perm", "shift", "segments"}) {
    auto* sub = toric->add_subcommand(name);
    sub->add_option("--system", system_file, "JSON or text system file")->required();
    sub->add_option("--surface", surface_label, "Override the surface label of the file");
    if (std::string(name) == "perm" || std::string(name) == "shift")
      sub->add_option("--k", index, std::string(name) == "perm" ? "Index k with A_k^2 = -2" : "Shift amount");
    const std::string op = name;
    sub->callback([&, op] {
      action = [&, op](Context& ctx) {
        if (op == "validate") {
          // Report the violation instead of failing with an input error.
          try {
            const auto a = load(ctx);
            if (ctx.json())
              ctx.emit({{"valid", true}, {"system", to_json(a)}});
            else
              ctx.out() << "valid\n";
            return 0;
          } catch (const ToricError& e) {
            if (ctx.json())
              ctx.emit({{"valid", false}, {"violation", e.what()}});
            else
              ctx.out() << "invalid: " << e.what() << "\n";
            return 1;
          }
        }
        const auto a = load(ctx);
        if (op == "squares") {
          const auto s = squares(a);
          if (ctx.json())
            ctx.emit({{"squares", s}, {"admissible", is_admissible(s)}, {"first_kind", is_first_kind(s)}});
          else
            ctx.out() << format_sequence(s) << "\n";
        } else if (op == "perm") {
          emit_system(ctx, perm(a, index));
        } else if (op == "shift") {
          emit_system(ctx, shift(a, index));
        } else {
          Json arr = Json::array();
          for (const auto& seg : exposable_segments(a)) {
            const bool irr = a.surface()->is_irreducible_minus_one(seg.cls);
            if (ctx.json())
              arr.push_back({{"k", seg.k}, {"l", seg.l}, {"m", seg.m}, {"class", seg.cls.pretty()}, {"irreducible", irr}});
            else
              ctx.out() << "[" << seg.k << ".." << seg.l << "] m=" << seg.m << "  " << seg.cls.pretty()
                        << (irr ? "  irreducible" : "") << "\n";
          }
          if (ctx.json()) ctx.emit(arr);
        }
        return 0;
      };
    });
  }

  // admissible
  auto* admissible = app.add_subcommand("admissible", "Admissible integer sequences");
  admissible->require_subcommand(1);
  auto* adm_check = admissible->add_subcommand("check");
  std::string seq_text;
  adm_check->add_option("sequence", seq_text)->required();
  adm_check->callback([&] {
    action = [&](Context& ctx) {
      const auto seq = parse_sequence(seq_text);
      const auto v = check_admissible(seq);
      const bool fk = v.admissible && is_first_kind(seq);
      if (ctx.json()) {
        Json j{{"sequence", seq}, {"admissible", v.admissible}, {"first_kind", fk}};
        if (v.admissible) j["derivation"] = {{"base", v.base}, {"slots", v.slots}};
        ctx.emit(j);
      } else {
        ctx.out() << (v.admissible ? "true" : "false");
        if (v.admissible) {
          ctx.out() << "  from " << format_sequence(v.base);
          for (int m : v.slots) ctx.out() << " augm_" << m;
          if (fk) ctx.out() << "  (first kind)";
        }
        ctx.out() << "\n";
      }
      return v.admissible ? 0 : 1;
    };
  });
  auto* adm_first = admissible->add_subcommand("first-kind");
  bool list_flag = false;
  adm_first->add_flag("--list", list_flag);
  adm_first->callback([&] {
    action = [&](Context& ctx) {
      const auto all = enumerate_first_kind();
      if (ctx.json()) {
        ctx.emit(Json(all));
      } else if (list_flag) {
        for (const auto& s : all) ctx.out() << format_sequence(s) << "\n";
      } else {
        ctx.out() << all.size() << "\n";
      }
      return 0;
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Exceptionality of a toric system");
  std::string mode = "cyclic", path = "auto";
  check->add_option("--system", system_file)->required();
  check->add_option("--surface", surface_label);
  check->add_option("--mode", mode)->check(CLI::IsMember({"exc", "exceptional", "strong", "cyclic"}));
  check->add_option("--path", path)->check(CLI::IsMember({"auto", "fast", "general", "both"}));
  check->callback([&] {
    action = [&](Context& ctx) {
      const auto a = load(ctx);
      const Grade grade = parse_grade(mode);
      std::vector<std::pair<std::string, Verdict>> results;
      if (path == "both") {
        results.emplace_back("fast", check_grade(a, grade, CheckPath::Fast));
        results.emplace_back("general", check_grade(a, grade, CheckPath::General));
      } else {
        const CheckPath p = path == "fast" ? CheckPath::Fast : path == "general" ? CheckPath::General : CheckPath::Auto;
        results.emplace_back(path, check_grade(a, grade, p));
      }
      if (path == "both" && results[0].second.value != results[1].second.value)
        throw std::logic_error("fast and general paths disagree");
      if (ctx.json()) {
        Json j{{"mode", to_string(grade)}};
        for (const auto& [name, v] : results) j[name] = to_json(v);
        ctx.emit(j);
      } else {
        for (const auto& [name, v] : results) ctx.out() << text_verdict(v) << "\n";
      }
      return results.front().second.value ? 0 : 1;
    };
  });

  // augment-search
  auto* aug = app.add_subcommand("augment-search", "Decide whether a system is an augmentation");
  std::string grade_name = "weak";
  bool all_chains = false;
  aug->add_option("--system", system_file)->required();
  aug->add_option("--surface", surface_label);
  aug->add_option("--grade", grade_name)
      ->check(CLI::IsMember({"standard", "weak", "exceptional", "strong", "cyclic"}));
  aug->add_flag("--all-chains", all_chains, "Also require success along every blow-down chain");
  aug->callback([&] {
    action = [&](Context& ctx) {
      const auto a = load(ctx);
      AugmentVerdict v;
      if (grade_name == "standard")
        v = standard_augmentation(a);
      else if (grade_name == "weak")
        v = weak_augmentation(a);
      else
        v = graded_augmentation(a, parse_grade(grade_name));
      std::optional<ChainCheck> every;
      if (all_chains) every = weak_along_every_chain(a);
      const bool ok = v.value && (!every || every->value);
      if (ctx.json()) {
        Json j = to_json(v);
        j["grade"] = grade_name;
        if (every) {
          Json path = Json::array();
          for (const auto& e : every->failing_path) path.push_back(e.pretty());
          j["all_chains"] = {{"value", every->value}, {"failing_path", path}};
        }
        ctx.emit(j);
      } else {
        ctx.out() << (v.value ? "true" : "false") << (v.exhausted ? " (search budget exhausted)" : "") << "\n";
        if (v.chain) ctx.out() << "  " << describe(*v.chain) << "\n";
        if (every) {
          ctx.out() << "  every chain: " << (every->value ? "true" : "false");
          for (const auto& e : every->failing_path) ctx.out() << " " << e.pretty();
          ctx.out() << "\n";
        }
      }
      return ok ? 0 : 1;
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Reproduction suites");
  classify->require_subcommand(1);
  auto* tables = classify->add_subcommand("tables", "Table reproductions");
  std::optional<int> degree;
  bool deg3 = false;
  tables->add_option("--degree", degree);
  tables->add_flag("--enumerate-degree3", deg3, "Run the full enumeration for degree-3 nonexistence");
  tables->callback([&] {
    action = [&](Context& ctx) {
      auto o = ctx.suite();
      o.degree = degree;
      o.enumerate_degree3 = deg3;
      std::vector<Report> reps;
      if (!degree) {
        reps.push_back(verify_table1(o));
        reps.push_back(verify_table2(o));
        reps.push_back(verify_partition(o));
      }
      reps.push_back(verify_table_yes(o));
      reps.push_back(verify_table_no(o));
      return report_exit(ctx, reps);
    };
  });
  auto* counter = classify->add_subcommand("counterexample", "Verify the degree-2 counterexample");
  counter->callback([&] { action = [&](Context& ctx) { return report_exit(ctx, {verify_counterexample(ctx.suite())}); }; });
  auto* bad = classify->add_subcommand("example-bad", "Verify the degree-4 example that needs transpositions");
  bad->callback([&] { action = [&](Context& ctx) { return report_exit(ctx, {verify_example_bad(ctx.suite())}); }; });
  auto* search = classify->add_subcommand("search", "Search strong exceptional systems that are not weak augmentations");
  std::vector<std::string> patterns;
  std::size_t start = 0;
  search->add_option("--surface", surface_label)->required();
  search->add_option("--pattern", patterns, "Squares sequence; repeatable; default all first-kind patterns");
  search->add_option("--start", start, "Resume from this pattern index");
  search->callback([&] {
    action = [&](Context& ctx) {
      const auto s = ctx.registry().get(surface_label);
      std::vector<Sequence> pats;
      for (const auto& p : patterns) pats.push_back(parse_sequence(p));
      if (pats.empty()) pats = first_kind_patterns(s->rank() + 2);
      const auto rep = search_counterexamples(s, pats, ctx.suite(), start);
      if (ctx.json()) {
        ctx.emit(to_json(rep));
      } else {
        ctx.out() << rep.hits.size() << " hits among " << rep.systems << " strong-prefix systems"
                  << (rep.complete ? "" : " (budget exhausted, resume with --start " + std::to_string(rep.next_pattern) + ")")
                  << "\n";
        for (const auto& h : rep.hits) ctx.out() << "  " << h.to_string() << "\n";
      }
      return rep.hits.empty() ? 1 : 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    Context ctx(g, out);
    return action(ctx);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wdp
