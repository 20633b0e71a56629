// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "properties.hpp"
#include "wdp/checker.hpp"
#include "wdp/classes.hpp"
#include "wdp/effective.hpp"

using namespace wdp;
using namespace wdp::test;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s (%.1f s, limit %.0f s)%s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  if (!in_time) std::printf("       time limit exceeded\n");
  std::fflush(stdout);
}

Outcome from_report(const Report& r) {
  long bad = 0;
  std::string first;
  for (const auto& c : r.checks)
    if (!c.pass && bad++ == 0) first = c.name + " " + c.detail;
  if (r.pass()) return {true, std::to_string(r.checks.size()) + " checks"};
  return {false, std::to_string(bad) + " of " + std::to_string(r.checks.size()) + " checks failed, first: " + first};
}

Outcome oracle_equivalence() {
  long total = 0, effective = 0, disagree = 0, surfaces = 0;
  std::string first;
  for (const auto& s : Registry::builtin().all()) {
    if (s->degree() != 5 && s->degree() != 4) continue;
    ++surfaces;
    DecompositionOracle oracle(s);
    const int r = s->rank();
    std::vector<std::int64_t> c(static_cast<std::size_t>(r), -3);
    while (true) {
      const DivisorClass d(s->lattice(), c);
      ++total;
      const bool got = is_effective(*s, d);
      effective += got;
      if (got != oracle.effective(d) && disagree++ == 0) first = s->name() + " " + d.to_string();
      int i = 0;
      while (i < r && c[static_cast<std::size_t>(i)] == 3) c[static_cast<std::size_t>(i++)] = -3;
      if (i == r) break;
      ++c[static_cast<std::size_t>(i)];
    }
  }
  return {disagree == 0 && surfaces >= 4,
          std::to_string(total) + " classes on " + std::to_string(surfaces) + " degree-5/4 types (" +
              std::to_string(effective) + " effective), " + std::to_string(disagree) + " disagreements" +
              (first.empty() ? "" : ", first " + first)};
}

}  // namespace

int main() {
  SuiteOptions opt;
  opt.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  criterion(1, "Table 1 class counts", 60, [] { return from_report(verify_table1()); });
  criterion(2, "Table 2 first-kind sequences", 5, [] { return from_report(verify_table2()); });
  criterion(3, "cyclic strong exceptional systems (yes table)", 120,
            [&] { return from_report(verify_table_yes(opt)); });
  criterion(4, "nonexistence on the no-table surfaces", 900, [&] {
    SuiteOptions o = opt;
    o.enumerate_degree3 = true;
    return from_report(verify_table_no(o));
  });
  criterion(5, "degree-2 counterexample", 60, [&] { return from_report(verify_counterexample(opt)); });
  criterion(6, "degree-4 weak-but-not-standard example", 10, [&] { return from_report(verify_example_bad(opt)); });
  criterion(7, "property suites", 1800, [] {
    std::vector<PropertyResult> rs = {
        prop_perm_involution(kSeed, 500),    prop_shift_identity(kSeed + 1, 500),
        prop_round_trip(kSeed + 2, 500),     prop_augment_squares(kSeed + 3, 500),
        prop_segment_square(kSeed + 4, 500), prop_classes0(kSeed + 5, 500),
        prop_squares_admissible(kSeed + 6, 500), prop_fast_general(kSeed + 7, 1000),
        prop_weak_every_chain(kSeed + 8, 500),
    };
    bool ok = true;
    std::string detail;
    for (const auto& r : rs) {
      ok = ok && r.ok() && r.cases >= 500;
      detail += "\n       " + std::string(r.ok() ? "ok   " : "FAIL ") + r.name + " (" + std::to_string(r.cases) +
                " cases, " + std::to_string(r.failures) + " failures)";
      if (!r.ok()) detail += " first: " + r.first_failure;
    }
    return Outcome{ok, std::to_string(rs.size()) + " suites" + detail};
  });
  criterion(8, "effectiveness oracle equivalence", 600, oracle_equivalence);

  std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
