// Enumeration of toric systems and the classification suites.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wdp/admissible.hpp"
#include "wdp/augment.hpp"

namespace wdp {

using Clock = std::chrono::steady_clock;

struct EnumOptions {
  std::optional<Clock::time_point> deadline;
  /// Called with A_1..A_i for i <= n-1; returning false prunes the branch.
  std::function<bool(const std::vector<DivisorClass>&)> prefix_filter;
  int jobs = 1;
};

struct EnumResult {
  std::vector<ToricSystem> systems;
  bool complete = true;
  std::uint64_t nodes = 0;
};

/// All toric systems on s with the given squares, in canonical order.
EnumResult enumerate_toric_systems(const SurfacePtr& s, const Sequence& squares, const EnumOptions& opt = {});

/// A_{k..i} strong left-orthogonal for all k <= i, with i the last placed entry.
bool strong_prefix_ok(const Surface& s, const std::vector<DivisorClass>& prefix);

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<Check> checks;
  /// False when a budget cut some part short.
  bool complete = true;
  bool pass() const;
  void add(std::string name, bool pass, std::string detail = {});
};

/// Data transcribed from the classification tables.
struct TablesData {
  struct Yes {
    int degree;
    std::vector<std::string> types;
    std::vector<std::string> maximal;
    std::vector<std::string> system;
    std::vector<std::string> critical;
  };
  struct No {
    std::string surface;
    std::optional<std::string> blow_down;
  };
  struct Segment {
    int k, l;
    std::string cls;
  };
  std::vector<int> table1_roots, table1_lines;
  std::vector<std::pair<std::string, Sequence>> table2;
  std::vector<Yes> yes;
  std::vector<No> no;
  struct {
    std::string surface;
    std::vector<std::string> system;
    Sequence squares;
    std::vector<std::string> r_eff, i_irr, candidates;
    std::vector<Segment> minus_two, minus_three;
    std::string bite_class, bite_residual;
    std::vector<std::string> bites;
  } counterexample;
  struct {
    std::string surface;
    std::vector<std::string> system;
    Sequence squares;
    std::vector<std::string> i_irr;
    std::vector<int> perms;
    int position;
    std::string exposed;
  } example_bad;

  static TablesData from_json_text(std::string_view text);
  static TablesData load_file(const std::string& path);
  static const TablesData& builtin();
};

ToricSystem make_system(const SurfacePtr& s, const std::vector<std::string>& classes);

struct SuiteOptions {
  const Registry* registry = &Registry::builtin();
  const TablesData* tables = &TablesData::builtin();
  int jobs = 1;
  /// Seconds; 0 means no limit.
  double budget = 0;
  /// Restrict the table suites to one degree.
  std::optional<int> degree;
  /// Degree-3 nonexistence: run the enumeration as well as the blow-down check.
  bool enumerate_degree3 = false;
};

Report verify_table1(const SuiteOptions& opt = {});
Report verify_table2(const SuiteOptions& opt = {});
Report verify_table_yes(const SuiteOptions& opt = {});
Report verify_nonexistence(const std::string& surface, const SuiteOptions& opt = {});
Report verify_table_no(const SuiteOptions& opt = {});
/// Every registry type of degree >= 3 appears in exactly one of the two tables.
Report verify_partition(const SuiteOptions& opt = {});
Report verify_counterexample(const SuiteOptions& opt = {});
Report verify_example_bad(const SuiteOptions& opt = {});

struct SearchReport {
  std::vector<ToricSystem> hits;
  std::uint64_t systems = 0;
  bool complete = true;
  /// Index of the first pattern not fully searched; resume from here.
  std::size_t next_pattern = 0;
};
/// Strong exceptional systems that are not weak augmentations.
SearchReport search_counterexamples(const SurfacePtr& s, const std::vector<Sequence>& patterns,
                                    const SuiteOptions& opt = {}, std::size_t start_pattern = 0);

/// First-kind patterns of the given length with every rotation and reflection expanded.
std::vector<Sequence> first_kind_patterns(int length);

}  // namespace wdp
