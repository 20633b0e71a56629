// Left-orthogonality of classes and exceptionality of toric systems.
#pragma once

#include <optional>
#include <string>

#include "wdp/effective.hpp"
#include "wdp/toric.hpp"

namespace wdp {

/// Outcome of a single-class criterion. When the answer hinges on an
/// effectiveness test, `tested` is the class whose effectiveness was decided.
struct ClassVerdict {
  bool value;
  std::string rule;
  std::optional<DivisorClass> tested;
  std::optional<Reduction> reduction;
};

/// Throws std::invalid_argument if D is not numerically left-orthogonal.
ClassVerdict left_orthogonal(const Surface& s, const DivisorClass& d);
ClassVerdict strong_left_orthogonal(const Surface& s, const DivisorClass& d);
inline bool is_left_orthogonal(const Surface& s, const DivisorClass& d) { return left_orthogonal(s, d).value; }
inline bool is_strong_left_orthogonal(const Surface& s, const DivisorClass& d) {
  return strong_left_orthogonal(s, d).value;
}

enum class CheckPath { Auto, Fast, General };
enum class Grade { Exceptional, Strong, Cyclic };

struct Witness {
  int k;
  int l;
  DivisorClass segment;  // A_{k..l}
  std::string reason;
  ClassVerdict detail;
};

struct Verdict {
  bool value;
  /// "fast" or "general": the path that produced the answer.
  std::string path;
  std::optional<Witness> witness;
  explicit operator bool() const { return value; }
};

/// Auto uses the effectiveness criteria on (-2)-runs whenever their square
/// hypotheses hold and otherwise scans all segments. Fast throws
/// std::invalid_argument when the hypotheses fail.
Verdict check_exceptional(const ToricSystem& a, CheckPath path = CheckPath::Auto);
Verdict check_strong_exceptional(const ToricSystem& a, CheckPath path = CheckPath::Auto);
Verdict check_cyclic_strong_exceptional(const ToricSystem& a, CheckPath path = CheckPath::Auto);
Verdict check_grade(const ToricSystem& a, Grade g, CheckPath path = CheckPath::Auto);

inline bool is_exceptional(const ToricSystem& a) { return check_exceptional(a).value; }
inline bool is_strong_exceptional(const ToricSystem& a) { return check_strong_exceptional(a).value; }
inline bool is_cyclic_strong_exceptional(const ToricSystem& a) { return check_cyclic_strong_exceptional(a).value; }

std::string to_string(Grade g);
Grade parse_grade(std::string_view s);

}  // namespace wdp
