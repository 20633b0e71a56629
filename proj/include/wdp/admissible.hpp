// Integer sequences under sequence-level augmentation.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wdp {

using Sequence = std::vector<int>;

/// augm_m for 1 <= m <= n+1: insert -1 at slot m, decrement both cyclic neighbours.
Sequence augment_sequence(const Sequence& a, int m);
/// Lexicographically smallest rotation of a or of its reverse.
Sequence dihedral_canonical(const Sequence& a);
bool is_base_sequence(const Sequence& a);

struct AdmissibleVerdict {
  bool admissible = false;
  /// From the base sequence up to a: each entry is the augmentation slot
  /// applied to the previous sequence.
  Sequence base;
  std::vector<int> slots;
};

AdmissibleVerdict check_admissible(const Sequence& a);
inline bool is_admissible(const Sequence& a) { return check_admissible(a).admissible; }
bool is_first_kind(const Sequence& a);

/// Canonical representatives of all first-kind sequences, sorted by (length, value).
std::vector<Sequence> enumerate_first_kind();
/// All distinct rotations and reflections of a.
std::vector<Sequence> dihedral_orbit(const Sequence& a);

Sequence parse_sequence(std::string_view text);
std::string format_sequence(const Sequence& a);

}  // namespace wdp
