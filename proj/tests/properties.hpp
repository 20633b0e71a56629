// Randomized property suites. Each returns a tally so both the doctest
// runner and the acceptance binary can report them.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "support.hpp"

namespace wdp::test {

struct PropertyResult {
  explicit PropertyResult(std::string n) : name(std::move(n)) {}
  std::string name;
  long cases = 0;
  long failures = 0;
  std::string first_failure;
  bool ok() const { return cases > 0 && failures == 0; }
  void check(bool cond, const std::function<std::string()>& what);
};

PropertyResult prop_perm_involution(std::uint64_t seed, int cases);
PropertyResult prop_shift_identity(std::uint64_t seed, int cases);
PropertyResult prop_round_trip(std::uint64_t seed, int cases);
PropertyResult prop_augment_squares(std::uint64_t seed, int cases);
PropertyResult prop_segment_square(std::uint64_t seed, int cases);
PropertyResult prop_classes0(std::uint64_t seed, int cases);
PropertyResult prop_squares_admissible(std::uint64_t seed, int cases);
PropertyResult prop_fast_general(std::uint64_t seed, int per_surface);
PropertyResult prop_weak_every_chain(std::uint64_t seed, int per_surface);

}  // namespace wdp::test
