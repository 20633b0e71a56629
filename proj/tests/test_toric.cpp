#include "doctest.h"
#include "support.hpp"
#include "wdp/classes.hpp"

using namespace wdp;
using namespace wdp::test;

namespace {

const std::vector<std::string> kDeg2 = {"L14", "L567", "-L467", "2L-E123467", "E2",
                                        "L245", "-L345", "2L-E13456", "E6-E7", "-2L+E11457"};
const std::vector<std::string> kBad = {"L145", "E4", "L234", "L-E5", "E5-E1", "L35", "E3-E2", "-L+E125"};

}  // namespace

TEST_CASE("validation") {
  const auto p2 = surf("P2");
  CHECK_NOTHROW(make_system(p2, {"L", "L", "L"}));
  const std::vector<DivisorClass> bad = {cls(p2, "L"), cls(p2, "L"), cls(p2, "2L")};
  const auto v = toric_violation(p2->lattice(), bad);
  REQUIRE(v);
  CHECK_THROWS_AS(ToricSystem(p2, bad), ToricError);
  for (const char* label : {"6,empty", "6,A1,4", "6,A2", "6,A1+A2"})
    CHECK_NOTHROW(sys(label, {"L13", "E1", "L12", "E2", "L23", "E3"}));
  CHECK_THROWS_AS(sys("6,empty", {"L13", "E1", "L12", "E2", "L23"}), ToricError);
  CHECK_THROWS_AS(sys("6,empty", {"L13", "E1", "L12", "E2", "E3", "L23"}), ToricError);
}

TEST_CASE("squares of the paper systems") {
  CHECK(squares(sys("2,A1+2A3", kDeg2)) == std::vector<int>{-1, -2, -2, -2, -1, -2, -2, -1, -2, -3});
  CHECK(squares(sys("4,2A1,8", kBad)) == std::vector<int>{-2, -1, -2, 0, -2, -1, -2, -2});
  CHECK(squares(sys("P2", {"L", "L", "L"})) == std::vector<int>{1, 1, 1});
}

TEST_CASE("segments") {
  const auto a = sys("2,A1+2A3", kDeg2);
  const auto x = a.surface();
  CHECK(segment_sum(a, 9, 10) == -cls(x, "2L-E11456"));
  CHECK(segment_sum(a, 10, 10) == cls(x, "-2L+E11457"));
  for (int k = 1; k <= a.size(); ++k) CHECK(segment_sum(a, k, k) == a.at(k));
  CHECK(segment_sum(a, 10, 1) == a.at(10) + a.at(1));
  CHECK(segment_indices(9, 2, 10) == std::vector<int>{9, 10, 1, 2});
  CHECK_THROWS_AS(segment_sum(a, 3, 2), ToricError);
  CHECK_THROWS_AS(segment_sum(a, 1, 10), ToricError);
  CHECK(segment_length(9, 2, 10) == 4);
}

TEST_CASE("shift and perm") {
  const auto a = sys("4,2A1,8", kBad);
  const auto b = perm(perm(a, 8), 7);
  CHECK(b.at(6) == cls(a.surface(), "E1"));
  CHECK(squares(b) == squares(a));
  CHECK(perm(perm(a, 3), 3) == a);
  CHECK_THROWS_AS(perm(a, 2), ToricError);
  CHECK(shift(a, 8) == a);
  CHECK(shift(a).at(1) == a.at(2));
  CHECK(squares(shift(a, 3)) == shift_sequence(squares(a), 3));
  CHECK(sym_sequence({1, 2, 3, 4}) == std::vector<int>{3, 2, 1, 4});
}

TEST_CASE("augmentation and de-augmentation") {
  const auto f1 = sys("F1", {"L1", "E1", "L1", "L"});
  const auto down = blow_down_toric(f1, 2);
  CHECK(down.system.surface()->name() == "P2");
  CHECK(down.system == sys("P2", {"L", "L", "L"}));
  CHECK(augment_lattice(down.system, 2, down.blow_down) == f1);

  // The degree-7 row is an augmentation of the F1 row.
  const auto d7 = sys("7,empty", {"L1", "E1", "L12", "E2", "L2"});
  const auto seven = blow_down_toric(d7, 4);
  CHECK(squares(seven.system) == std::vector<int>{0, -1, 0, 1});
  CHECK(augment_lattice(seven.system, 4, seven.blow_down) == d7);

  CHECK_THROWS_AS(blow_down_toric(d7, 1), ToricError);
  const auto x = surf("7,empty");
  CHECK_THROWS_AS(augment_lattice(d7, 1, blow_down(x, cls(x, "E1"))), ToricError);
}

TEST_CASE("candidate positions") {
  const auto a6 = sys("6,empty", {"L13", "E1", "L12", "E2", "L23", "E3"});
  CHECK(as_set(candidate_positions(a6)) == as_set(a6.entries()));

  const auto a = sys("2,A1+2A3", kDeg2);
  const auto c = candidate_positions(a);
  CHECK(c.size() == 22);
  const auto irr = as_set(a.surface()->i_irr());
  for (const auto& d : c) {
    CHECK(irr.count(d) == 0);
    CHECK(is_r_class(d, -1));
  }
}

TEST_CASE("exposure chains land the class in the reported slot") {
  for (const auto& [label, entries] : {std::pair{std::string("2,A1+2A3"), kDeg2}, std::pair{std::string("4,2A1,8"), kBad}}) {
    const auto a = sys(label, entries);
    for (const auto& seg : exposable_segments(a)) {
      const auto ex = exposure_chain(a, seg);
      ToricSystem b = a;
      for (const auto& st : ex.steps) b = apply_step(b, st);
      CHECK(b.at(ex.position) == seg.cls);
    }
  }
}

TEST_CASE("first-kind systems have I(X,A) = I(X)") {
  Rng rng(kSeed);
  for (const auto& x : Registry::builtin().all()) {
    if (x->rank() < 3 || x->degree() < 3) continue;
    SystemSampler sampler(x);
    for (int i = 0; i < 5; ++i) {
      const auto a = sampler.sample_first_kind(rng);
      CHECK_MESSAGE(as_set(candidate_positions(a)) == as_set(minus_one_classes(x->lattice())), a.to_string());
    }
  }
}
