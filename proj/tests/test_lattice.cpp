#include "doctest.h"
#include "support.hpp"
#include "wdp/classes.hpp"

using namespace wdp;
using namespace wdp::test;

namespace {

// Fraction-free Gaussian elimination; returns the leading principal minors.
std::vector<std::int64_t> leading_minors(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
    if (prev == 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("canonical class and degree") {
  for (int n = 0; n <= 8; ++n) {
    const auto l = PicardLattice::blowup(n);
    const auto k = DivisorClass::canonical(l);
    CHECK(square(k) == 9 - n);
    CHECK(l.degree() == 9 - n);
    CHECK(k[0] == -3);
    for (int i = 1; i <= n; ++i) CHECK(k[i] == 1);
  }
  for (int d : {0, 1, 2}) {
    const auto l = PicardLattice::hirzebruch(d);
    CHECK(square(DivisorClass::canonical(l)) == 8);
    CHECK(l.form(0, 0) == 0);
    CHECK(l.form(0, 1) == 1);
    CHECK(l.form(1, 1) == d);
  }
}

TEST_CASE("euler characteristic and r-classes") {
  const auto b6 = PicardLattice::blowup(6);
  CHECK(euler_char(DivisorClass::exceptional(b6, 1)) == 1);
  CHECK(is_r_class(DivisorClass::exceptional(PicardLattice::blowup(4), 1), -1));
  CHECK(euler_char(DivisorClass::line(b6)) == 3);
  CHECK(euler_char(DivisorClass::canonical(b6)) == 1);
  for (int r = -2; r <= 1; ++r)
    for (const auto& d : r_classes(b6, r)) {
      CHECK(euler_char(d) == square(d) + 2);
      CHECK(is_numerically_left_orthogonal(d));
    }
}

TEST_CASE("parsing round trips") {
  const auto b7 = PicardLattice::blowup(7);
  CHECK(parse_class(b7, "L_{145}") == DivisorClass::line_minus(b7, {1, 4, 5}));
  CHECK(parse_class(b7, "2L-E_{11457}") == parse_class(b7, "2L - 2E1 - E4 - E5 - E7"));
  CHECK(parse_class(b7, "-L_{467}") == -DivisorClass::line_minus(b7, {4, 6, 7}));
  CHECK(parse_class(b7, "K") == DivisorClass::canonical(b7));
  CHECK(parse_class(b7, "[1, -1, 0, 0, -1, 0, 0, 0]") == DivisorClass::line_minus(b7, {1, 4}));
  for (const auto& d : minus_one_classes(b7)) {
    CHECK(parse_class(b7, d.pretty()) == d);
    CHECK(parse_class(b7, d.to_string()) == d);
    CHECK(parse_class(b7, d.to_vector_string()) == d);
  }
  CHECK_THROWS_AS(parse_class(b7, "L-E9"), ParseError);
  CHECK_THROWS_AS(parse_class(b7, "2Q"), ParseError);
  const auto f2 = PicardLattice::hirzebruch(2);
  CHECK(parse_class(f2, "S-F") == DivisorClass(f2, {-1, 1}));
}

TEST_CASE("intersection form is bilinear and symmetric") {
  Rng rng(kSeed);
  std::uniform_int_distribution<int> coef(-5, 5), nd(0, 8);
  for (int t = 0; t < 500; ++t) {
    const auto l = rng() % 4 == 0 ? PicardLattice::hirzebruch(static_cast<int>(rng() % 3)) : PicardLattice::blowup(nd(rng));
    auto rnd = [&] {
      DivisorClass d(l);
      for (int i = 0; i < l.rank(); ++i) d[i] = coef(rng);
      return d;
    };
    const auto a = rnd(), b = rnd(), c = rnd();
    const std::int64_t s = coef(rng);
    CHECK(intersect(a + b, c) == intersect(a, c) + intersect(b, c));
    CHECK(intersect(s * a, c) == s * intersect(a, c));
    CHECK(intersect(a, b) == intersect(b, a));
  }
}

TEST_CASE("K-perp is negative definite") {
  for (int n = 3; n <= 8; ++n) {
    const auto l = PicardLattice::blowup(n);
    std::vector<DivisorClass> basis{DivisorClass::line_minus(l, {1, 2, 3})};
    for (int i = 1; i < n; ++i) basis.push_back(DivisorClass::exceptional(l, i) - DivisorClass::exceptional(l, i + 1));
    std::vector<std::vector<std::int64_t>> gram;
    for (const auto& x : basis) {
      CHECK(k_degree(x) == 0);
      gram.emplace_back();
      for (const auto& y : basis) gram.back().push_back(intersect(x, y));
    }
    const auto minors = leading_minors(gram);
    REQUIRE(minors.size() == basis.size());
    for (std::size_t k = 0; k < minors.size(); ++k) CHECK(((k % 2 == 0) ? -minors[k] : minors[k]) > 0);
  }
}

TEST_CASE("hirzebruch isometry") {
  for (int d : {1, 3, 5})
    for (int n = 0; n <= 2; ++n) {
      const auto phi = hirzebruch_isometry(d, n);
      CHECK(phi.preserves_form());
      CHECK(phi.maps_canonical_to_canonical());
      const auto& src = phi.source();
      for (int i = 0; i < src.rank(); ++i)
        for (int j = 0; j < src.rank(); ++j)
          CHECK(intersect(phi.apply(DivisorClass::basis(src, i)), phi.apply(DivisorClass::basis(src, j))) ==
                src.form(i, j));
      CHECK(phi.apply(DivisorClass::canonical(src)) == DivisorClass::canonical(phi.target()));
    }
}

TEST_CASE("dual class") {
  const auto b5 = PicardLattice::blowup(5);
  for (const auto& d : minus_one_classes(b5)) {
    const auto e = dual_class(d);
    CHECK(square(d) + square(e) == b5.degree() - 4);
    CHECK(d + e == -DivisorClass::canonical(b5));
  }
}

TEST_CASE("overflow is detected") {
  const auto b1 = PicardLattice::blowup(1);
  DivisorClass big(b1, {std::int64_t{1} << 62, 0});
  CHECK_THROWS(big + big);
}
