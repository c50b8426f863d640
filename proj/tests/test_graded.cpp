#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qmod/graded.hpp"
#include "testutil.hpp"

using namespace qmod;
using qmod::test::ExteriorOracle;
using qmod::test::Rng;

namespace {

Chart odd2(unsigned d = 8) {
  return Chart::make({{"th1", Parity::Odd, {}}, {"th2", Parity::Odd, {}}}, d);
}

Chart mixed(unsigned d = 8) {
  return Chart::make({{"x", Parity::Even, {}}, {"th1", Parity::Odd, {}}, {"th2", Parity::Odd, {}}}, d);
}

}  // namespace

TEST_CASE("chart invariants") {
  CHECK_THROWS_AS(Chart::make({{"x", Parity::Even, {}}, {"x", Parity::Odd, {}}}), Error);
  CHECK_THROWS_AS(Chart::make({{"x", Parity::Even, {}}}, 0), Error);
  Chart a = mixed(), b = mixed(), c = mixed(4);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("add") {
  Chart ch = mixed();
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th12 = th1 * GradedElem::coordinate(ch, "th2");

  CHECK(th1 + th1 == Rational(2) * th1);
  GradedElem f = x + th12;
  CHECK(f + GradedElem::zero(ch) == f);
  CHECK((x + th12) + (-x) == th12);
  CHECK_THROWS_AS(x + GradedElem::coordinate(odd2(), "th1"), ChartMismatch);
}

TEST_CASE("mul") {
  Chart ch = mixed();
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem th2 = GradedElem::coordinate(ch, "th2");

  CHECK((th1 * th1).is_zero());
  CHECK(th2 * th1 == -(th1 * th2));
  CHECK((x + th1 * th2) * (x - th1 * th2) == x * x);
}

TEST_CASE("mul respects truncation") {
  Chart ch = Chart::make({{"x", Parity::Even, {}}}, 3);
  GradedElem x = GradedElem::coordinate(ch, "x");
  CHECK(x.pow(3) == x * x * x);
  CHECK(x.pow(4).is_zero());
}

TEST_CASE("left_partial") {
  Chart ch = mixed();
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem th2 = GradedElem::coordinate(ch, "th2");

  CHECK((th1 * th2).left_partial("th1") == th2);
  CHECK((th1 * th2).left_partial("th2") == -th1);
  CHECK((x * x * th1).left_partial("x") == Rational(2) * (x * th1));
  CHECK_THROWS_AS(x.left_partial("nope"), Error);
}

TEST_CASE("inverse") {
  Chart ch = mixed(8);
  GradedElem one = GradedElem::constant(ch, 1);
  CHECK(one.inverse() == one);

  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem geo = GradedElem::zero(ch);
  for (unsigned k = 0; k <= 8; ++k)
    geo += ((k & 1u) ? Rational(-1) : Rational(1)) * x.pow(k);
  CHECK((one + x).inverse() == geo);

  GradedElem th12 = GradedElem::coordinate(ch, "th1") * GradedElem::coordinate(ch, "th2");
  GradedElem f = GradedElem::constant(ch, 2) + th12;
  CHECK(f.inverse() == GradedElem::constant(ch, Rational(1) / 2) - (Rational(1) / 4) * th12);
  CHECK(f * f.inverse() == one);

  CHECK_THROWS_AS(th12.left_partial("th1").inverse(), Error);  // odd
  CHECK_THROWS_AS(x.inverse(), Error);                         // zero constant
}

TEST_CASE("substitute") {
  Chart ch = mixed();
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem th2 = GradedElem::coordinate(ch, "th2");
  GradedElem one = GradedElem::constant(ch, 1);

  ChartMorphism shift(ch, ch, {x + one, th1, th2});
  CHECK(substitute(x * x, shift) == x * x + Rational(2) * x + one);

  ChartMorphism swap(ch, ch, {x, th2, th1});
  CHECK(substitute(th1 * th2, swap) == -(th1 * th2));

  GradedElem f = x * th1 + th2 + x * x;
  CHECK(substitute(f, ChartMorphism::identity(ch)) == f);

  // parity mismatch in the rule is rejected
  CHECK_THROWS_AS(ChartMorphism(ch, ch, {th1, x, th2}), ParityError);
}

TEST_CASE("substitute is an algebra morphism") {
  Chart ch = mixed(6);
  Rng rng(7);
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem th2 = GradedElem::coordinate(ch, "th2");
  ChartMorphism rule(ch, ch, {x + x * x, th1 + x * th2, th2 - th1});
  for (int i = 0; i < 50; ++i) {
    GradedElem f = qmod::test::random_elem(ch, rng);
    GradedElem g = qmod::test::random_elem(ch, rng);
    CHECK(substitute(f * g, rule) == substitute(f, rule) * substitute(g, rule));
  }
}

TEST_CASE("supercommutativity") {
  Chart ch = mixed(6);
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Parity pf = static_cast<Parity>(rng.uniform(0, 1));
    Parity pg = static_cast<Parity>(rng.uniform(0, 1));
    GradedElem f = qmod::test::random_homogeneous(ch, rng, pf);
    GradedElem g = qmod::test::random_homogeneous(ch, rng, pg);
    bool minus = pf == Parity::Odd && pg == Parity::Odd;
    CHECK(f * g == (minus ? -(g * f) : g * f));
  }
}

TEST_CASE("associativity on 1000 random triples") {
  Chart ch = mixed(5);
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    GradedElem f = qmod::test::random_elem(ch, rng, 3);
    GradedElem g = qmod::test::random_elem(ch, rng, 3);
    GradedElem h = qmod::test::random_elem(ch, rng, 3);
    CHECK((f * g) * h == f * (g * h));
  }
}

TEST_CASE("left partials supercommute") {
  Chart ch = mixed(6);
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    GradedElem f = qmod::test::random_elem(ch, rng);
    for (std::size_t a = 0; a < ch.size(); ++a)
      for (std::size_t b = 0; b < ch.size(); ++b) {
        bool minus = ch.coord(a).parity == Parity::Odd && ch.coord(b).parity == Parity::Odd;
        GradedElem lhs = f.left_partial(b).left_partial(a);
        GradedElem rhs = f.left_partial(a).left_partial(b);
        CHECK(lhs == (minus ? -rhs : rhs));
      }
  }
}

TEST_CASE("graded Leibniz rule for left_partial") {
  Chart ch = mixed(6);
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    Parity pf = static_cast<Parity>(rng.uniform(0, 1));
    GradedElem f = qmod::test::random_homogeneous(ch, rng, pf);
    GradedElem g = qmod::test::random_elem(ch, rng);
    for (std::size_t c = 0; c < ch.size(); ++c) {
      bool minus = ch.coord(c).parity == Parity::Odd && pf == Parity::Odd;
      GradedElem lhs = (f * g).left_partial(c);
      GradedElem rhs = f.left_partial(c) * g + (minus ? -(f * g.left_partial(c)) : f * g.left_partial(c));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("matrix oracle equivalence on purely odd charts") {
  Rng rng(23);
  for (unsigned n = 1; n <= 5; ++n) {
    std::vector<Coord> coords;
    for (unsigned i = 1; i <= n; ++i)
      coords.push_back({"th" + std::to_string(i), Parity::Odd, {}});
    Chart ch = Chart::make(coords, 4);
    ExteriorOracle oracle(ch);
    for (int i = 0; i < 40; ++i) {
      GradedElem f = qmod::test::random_elem(ch, rng, 4);
      GradedElem g = qmod::test::random_elem(ch, rng, 4);
      CHECK(f * g == oracle.mul(f, g));
      CHECK(f + g == oracle.add(f, g));
      for (std::size_t c = 0; c < n; ++c)
        CHECK(f.left_partial(c) == oracle.left_partial(f, c));
    }
  }
}

TEST_CASE("canonical rendering") {
  Chart ch = mixed();
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem th2 = GradedElem::coordinate(ch, "th2");

  CHECK(GradedElem::zero(ch).to_string() == "0");
  CHECK((x * x - th1 * th2 + GradedElem::constant(ch, Rational(1) / 2)).to_string() ==
        "1/2 + x^2 - th1*th2");
  CHECK(((Rational(-1) * x) + th1).to_string() == "-x + th1");
  CHECK((Rational(3) * (x * th1)).to_string() == "3*x*th1");
}

TEST_CASE("parity split") {
  Chart ch = mixed();
  GradedElem x = GradedElem::coordinate(ch, "x");
  GradedElem th1 = GradedElem::coordinate(ch, "th1");
  GradedElem f = x + th1 + x * th1;
  CHECK(f.parity() == std::nullopt);
  CHECK(f.even_part() == x);
  CHECK(f.odd_part() == th1 + x * th1);
  CHECK(f.even_part() + f.odd_part() == f);
  CHECK(GradedElem::zero(ch).parity() == Parity::Even);
}
