#include <random>

#include "doctest.h"
#include "filtmult/numeric.hpp"

using namespace filtmult;

namespace {
QuadExt sqrt3() { return QuadExt(0, 1, 3); }
}

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_fraction_string(Rational(4)) == "4/1");
  CHECK(to_display_string(Rational(4)) == "4");
  CHECK(to_display_string(Rational(-3, 2)) == "-3/2");
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
  CHECK(floor_rational(Rational(-3, 2)) == -2);
  CHECK(ceil_rational(Rational(-3, 2)) == -1);
}

TEST_CASE("quadratic extension arithmetic") {
  QuadExt c = QuadExt(3) / (QuadExt(9) - sqrt3());
  CHECK(c == QuadExt(Rational(9, 26), Rational(1, 26), 3));
  CHECK(to_display_string(QuadExt(Rational(2007, 169), Rational(-9, 338), 3)) == "2007/169 - 9/338*sqrt(3)");
  CHECK(QuadExt::sqrt_of(12) == QuadExt(0, 2, 3));
  CHECK(QuadExt::sqrt_of(16).is_rational());
  CHECK((QuadExt(3) - sqrt3() / QuadExt(3)).sign() > 0);
  CHECK(QuadExt(2, -1, 3).sign() > 0);
  CHECK(QuadExt(1, -1, 3).sign() < 0);
  CHECK((QuadExt(2) * sqrt3()).floor() == 3);
  CHECK((QuadExt(2) * sqrt3()).ceil() == 4);
  CHECK_THROWS_AS(sqrt3() + QuadExt(0, 1, 2), Error);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-50, 50);
  for (int i = 0; i < 200; ++i) {
    Rational a = make_rational(dist(rng), 7), b = make_rational(dist(rng), 5);
    QuadExt x(a, b, 5);
    CHECK((x * x.conjugate()).a() == a * a - 5 * b * b);
    if (x.sign() != 0) CHECK(x * x.inverse() == QuadExt(1));
  }
}

TEST_CASE("scalar tower") {
  Scalar s = Scalar(sqrt3()) * Scalar(sqrt3());
  CHECK(s.is_rational());
  CHECK(s == Scalar(3));
  Scalar mixed = Scalar(sqrt3()) + Scalar(QuadExt(0, 1, 2));
  CHECK(mixed.kind() == ScalarKind::kFloat);
  CHECK(std::abs(mixed.to_double() - (1.7320508075688772 + 1.4142135623730951)) < 1e-9);
  CHECK(Scalar::from_double(1.0, 1e-6) == Scalar(Rational(1000001, 1000000)));
  CHECK(dth_root(Scalar(Rational(8, 27)), 3) == Scalar(Rational(2, 3)));
  CHECK(dth_root(Scalar(6), 2) == Scalar(QuadExt(0, 1, 6)));
  CHECK(dth_root(Scalar(6), 3).kind() == ScalarKind::kFloat);
  CHECK(to_display_string(Scalar::from_double(0.5), 6) == "~0.5");
}

TEST_CASE("one-sided approximation examples") {
  auto b = approximate_below(Scalar(Rational(3, 2)), Rational(1, 10));
  CHECK(b.p == 3);
  CHECK(b.q == 2);
  auto a = approximate_above(Scalar(Rational(3, 2)), Rational(1, 10));
  CHECK(a.p == 3);
  CHECK(a.q == 2);

  auto below = approximate_below(Scalar(sqrt3()), Rational(1, 20));
  CHECK(below.p == 71);
  CHECK(below.q == 41);
  auto above = approximate_above(Scalar(sqrt3()), Rational(1, 20));
  CHECK(above.p == 26);
  CHECK(above.q == 15);

  auto boundary = approximate_below(Scalar(QuadExt(3) - sqrt3() / QuadExt(3)), Rational(1, 100));
  CHECK(boundary.p == 172);
  CHECK(boundary.q == 71);

  auto inv2 = approximate_above(Scalar(QuadExt(0, Rational(1, 2), 2)), Rational(1, 50));
  CHECK(inv2.p == 29);
  CHECK(inv2.q == 41);

  CHECK_THROWS_AS(approximate_below(Scalar(-1), Rational(1, 2)), Error);
  CHECK_THROWS_AS(approximate_below(Scalar(sqrt3()), Rational(1, 1000000), Integer(10)), Error);
  try {
    approximate_below(Scalar::from_double(1.7320508, 1e-3), Rational(1, 100000));
    FAIL("expected precision exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPrecisionExhausted);
  }
}

TEST_CASE("shrinking alpha tightens the approximation") {
  Integer last_q = 0;
  for (int k = 1; k <= 8; ++k) {
    Rational alpha(1, 1);
    for (int i = 0; i < k; ++i) alpha /= 10;
    auto r = approximate_below(Scalar(QuadExt(0, 1, 7)), alpha);
    CHECK(r.q >= last_q);
    last_q = r.q;
  }
}

TEST_CASE("rational d-th roots") {
  CHECK(rational_dth_root(Scalar(4), Scalar(1), 2) == Rational(2));
  CHECK(rational_dth_root(Scalar(216 * 5), Scalar(27 * 5), 3) == Rational(2));
  CHECK_FALSE(rational_dth_root(Scalar(6), Scalar(1), 2).has_value());
  CHECK_THROWS_AS(rational_dth_root(Scalar::from_double(4.0), Scalar(1), 2), Error);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(1, 500), den(1, 300), deg(1, 4);
  for (int i = 0; i < 1000; ++i) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    unsigned d = static_cast<unsigned>(deg(rng));
    Rational p = 1;
    for (unsigned k = 0; k < d; ++k) p *= x;
    auto root = rational_dth_root(Scalar(p), Scalar(1), d);
    REQUIRE(root.has_value());
    CHECK(*root == x);
  }
}
