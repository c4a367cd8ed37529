#include <random>

#include "doctest.h"
#include "filtmult/convex.hpp"

using namespace filtmult;

namespace {

using P = Point<Rational>;

Polytope<Rational> poly(std::size_t d, std::vector<P> pts) { return Polytope<Rational>::hull(d, std::move(pts)); }
Polytope<Rational> square() { return poly(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
Polytope<Rational> triangle2() { return poly(2, {{0, 0}, {2, 0}, {0, 2}}); }

Polytope<Rational> random_polytope(std::mt19937_64& rng, std::size_t d, int n) {
  std::uniform_int_distribution<int> coord(-6, 6);
  std::vector<P> pts;
  for (int i = 0; i < n; ++i) {
    P p;
    for (std::size_t k = 0; k < d; ++k) p.push_back(Rational(coord(rng)));
    pts.push_back(p);
  }
  return poly(d, pts);
}

}  // namespace

TEST_CASE("hull and volume") {
  CHECK(square().volume() == 1);
  auto pent = poly(2, {{0, 0}, {3, 0}, {3, 1}, {1, 3}, {0, 3}, {1, 1}, {2, 2}});
  CHECK(pent.vertices().size() == 5);
  CHECK(pent.volume() == 7);
  auto simplex = poly(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(simplex.volume() == Rational(1, 6));
  auto cube = poly(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
                       {Rational(1, 2), Rational(1, 2), 0}, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.volume() == 1);
  CHECK(cube.contains({Rational(1, 3), 1, Rational(1, 2)}));
  CHECK_FALSE(cube.contains({Rational(1, 3), 2, Rational(1, 2)}));

  auto seg = poly(2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(seg.vertices() == std::vector<P>{{0, 0}, {3, 3}});
  CHECK(seg.volume() == 0);
  CHECK(seg.contains({1, 1}));
  CHECK_FALSE(seg.contains({1, 2}));
  auto flat = poly(3, {{0, 0, 1}, {2, 0, 1}, {0, 2, 1}, {1, 1, 1}, {Rational(1, 2), Rational(1, 2), 1}});
  CHECK(flat.vertices().size() == 3);
  CHECK(flat.affine_dim() == 2);

  const QuadExt zero(0), r2(0, 1, 2);
  auto q = Polytope<QuadExt>::hull(2, {{zero, zero}, {r2, zero}, {zero, r2}});
  CHECK(q.volume() == QuadExt(1));
}

TEST_CASE("minkowski sums") {
  auto big = poly(2, {{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  CHECK(minkowski_sum(square(), big) == poly(2, {{0, 0}, {3, 0}, {0, 3}, {3, 3}}));
  auto pent = minkowski_sum(square(), triangle2());
  CHECK(pent == poly(2, {{0, 0}, {3, 0}, {3, 1}, {1, 3}, {0, 3}}));
  CHECK(pent.volume() == 7);
  CHECK(minkowski_sum(square(), poly(2, {{5, 7}})) == square().translated({5, 7}));
}

TEST_CASE("clipping") {
  auto c = clip(poly(2, {{0, 0}, {4, 0}, {0, 4}}), P{-1, -1}, Rational(-2));
  CHECK(c == poly(2, {{2, 0}, {4, 0}, {0, 4}, {0, 2}}));
  CHECK(c.volume() == 6);
}

TEST_CASE("volume polynomial") {
  auto p = volume_polynomial(std::vector{square(), square().translated({3, 1})});
  CHECK(p.coefficient({2, 0}) == 1);
  CHECK(p.coefficient({1, 1}) == 2);
  CHECK(p.coefficient({0, 2}) == 1);
  auto kl = volume_polynomial(std::vector{square(), triangle2()});
  CHECK(kl.coefficient({2, 0}) == 1);
  CHECK(kl.coefficient({1, 1}) == 4);
  CHECK(kl.coefficient({0, 2}) == 2);
  CHECK(mixed_volume(kl, 1) == 2);
  auto homo = volume_polynomial(std::vector{triangle2(), triangle2().scaled(2)});
  CHECK(homo.coefficient({2, 0}) == 2);
  CHECK(homo.coefficient({1, 1}) == 8);
  CHECK(homo.coefficient({0, 2}) == 8);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_polytope(rng, 3, 6);
    auto b = random_polytope(rng, 3, 6);
    auto vp = volume_polynomial(std::vector{a, b});
    auto swapped = volume_polynomial(std::vector{b, a});
    for (int i = 0; i <= 3; ++i) CHECK(vp.coefficient({3 - i, i}) == swapped.coefficient({i, 3 - i}));
    Rational l1 = make_rational(trial % 4 + 1, 3), l2 = make_rational(5 - trial % 3, 2);
    CHECK(vp.evaluate({l1, l2}) == minkowski_sum(a.scaled(l1), b.scaled(l2)).volume());
  }
}

TEST_CASE("brunn-minkowski and homothety") {
  auto eq = brunn_minkowski_check(square(), square(), Rational(1, 2));
  CHECK_FALSE(eq.strict);
  auto strict = brunn_minkowski_check(square(), triangle2(), Rational(1, 2));
  CHECK(strict.strict);
  CHECK(strict.volume_mix == Rational(7, 4));
  auto homo = brunn_minkowski_check(square(), square().scaled(3).translated({5, 5}), Rational(1, 3));
  CHECK_FALSE(homo.strict);

  auto h = homothety_detect(square(), square().scaled(2).translated({1, 1}));
  REQUIRE(h.has_value());
  CHECK(h->factor == Scalar(2));
  CHECK(h->shift[0] == Scalar(1));
  CHECK_FALSE(homothety_detect(square(), triangle2()).has_value());
  auto same = homothety_detect(triangle2(), triangle2());
  REQUIRE(same.has_value());
  CHECK(same->factor == Scalar(1));
  CHECK_THROWS_AS(homothety_detect(square(), poly(2, {{0, 0}, {1, 1}})), Error);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto k = random_polytope(rng, 3, 7);
    if (k.volume() == 0) continue;
    Rational c = std::vector<Rational>{Rational(1, 2), Rational(2), Rational(3, 5)}[trial % 3];
    auto l = k.scaled(c).translated({Rational(trial), Rational(-1, 3), 2});
    auto hd = homothety_detect(k, l);
    REQUIRE(hd.has_value());
    CHECK(hd->factor == Scalar(c));
    CHECK_FALSE(brunn_minkowski_check(k, l, Rational(2, 7)).strict);
    auto other = random_polytope(rng, 3, 7);
    if (other.volume() == 0) continue;
    auto bm = brunn_minkowski_check(k, other, Rational(1, 3));
    CHECK(bm.lhs >= bm.rhs);
    CHECK(bm.strict == !homothety_detect(k, other).has_value());
  }
}
