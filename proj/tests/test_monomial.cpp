#include <random>

#include "doctest.h"
#include "filtmult/monomial.hpp"

using namespace filtmult;

namespace {

MonomialIdeal ideal2(std::vector<ExponentVector> gens) { return MonomialIdeal(2, std::move(gens)); }
MonomialIdeal max_ideal(std::size_t d) { return MonomialIdeal::maximal_power(d, 1); }

std::int64_t brute_colength(const MonomialIdeal& ideal, std::int64_t box) {
  std::int64_t count = 0;
  const std::size_t d = ideal.dim();
  std::vector<std::int64_t> p(d, 0);
  while (true) {
    if (!ideal.contains(ExponentVector(p))) ++count;
    std::size_t i = 0;
    while (i < d) {
      if (++p[i] <= box) break;
      p[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return count;
}

}  // namespace

TEST_CASE("colength") {
  CHECK(colength(MonomialIdeal::maximal_power(2, 2)) == 3);
  CHECK(colength(ideal2({{2, 0}, {0, 3}})) == 6);
  // the staircase complement of (x^3, x^2y, xy^3, y^4) has 8 points
  CHECK(colength(ideal2({{3, 0}, {2, 1}, {1, 3}, {0, 4}})) == 8);
  CHECK(colength(MonomialIdeal::maximal_power(3, 2)) == 4);
  CHECK(colength(MonomialIdeal::unit(3)) == 0);
  CHECK_THROWS_AS(colength(ideal2({{1, 1}, {2, 0}})), Error);
}

TEST_CASE("ideal operations") {
  CHECK(product(max_ideal(2), max_ideal(2)) == ideal2({{2, 0}, {1, 1}, {0, 2}}));
  CHECK(product(max_ideal(2), ideal2({{2, 0}, {0, 3}})) == ideal2({{3, 0}, {2, 1}, {1, 3}, {0, 4}}));
  CHECK(intersect(ideal2({{2, 0}}), ideal2({{0, 3}})) == ideal2({{2, 3}}));
  CHECK(power(ideal2({{2, 0}, {0, 3}}), 2) == ideal2({{4, 0}, {2, 3}, {0, 6}}));
  CHECK(max_ideal(2).contains(ExponentVector{1, 0}));
  CHECK_FALSE(max_ideal(2).contains(ExponentVector{0, 0}));
  CHECK_THROWS_AS(product(max_ideal(2), max_ideal(3)), Error);
  CHECK(ideal2({{1, 2}, {1, 1}, {2, 2}}).generators().size() == 1);
}

TEST_CASE("colength agrees with a brute-force count") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(0, 4), count(1, 4), dim(2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = static_cast<std::size_t>(dim(rng));
    auto random_ideal = [&] {
      std::vector<ExponentVector> gens;
      for (std::size_t i = 0; i < d; ++i) {
        ExponentVector e(d);
        e[i] = coord(rng) + 1;
        gens.push_back(e);
      }
      for (int k = count(rng); k > 0; --k) {
        ExponentVector e(d);
        for (std::size_t i = 0; i < d; ++i) e[i] = coord(rng);
        gens.push_back(e);
      }
      return MonomialIdeal(d, gens);
    };
    auto i = random_ideal();
    auto j = random_ideal();
    auto ij = product(i, j);
    CHECK(colength(ij) == brute_colength(ij, 10));
    CHECK(colength(intersect(i, j)) == brute_colength(intersect(i, j), 10));
  }
}

TEST_CASE("newton polyhedron and integral closure") {
  auto np = newton_polyhedron(ideal2({{2, 0}, {0, 2}}));
  CHECK(np == std::vector<ExponentVector>{{0, 2}, {2, 0}});
  np = newton_polyhedron(ideal2({{3, 0}, {2, 1}, {1, 3}, {0, 4}}));
  CHECK(np == std::vector<ExponentVector>{{0, 4}, {2, 1}, {3, 0}});
  np = newton_polyhedron(max_ideal(3));
  CHECK(np.size() == 3);

  CHECK(integral_closure_ideal(ideal2({{2, 0}, {0, 2}})) == ideal2({{2, 0}, {1, 1}, {0, 2}}));
  CHECK(integral_closure_ideal(max_ideal(2)) == max_ideal(2));
  CHECK(integral_closure_ideal(ideal2({{4, 0}, {0, 2}})) == ideal2({{4, 0}, {2, 1}, {0, 2}}));
  auto i = ideal2({{3, 0}, {2, 1}, {1, 3}, {0, 4}});
  CHECK(integral_closure_ideal(i) == i);

  auto j = MonomialIdeal(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  auto jbar = integral_closure_ideal(j);
  CHECK(jbar == MonomialIdeal::maximal_power(3, 2));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ExponentVector> gens{{coord(rng) + 1, 0, 0}, {0, coord(rng) + 1, 0}, {0, 0, coord(rng) + 1}};
    for (int k = 0; k < 3; ++k) gens.push_back({coord(rng), coord(rng), coord(rng)});
    MonomialIdeal ideal(3, gens);
    auto closed = integral_closure_ideal(ideal);
    CHECK(closed.contains(ideal));
    CHECK(integral_closure_ideal(closed) == closed);
  }
  CHECK_THROWS_AS(integral_closure_ideal(ideal2({{1, 1}})), Error);
}

TEST_CASE("filtration levels") {
  auto m = max_ideal(2);
  CHECK(Filtration::adic(power(m, 2)).level(3) == power(m, 6));

  auto f = Filtration::divisorial_toric(2, {{WeightValuation({1, 2}), Scalar(1)}});
  CHECK(f.level(3) == ideal2({{0, 2}, {1, 1}, {3, 0}}));
  auto g = Filtration::divisorial_toric(2, {{WeightValuation({1, 1}), Scalar(QuadExt(0, 1, 2))}});
  CHECK(g.level(2) == power(m, 3));
  CHECK(g.colength(2) == 6);

  auto r = Filtration::rescale(Filtration::adic(m), 3);
  CHECK(r.level(2) == power(m, 6));

  auto t = Filtration::truncate(f, 1);
  CHECK(t.level(2) == power(f.level(1), 2));

  auto c = Filtration::closure(Filtration::adic(ideal2({{2, 0}, {0, 2}})), 2);
  CHECK(c.level(1) == ideal2({{2, 0}, {1, 1}, {0, 2}}));
  CHECK_FALSE(c.approximate());

  auto tbl = Filtration::table({m}, m);
  CHECK(tbl.level(3) == power(m, 3));

  for (const auto& fil : {f, g, r, t, c, tbl, Filtration::product(f, g)}) {
    CHECK_FALSE(check_filtration_axioms(fil, 6).has_value());
  }
}

TEST_CASE("closure of an adic filtration is the levelwise integral closure") {
  auto i = ideal2({{5, 0}, {1, 2}, {0, 3}});
  auto c = Filtration::closure(Filtration::adic(i), 1);
  for (int n = 1; n <= 5; ++n) CHECK(c.level(n) == integral_closure_ideal(power(i, n)));
  auto i3 = MonomialIdeal(3, {{3, 0, 0}, {0, 2, 0}, {0, 0, 4}, {1, 1, 1}});
  auto c3 = Filtration::closure(Filtration::adic(i3), 1);
  for (int n = 1; n <= 3; ++n) CHECK(c3.level(n) == integral_closure_ideal(power(i3, n)));
}

TEST_CASE("tau, gamma and w") {
  auto m = max_ideal(2);
  CHECK(tau(Filtration::adic(power(m, 2)), WeightValuation({1, 1}), 5) == 10);
  CHECK(tau(Filtration::adic(m), WeightValuation({2, 3}), 4) == 8);
  auto f = Filtration::divisorial_toric(2, {{WeightValuation({1, 2}), Scalar(1)}});
  CHECK(tau(f, WeightValuation({1, 2}), 7) == 7);

  auto ga = gamma(Filtration::adic(power(m, 2)), WeightValuation({1, 1}), 10);
  CHECK(ga.upper == 2);
  CHECK(ga.value() == Scalar(2));
  CHECK(gamma(f, WeightValuation({1, 2}), 10).value() == Scalar(1));
  auto g = Filtration::divisorial_toric(2, {{WeightValuation({1, 1}), Scalar(QuadExt(0, 1, 2))}});
  auto gg = gamma(g, WeightValuation({1, 1}), 50);
  CHECK(gg.value() == Scalar(QuadExt(0, 1, 2)));
  CHECK(gg.upper.get_d() >= 1.41421356);
  CHECK(gg.upper.get_d() < 1.45);

  // subadditivity of tau
  auto h = Filtration::truncate(Filtration::divisorial_toric(2, {{WeightValuation({2, 3}), Scalar(Rational(7, 3))}}), 2);
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) CHECK(tau(h, WeightValuation({1, 1}), a * b) <= b * tau(h, WeightValuation({1, 1}), a));
  }

  CHECK(w_invariant(Filtration::adic(m), {2, 1}, 100).value == 3);
  CHECK(w_invariant(f, {1, 3}, 100).value == 7);
  CHECK(w_invariant(Filtration::adic(ideal2({{2, 0}, {0, 3}})), {3, 3}, 100).value == 2);
  CHECK(w_invariant(f, {0, 0}, 5).infinite);
  CHECK_THROWS_AS(w_invariant(Filtration::adic(m), {5, 5}, 4), Error);

  auto aw = asymptotic_w(Filtration::adic(m), {1, 0}, 5);
  CHECK(aw.best == 1);
  auto two = Filtration::divisorial_toric(2, {{WeightValuation({1, 1}), Scalar(1)}, {WeightValuation({1, 2}), Scalar(2)}});
  (void)two;
  auto dv = Filtration::divisorial_toric(2, {{WeightValuation({1, 0}), Scalar(1)}, {WeightValuation({0, 1}), Scalar(2)}});
  auto aw2 = asymptotic_w(dv, {1, 1}, 20);
  CHECK(aw2.best == Rational(1, 2));
  REQUIRE(aw2.exact.has_value());
  CHECK(*aw2.exact == Scalar(Rational(1, 2)));
  CHECK(aw2.eventually_linear);
  auto aw3 = asymptotic_w(g, {1, 1}, 20);
  CHECK(*aw3.exact == Scalar(QuadExt(0, 1, 2)));
  CHECK(aw3.best.get_d() <= 1.41421357);
  CHECK(aw3.best.get_d() > 1.3);
}
