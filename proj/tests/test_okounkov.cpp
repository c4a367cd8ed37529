#include "doctest.h"
#include "filtmult/okounkov.hpp"

using namespace filtmult;

namespace {

MonomialIdeal ideal2(std::vector<ExponentVector> gens) { return MonomialIdeal(2, std::move(gens)); }
Filtration adic_m(std::size_t d, std::int64_t k = 1) { return Filtration::adic(MonomialIdeal::maximal_power(d, k)); }
QuadExt q(long v) { return QuadExt(Rational(v)); }
const QuadExt kSqrt2(0, 1, 2);
Filtration sqrt2_filtration() {
  return Filtration::divisorial_toric(2, {{WeightValuation({1, 1}), Scalar(kSqrt2)}});
}

}  // namespace

TEST_CASE("semigroup levels") {
  auto lvl = semigroup_level(adic_m(2), 2, 3);
  CHECK(lvl.points.size() == 7);  // degrees 2 and 3
  auto dv = Filtration::divisorial_toric(2, {{WeightValuation({1, 2}), Scalar(1)}});
  auto l2 = semigroup_level(dv, 2, 4);
  for (const auto& v : l2.points) CHECK(v[0] + 2 * v[1] >= 2);
  CHECK(l2.points.size() == 13);
  auto cl = semigroup_level(Filtration::closure(Filtration::adic(ideal2({{2, 0}, {0, 2}})), 2), 1, 2);
  CHECK(cl.points == std::vector<ExponentVector>{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("exact bodies and truncations") {
  auto tb = delta_body(adic_m(2, 2), Scalar(4), 10);
  CHECK(tb.exact);
  CHECK(tb.body.volume() == q(6));
  CHECK(tb.body.vertices().size() == 4);
  CHECK(delta_body(Filtration::trivial(2), Scalar(4), 10).body.volume() == q(8));
  CHECK(delta_body(sqrt2_filtration(), Scalar(4), 10).body.volume() == q(7));
  CHECK_THROWS_AS(delta_body(adic_m(2, 2), Scalar(1), 10), Error);

  // Level hulls grow towards the exact body.
  auto f = Filtration::adic(ideal2({{5, 0}, {1, 2}, {0, 3}}));
  auto exact = delta_body(f, Scalar(6), 1).body.volume();
  QuadExt last(0);
  for (int m : {1, 2, 4}) {
    auto approx = delta_body_from_levels(f, Scalar(6), m).body.volume();
    CHECK(approx >= last);
    CHECK(approx <= exact);
    last = approx;
  }
}

TEST_CASE("truncation lambda") {
  CHECK(truncation_lambda(adic_m(2, 2), 6).lambda == 2);
  CHECK(truncation_lambda(Filtration::adic(ideal2({{2, 0}, {0, 3}})), 6).lambda == 4);
  auto t = truncation_lambda(Filtration::divisorial_toric(2, {{WeightValuation({1, 1}), Scalar(1)}}), 6);
  CHECK(t.lambda == 1);
  CHECK(t.certified);
  CHECK(max_standard_degree(MonomialIdeal::maximal_power(3, 2)) == 1);
  CHECK(max_standard_degree(MonomialIdeal(3, {{2, 0, 0}, {0, 3, 0}, {0, 0, 1}})) == 3);
  auto bad = Filtration::divisorial_toric(2, {{WeightValuation({1, 0}), Scalar(1)}});
  CHECK_THROWS_AS(truncation_lambda(bad, 3), Error);
}

TEST_CASE("multiplicity via volume") {
  CHECK(multiplicity_via_volume(adic_m(2, 2), Scalar(4), 10) == Scalar(4));
  CHECK(multiplicity_via_volume(adic_m(2), Scalar(2), 10) == Scalar(1));
  CHECK(multiplicity_via_volume(sqrt2_filtration(), Scalar(4), 10) == Scalar(2));
  CHECK(multiplicity_via_volume(Filtration::adic(ideal2({{2, 0}, {0, 3}})), Scalar(4), 10) == Scalar(6));
  CHECK(multiplicity_via_volume(adic_m(3, 2), Scalar(2), 10) == Scalar(8));
  auto two = Filtration::divisorial_toric(
      2, {{WeightValuation({1, 2}), Scalar(1)}, {WeightValuation({2, 1}), Scalar(kSqrt2)}});
  CHECK(multiplicity_via_volume(two, Scalar(2), 10) == Scalar(QuadExt(2, Rational(-2, 3), 2)));
  auto tr = Filtration::truncate(Filtration::adic(ideal2({{2, 0}, {0, 3}})), 2);
  CHECK(multiplicity_via_volume(tr, Scalar(4), 10) == Scalar(6));
}

TEST_CASE("rescale and scaling identities") {
  auto f = Filtration::divisorial_toric(2, {{WeightValuation({1, 2}), Scalar(Rational(3, 2))},
                                            {WeightValuation({3, 1}), Scalar(2)}});
  const Rational c(5);
  auto base = delta_body(f, Scalar(c), 1).body;
  for (long l : {2L, 3L}) {
    auto scaled = delta_body(Filtration::rescale(f, l), Scalar(c * l), 1).body;
    CHECK(scaled == base.scaled(q(l)));
  }
  for (Rational xi : {Rational(1, 2), Rational(2), Rational(3, 5)}) {
    auto g = Filtration::divisorial_toric(2, {{WeightValuation({1, 2}), Scalar(Rational(3, 2) * xi)},
                                              {WeightValuation({3, 1}), Scalar(2 * xi)}});
    CHECK(exact_body(g) == exact_body(f).scaled(QuadExt(xi)));
  }
}

TEST_CASE("pair bodies") {
  auto m = adic_m(2);
  auto pb = pair_body(m, m, 1, 1, PairCut{Scalar(1), Scalar(1), Scalar(3)}, 5);
  CHECK(pb.body == delta_body(adic_m(2, 2), Scalar(6), 5).body);
  auto f2 = Filtration::adic(ideal2({{2, 0}, {0, 3}}));
  CHECK_THROWS_AS(pair_body(m, f2, 1, 1, PairCut{Scalar(1), Scalar(1), Scalar(1)}, 5), Error);

  CHECK(pair_superadditivity_check(m, f2, 1, 0, 4).holds);
  auto s = pair_superadditivity_check(m, f2, 1, 1, 4);
  CHECK(s.holds);
  auto e = pair_superadditivity_check(m, adic_m(2, 2), 2, 3, 3);
  CHECK(e.holds);
  CHECK(e.bodies_equal);

  auto h = pair_homothety_check(m, adic_m(2, 2), Scalar(1), Scalar(4), Scalar(3));
  CHECK(h.homothetic);
  CHECK(h.exact);
  CHECK(pair_homothety_check(f2, f2, Scalar(6), Scalar(6), Scalar(4)).homothetic);
  auto strict = pair_homothety_check(m, f2, Scalar(1), Scalar(6), Scalar(4));
  CHECK_FALSE(strict.homothetic);
  CHECK(strict.max_deviation > 0.1);
}
