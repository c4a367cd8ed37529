#include <random>

#include "doctest.h"
#include "filtmult/divisorial.hpp"

using namespace filtmult;

namespace {

const QuadExt kC = builtin_region3_slope();
Scalar quad(const Rational& a, const Rational& b) { return Scalar(QuadExt(a, b, 3)); }
DivisorCoeffs dv(long a, long b) { return {Scalar(Rational(a)), Scalar(Rational(b))}; }

}  // namespace

TEST_CASE("builtin tensor and intersection products") {
  auto ex = builtin_example();
  CHECK(ex.tensor.complete());
  CHECK(ex.tensor.entry({0, 1, 0}) == -162);
  CHECK(intersection_product(ex.tensor, {dv(1, 1), dv(1, 1), dv(1, 1)}) == Scalar(198));
  CHECK(intersection_product(ex.tensor, {dv(0, 1), dv(0, 1), dv(0, 1)}) == Scalar(54));
  DivisorCoeffs ce{Scalar(kC), Scalar(1)};
  Scalar cube = intersection_product(ex.tensor, {ce, ce, ce});
  CHECK(cube == Scalar(QuadExt(Rational(12042, 169), Rational(-27, 169), 3)));
  CHECK(kC == QuadExt(Rational(9, 26), Rational(1, 26), 3));
  CHECK_THROWS_AS(intersection_product(ex.tensor, {dv(1, 1), dv(1, 1)}), Error);

  // Symmetry and multilinearity on random integer divisors.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  auto rnd = [&] { return DivisorCoeffs{Scalar(coef(rng)), Scalar(coef(rng))}; };
  for (int trial = 0; trial < 100; ++trial) {
    auto a = rnd(), b = rnd(), c = rnd(), x = rnd();
    Scalar abc = intersection_product(ex.tensor, {a, b, c});
    CHECK(abc == intersection_product(ex.tensor, {c, a, b}));
    CHECK(abc == intersection_product(ex.tensor, {b, c, a}));
    DivisorCoeffs ax{a[0] + x[0], a[1] + x[1]};
    CHECK(intersection_product(ex.tensor, {ax, b, c}) == abc + intersection_product(ex.tensor, {x, b, c}));
  }
}

TEST_CASE("gamma table") {
  auto ex = builtin_example();
  CHECK(gamma_eval(ex.envelope, dv(2, 1)) == std::vector<Scalar>{2, 2});
  CHECK(gamma_eval(ex.envelope, dv(1, 2)) == std::vector<Scalar>{1, 2});
  CHECK(gamma_eval(ex.envelope, dv(1, 3)) == std::vector<Scalar>{Scalar(kC * QuadExt(Rational(3))), 3});
  CHECK(gamma_eval(ex.envelope, dv(1, 3))[0] == Scalar(QuadExt(9) / QuadExt(9, -1, 3)));
  // Boundary n1 = n2 is shared and both maps agree.
  CHECK(ex.envelope.containing(dv(3, 3)).size() == 2);
  CHECK(gamma_eval(ex.envelope, dv(3, 3)) == std::vector<Scalar>{3, 3});
  // 5/2 > 3 − √3/3 ≈ 2.4226.
  DivisorCoeffs half{Scalar(1), Scalar(Rational(5, 2))};
  CHECK(ex.envelope.containing(half) == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(gamma_eval(ex.envelope, dv(0, 0)), Error);
  for (long k = 1; k <= 5; ++k) {
    auto g1 = gamma_eval(ex.envelope, dv(1, 3));
    auto gk = gamma_eval(ex.envelope, dv(k, 3 * k));
    CHECK(gk[0] == g1[0] * Scalar(static_cast<int>(k)));
  }
  CHECK(check_envelope(ex.envelope, 100).empty());

  NefEnvelope bad = ex.envelope;
  bad.cones[2].gamma = {{Scalar(0), Scalar(Rational(1, 10))}, {Scalar(0), Scalar(1)}};
  CHECK_FALSE(check_envelope(bad, 5).empty());
}

TEST_CASE("anti-positive products and the mixed polynomial") {
  auto ex = builtin_example();
  const auto& t = ex.tensor;
  const auto& env = ex.envelope;
  CHECK(anti_positive_mixed(t, env, dv(1, 1), dv(1, 1), 3, 0) == Scalar(198));
  Scalar e21 = anti_positive_mixed(t, env, dv(1, 0), dv(0, 1), 2, 1);
  CHECK(e21 / Scalar(2) == quad(Rational(891, 26), Rational(99, 26)));
  CHECK(anti_positive_mixed(t, env, dv(1, 0), dv(0, 1), 0, 3) ==
        Scalar(6) * quad(Rational(2007, 169), Rational(-9, 338)));

  auto mp = mixed_polynomial(t, env, dv(1, 0), dv(0, 1));
  CHECK(mp.straddles);
  CHECK(mp.form.coefficient({3, 0}) == Scalar(33));
  CHECK(mp.form.coefficient({2, 1}) == quad(Rational(891, 26), Rational(99, 26)));
  CHECK(mp.form.coefficient({1, 2}) == quad(Rational(12042, 338), Rational(-27, 338)));
  CHECK(mp.form.coefficient({0, 3}) == quad(Rational(2007, 169), Rational(-9, 338)));
  CHECK(mp.form.to_string() ==
        "33*n1^3 + (891/26 + 99/26*sqrt(3))*n1^2*n2 + (6021/169 - 27/338*sqrt(3))*n1*n2^2 + "
        "(2007/169 - 9/338*sqrt(3))*n2^3");

  REQUIRE(mp.piecewise.size() == 3);
  CHECK(mp.piecewise[0].f.to_string() == "33*n1^3");
  CHECK(mp.piecewise[1].f.to_string() == "78*n1^3 - 81*n1^2*n2 + 27*n1*n2^2 + 9*n2^3");
  CHECK(mp.piecewise[2].f.to_string() == "(2007/169 - 9/338*sqrt(3))*n2^3");

  // (D, D) in region 2 collapses to 33 (n1 + n2)^3.
  auto dd = mixed_polynomial(t, env, dv(2, 3), dv(2, 3));
  CHECK_FALSE(dd.straddles);
  Scalar unit = anti_positive_mixed(t, env, dv(2, 3), dv(2, 3), 3, 0) / Scalar(6);
  CHECK(dd.form.coefficient({2, 1}) == unit * Scalar(3));
  REQUIRE(dd.piecewise.size() == 1);
  CHECK(dd.piecewise[0].f.coefficients == dd.form.coefficients);
  auto diag = mixed_polynomial(t, env, dv(1, 1), dv(1, 1));
  CHECK(diag.form.coefficient({3, 0}) == Scalar(33));
  CHECK(diag.form.coefficient({1, 2}) == Scalar(99));
}

TEST_CASE("equality classifier and rescaling") {
  auto ex = builtin_example();
  const auto& t = ex.tensor;
  const auto& env = ex.envelope;
  CHECK(equality_classifier(env, t, dv(2, 1), dv(3, 1)).verdict == Verdict::kEquality);
  CHECK(equality_classifier(env, t, dv(1, 1), dv(1, 2)).verdict == Verdict::kStrict);
  CHECK(equality_classifier(env, t, dv(2, 3), dv(4, 6)).verdict == Verdict::kEquality);
  CHECK(equality_classifier(env, t, dv(1, 3), dv(2, 6)).verdict == Verdict::kEquality);
  CHECK(equality_classifier(env, t, dv(1, 3), dv(2, 7)).verdict == Verdict::kEquality);
  CHECK(equality_classifier(env, t, dv(2, 1), dv(1, 3)).verdict == Verdict::kStrict);

  CHECK(cone_pair_relation(env, 0, 0) == "always");
  CHECK(cone_pair_relation(env, 1, 1) == "iff proportional");
  CHECK(cone_pair_relation(env, 2, 2) == "always");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(cone_pair_relation(env, i, j) == "never");
    }
  }

  auto r = find_rescaling(env, t, dv(1, 3), dv(2, 6), 100);
  CHECK(r.a == 2);
  CHECK(r.b == 1);
  auto same = find_rescaling(env, t, dv(2, 3), dv(2, 3), 100);
  CHECK(same.a == 1);
  CHECK(same.b == 1);
  auto r3 = find_rescaling(env, t, dv(1, 3), dv(2, 7), 100);
  CHECK(r3.a == 7);
  CHECK(r3.b == 3);
  try {
    find_rescaling(env, t, dv(1, 1), dv(1, 2), 100);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotEquality);
  }

  // Region-3 pair: e_i = 3^(3−i) 6^i (12042/169 − 27√3/169).
  auto mm = divisorial_mixed_multiplicities(t, env, dv(1, 3), dv(1, 6));
  const Scalar base = quad(Rational(12042, 169), Rational(-27, 169));
  for (int i = 0; i <= 3; ++i) {
    CHECK(mm.e[i] == pow(Scalar(3), 3 - i) * pow(Scalar(6), i) * base);
  }
  auto rep = minkowski_report(mm);
  CHECK(rep.equality);
  REQUIRE(rep.equality_form);
  // f(1,1)·3! = (e_0^(1/3) + e_3^(1/3))^3 exactly.
  CHECK(rep.equality_form->evaluate({Scalar(1), Scalar(1)}) * Scalar(6) == mm.product_multiplicity());
}
