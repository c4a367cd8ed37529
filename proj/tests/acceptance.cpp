// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <gmpxx.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "filtmult/convex.hpp"
#include "filtmult/divisorial.hpp"
#include "filtmult/multiplicity.hpp"
#include "filtmult/okounkov.hpp"

using namespace filtmult;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define EXPECT(cond, msg)                                                              \
  do {                                                                                 \
    if (!(cond)) {                                                                     \
      std::ostringstream os_;                                                          \
      os_ << msg << " [" << #cond << " at line " << __LINE__ << "]";                   \
      throw Failure(os_.str());                                                        \
    }                                                                                  \
  } while (0)

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<std::string()>& body) {
  auto t0 = Clock::now();
  std::string detail, verdict = "PASS";
  try {
    detail = body();
  } catch (const Failure& f) {
    verdict = "FAIL";
    detail = f.what();
  } catch (const std::exception& e) {
    verdict = "FAIL";
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (verdict == "PASS" && limit_s > 0 && secs > limit_s) {
    verdict = "FAIL";
    detail += "; took longer than " + std::to_string(limit_s) + " s";
  }
  if (verdict == "FAIL") ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.2f", secs);
  std::cout << verdict << " criterion " << id << ": " << title << " (" << t << " s) " << detail << std::endl;
}

QuadExt q3(const Rational& a, const Rational& b) { return QuadExt(a, b, 3); }
DivisorCoeffs dv(long a, long b) { return {Scalar(a), Scalar(b)}; }

MonomialIdeal ideal(std::size_t d, const std::vector<std::vector<std::int64_t>>& gens) {
  std::vector<ExponentVector> v;
  for (const auto& g : gens) v.emplace_back(g);
  return MonomialIdeal(d, v);
}

// -----------------------------------------------------------------------------
// 1. Exact reproduction of the two-divisor example.

std::string check_example() {
  auto ex = builtin_example();
  const auto& t = ex.tensor;
  const auto& env = ex.envelope;
  auto mp = mixed_polynomial(t, env, dv(1, 0), dv(0, 1));

  EXPECT(mp.piecewise.size() == 3, "three regions");
  const auto& f1 = mp.piecewise[0].f;
  EXPECT(f1.coefficient({3, 0}) == Scalar(33), "region 1 leading coefficient");
  EXPECT(f1.to_string() == "33*n1^3", "region 1 display");
  const auto& f2 = mp.piecewise[1].f;
  const std::array<long, 4> r2{78, -81, 27, 9};
  for (int i = 0; i < 4; ++i) EXPECT(f2.coefficient({3 - i, i}) == Scalar(r2[i]), "region 2 coefficient " << i);
  const auto& f3 = mp.piecewise[2].f;
  EXPECT(f3.coefficient({0, 3}) == Scalar(q3(Rational(2007, 169), Rational(-9, 338))), "region 3 coefficient");
  for (int i = 0; i < 3; ++i) EXPECT(f3.coefficient({3 - i, i}) == Scalar(0), "region 3 is a pure n2^3 term");
  EXPECT(f3.to_string() == "(2007/169 - 9/338*sqrt(3))*n2^3", "region 3 display");

  const std::array<QuadExt, 4> eq{QuadExt(33), q3(Rational(891, 26), Rational(99, 26)),
                                  q3(Rational(12042, 338), Rational(-27, 338)),
                                  q3(Rational(2007, 169), Rational(-9, 338))};
  for (int i = 0; i < 4; ++i) EXPECT(mp.form.coefficient({3 - i, i}) == Scalar(eq[i]), "mixed coefficient " << i);

  // Closed-form gamma on each region, 20 integer points strictly inside.
  const QuadExt c = QuadExt(3) / QuadExt(9, -1, 3);
  auto region_of = [](long n1, long n2) {
    if (n1 > n2) return 0;
    if (n2 == n1) return -1;
    // n2 < (3 − √3/3) n1  ⇔  3n1 − n2 > 0 and n1² < 3(3n1 − n2)²
    long s = 3 * n1 - n2;
    if (s > 0 && n1 * n1 < 3 * s * s) return 1;
    if (s > 0 && n1 * n1 == 3 * s * s) return -1;
    return 2;
  };
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coord(0, 40);
  std::array<std::set<std::pair<long, long>>, 3> seen;
  int guard = 0;
  while ((seen[0].size() < 20 || seen[1].size() < 20 || seen[2].size() < 20) && ++guard < 100000) {
    long n1 = coord(rng), n2 = coord(rng);
    if (n1 == 0 && n2 == 0) continue;
    int r = region_of(n1, n2);
    if (r < 0 || seen[r].size() >= 20 || !seen[r].insert({n1, n2}).second) continue;
    std::vector<Scalar> want;
    if (r == 0) want = {Scalar(n1), Scalar(n1)};
    if (r == 1) want = {Scalar(n1), Scalar(n2)};
    if (r == 2) want = {Scalar(c * QuadExt(n2)), Scalar(n2)};
    EXPECT(gamma_eval(env, dv(n1, n2)) == want, "gamma at (" << n1 << "," << n2 << ")");
  }
  EXPECT(seen[0].size() == 20 && seen[1].size() == 20 && seen[2].size() == 20, "sampling");

  // Region pairs: equality within regions 1 and 3, within region 2 only for
  // proportional divisors, never across regions.
  const std::array<std::pair<DivisorCoeffs, DivisorCoeffs>, 3> reps{
      std::pair{dv(2, 1), dv(3, 1)}, std::pair{dv(2, 3), dv(3, 4)}, std::pair{dv(1, 3), dv(1, 4)}};
  const char* expected[3][3] = {{"always", "never", "never"},
                                {"never", "iff proportional", "never"},
                                {"never", "never", "always"}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Verdict want = (i == j && i != 1) ? Verdict::kEquality : Verdict::kStrict;
      auto cls = equality_classifier(env, t, reps[i].first, reps[j].second);
      EXPECT(cls.verdict == want, "classification of region pair " << i + 1 << "," << j + 1);
      EXPECT(cone_pair_relation(env, i, j) == expected[i][j], "relation " << i + 1 << "," << j + 1);
    }
  }
  EXPECT(equality_classifier(env, t, dv(2, 3), dv(4, 6)).verdict == Verdict::kEquality, "proportional region 2");
  return "piecewise, mixed polynomial, 60 gamma points, 9 region pairs exact";
}

// -----------------------------------------------------------------------------
// 2. Multiplicities of monomial adic filtrations.

std::string check_monomial() {
  struct Case {
    MonomialIdeal ideal;
    long e;
  };
  const std::vector<Case> cases{{ideal(2, {{1, 0}, {0, 1}}), 1},
                                {ideal(2, {{2, 0}, {1, 1}, {0, 2}}), 4},
                                {ideal(2, {{2, 0}, {0, 3}}), 6},
                                {ideal(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}), 8}};
  std::ostringstream out;
  for (const auto& c : cases) {
    auto f = Filtration::adic(c.ideal);
    auto est = multiplicity_limit(f, default_schedule(f.dim()));
    double rel = std::abs(est.estimate.get_d() - c.e) / c.e;
    EXPECT(rel <= 0.02, describe(f) << " estimate " << est.estimate.get_d());
    EXPECT(exact_multiplicity(f) == Scalar(c.e), describe(f) << " volume route");
    EXPECT(est.exact && *est.exact == Scalar(c.e), "exact alongside the estimate");
    out << c.e << " ";
  }
  return "e = " + out.str() + "estimates within 2%, volume route exact";
}

// -----------------------------------------------------------------------------
// 3. Irrational multiplicities.

std::string check_irrational() {
  const QuadExt sqrt2(0, 1, 2);
  const std::vector<std::int64_t> schedule{250, 500, 1000, 2000};
  auto f = Filtration::divisorial_toric(2, {{WeightValuation({1, 1}), Scalar(sqrt2)}});
  EXPECT(exact_multiplicity(f) == Scalar(2), "volume route for m^ceil(n sqrt2)");
  auto est = multiplicity_limit(f, schedule);
  double rel = std::abs(est.estimate.get_d() - 2.0) / 2.0;
  EXPECT(rel < 0.01, "estimate " << est.estimate.get_d());

  // Body {x ≥ 0 : x1 + 2x2 ≥ 1, 2x1 + x2 ≥ √2}; its complement is the
  // quadrilateral (0,0), (1,0), P, (0,√2) with P the intersection of the lines.
  auto two = Filtration::divisorial_toric(2, {{WeightValuation({1, 2}), Scalar(1)}, {WeightValuation({2, 1}), Scalar(sqrt2)}});
  const QuadExt p1 = (QuadExt(0, 2, 2) - QuadExt(1)) / QuadExt(3);
  const QuadExt p2 = (QuadExt(2) - sqrt2) / QuadExt(3);
  const QuadExt area = (p2 + sqrt2 * p1) / QuadExt(2);  // shoelace
  const QuadExt want = QuadExt(2) * area;
  EXPECT(want == QuadExt(2, Rational(-2, 3), 2), "hand formula");
  EXPECT(exact_multiplicity(two) == Scalar(want), "two-weight volume route");
  auto est2 = multiplicity_limit(two, schedule);
  EXPECT(est2.relative_width() < 0.01, "bracket width " << est2.relative_width());
  EXPECT(est2.bracket_contains(Scalar(want)), "bracket contains 2 - 2*sqrt(2)/3");
  std::ostringstream out;
  out << "sqrt2 case error " << rel * 100 << "%, two-weight bracket width " << est2.relative_width() * 100 << "%";
  return out.str();
}

// -----------------------------------------------------------------------------
// 4. Minkowski suite.

// ℓ(R / m^n (x², y³)^n) by counting standard monomials.
long brute_product_colength(long n) {
  std::vector<std::pair<long, long>> gens;
  for (long i = 0; i <= n; ++i) {
    for (long j = 0; j <= n; ++j) gens.emplace_back(i + 2 * j, (n - i) + 3 * (n - j));
  }
  long count = 0;
  for (long a = 0; a <= 3 * n; ++a) {
    for (long b = 0; b <= 4 * n; ++b) {
      bool inside = false;
      for (const auto& [x, y] : gens) {
        if (a >= x && b >= y) {
          inside = true;
          break;
        }
      }
      if (!inside) ++count;
    }
  }
  return count;
}

std::string check_minkowski() {
  auto m = Filtration::adic(ideal(2, {{1, 0}, {0, 1}}));
  auto m2 = Filtration::adic(ideal(2, {{2, 0}, {1, 1}, {0, 2}}));
  auto x2y3 = Filtration::adic(ideal(2, {{2, 0}, {0, 3}}));
  const auto schedule = default_schedule(2);

  auto eq = minkowski_equality_test(m, m2, schedule, 20);
  EXPECT(eq.verdict == Verdict::kEquality, "(m, m^2) verdict");
  EXPECT(eq.e.e == (std::vector<Scalar>{1, 2, 4}), "(m, m^2) mixed multiplicities");
  auto tr = trsk_check(m, m2, schedule, 50, 1000, 4);
  EXPECT(tr.verdict == TrskVerdict::kRescaling, "trsk verdict");
  EXPECT(tr.a == 2 && tr.b == 1, "trsk (a, b)");
  EXPECT(tr.levels_checked == 50, "levels checked " << tr.levels_checked);
  for (std::int64_t n = 1; n <= 50; ++n) {
    auto lhs = integral_closure_ideal(power(m.ideal(), 2 * n));
    auto rhs = integral_closure_ideal(power(m2.ideal(), n));
    EXPECT(lhs == rhs, "closure level " << n);
  }

  auto st = minkowski_equality_test(m, x2y3, schedule, 20);
  EXPECT(st.verdict == Verdict::kStrict, "(m, (x^2,y^3)) verdict");
  EXPECT(st.e.e == (std::vector<Scalar>{1, 2, 6}), "(m, (x^2,y^3)) mixed multiplicities");
  // Second difference of the Hilbert–Samuel function is e for large n.
  long l19 = brute_product_colength(19), l20 = brute_product_colength(20), l21 = brute_product_colength(21);
  long e_brute = l21 - 2 * l20 + l19;
  EXPECT(e_brute == 11, "brute-force product multiplicity " << e_brute);
  EXPECT(st.e.product_multiplicity() == Scalar(11), "product multiplicity from e_i");
  EXPECT(exact_multiplicity(Filtration::product(m, x2y3)) == Scalar(11), "product body");
  // √11 < 1 + √6  ⇔  11 < 7 + 2√6  ⇔  16 < 24.
  EXPECT(16 < 24 && QuadExt(11) < QuadExt(1, 1, 6) * QuadExt(1, 1, 6), "squared comparison");
  bool family4_strict = false;
  for (const auto& c : st.report.checks) {
    if (c.family == 4) family4_strict = c.relation == Relation::kStrict;
  }
  EXPECT(family4_strict, "inequality 4 reported strict");
  return "EQUALITY (1,2,4) with (a,b) = (2,1) over 50 levels; STRICT (1,2,6), e(product) = 11";
}

// -----------------------------------------------------------------------------
// 5. Property suites.

using P = Point<Rational>;

Polytope<Rational> random_polytope(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> coord(-5, 5), count(static_cast<int>(d) + 1, static_cast<int>(d) + 5);
  for (;;) {
    std::vector<P> pts;
    for (int i = count(rng); i > 0; --i) {
      P p;
      for (std::size_t k = 0; k < d; ++k) p.push_back(Rational(coord(rng)));
      pts.push_back(p);
    }
    auto poly = Polytope<Rational>::hull(d, pts);
    if (poly.affine_dim() == static_cast<int>(d)) return poly;
  }
}

Rational random_fraction(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> num(lo, hi);
  return make_rational(num(rng), den);
}

MonomialIdeal random_primary(std::mt19937_64& rng, std::size_t d, int max_coord) {
  std::uniform_int_distribution<int> pure(1, max_coord), coord(0, max_coord - 1), extra(0, 3);
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < d; ++i) {
    ExponentVector e(d);
    e[i] = pure(rng);
    gens.push_back(e);
  }
  for (int k = extra(rng); k > 0; --k) {
    ExponentVector e(d);
    for (std::size_t i = 0; i < d; ++i) e[i] = coord(rng);
    if (!e.is_zero()) gens.push_back(e);
  }
  return MonomialIdeal(d, gens);
}

Filtration random_filtration(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> kind(0, 4), w(1, 3), l(2, 3);
  switch (kind(rng)) {
    case 0:
      return Filtration::adic(random_primary(rng, d, 3));
    case 1:
    case 2: {
      std::vector<DivisorialTerm> terms;
      for (int j = 0; j < 2; ++j) {
        std::vector<std::int64_t> ws;
        for (std::size_t i = 0; i < d; ++i) ws.push_back(w(rng));
        terms.push_back({WeightValuation(ws), Scalar(random_fraction(rng, 1, 9, 4))});
      }
      return Filtration::divisorial_toric(d, terms);
    }
    case 3:
      return Filtration::product(Filtration::adic(random_primary(rng, d, 2)), Filtration::adic(random_primary(rng, d, 2)));
    default:
      return Filtration::rescale(Filtration::adic(random_primary(rng, d, 2)), l(rng));
  }
}

std::string check_properties() {
  const int kCases = 500;
  std::mt19937_64 rng(2024);
  std::ostringstream out;
  auto stamp = Clock::now();
  auto lap = [&](const char* name) {
    auto now = Clock::now();
    out << name << " " << kCases << " (" << static_cast<int>(std::chrono::duration<double>(now - stamp).count() * 1000)
        << " ms); ";
    stamp = now;
  };

  // Brunn–Minkowski inequality.
  for (int i = 0; i < kCases; ++i) {
    std::size_t d = i % 5 == 4 ? 3 : 2;
    auto k = random_polytope(rng, d), l = random_polytope(rng, d);
    Rational t = random_fraction(rng, 1, 9, 10);
    auto r = brunn_minkowski_check(k, l, t);
    EXPECT(r.lhs >= r.rhs, "BM case " << i);
    auto mix = minkowski_sum(k.scaled(1 - t), l.scaled(t));
    EXPECT(mix.volume() == r.volume_mix, "BM mixed body volume case " << i);
    double lhs = std::pow(r.volume_mix.get_d(), 1.0 / d);
    double rhs = (1 - t.get_d()) * std::pow(k.volume().get_d(), 1.0 / d) + t.get_d() * std::pow(l.volume().get_d(), 1.0 / d);
    EXPECT(lhs >= rhs - 1e-9, "BM floating cross-check case " << i);
  }
  lap("brunn-minkowski");

  // Equality iff homothety.
  for (int i = 0; i < kCases; ++i) {
    std::size_t d = i % 5 == 4 ? 3 : 2;
    auto k = random_polytope(rng, d);
    Rational c = random_fraction(rng, 1, 12, 4);
    P shift;
    for (std::size_t j = 0; j < d; ++j) shift.push_back(random_fraction(rng, -6, 6, 3));
    auto l = k.scaled(c).translated(shift);
    Rational t = random_fraction(rng, 1, 9, 10);
    auto r = brunn_minkowski_check(k, l, t);
    EXPECT(!r.strict, "homothetic pair reported strict, case " << i);
    auto h = homothety_detect(k, l);
    EXPECT(h && h->factor == Scalar(c), "homothety factor, case " << i << " c=" << c.get_str() << " got " << (h ? to_display_string(h->factor) : std::string("none")) << " volK=" << k.volume().get_str() << " volL=" << l.volume().get_str());
    auto other = random_polytope(rng, d);
    if (!homothety_detect(k, other)) EXPECT(brunn_minkowski_check(k, other, t).strict, "non-homothetic pair, case " << i);
  }
  lap("equality-homothety");

  // Volume polynomial against direct Minkowski sums.
  for (int i = 0; i < kCases; ++i) {
    std::size_t d = i % 5 == 4 ? 3 : 2;
    auto k = random_polytope(rng, d), l = random_polytope(rng, d);
    auto poly = volume_polynomial<Rational>({k, l});
    Rational a = random_fraction(rng, 1, 8, 3), b = random_fraction(rng, 1, 8, 3);
    EXPECT(poly.evaluate({a, b}) == minkowski_sum(k.scaled(a), l.scaled(b)).volume(), "volume polynomial case " << i);
    EXPECT(mixed_volume(poly, 0) == k.volume() && mixed_volume(poly, static_cast<int>(d)) == l.volume(),
           "pure mixed volumes case " << i);
  }
  lap("volume-polynomial");

  // τ subadditivity and I_a I_b ⊆ I_{a+b}.
  std::uniform_int_distribution<int> lvl(1, 6), wt(1, 4);
  for (int i = 0; i < kCases; ++i) {
    std::size_t d = i % 4 == 3 ? 3 : 2;
    auto f = random_filtration(rng, d);
    std::int64_t a = lvl(rng), b = lvl(rng);
    std::vector<std::int64_t> ws;
    for (std::size_t j = 0; j < d; ++j) ws.push_back(wt(rng));
    WeightValuation mu(ws);
    EXPECT(tau(f, mu, a + b) <= tau(f, mu, a) + tau(f, mu, b), "tau subadditivity " << describe(f));
    EXPECT(f.level(a + b).contains(product(f.level(a), f.level(b))), "multiplicativity " << describe(f));
  }
  lap("tau-multiplicativity");

  // γ-ratio identity on nested pairs with equal multiplicity.
  for (int i = 0; i < kCases; ++i) {
    std::size_t d = i % 4 == 3 ? 3 : 2;
    auto small = random_primary(rng, d, 4);
    auto f1 = Filtration::adic(small);
    Filtration f2 = i % 2 == 0 ? Filtration::adic(integral_closure_ideal(small)) : Filtration::closure(f1, 2);
    EXPECT(f2.level(1).contains(small), "nested pair");
    Scalar e1 = exact_multiplicity(f1), e2 = exact_multiplicity(f2);
    EXPECT(e1 == e2, "equal multiplicities");
    auto vals = default_valuations(d);
    auto rep = gamma_ratio_check(f1, f2, vals, e1, e2, 8);
    EXPECT(rep.all_consistent && rep.xi == Scalar(1), "gamma ratio case " << i);
    for (const auto& mu : vals) {
      EXPECT(mu.value(small) == mu.value(integral_closure_ideal(small)), "valuation of the closure");
    }
  }
  lap("gamma-ratio");

  // Δ(J_l) = l Δ(I) and ξΔ(A) = Δ(B).
  const std::array<Rational, 3> xis{Rational(1, 2), Rational(2), Rational(3, 5)};
  std::uniform_int_distribution<int> el(1, 4);
  for (int i = 0; i < kCases; ++i) {
    std::size_t d = i % 4 == 3 ? 3 : 2;
    auto f = random_filtration(rng, d);
    std::int64_t l = el(rng);
    EXPECT(exact_body(Filtration::rescale(f, l)) == exact_body(f).scaled(QuadExt(l)), "rescale body " << describe(f));
    const Rational& xi = xis[i % 3];
    std::vector<DivisorialTerm> ta, tb;
    for (int j = 0; j < 2; ++j) {
      std::vector<std::int64_t> ws;
      for (std::size_t k = 0; k < d; ++k) ws.push_back(wt(rng));
      Rational a = random_fraction(rng, 1, 12, 5);
      ta.push_back({WeightValuation(ws), Scalar(a)});
      tb.push_back({WeightValuation(ws), Scalar(Rational(a * xi))});
    }
    auto A = Filtration::divisorial_toric(d, ta), B = Filtration::divisorial_toric(d, tb);
    EXPECT(exact_body(A).scaled(QuadExt(xi)) == exact_body(B), "scaled divisorial body, xi = " << xi.get_str());
    EXPECT(exact_multiplicity(B) == Scalar(exact_multiplicity(A) * pow(Scalar(xi), static_cast<unsigned>(d))),
           "multiplicity scales by xi^d");
  }
  lap("scaling");
  return out.str();
}

// -----------------------------------------------------------------------------
// 6. One-sided rational approximation.

mpf_class to_high(const Scalar& s) {
  const unsigned bits = 512;
  if (s.is_rational()) {
    mpf_class v(s.rational().get_num(), bits);
    return v / mpf_class(s.rational().get_den(), bits);
  }
  QuadExt q = s.quad();
  mpf_class a(q.a().get_num(), bits), b(q.b().get_num(), bits), n(static_cast<long>(q.radicand()), bits);
  a /= mpf_class(q.a().get_den(), bits);
  b /= mpf_class(q.b().get_den(), bits);
  return a + b * sqrt(n);
}

std::string check_convergents() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(1, 400), den(1, 60), rad(2, 30), kind(0, 2);
  std::uniform_real_distribution<double> real(0.05, 12.0);
  const std::array<Rational, 4> alphas{Rational(1, 10), Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
  int counts[3] = {0, 0, 0};
  const unsigned bits = 512;
  for (int i = 0; i < 200; ++i) {
    int k = kind(rng);
    Scalar xi;
    if (k == 0) {
      xi = Scalar(make_rational(num(rng), den(rng)));
    } else if (k == 1) {
      int n;
      do n = rad(rng);
      while (static_cast<int>(std::sqrt(n)) * static_cast<int>(std::sqrt(n)) == n);
      Rational a = make_rational(num(rng) - 100, den(rng)), b = make_rational(num(rng), den(rng));
      QuadExt q(a, b, n);
      if (q.sign() <= 0) q = -q;
      xi = Scalar(q);
    } else {
      xi = Scalar(Float{real(rng), 1e-13});
    }
    ++counts[k];
    for (const auto& alpha : alphas) {
      auto below = approximate_below(xi, alpha);
      auto above = approximate_above(xi, alpha);
      EXPECT(below.q > 0 && above.q > 0 && below.p > 0 && above.p > 0, "positive p, q");
      if (k == 0) {
        Rational x = xi.rational();
        Rational lo = x - Rational(below.p, below.q), hi = x - Rational(above.p, above.q);
        EXPECT(lo >= 0 && lo < alpha / Rational(below.q), "below bound for " << x.get_str());
        EXPECT(hi <= 0 && -hi < alpha / Rational(above.q), "above bound for " << x.get_str());
      } else if (k == 1) {
        mpf_class x = to_high(xi);
        mpf_class lo = x - mpf_class(below.p, bits) / mpf_class(below.q, bits);
        mpf_class hi = x - mpf_class(above.p, bits) / mpf_class(above.q, bits);
        mpf_class a = mpf_class(alpha.get_num(), bits) / mpf_class(alpha.get_den(), bits);
        EXPECT(lo > 0 && lo < a / mpf_class(below.q, bits), "below bound for " << to_display_string(xi));
        EXPECT(hi < 0 && -hi < a / mpf_class(above.q, bits), "above bound for " << to_display_string(xi));
      } else {
        // Every real within the tolerance must satisfy the bounds.
        Float f = xi.as_float();
        Rational v(f.value), t(f.tol);
        Rational pb(below.p, below.q), pa(above.p, above.q);
        EXPECT(v - t - pb >= 0 && v + t - pb < alpha / Rational(below.q), "below bound for float " << f.value);
        EXPECT(v + t - pa <= 0 && pa - (v - t) < alpha / Rational(above.q), "above bound for float " << f.value);
      }
    }
  }
  std::ostringstream out;
  out << counts[0] << " rational, " << counts[1] << " quadratic, " << counts[2] << " float values x 4 alphas";
  return out.str();
}

// -----------------------------------------------------------------------------
// 7. CLI golden output and determinism.

std::string run(const std::string& cmd, int& rc) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failure("cannot run " + cmd);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string check_cli() {
  const std::string cli = FILTMULT_CLI_PATH;
  const std::string data = FILTMULT_DATA_DIR;
  std::ifstream golden_in(FILTMULT_GOLDEN_PATH, std::ios::binary);
  EXPECT(golden_in, "golden file missing");
  std::string golden((std::istreambuf_iterator<char>(golden_in)), {});
  int rc = 0;
  std::string c7 = run(cli + " example-c7", rc);
  EXPECT(rc == 0, "example-c7 exit code " << rc);
  EXPECT(c7 == golden, "example-c7 differs from the golden file");

  const std::vector<std::pair<std::string, std::string>> cases{
      {"mult", "adic_m2.json"},         {"mult", "sqrt2.json"},           {"mixed", "pair_m_x2y3.json"},
      {"mixed", "builtin.json"},        {"minkowski", "pair_m_m2.json"},  {"minkowski", "pair_m_x2y3.json"},
      {"trsk", "pair_m_m2.json"},       {"trsk", "builtin_region3.json"}, {"gamma", "gamma_divtoric.json"},
      {"body", "adic_m2.json"},         {"closure", "closure_x2y2.json"}, {"bm", "bm_square_triangle.json"},
      {"example-c7", ""}};
  for (const auto& [cmd, file] : cases) {
    std::string args = cmd + (file.empty() ? "" : " --input " + data + "/" + file) + " --format json";
    int r1, r2, r3;
    std::string a = run("FILTMULT_THREADS=1 " + cli + " " + args, r1);
    std::string b = run("FILTMULT_THREADS=1 " + cli + " " + args, r2);
    std::string c = run("FILTMULT_THREADS=4 " + cli + " " + args, r3);
    EXPECT(r1 == 0 && r2 == 0 && r3 == 0, args << " exit codes");
    EXPECT(a == b, args << ": two runs differ");
    EXPECT(a == c, args << ": thread counts 1 and 4 differ");
  }
  return "golden byte-identical; " + std::to_string(cases.size()) + " commands stable across runs and threads";
}

}  // namespace

int main() {
  criterion(1, "two-divisor example reproduced exactly", 1.0, check_example);
  criterion(2, "monomial multiplicities 1, 4, 6, 8", 5.0, check_monomial);
  criterion(3, "irrational multiplicities", 5.0, check_irrational);
  criterion(4, "Minkowski equality and strict cases", 0, check_minkowski);
  criterion(5, "property suites", 60.0, check_properties);
  criterion(6, "one-sided continued-fraction bounds", 0, check_convergents);
  criterion(7, "CLI golden output and determinism", 0, check_cli);
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
