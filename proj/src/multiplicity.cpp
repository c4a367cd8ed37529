#include "filtmult/multiplicity.hpp"

#include <algorithm>
#include <cmath>

#include "filtmult/linalg.hpp"
#include "filtmult/okounkov.hpp"
#include "filtmult/parallel.hpp"

namespace filtmult {

namespace {

Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Rational ipow(std::int64_t base, unsigned e) {
  Integer out = 1;
  for (unsigned k = 0; k < e; ++k) out *= static_cast<long>(base);
  return Rational(out);
}

void check_schedule(const std::vector<std::int64_t>& schedule) {
  if (schedule.size() < 2) throw Error(ErrorKind::kNonPositiveInput, "schedule needs at least two entries");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1])) {
      throw Error(ErrorKind::kNonPositiveInput, "schedule must be positive and strictly increasing");
    }
  }
}

// Richardson for an O(1/m) error: R = (m_k E_k − m_{k−1} E_{k−1})/(m_k − m_{k−1}).
LimitEstimate extrapolate(std::vector<std::int64_t> schedule, std::vector<Rational> raw) {
  LimitEstimate out;
  out.schedule = std::move(schedule);
  out.raw = std::move(raw);
  const auto& m = out.schedule;
  for (std::size_t k = 1; k < m.size(); ++k) {
    Rational mk(static_cast<long>(m[k])), mp(static_cast<long>(m[k - 1]));
    out.extrapolated.push_back((mk * out.raw[k] - mp * out.raw[k - 1]) / (mk - mp));
  }
  std::vector<Rational> pool{out.extrapolated.back(), out.raw.back()};
  if (out.extrapolated.size() >= 2) pool.push_back(out.extrapolated[out.extrapolated.size() - 2]);
  out.estimate = out.extrapolated.back();
  out.lower = *std::min_element(pool.begin(), pool.end());
  out.upper = *std::max_element(pool.begin(), pool.end());
  return out;
}

Filtration product_of_rescales(const std::vector<Filtration>& fs, const std::vector<std::int64_t>& n) {
  if (fs.empty() || fs.size() != n.size()) throw Error(ErrorKind::kDimensionMismatch, "one multiplier per filtration");
  std::optional<Filtration> acc;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (fs[j].dim() != fs[0].dim()) throw Error(ErrorKind::kDimensionMismatch, "filtrations of different dimension");
    if (n[j] < 0) throw Error(ErrorKind::kNonPositiveInput, "multipliers must be nonnegative");
    if (n[j] == 0) continue;
    Filtration term = n[j] == 1 ? fs[j] : Filtration::rescale(fs[j], n[j]);
    acc = acc ? Filtration::product(*acc, term) : term;
  }
  if (!acc) throw Error(ErrorKind::kNonPositiveInput, "multipliers are all zero");
  return *acc;
}

std::optional<Scalar> try_exact(const Filtration& f, const Scalar& factor) {
  try {
    return Scalar(exact_body(f).covolume()) * factor;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInexactInput || e.kind() == ErrorKind::kFieldMismatch) return std::nullopt;
    throw;
  }
}

void require_primary(const Filtration& f) {
  if (!f.level(1).is_primary()) throw Error(ErrorKind::kNotPrimary, "level 1 is not m-primary: " + describe(f));
}

std::string term_string(const std::vector<int>& exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "n" + std::to_string(i + 1);
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out;
}

// Exact when both sides are exact and share a field; otherwise tolerance based.
Relation relate(const Scalar& lhs, const Scalar& rhs) {
  int c = compare(lhs, rhs);
  return c < 0 ? Relation::kStrict : c == 0 ? Relation::kEquality : Relation::kViolated;
}

// e(F1F2) vs (e_0^(1/d) + e_d^(1/d))^d, deciding equality exactly when possible.
Relation relate_family4(const Scalar& x, const Scalar& e0, const Scalar& ed, unsigned d) {
  if (x.is_exact() && e0.is_exact() && ed.is_exact() && e0.sign() > 0 && ed.sign() > 0) {
    if (auto rho = rational_dth_root(ed, e0, d)) {
      Scalar rhs = e0 * pow(Scalar(1 + *rho), d);
      return relate(x, rhs);
    }
    if (d == 2) {
      try {
        int s = sign_of_difference_with_root((x - e0 - ed).quad(), QuadExt(Rational(2)), (e0 * ed).quad());
        return s < 0 ? Relation::kStrict : s == 0 ? Relation::kEquality : Relation::kViolated;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kFieldMismatch) throw;
      }
    }
    if (x.is_rational() && e0.is_rational() && ed.is_rational()) {
      // With (e_d/e_0)^(1/d) irrational, 1, e_0^(1/d), e_d^(1/d) are independent over Q
      // after scaling, so equality is impossible; only the sign is left.
      const unsigned long bits = 512;
      mpf_class lhs = to_mpf(x, bits);
      mpf_class r = mpf_root(to_mpf(e0, bits), d, bits) + mpf_root(to_mpf(ed, bits), d, bits);
      mpf_class rhs(1, bits);
      for (unsigned k = 0; k < d; ++k) rhs *= r;
      return lhs < rhs ? Relation::kStrict : Relation::kViolated;
    }
  }
  Scalar r = dth_root(e0, d) + dth_root(ed, d);
  return relate(x, pow(r, d));
}

std::string fmt(const Scalar& s) { return to_display_string(s); }

Scalar body_gamma(const Filtration& f, const WeightValuation& mu, std::int64_t m_max) {
  try {
    auto body = exact_body(f);
    std::optional<QuadExt> best;
    for (const auto& v : body.vertices()) {
      QuadExt val;
      for (std::size_t i = 0; i < v.size(); ++i) val += QuadExt(Rational(static_cast<long>(mu.weights()[i]))) * v[i];
      if (!best || val < *best) best = val;
    }
    return Scalar(*best);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInexactInput && e.kind() != ErrorKind::kFieldMismatch) throw;
  }
  return gamma(f, mu, m_max).value();
}

Scalar multiplicity_value(const Filtration& f) {
  if (auto e = try_exact(f, Scalar(Rational(factorial(static_cast<unsigned>(f.dim())))))) return *e;
  return multiplicity_limit(f, default_schedule(f.dim())).value();
}

std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) throw Error(ErrorKind::kCapReached, "integer does not fit a machine word");
  return v.get_si();
}

}  // namespace

// -----------------------------------------------------------------------------

Scalar HomogeneousForm::evaluate(const std::vector<Scalar>& x) const {
  if (x.size() != variables) throw Error(ErrorKind::kDimensionMismatch, "wrong number of variables");
  Scalar out;
  for (const auto& [exps, c] : coefficients) {
    Scalar t = c;
    for (std::size_t i = 0; i < exps.size(); ++i) t *= pow(x[i], static_cast<unsigned>(exps[i]));
    out += t;
  }
  return out;
}

Scalar HomogeneousForm::coefficient(const std::vector<int>& exponents) const {
  auto it = coefficients.find(exponents);
  return it == coefficients.end() ? Scalar() : it->second;
}

std::string HomogeneousForm::to_string(int digits) const {
  std::string out;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    const Scalar& c = it->second;
    if (c.is_exact() && c.sign() == 0) continue;
    std::string mono = term_string(it->first);
    std::string text = to_display_string(c, digits);
    bool compound = text.find(" + ") != std::string::npos || text.find(" - ") != std::string::npos;
    bool negative = !compound && !text.empty() && text[0] == '-';
    if (negative) text = text.substr(1);
    if (compound) text = "(" + text + ")";
    if (!mono.empty()) text = (text == "1" ? mono : text + "*" + mono);
    if (out.empty()) {
      out = negative ? "-" + text : text;
    } else {
      out += negative ? " - " : " + ";
      out += text;
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<std::int64_t> default_schedule(std::size_t dim) {
  if (dim >= 4) return {4, 8, 16};
  if (dim == 3) return {10, 20, 40, 80};
  return {25, 50, 100, 200, 400};
}

Scalar LimitEstimate::value() const {
  if (exact) return *exact;
  double half = std::max(Rational(upper - lower).get_d() / 2, kDefaultFloatTolerance);
  // Centre the interval on the bracket so the tolerance covers it.
  double mid = Rational((upper + lower) / 2).get_d();
  return Scalar(Float{mid, half});
}

double LimitEstimate::relative_width() const {
  double w = Rational(upper - lower).get_d();
  double v = std::abs(estimate.get_d());
  if (v == 0.0) return w == 0.0 ? 0.0 : INFINITY;
  return w / v;
}

bool LimitEstimate::bracket_contains(const Scalar& x) const {
  double v = x.to_double();
  double slack = 1e-12 * std::max(1.0, std::abs(v));
  return v >= lower.get_d() - slack && v <= upper.get_d() + slack;
}

LimitEstimate multiplicity_limit(const Filtration& f, const std::vector<std::int64_t>& schedule) {
  check_schedule(schedule);
  require_primary(f);
  const unsigned d = static_cast<unsigned>(f.dim());
  const Rational dfact(factorial(d));
  auto raw = parallel_map(schedule.size(), [&](std::size_t k) -> Rational {
    const std::int64_t m = schedule[k];
    return dfact * Rational(static_cast<long>(f.colength(m))) / ipow(m, d);
  });
  LimitEstimate out = extrapolate(schedule, std::move(raw));
  out.exact = try_exact(f, Scalar(dfact));
  return out;
}

LimitEstimate mixed_function(const std::vector<Filtration>& fs, const std::vector<std::int64_t>& n,
                             const std::vector<std::int64_t>& schedule) {
  check_schedule(schedule);
  Filtration prod = product_of_rescales(fs, n);
  for (const auto& f : fs) require_primary(f);
  const unsigned d = static_cast<unsigned>(prod.dim());
  auto raw = parallel_map(schedule.size(), [&](std::size_t k) -> Rational {
    const std::int64_t m = schedule[k];
    return Rational(static_cast<long>(prod.colength(m))) / ipow(m, d);
  });
  LimitEstimate out = extrapolate(schedule, std::move(raw));
  out.exact = try_exact(prod, Scalar(1));
  return out;
}

// -----------------------------------------------------------------------------

HomogeneousForm MixedMultiplicities::polynomial() const {
  HomogeneousForm out;
  out.degree = d;
  out.variables = 2;
  const unsigned dd = static_cast<unsigned>(d);
  for (unsigned i = 0; i <= dd; ++i) {
    Rational denom(factorial(dd - i) * factorial(i));
    out.coefficients[{static_cast<int>(dd - i), static_cast<int>(i)}] = e[i] / Scalar(denom);
  }
  return out;
}

Scalar MixedMultiplicities::product_multiplicity() const {
  Scalar out;
  const unsigned dd = static_cast<unsigned>(d);
  for (unsigned i = 0; i <= dd; ++i) out += Scalar(Rational(binomial(dd, i))) * e[i];
  return out;
}

MixedMultiplicities mixed_multiplicities(const Filtration& f1, const Filtration& f2,
                                         const std::vector<std::int64_t>& schedule) {
  if (f1.dim() != f2.dim()) throw Error(ErrorKind::kDimensionMismatch, "pair of different dimension");
  require_primary(f1);
  require_primary(f2);
  const unsigned d = static_cast<unsigned>(f1.dim());

  MixedMultiplicities out;
  out.d = d;
  std::vector<std::pair<std::int64_t, std::int64_t>> nodes;
  for (std::int64_t s = 1; s <= static_cast<std::int64_t>(d); ++s) {
    for (std::int64_t k = s; k >= 0; --k) nodes.emplace_back(k, s - k);
  }

  bool exact = true;
  std::vector<std::optional<Scalar>> exact_values(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    exact_values[j] = try_exact(pair_filtration(f1, f2, nodes[j].first, nodes[j].second), Scalar(1));
    if (!exact_values[j]) exact = false;
  }
  std::vector<std::int64_t> sched = schedule;
  if (!exact && sched.empty()) sched = default_schedule(d);

  std::vector<std::optional<LimitEstimate>> limits(nodes.size());
  if (!sched.empty()) {
    auto computed = parallel_map(nodes.size(), [&](std::size_t j) {
      return mixed_function({f1, f2}, {nodes[j].first, nodes[j].second}, sched);
    });
    for (std::size_t j = 0; j < nodes.size(); ++j) limits[j] = std::move(computed[j]);
  }

  for (std::size_t j = 0; j < nodes.size(); ++j) {
    NodeValue nv;
    nv.n1 = nodes[j].first;
    nv.n2 = nodes[j].second;
    if (exact_values[j]) nv.exact = *exact_values[j];
    nv.limit = limits[j];
    out.nodes.push_back(std::move(nv));
  }

  // Top layer n1 + n2 = d: P(k, d−k) = Σ_i c_i k^(d−i) (d−k)^i.
  Matrix<Rational> m(d + 1, std::vector<Rational>(d + 1));
  std::vector<std::size_t> top;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (nodes[j].first + nodes[j].second == static_cast<std::int64_t>(d)) top.push_back(j);
  }
  for (std::size_t r = 0; r <= d; ++r) {
    const std::int64_t k = nodes[top[r]].first;
    for (unsigned i = 0; i <= d; ++i) m[r][i] = ipow(k, d - i) * ipow(static_cast<std::int64_t>(d) - k, i);
  }
  auto inv = invert(m);
  if (!inv) throw Error(ErrorKind::kDegenerateSystem, "node system is singular");

  std::vector<Rational> weight(d + 1);
  for (unsigned i = 0; i <= d; ++i) weight[i] = Rational(factorial(d - i) * factorial(i));

  out.e.assign(d + 1, Scalar());
  out.lower.assign(d + 1, 0.0);
  out.upper.assign(d + 1, 0.0);
  out.exact = exact;

  std::vector<double> mid(d + 1, 0.0), half(d + 1, 0.0);
  if (!sched.empty()) {
    for (std::size_t r = 0; r <= d; ++r) {
      const auto& lim = *limits[top[r]];
      if (!exact && lim.relative_width() > 0.25) {
        throw Error(ErrorKind::kIllConditioned, "bracket at node (" + std::to_string(nodes[top[r]].first) + "," +
                                                    std::to_string(nodes[top[r]].second) +
                                                    ") is too wide; raise the schedule");
      }
    }
    for (unsigned i = 0; i <= d; ++i) {
      for (std::size_t r = 0; r <= d; ++r) {
        const auto& lim = *limits[top[r]];
        double centre = Rational((lim.upper + lim.lower) / 2).get_d();
        double w = Rational((lim.upper - lim.lower) / 2).get_d();
        double c = (*inv)[i][r].get_d();
        mid[i] += c * centre;
        half[i] += std::abs(c) * w;
      }
      mid[i] *= weight[i].get_d();
      half[i] *= weight[i].get_d();
    }
  }

  for (unsigned i = 0; i <= d; ++i) {
    if (exact) {
      Scalar v;
      for (std::size_t r = 0; r <= d; ++r) v += Scalar((*inv)[i][r]) * *exact_values[top[r]];
      out.e[i] = v * Scalar(weight[i]);
      out.lower[i] = out.upper[i] = out.e[i].to_double();
    } else {
      out.e[i] = Scalar(Float{mid[i], std::max(half[i], kDefaultFloatTolerance)});
      out.lower[i] = mid[i] - half[i];
      out.upper[i] = mid[i] + half[i];
    }
  }

  if (!sched.empty()) {
    HomogeneousForm form;
    form.degree = d;
    form.variables = 2;
    for (unsigned i = 0; i <= d; ++i) {
      form.coefficients[{static_cast<int>(d - i), static_cast<int>(i)}] =
          Scalar::from_double(mid[i] / weight[i].get_d());
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (nodes[j].first + nodes[j].second == static_cast<std::int64_t>(d)) continue;
      double p = form.evaluate({Scalar(static_cast<int>(nodes[j].first)), Scalar(static_cast<int>(nodes[j].second))})
                     .to_double();
      double est = limits[j]->estimate.get_d();
      out.homogeneity_residual = std::max(out.homogeneity_residual, std::abs(p - est));
    }
  }
  return out;
}

// -----------------------------------------------------------------------------

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kStrict: return "holds";
    case Relation::kEquality: return "equality";
    case Relation::kViolated: return "violated";
  }
  return "?";
}

MinkowskiReport minkowski_report(const MixedMultiplicities& mm) {
  MinkowskiReport out;
  const unsigned d = static_cast<unsigned>(mm.d);
  const auto& e = mm.e;
  auto push = [&](int family, int index, Scalar lhs, Scalar rhs, std::string statement, Relation rel) {
    out.checks.push_back(InequalityCheck{family, index, rel, std::move(lhs), std::move(rhs), std::move(statement)});
    if (rel == Relation::kViolated) out.all_hold = false;
  };
  for (unsigned i = 1; i < d; ++i) {
    Scalar l = e[i] * e[i], r = e[i - 1] * e[i + 1];
    push(1, static_cast<int>(i), l, r,
         "e" + std::to_string(i) + "^2 <= e" + std::to_string(i - 1) + "*e" + std::to_string(i + 1), relate(l, r));
  }
  for (unsigned i = 1; i < d; ++i) {
    Scalar l = e[i] * e[d - i], r = e[0] * e[d];
    push(2, static_cast<int>(i), l, r,
         "e" + std::to_string(i) + "*e" + std::to_string(d - i) + " <= e0*e" + std::to_string(d), relate(l, r));
  }
  bool all3_equal = true;
  for (unsigned i = 1; i < d; ++i) {
    Scalar l = pow(e[i], d), r = pow(e[0], d - i) * pow(e[d], i);
    Relation rel = relate(l, r);
    if (rel != Relation::kEquality) all3_equal = false;
    push(3, static_cast<int>(i), l, r,
         "e" + std::to_string(i) + "^" + std::to_string(d) + " <= e0^" + std::to_string(d - i) + "*e" +
             std::to_string(d) + "^" + std::to_string(i),
         rel);
  }
  Scalar x = mm.product_multiplicity();
  Relation rel4 = relate_family4(x, e[0], e[d], d);
  push(4, 0, dth_root(x, d), dth_root(e[0], d) + dth_root(e[d], d),
       "e(I1 I2)^(1/" + std::to_string(d) + ") <= e0^(1/" + std::to_string(d) + ") + e" + std::to_string(d) +
           "^(1/" + std::to_string(d) + ")",
       rel4);
  out.equality = rel4 == Relation::kEquality;
  if (out.equality != all3_equal && d >= 2) {
    out.discrepancy = std::string("equality in 4) ") + (out.equality ? "holds" : "fails") +
                      " but equality in all of 3) " + (all3_equal ? "holds" : "fails") +
                      "; the brackets are too coarse, raise the schedule";
  }
  if (out.equality && e[0].sign() > 0) {
    HomogeneousForm form;
    form.degree = d;
    form.variables = 2;
    Scalar xi = dth_root(e[d] / e[0], d);
    Scalar inv_fact = Scalar(Rational(1) / Rational(factorial(d)));
    for (unsigned i = 0; i <= d; ++i) {
      form.coefficients[{static_cast<int>(d - i), static_cast<int>(i)}] =
          inv_fact * Scalar(Rational(binomial(d, i))) * e[0] * pow(xi, i);
    }
    out.equality_form = std::move(form);
  }
  return out;
}

// -----------------------------------------------------------------------------

std::vector<WeightValuation> default_valuations(std::size_t dim) {
  std::vector<std::vector<std::int64_t>> ws;
  ws.emplace_back(dim, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::int64_t> w(dim, 1);
    w[i] = 2;
    ws.push_back(w);
  }
  std::vector<std::int64_t> up(dim), down(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    up[i] = static_cast<std::int64_t>(i) + 2;
    down[i] = static_cast<std::int64_t>(dim - i) + 1;
  }
  ws.push_back(up);
  ws.push_back(down);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  std::vector<WeightValuation> out;
  for (auto& w : ws) out.emplace_back(std::move(w));
  return out;
}

GammaRatioReport gamma_ratio_check(const Filtration& f1, const Filtration& f2,
                                   const std::vector<WeightValuation>& valuations, const Scalar& e0,
                                   const Scalar& ed, std::int64_t m_max) {
  if (e0.sign() <= 0 || ed.sign() <= 0) throw Error(ErrorKind::kNonPositiveInput, "gamma ratio needs e0, ed > 0");
  const unsigned d = static_cast<unsigned>(f1.dim());
  GammaRatioReport out;
  out.xi = dth_root(ed / e0, d);
  for (const auto& mu : valuations) {
    if (mu.dim() != f1.dim()) throw Error(ErrorKind::kDimensionMismatch, "valuation of wrong dimension");
    GammaComparison row;
    row.weights = mu.weights();
    row.gamma1 = body_gamma(f1, mu, m_max);
    row.gamma2 = body_gamma(f2, mu, m_max);
    row.consistent = out.xi * row.gamma1 == row.gamma2;
    if (!row.consistent) out.all_consistent = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string_view to_string(Verdict v) { return v == Verdict::kEquality ? "EQUALITY" : "STRICT"; }

MinkowskiEqualityResult minkowski_equality_test(const Filtration& f1, const Filtration& f2,
                                                const std::vector<std::int64_t>& schedule, std::int64_t m_max) {
  MinkowskiEqualityResult out;
  out.e = mixed_multiplicities(f1, f2, schedule);
  const unsigned d = static_cast<unsigned>(out.e.d);
  const Scalar& e0 = out.e.e[0];
  const Scalar& ed = out.e.e[d];
  if (e0.sign() <= 0 || ed.sign() <= 0) throw Error(ErrorKind::kNonPositiveInput, "Minkowski test needs e0, ed > 0");
  out.report = minkowski_report(out.e);
  if (!out.report.equality) {
    out.verdict = Verdict::kStrict;
    return out;
  }
  out.verdict = Verdict::kEquality;
  out.xi = dth_root(ed / e0, d);

  try {
    double lam = std::max(exact_body(f1).max_vertex_degree().to_double(), exact_body(f2).max_vertex_degree().to_double());
    double amin = std::min(dth_root(e0, d).to_double(), dth_root(ed, d).to_double());
    Scalar phi(Rational(static_cast<long>(std::ceil(lam / amin)) + 1));
    out.bodies_homothetic = pair_homothety_check(f1, f2, e0, ed, phi).homothetic;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInexactInput && e.kind() != ErrorKind::kFieldMismatch) throw;
  }
  out.gamma = gamma_ratio_check(f1, f2, default_valuations(f1.dim()), e0, ed, m_max);

  std::vector<std::string> issues;
  if (out.report.discrepancy) issues.push_back(*out.report.discrepancy);
  if (out.bodies_homothetic && !*out.bodies_homothetic) issues.push_back("pair bodies are not homothetic");
  if (!out.gamma->all_consistent) issues.push_back("gamma ratios disagree with xi; raise m_max");
  if (!issues.empty()) {
    std::string msg;
    for (const auto& s : issues) msg += (msg.empty() ? "" : "; ") + s;
    out.discrepancy = msg;
  }
  return out;
}

// -----------------------------------------------------------------------------

std::string_view to_string(ReesVerdict v) {
  switch (v) {
    case ReesVerdict::kEqualBoth: return "EqualBoth";
    case ReesVerdict::kEqualMultOnly: return "EqualMultOnly-UNEXPECTED";
    case ReesVerdict::kDistinct: return "Distinct";
  }
  return "?";
}

ReesResult rees_equality_check(const Filtration& small, const Filtration& big, std::int64_t m_max,
                               std::int64_t r_max) {
  if (m_max < 1 || r_max < 1) throw Error(ErrorKind::kNonPositiveInput, "caps must be positive");
  if (small.dim() != big.dim()) throw Error(ErrorKind::kDimensionMismatch, "pair of different dimension");
  for (std::int64_t n = 1; n <= m_max; ++n) {
    if (!big.level(n).contains(small.level(n))) {
      throw Error(ErrorKind::kNotNested, "level " + std::to_string(n) + " of the smaller filtration is not contained");
    }
  }
  ReesResult out;
  out.e_small = multiplicity_value(small);
  out.e_big = multiplicity_value(big);
  Filtration cs = Filtration::closure(small, r_max), cb = Filtration::closure(big, r_max);
  for (std::int64_t n = 1; n <= m_max; ++n) {
    if (!(cs.level(n) == cb.level(n))) {
      out.closure_mismatch = n;
      break;
    }
  }
  const bool mult_equal = out.e_small == out.e_big;
  if (mult_equal && !out.closure_mismatch) {
    out.verdict = ReesVerdict::kEqualBoth;
  } else if (mult_equal) {
    out.verdict = ReesVerdict::kEqualMultOnly;
    out.note = "multiplicities agree but closures differ at level " + std::to_string(*out.closure_mismatch) +
               "; raise r_max";
  } else {
    out.verdict = ReesVerdict::kDistinct;
    if (!out.closure_mismatch) out.note = "closures agree up to m_max although multiplicities differ; raise m_max";
  }
  return out;
}

// -----------------------------------------------------------------------------

std::string_view to_string(TrskVerdict v) {
  switch (v) {
    case TrskVerdict::kRescaling: return "RESCALING";
    case TrskVerdict::kStrict: return "STRICT";
    case TrskVerdict::kClosuresDiffer: return "CLOSURES_DIFFER";
  }
  return "?";
}

TrskResult trsk_check(const Filtration& f1, const Filtration& f2, const std::vector<std::int64_t>& schedule,
                      std::int64_t n_max, std::int64_t q_cap, std::int64_t r_max) {
  if (n_max < 1 || q_cap < 1) throw Error(ErrorKind::kNonPositiveInput, "caps must be positive");
  TrskResult out;
  out.minkowski = minkowski_equality_test(f1, f2, schedule, n_max);
  if (out.minkowski.verdict == Verdict::kStrict) {
    out.verdict = TrskVerdict::kStrict;
    return out;
  }
  const unsigned d = static_cast<unsigned>(f1.dim());
  const Scalar& e0 = out.minkowski.e.e[0];
  const Scalar& ed = out.minkowski.e.e[d];
  out.xi = out.minkowski.xi;

  // First level where the two rescaled closures differ, if any.
  auto first_mismatch = [&](std::int64_t a, std::int64_t b) -> std::optional<std::int64_t> {
    Filtration c1 = Filtration::closure(Filtration::rescale(f1, a), r_max);
    Filtration c2 = Filtration::closure(Filtration::rescale(f2, b), r_max);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      if (!(c1.level(n) == c2.level(n))) return n;
    }
    return std::nullopt;
  };
  auto accept = [&](const Integer& a, const Integer& b) {
    out.a = a;
    out.b = b;
    out.levels_checked = n_max;
  };

  std::optional<Rational> root;
  if (e0.is_exact() && ed.is_exact()) root = rational_dth_root(ed, e0, d);
  if (root) {
    const Integer a = root->get_num(), b = root->get_den();
    auto bad = first_mismatch(to_int64(a), to_int64(b));
    accept(a, b);
    out.verdict = bad ? TrskVerdict::kClosuresDiffer : TrskVerdict::kRescaling;
    if (bad) out.rejected.emplace_back(a.get_str() + "/" + b.get_str(), *bad);
    return out;
  }

  ConvergentStream stream(*out.xi);
  while (auto c = stream.next()) {
    if (c->q > q_cap) break;
    if (sgn(c->p) <= 0) continue;
    auto bad = first_mismatch(to_int64(c->p), to_int64(c->q));
    if (!bad) {
      accept(c->p, c->q);
      out.verdict = TrskVerdict::kRescaling;
      return out;
    }
    out.rejected.emplace_back(c->p.get_str() + "/" + c->q.get_str(), *bad);
  }
  std::string tried;
  for (const auto& [cand, lvl] : out.rejected) tried += " " + cand + "@" + std::to_string(lvl);
  throw Error(ErrorKind::kRationalityUndecided,
              "no certified a/b with b <= " + std::to_string(q_cap) + " for xi = " + fmt(*out.xi) +
                  (tried.empty() ? "" : "; rejected:" + tried));
}

// -----------------------------------------------------------------------------

std::string_view to_string(RigidityVerdict v) {
  switch (v) {
    case RigidityVerdict::kEqual: return "EQUAL";
    case RigidityVerdict::kMultiplicitiesDiffer: return "MULTIPLICITIES_DIFFER";
    case RigidityVerdict::kFalsified: return "FALSIFIED";
  }
  return "?";
}

RigidityResult equal_mult_rigidity_check(const Filtration& f, const Filtration& d, std::int64_t m_max) {
  if (d.kind() != FiltrationKind::kDivisorialToric) {
    throw Error(ErrorKind::kSchema, "rigidity check needs a divisorial-toric filtration");
  }
  if (f.dim() != d.dim()) throw Error(ErrorKind::kDimensionMismatch, "pair of different dimension");
  if (m_max < 1) throw Error(ErrorKind::kNonPositiveInput, "m_max must be positive");
  for (std::int64_t n = 1; n <= m_max; ++n) {
    if (!f.level(n).contains(d.level(n))) {
      throw Error(ErrorKind::kNotNested, "I(" + std::to_string(n) + "D) is not contained in level " + std::to_string(n));
    }
  }
  RigidityResult out;
  out.e_f = multiplicity_value(f);
  out.e_d = multiplicity_value(d);
  if (!(out.e_f == out.e_d)) {
    out.verdict = RigidityVerdict::kMultiplicitiesDiffer;
    return out;
  }
  for (std::int64_t n = 1; n <= m_max; ++n) {
    if (!(f.level(n) == d.level(n))) {
      out.verdict = RigidityVerdict::kFalsified;
      out.mismatch_level = n;
      return out;
    }
  }
  out.verdict = RigidityVerdict::kEqual;
  return out;
}

Scalar exact_multiplicity(const Filtration& f) {
  auto e = try_exact(f, Scalar(Rational(factorial(static_cast<unsigned>(f.dim())))));
  if (!e) throw Error(ErrorKind::kInexactInput, "no exact body for " + describe(f));
  return *e;
}

}  // namespace filtmult
