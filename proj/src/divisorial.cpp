#include "filtmult/divisorial.hpp"

#include <algorithm>
#include <random>

#include "filtmult/linalg.hpp"

namespace filtmult {

namespace {

Integer factorial(std::size_t n) {
  Integer out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= static_cast<unsigned long>(k);
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar out;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// −(−1)^d
Scalar anti_sign(std::size_t d) { return Scalar(d % 2 == 1 ? 1 : -1); }

// ⟨g_1 ··· g_d⟩ for vectors already in γ-coordinates.
Scalar product_of(const IntersectionTensor& t, const std::vector<Scalar>& g1, std::size_t k1,
                  const std::vector<Scalar>& g2, std::size_t k2) {
  std::vector<DivisorCoeffs> list(k1, g1);
  list.insert(list.end(), k2, g2);
  return intersection_product(t, list);
}

bool parallel(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!(a[i] * b[j] == a[j] * b[i])) return false;
    }
  }
  return true;
}

std::vector<Scalar> nonzero_column(const std::vector<std::vector<Scalar>>& g) {
  for (std::size_t c = 0; c < g.size(); ++c) {
    std::vector<Scalar> col;
    bool zero = true;
    for (const auto& row : g) {
      col.push_back(row[c]);
      if (!(row[c].is_exact() && row[c].sign() == 0)) zero = false;
    }
    if (!zero) return col;
  }
  return {};
}

// Extreme rays of { n ∈ R²_{≥0} : a·n1 + b·n2 ≥ 0 for every row }, sorted by angle.
std::vector<std::vector<Scalar>> quadrant_rays(const std::vector<std::pair<Scalar, Scalar>>& rows) {
  std::vector<std::vector<Scalar>> candidates{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}};
  for (const auto& [a, b] : rows) {
    if (a.sign() * b.sign() < 0) candidates.push_back({b.abs(), a.abs()});
  }
  std::vector<std::vector<Scalar>> out;
  for (auto& ray : candidates) {
    bool ok = std::all_of(rows.begin(), rows.end(),
                          [&](const auto& r) { return (r.first * ray[0] + r.second * ray[1]).sign() >= 0; });
    if (!ok) continue;
    bool dup = std::any_of(out.begin(), out.end(), [&](const auto& o) { return parallel(o, ray); });
    if (!dup) out.push_back(ray);
  }
  // Counter-clockwise from the n1 axis: compare slopes by cross product.
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return (p[0] * q[1] - p[1] * q[0]).sign() > 0; });
  return out;
}

HomogeneousForm two_variable_form(std::size_t d) {
  HomogeneousForm f;
  f.degree = d;
  f.variables = 2;
  return f;
}

}  // namespace

// -----------------------------------------------------------------------------

IntersectionTensor::IntersectionTensor(std::size_t d, std::vector<std::string> labels)
    : d_(d), labels_(std::move(labels)) {
  if (d_ == 0) throw Error(ErrorKind::kNonPositiveInput, "tensor degree must be positive");
  if (labels_.empty()) throw Error(ErrorKind::kNonPositiveInput, "tensor needs at least one label");
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::kSchema, "duplicate divisor label");
  }
}

std::size_t IntersectionTensor::label_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::kSchema, "unknown divisor label " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

void IntersectionTensor::set(std::vector<std::size_t> key, const Integer& value) {
  if (key.size() != d_) throw Error(ErrorKind::kDimensionMismatch, "tensor key of wrong length");
  for (auto k : key) {
    if (k >= labels_.size()) throw Error(ErrorKind::kDimensionMismatch, "tensor key out of range");
  }
  std::sort(key.begin(), key.end());
  entries_[key] = value;
}

Integer IntersectionTensor::entry(std::vector<std::size_t> key) const {
  std::sort(key.begin(), key.end());
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorKind::kSchema, "missing intersection number");
  return it->second;
}

bool IntersectionTensor::complete() const { return entries_.size() == binomial(rank() + d_ - 1, d_); }

void validate_divisor(const DivisorCoeffs& d, std::size_t rank) {
  if (d.size() != rank) throw Error(ErrorKind::kDimensionMismatch, "divisor has the wrong number of coefficients");
  bool nonzero = false;
  for (const auto& c : d) {
    if (c.sign() < 0) throw Error(ErrorKind::kNonPositiveInput, "divisor coefficients must be nonnegative");
    if (c.sign() > 0) nonzero = true;
  }
  if (!nonzero) throw Error(ErrorKind::kNonPositiveInput, "divisor is zero");
}

Scalar intersection_product(const IntersectionTensor& t, const std::vector<DivisorCoeffs>& divisors) {
  if (divisors.size() != t.d()) {
    throw Error(ErrorKind::kDimensionMismatch, "need exactly " + std::to_string(t.d()) + " divisors");
  }
  for (const auto& dv : divisors) {
    if (dv.size() != t.rank()) throw Error(ErrorKind::kDimensionMismatch, "divisor of wrong length");
  }
  Scalar total;
  std::vector<std::size_t> idx(t.d());
  // Depth-first over label tuples, skipping zero coefficients.
  auto walk = [&](auto&& self, std::size_t depth, const Scalar& coeff) -> void {
    if (depth == t.d()) {
      total += coeff * Scalar(Rational(t.entry(idx)));
      return;
    }
    for (std::size_t l = 0; l < t.rank(); ++l) {
      const Scalar& c = divisors[depth][l];
      if (c.is_exact() && c.sign() == 0) continue;
      idx[depth] = l;
      self(self, depth + 1, coeff * c);
    }
  };
  walk(walk, 0, Scalar(1));
  return total;
}

// -----------------------------------------------------------------------------

bool EnvelopeCone::contains(const DivisorCoeffs& d) const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [&](const auto& row) { return dot(row, d).sign() >= 0; });
}

bool EnvelopeCone::contains_interior(const DivisorCoeffs& d) const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [&](const auto& row) { return dot(row, d).sign() > 0; });
}

std::vector<Scalar> EnvelopeCone::apply(const DivisorCoeffs& d) const {
  std::vector<Scalar> out;
  for (const auto& row : gamma) out.push_back(dot(row, d));
  return out;
}

std::vector<std::size_t> NefEnvelope::containing(const DivisorCoeffs& d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (cones[i].contains(d)) out.push_back(i);
  }
  return out;
}

std::vector<Scalar> gamma_eval(const NefEnvelope& env, const DivisorCoeffs& d) {
  validate_divisor(d, env.rank);
  auto hits = env.containing(d);
  if (hits.empty()) throw Error(ErrorKind::kOutsideEnvelope, "no cone contains the divisor");
  auto g = env.cones[hits[0]].apply(d);
  for (std::size_t k = 1; k < hits.size(); ++k) {
    if (env.cones[hits[k]].apply(d) != g) {
      throw Error(ErrorKind::kBoundaryAmbiguity,
                  "cones " + env.cones[hits[0]].name + " and " + env.cones[hits[k]].name + " disagree");
    }
  }
  return g;
}

std::vector<std::string> check_envelope(const NefEnvelope& env, std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> issues;
  auto check_point = [&](const DivisorCoeffs& d, const std::string& where) {
    auto hits = env.containing(d);
    if (hits.empty()) return;
    auto g = env.cones[hits[0]].apply(d);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (g[i] < d[i]) issues.push_back(where + ": gamma below the coefficients in " + env.cones[hits[0]].name);
    }
    for (std::size_t k = 1; k < hits.size(); ++k) {
      if (env.cones[hits[k]].apply(d) != g) {
        issues.push_back(where + ": " + env.cones[hits[0]].name + " and " + env.cones[hits[k]].name + " disagree");
      }
    }
  };
  if (env.rank == 2) {
    for (const auto& cone : env.cones) {
      std::vector<std::pair<Scalar, Scalar>> rows;
      for (const auto& r : cone.inequalities) rows.emplace_back(r[0], r[1]);
      for (const auto& ray : quadrant_rays(rows)) {
        for (std::size_t k = 1; k <= std::max<std::size_t>(samples, 1); ++k) {
          Scalar s(static_cast<int>(k));
          DivisorCoeffs d{ray[0] * s, ray[1] * s};
          check_point(d, "ray " + to_display_string(ray[0]) + "," + to_display_string(ray[1]) + " x" +
                             std::to_string(k));
          auto g1 = env.cones[env.containing(ray).front()].apply(ray);
          auto gk = env.cones[env.containing(d).front()].apply(d);
          for (std::size_t i = 0; i < 2; ++i) {
            if (!(gk[i] == g1[i] * s)) issues.push_back("gamma is not homogeneous along a boundary ray");
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, 20);
    for (std::size_t s = 0; s < samples; ++s) {
      DivisorCoeffs d;
      bool nonzero = false;
      for (std::size_t i = 0; i < env.rank; ++i) {
        int v = coord(rng);
        nonzero |= v > 0;
        d.emplace_back(v);
      }
      if (nonzero) check_point(d, "sample " + std::to_string(s));
    }
  }
  std::sort(issues.begin(), issues.end());
  issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
  return issues;
}

Scalar anti_positive_mixed(const IntersectionTensor& t, const NefEnvelope& env, const DivisorCoeffs& d1,
                           const DivisorCoeffs& d2, std::size_t k1, std::size_t k2) {
  if (k1 + k2 != t.d()) throw Error(ErrorKind::kDimensionMismatch, "exponents must add up to the dimension");
  if (env.rank != t.rank()) throw Error(ErrorKind::kDimensionMismatch, "tensor and envelope disagree on rank");
  std::vector<Scalar> g1 = k1 > 0 ? gamma_eval(env, d1) : std::vector<Scalar>(t.rank());
  std::vector<Scalar> g2 = k2 > 0 ? gamma_eval(env, d2) : std::vector<Scalar>(t.rank());
  return anti_sign(t.d()) * product_of(t, g1, k1, g2, k2);
}

MixedMultiplicities divisorial_mixed_multiplicities(const IntersectionTensor& t, const NefEnvelope& env,
                                                    const DivisorCoeffs& d1, const DivisorCoeffs& d2) {
  MixedMultiplicities out;
  out.d = t.d();
  out.exact = true;
  for (std::size_t i = 0; i <= t.d(); ++i) {
    out.e.push_back(anti_positive_mixed(t, env, d1, d2, t.d() - i, i));
    out.lower.push_back(out.e.back().to_double());
    out.upper.push_back(out.e.back().to_double());
  }
  return out;
}

MixedPolynomial mixed_polynomial(const IntersectionTensor& t, const NefEnvelope& env, const DivisorCoeffs& d1,
                                 const DivisorCoeffs& d2) {
  const std::size_t d = t.d();
  MixedPolynomial out;
  out.form = two_variable_form(d);
  for (std::size_t i = 0; i <= d; ++i) {
    Scalar e = anti_positive_mixed(t, env, d1, d2, d - i, i);
    out.form.coefficients[{static_cast<int>(d - i), static_cast<int>(i)}] =
        e / Scalar(Rational(factorial(d - i) * factorial(i)));
  }
  auto c1 = env.containing(d1), c2 = env.containing(d2);
  out.straddles = std::none_of(c1.begin(), c1.end(),
                               [&](std::size_t c) { return std::find(c2.begin(), c2.end(), c) != c2.end(); });

  const Scalar inv_fact(Rational(1) / Rational(factorial(d)));
  for (std::size_t c = 0; c < env.cones.size(); ++c) {
    const auto& cone = env.cones[c];
    PiecewisePiece piece;
    piece.cone = c;
    piece.name = cone.name;
    for (const auto& row : cone.inequalities) piece.inequalities.emplace_back(dot(row, d1), dot(row, d2));
    if (quadrant_rays(piece.inequalities).size() < 2) continue;  // not full-dimensional here
    auto g1 = cone.apply(d1), g2 = cone.apply(d2);
    piece.f = two_variable_form(d);
    for (std::size_t k = 0; k <= d; ++k) {
      piece.f.coefficients[{static_cast<int>(d - k), static_cast<int>(k)}] =
          inv_fact * Scalar(Rational(binomial(d, k))) * anti_sign(d) * product_of(t, g1, d - k, g2, k);
    }
    out.piecewise.push_back(std::move(piece));
  }
  return out;
}

// -----------------------------------------------------------------------------

std::string cone_pair_relation(const NefEnvelope& env, std::size_t i, std::size_t j) {
  const auto& gi = env.cones.at(i).gamma;
  const auto& gj = env.cones.at(j).gamma;
  const std::size_t ri = matrix_rank(gi), rj = matrix_rank(gj);
  if (i == j) return ri == 1 ? "always" : "iff proportional";
  if (ri == 1 && rj == 1) return parallel(nonzero_column(gi), nonzero_column(gj)) ? "always" : "never";
  if (ri == 1 || rj == 1) {
    // A line of γ values meets the open image of the other cone, or not.
    const auto& line = ri == 1 ? nonzero_column(gi) : nonzero_column(gj);
    const auto& other = ri == 1 ? env.cones[j] : env.cones[i];
    if (matrix_rank(other.gamma) < env.rank) return "some pairs";
    auto pre = solve_linear(other.gamma, line);
    if (!pre) return "some pairs";
    std::vector<Scalar> neg;
    for (const auto& v : *pre) neg.push_back(-v);
    return other.contains_interior(*pre) || other.contains_interior(neg) ? "some pairs" : "never";
  }
  return "some pairs";
}

EqualityClassification equality_classifier(const NefEnvelope& env, const IntersectionTensor& t,
                                           const DivisorCoeffs& d1, const DivisorCoeffs& d2) {
  if (env.rank != t.rank()) throw Error(ErrorKind::kDimensionMismatch, "tensor and envelope disagree on rank");
  EqualityClassification out;
  out.gamma1 = gamma_eval(env, d1);
  out.gamma2 = gamma_eval(env, d2);
  out.cones1 = env.containing(d1);
  out.cones2 = env.containing(d2);
  out.verdict = parallel(out.gamma1, out.gamma2) ? Verdict::kEquality : Verdict::kStrict;
  out.commentary = env.cones[out.cones1.front()].name + " / " + env.cones[out.cones2.front()].name + ": " +
                   cone_pair_relation(env, out.cones1.front(), out.cones2.front());
  return out;
}

Rescaling find_rescaling(const NefEnvelope& env, const IntersectionTensor& t, const DivisorCoeffs& d1,
                         const DivisorCoeffs& d2, std::int64_t q_cap) {
  auto cls = equality_classifier(env, t, d1, d2);
  if (cls.verdict != Verdict::kEquality) throw Error(ErrorKind::kNotEquality, "gamma ratios differ");
  std::size_t k = 0;
  while (k < cls.gamma1.size() && cls.gamma1[k].sign() == 0) ++k;
  if (k == cls.gamma1.size()) throw Error(ErrorKind::kDivisionByZero, "gamma vector of D1 is zero");
  Rescaling out;
  out.xi = cls.gamma2[k] / cls.gamma1[k];

  auto integral = [](const DivisorCoeffs& d) {
    return std::all_of(d.begin(), d.end(),
                       [](const Scalar& c) { return c.is_rational() && c.rational().get_den() == 1; });
  };
  auto verified = [&](const Integer& a, const Integer& b) {
    for (std::size_t i = 0; i < cls.gamma1.size(); ++i) {
      if (!(Scalar(Rational(a)) * cls.gamma1[i] == Scalar(Rational(b)) * cls.gamma2[i])) return false;
    }
    return true;
  };

  if (out.xi.is_rational()) {
    const Rational& r = out.xi.rational();
    if (r.get_den() > q_cap) {
      throw Error(ErrorKind::kRationalityUndecided, "xi = " + to_display_string(r) + " has denominator above q_cap");
    }
    out.a = r.get_num();
    out.b = r.get_den();
    if (!verified(out.a, out.b)) throw Error(ErrorKind::kRationalityUndecided, "a/b failed verification");
    return out;
  }
  if (out.xi.is_exact()) {
    std::string msg = "xi = " + to_display_string(out.xi) + " is irrational";
    if (integral(d1) && integral(d2)) msg += "; falsification artifact: the divisors are integral";
    throw Error(ErrorKind::kRationalityUndecided, msg);
  }
  ConvergentStream stream(out.xi);
  while (auto c = stream.next()) {
    if (c->q > q_cap) break;
    if (verified(c->p, c->q)) {
      out.a = c->p;
      out.b = c->q;
      return out;
    }
  }
  throw Error(ErrorKind::kRationalityUndecided, "no a/b with b <= q_cap for xi = " + to_display_string(out.xi));
}

// -----------------------------------------------------------------------------

QuadExt builtin_region3_slope() { return QuadExt(Rational(3)) / QuadExt(9, -1, 3); }

BuiltinExample builtin_example() {
  BuiltinExample ex;
  ex.tensor = IntersectionTensor(3, {"E1", "E2"});
  ex.tensor.set({0, 0, 0}, 468);
  ex.tensor.set({0, 0, 1}, -162);
  ex.tensor.set({0, 1, 1}, 54);
  ex.tensor.set({1, 1, 1}, 54);

  const Scalar zero(0), one(1), c(builtin_region3_slope());
  const Scalar boundary(QuadExt(3, Rational(-1, 3), 3));  // 3 − √3/3
  ex.envelope.rank = 2;
  ex.envelope.cones.push_back(EnvelopeCone{"region 1", {{one, -one}}, {{one, zero}, {one, zero}}});
  ex.envelope.cones.push_back(
      EnvelopeCone{"region 2", {{-one, one}, {boundary, -one}}, {{one, zero}, {zero, one}}});
  ex.envelope.cones.push_back(EnvelopeCone{"region 3", {{-boundary, one}}, {{zero, c}, {zero, one}}});
  return ex;
}

}  // namespace filtmult
