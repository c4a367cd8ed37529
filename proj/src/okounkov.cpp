#include "filtmult/okounkov.hpp"

#include <algorithm>
#include <numeric>

#include "filtmult/linalg.hpp"

namespace filtmult {

Point<QuadExt> to_point(const ExponentVector& v) {
  Point<QuadExt> p;
  for (auto c : v) p.emplace_back(Rational(static_cast<long>(c)));
  return p;
}

namespace {

QuadExt degree(const Point<QuadExt>& p) {
  QuadExt s(0);
  for (const auto& x : p) s += x;
  return s;
}

Point<QuadExt> all_ones(std::size_t d) { return Point<QuadExt>(d, QuadExt(1)); }

QuadExt factorial_q(std::size_t d) {
  Rational f = 1;
  for (std::size_t i = 2; i <= d; ++i) f *= static_cast<unsigned long>(i);
  return QuadExt(f);
}

QuadExt power_q(const QuadExt& x, std::size_t d) {
  QuadExt r(1);
  for (std::size_t i = 0; i < d; ++i) r *= x;
  return r;
}

// (hull(V) + orthant) ∩ {Σx ≤ c}; valid for every c ≥ 0.
Polytope<QuadExt> cut_points(std::size_t d, const std::vector<Point<QuadExt>>& vertices, const QuadExt& c) {
  if (c.sign() < 0) return Polytope<QuadExt>::empty(d);
  const QuadExt reach = c.sign() > 0 ? c : QuadExt(1);
  std::vector<Point<QuadExt>> pts = vertices;
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < d; ++i) {
      Point<QuadExt> w = v;
      w[i] += reach;
      pts.push_back(std::move(w));
    }
  }
  auto hull = Polytope<QuadExt>::hull(d, std::move(pts));
  return clip(hull, all_ones(d), c);
}

std::vector<Point<QuadExt>> reduce_vertices(std::size_t d, const std::vector<Point<QuadExt>>& points) {
  if (points.empty()) throw Error(ErrorKind::kZeroVolume, "body without points");
  QuadExt top(0);
  for (const auto& p : points) {
    for (const auto& x : p) {
      if (x.sign() < 0) throw Error(ErrorKind::kSchema, "body points must lie in the orthant");
    }
    QuadExt deg = degree(p);
    if (deg > top) top = deg;
  }
  const QuadExt c(Rational(top.ceil() + 1));
  auto cut = cut_points(d, points, c);
  std::vector<Point<QuadExt>> out;
  for (const auto& v : cut.vertices()) {
    if (degree(v) < c) out.push_back(v);
  }
  return out;
}

QuadExt exact_value(const Scalar& s) {
  if (!s.is_exact()) throw Error(ErrorKind::kInexactInput, "exact body needs exact coefficients");
  return s.quad();
}

// Vertices of { x ≥ 0 : w_j·x ≥ a_j }.
std::vector<Point<QuadExt>> divisorial_vertices(const Filtration& f) {
  const std::size_t d = f.dim();
  Matrix<QuadExt> rows;
  std::vector<QuadExt> rhs;
  for (const auto& t : f.terms()) {
    std::vector<QuadExt> row;
    for (auto w : t.valuation.weights()) row.emplace_back(Rational(static_cast<long>(w)));
    rows.push_back(row);
    rhs.push_back(exact_value(t.coefficient));
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<QuadExt> row(d, QuadExt(0));
    row[i] = QuadExt(1);
    rows.push_back(row);
    rhs.push_back(QuadExt(0));
  }
  std::vector<Point<QuadExt>> out;
  const std::size_t n = rows.size();
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Matrix<QuadExt> a;
    std::vector<QuadExt> b;
    for (auto i : idx) {
      a.push_back(rows[i]);
      b.push_back(rhs[i]);
    }
    if (auto x = solve_linear(a, b)) {
      bool feasible = true;
      for (std::size_t r = 0; r < n && feasible; ++r) {
        QuadExt s(0);
        for (std::size_t c = 0; c < d; ++c) s += rows[r][c] * (*x)[c];
        feasible = s >= rhs[r];
      }
      if (feasible) out.push_back(*x);
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Point<QuadExt>> ideal_vertices(const MonomialIdeal& ideal, std::int64_t divide_by) {
  std::vector<Point<QuadExt>> out;
  const QuadExt inv(make_rational(1, divide_by));
  for (const auto& v : newton_polyhedron(ideal)) {
    auto p = to_point(v);
    for (auto& x : p) x *= inv;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

// -----------------------------------------------------------------------------

PolyhedralBody::PolyhedralBody(std::size_t dim, std::vector<Point<QuadExt>> points)
    : dim_(dim), vertices_(reduce_vertices(dim, points)) {}

QuadExt PolyhedralBody::max_vertex_degree() const {
  QuadExt top(0);
  for (const auto& v : vertices_) {
    QuadExt deg = degree(v);
    if (deg > top) top = deg;
  }
  return top;
}

bool PolyhedralBody::is_primary() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    bool hit = std::any_of(vertices_.begin(), vertices_.end(), [&](const Point<QuadExt>& v) {
      for (std::size_t k = 0; k < dim_; ++k) {
        if (k != i && v[k].sign() != 0) return false;
      }
      return true;
    });
    if (!hit) return false;
  }
  return true;
}

PolyhedralBody PolyhedralBody::scaled(const QuadExt& c) const {
  if (c.sign() <= 0) throw Error(ErrorKind::kNonPositiveInput, "body scale must be positive");
  auto pts = vertices_;
  for (auto& p : pts) {
    for (auto& x : p) x *= c;
  }
  return PolyhedralBody(dim_, std::move(pts));
}

Polytope<QuadExt> PolyhedralBody::cut(const QuadExt& c) const { return cut_points(dim_, vertices_, c); }

bool PolyhedralBody::contains(const Point<QuadExt>& x) const {
  QuadExt deg = degree(x);
  QuadExt c = deg > max_vertex_degree() ? deg : max_vertex_degree();
  return cut(c).contains(x);
}

QuadExt PolyhedralBody::covolume() const {
  if (!is_primary()) throw Error(ErrorKind::kNotPrimary, "body misses an axis; the covolume is infinite");
  QuadExt c = max_vertex_degree();
  if (c.sign() == 0) return QuadExt(0);
  return power_q(c, dim_) / factorial_q(dim_) - cut(c).volume();
}

PolyhedralBody minkowski_sum(const PolyhedralBody& a, const PolyhedralBody& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "bodies of different dimension");
  std::vector<Point<QuadExt>> sums;
  for (const auto& p : a.vertices()) {
    for (const auto& q : b.vertices()) {
      Point<QuadExt> s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      sums.push_back(std::move(s));
    }
  }
  return PolyhedralBody(a.dim(), std::move(sums));
}

PolyhedralBody exact_body(const Filtration& f) {
  const std::size_t d = f.dim();
  switch (f.kind()) {
    case FiltrationKind::kAdic:
      return PolyhedralBody(d, ideal_vertices(f.ideal(), 1));
    case FiltrationKind::kDivisorialToric:
      return PolyhedralBody(d, divisorial_vertices(f));
    case FiltrationKind::kProduct:
      return minkowski_sum(exact_body(f.first()), exact_body(f.second()));
    case FiltrationKind::kRescale:
      return exact_body(f.first()).scaled(QuadExt(Rational(static_cast<long>(f.parameter()))));
    case FiltrationKind::kClosure:
      return exact_body(f.first());
    case FiltrationKind::kTruncate: {
      std::vector<Point<QuadExt>> pts;
      for (std::int64_t i = 1; i <= f.parameter(); ++i) {
        auto part = ideal_vertices(f.first().level(i), i);
        pts.insert(pts.end(), part.begin(), part.end());
      }
      return PolyhedralBody(d, std::move(pts));
    }
    case FiltrationKind::kTable: {
      std::vector<Point<QuadExt>> pts = ideal_vertices(f.ideal(), 1);
      const auto& levels = f.table_levels();
      for (std::size_t i = 0; i < levels.size(); ++i) {
        auto part = ideal_vertices(levels[i], static_cast<std::int64_t>(i + 1));
        pts.insert(pts.end(), part.begin(), part.end());
      }
      return PolyhedralBody(d, std::move(pts));
    }
  }
  throw Error(ErrorKind::kSchema, "unknown filtration kind");
}

PolyhedralBody level_body(const Filtration& f, std::int64_t m) {
  if (m < 1) throw Error(ErrorKind::kNonPositiveInput, "level must be positive");
  return PolyhedralBody(f.dim(), ideal_vertices(f.level(m), m));
}

SemigroupLevel semigroup_level(const Filtration& f, std::int64_t m, std::int64_t cap) {
  if (m < 1) throw Error(ErrorKind::kNonPositiveInput, "level must be positive");
  SemigroupLevel out;
  out.m = m;
  const std::size_t d = f.dim();
  const MonomialIdeal level = f.level(m);
  std::vector<std::int64_t> p(d, 0);
  // Lexicographic walk over the simplex Σv ≤ cap.
  auto walk = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
    if (i == d) {
      ExponentVector v(p);
      if (level.contains(v)) out.points.push_back(v);
      return;
    }
    for (std::int64_t x = 0; x <= budget; ++x) {
      p[i] = x;
      self(self, i + 1, budget - x);
    }
    p[i] = 0;
  };
  walk(walk, 0, cap);
  return out;
}

TruncatedBody delta_body(const Filtration& f, const Scalar& c, std::int64_t m_max) {
  PolyhedralBody body = exact_body(f);
  QuadExt cq = exact_value(c);
  if (cq < body.max_vertex_degree()) {
    throw Error(ErrorKind::kTruncationTooLow,
                "c = " + to_display_string(c) + " is below the body's vertex degree " +
                    to_display_string(body.max_vertex_degree()));
  }
  return TruncatedBody{body.cut(cq), c, m_max, true};
}

TruncatedBody delta_body_from_levels(const Filtration& f, const Scalar& c, std::int64_t m_max) {
  if (m_max < 1) throw Error(ErrorKind::kNonPositiveInput, "m_max must be positive");
  std::vector<Point<QuadExt>> pts;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    auto part = ideal_vertices(f.level(m), m);
    pts.insert(pts.end(), part.begin(), part.end());
  }
  PolyhedralBody body(f.dim(), std::move(pts));
  return TruncatedBody{body.cut(exact_value(c)), c, m_max, false};
}

std::int64_t max_standard_degree(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) return -1;
  if (!ideal.is_primary()) throw Error(ErrorKind::kNotPrimary, "ideal has monomials of unbounded degree outside it");
  const std::size_t d = ideal.dim();
  const auto& gens = ideal.generators();
  if (d == 1) return gens.front()[0] - 1;
  if (d == 2) {
    std::int64_t best = -1;
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) best = std::max(best, gens[i + 1][0] - 1 + gens[i][1] - 1);
    return best;
  }
  const std::int64_t a = *ideal.pure_powers()[0];
  std::int64_t best = -1;
  std::vector<ExponentVector> slice;
  std::size_t idx = 0;
  for (std::int64_t x = 0; x < a; ++x) {
    while (idx < gens.size() && gens[idx][0] <= x) {
      ExponentVector proj(d - 1);
      for (std::size_t i = 1; i < d; ++i) proj[i - 1] = gens[idx][i];
      slice.push_back(proj);
      ++idx;
    }
    best = std::max(best, x + max_standard_degree(MonomialIdeal(d - 1, slice)));
  }
  return best;
}

TruncationLambda truncation_lambda(const Filtration& f, std::int64_t m_probe) {
  if (m_probe < 1) throw Error(ErrorKind::kNonPositiveInput, "m_probe must be positive");
  TruncationLambda out;
  out.m_probe = m_probe;
  for (std::int64_t m = 1; m <= m_probe; ++m) {
    std::int64_t top;
    try {
      top = max_standard_degree(f.level(m));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotPrimary) throw;
      throw Error(ErrorKind::kNoStabilization, "level " + std::to_string(m) + " is not m-primary");
    }
    // Every v with Σv ≥ top + 1 lies in level m.
    const std::int64_t lam = (top + 1 + m - 1) / m;
    out.lambda = std::max(out.lambda, lam);
  }
  if (f.kind() == FiltrationKind::kAdic) {
    // I^m ⊇ m^{m·s} where s − 1 is the top standard degree of I.
    out.certified = true;
  } else if (f.kind() == FiltrationKind::kDivisorialToric) {
    // Σv ≥ λm forces w_j·v ≥ min(w_j)λm ≥ a_j m.
    std::optional<QuadExt> bound;
    for (const auto& t : f.terms()) {
      auto lo = *std::min_element(t.valuation.weights().begin(), t.valuation.weights().end());
      if (lo == 0) return out;
      QuadExt r = exact_value(t.coefficient) / QuadExt(Rational(static_cast<long>(lo)));
      if (!bound || r > *bound) bound = r;
    }
    out.certified = !bound || bound->ceil() <= out.lambda;
  }
  return out;
}

Scalar multiplicity_via_volume(const Filtration& f, const Scalar& c, std::int64_t m_max) {
  auto tb = delta_body(f, c, m_max);
  const std::size_t d = f.dim();
  QuadExt cq = exact_value(c);
  QuadExt simplex = power_q(cq, d) / factorial_q(d);
  return Scalar(factorial_q(d) * (simplex - tb.body.volume()));
}

Filtration pair_filtration(const Filtration& f1, const Filtration& f2, std::int64_t n1, std::int64_t n2) {
  if (f1.dim() != f2.dim()) throw Error(ErrorKind::kDimensionMismatch, "pair of different dimension");
  if (n1 < 0 || n2 < 0 || n1 + n2 == 0) throw Error(ErrorKind::kNonPositiveInput, "need n1, n2 ≥ 0, not both 0");
  if (n2 == 0) return Filtration::rescale(f1, n1);
  if (n1 == 0) return Filtration::rescale(f2, n2);
  return Filtration::product(Filtration::rescale(f1, n1), Filtration::rescale(f2, n2));
}

TruncatedBody pair_body(const Filtration& f1, const Filtration& f2, std::int64_t n1, std::int64_t n2,
                        const PairCut& cut, std::int64_t m_max) {
  const QuadExt a1 = exact_value(cut.alpha1), a2 = exact_value(cut.alpha2), phi = exact_value(cut.phi);
  if (a1.sign() <= 0 || a2.sign() <= 0 || phi.sign() <= 0) {
    throw Error(ErrorKind::kNonPositiveInput, "pair cut parameters must be positive");
  }
  QuadExt lam = exact_body(f1).max_vertex_degree();
  QuadExt lam2 = exact_body(f2).max_vertex_degree();
  if (lam2 > lam) lam = lam2;
  QuadExt amin = a1 < a2 ? a1 : a2;
  if (phi * amin < lam) {
    throw Error(ErrorKind::kTruncationTooLow, "phi·min(alpha) = " + to_display_string(phi * amin) +
                                                  " is below " + to_display_string(lam));
  }
  QuadExt c = (a1 * QuadExt(Rational(static_cast<long>(n1))) + a2 * QuadExt(Rational(static_cast<long>(n2)))) * phi;
  auto body = exact_body(pair_filtration(f1, f2, n1, n2));
  return TruncatedBody{body.cut(c), Scalar(c), m_max, true};
}

SuperadditivityReport pair_superadditivity_check(const Filtration& f1, const Filtration& f2, std::int64_t n1,
                                                 std::int64_t n2, std::int64_t m_max) {
  SuperadditivityReport out;
  out.level = m_max;
  auto pair = level_body(pair_filtration(f1, f2, n1, n2), m_max);
  std::vector<PolyhedralBody> parts;
  if (n1 > 0) parts.push_back(level_body(f1, m_max).scaled(QuadExt(Rational(static_cast<long>(n1)))));
  if (n2 > 0) parts.push_back(level_body(f2, m_max).scaled(QuadExt(Rational(static_cast<long>(n2)))));
  PolyhedralBody sum = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) sum = minkowski_sum(sum, parts[i]);
  out.holds = std::all_of(sum.vertices().begin(), sum.vertices().end(),
                          [&](const Point<QuadExt>& v) { return pair.contains(v); });
  out.bodies_equal = sum == pair;
  return out;
}

PairHomothetyReport pair_homothety_check(const Filtration& f1, const Filtration& f2, const Scalar& e0,
                                         const Scalar& ed, const Scalar& phi) {
  if (e0.sign() <= 0 || ed.sign() <= 0) throw Error(ErrorKind::kZeroVolume, "homothety check needs e0, ed > 0");
  const unsigned d = static_cast<unsigned>(f1.dim());
  const Scalar a1 = dth_root(e0, d), a2 = dth_root(ed, d);
  PairHomothetyReport out;
  out.ratio = dth_root(ed / e0, d);

  PolyhedralBody b1 = exact_body(f1), b2 = exact_body(f2);
  // Cut level condition of the pair bodies.
  const double lam = std::max(b1.max_vertex_degree().to_double(), b2.max_vertex_degree().to_double());
  if (phi.to_double() * std::min(a1.to_double(), a2.to_double()) + 1e-12 < lam) {
    throw Error(ErrorKind::kTruncationTooLow, "phi too small for the unit bodies");
  }
  // Above the cut level both truncations are determined by the full bodies,
  // so the test reduces to Δ(F2) = ratio·Δ(F1).
  if (out.ratio.is_exact()) {
    try {
      auto scaled = b1.scaled(out.ratio.quad());
      out.exact = true;
      out.homothetic = scaled == b2;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kFieldMismatch) throw;
      out.exact = false;
    }
  }
  std::vector<std::vector<double>> p1, p2;
  const double r = out.ratio.to_double();
  for (const auto& v : b1.vertices()) {
    std::vector<double> q;
    for (const auto& x : v) q.push_back(r * x.to_double());
    p1.push_back(q);
  }
  for (const auto& v : b2.vertices()) {
    std::vector<double> q;
    for (const auto& x : v) q.push_back(x.to_double());
    p2.push_back(q);
  }
  out.max_deviation = vertex_deviation(p1, p2);
  if (!out.exact) out.homothetic = p1.size() == p2.size() && out.max_deviation < 1e-9;
  return out;
}

}  // namespace filtmult
