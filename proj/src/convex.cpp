#include "filtmult/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filtmult/linalg.hpp"

namespace filtmult {

namespace {

template <class T>
T dot(const Point<T>& a, const Point<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Point<T> diff(const Point<T>& a, const Point<T>& b) {
  Point<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <class T>
bool lex_less(const Point<T>& a, const Point<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int s = sign_of(T(a[i] - b[i]));
    if (s != 0) return s < 0;
  }
  return false;
}

template <class T>
bool same_point(const Point<T>& a, const Point<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sign_of(T(a[i] - b[i])) != 0) return false;
  }
  return true;
}

template <class T>
void sort_unique(std::vector<Point<T>>& pts) {
  std::sort(pts.begin(), pts.end(), lex_less<T>);
  pts.erase(std::unique(pts.begin(), pts.end(), same_point<T>), pts.end());
}

// Normal of the hyperplane through the origin spanned by d − 1 vectors.
template <class T>
Point<T> cross(const std::vector<Point<T>>& rows, std::size_t dim) {
  Point<T> normal(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    Matrix<T> minor;
    for (const auto& r : rows) {
      std::vector<T> row;
      for (std::size_t c = 0; c < dim; ++c) {
        if (c != k) row.push_back(r[c]);
      }
      minor.push_back(row);
    }
    T det = determinant(minor);
    normal[k] = (k % 2 == 0) ? det : T(-det);
  }
  return normal;
}

// Pivot columns of the row space spanned by `rows`.
template <class T>
std::vector<std::size_t> pivot_columns(Matrix<T> a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.size() && is_zero(a[pivot][col])) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t row = rank + 1; row < a.size(); ++row) {
      if (is_zero(a[row][col])) continue;
      T factor = a[row][col] / a[rank][col];
      for (std::size_t j = col; j < cols; ++j) a[row][j] = a[row][j] - factor * a[rank][j];
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

template <class T>
struct HullResult {
  std::vector<std::size_t> extreme;  // indices into the input
  std::vector<Facet<T>> facets;
};

// Beneath-beyond for full-dimensional input, d ≥ 2.
template <class T>
HullResult<T> full_hull(const std::vector<Point<T>>& pts, std::size_t d) {
  // Initial simplex.
  std::vector<std::size_t> simplex{0};
  Matrix<T> basis;
  for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i) {
    Matrix<T> trial = basis;
    trial.push_back(diff(pts[i], pts[0]));
    if (matrix_rank(trial) == trial.size()) {
      basis = std::move(trial);
      simplex.push_back(i);
    }
  }

  Point<T> interior(d, T(0));
  for (auto i : simplex) {
    for (std::size_t c = 0; c < d; ++c) interior[c] += pts[i][c];
  }
  for (auto& c : interior) c /= T(static_cast<long>(d + 1));

  struct Work {
    Facet<T> f;
    bool alive = true;
  };
  std::vector<Work> facets;

  auto make_facet = [&](std::vector<std::size_t> verts) {
    std::sort(verts.begin(), verts.end());
    std::vector<Point<T>> rows;
    for (std::size_t k = 1; k < verts.size(); ++k) rows.push_back(diff(pts[verts[k]], pts[verts[0]]));
    Point<T> normal = cross(rows, d);
    T offset = dot(normal, pts[verts[0]]);
    if (sign_of(T(dot(normal, interior) - offset)) > 0) {
      for (auto& c : normal) c = -c;
      offset = -offset;
    }
    facets.push_back({Facet<T>{std::move(verts), std::move(normal), std::move(offset)}, true});
  };

  for (std::size_t skip = 0; skip <= d; ++skip) {
    std::vector<std::size_t> verts;
    for (std::size_t k = 0; k <= d; ++k) {
      if (k != skip) verts.push_back(simplex[k]);
    }
    make_facet(verts);
  }

  std::vector<bool> in_simplex(pts.size(), false);
  for (auto i : simplex) in_simplex[i] = true;

  std::map<std::vector<std::size_t>, int> ridge_count;
  std::size_t dead = 0;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (in_simplex[p]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!facets[f].alive) continue;
      if (sign_of(T(dot(facets[f].f.normal, pts[p]) - facets[f].f.offset)) > 0) visible.push_back(f);
    }
    if (visible.empty()) continue;
    ridge_count.clear();
    for (auto f : visible) {
      const auto& verts = facets[f].f.vertices;
      for (std::size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<std::size_t> ridge;
        for (std::size_t k = 0; k < verts.size(); ++k) {
          if (k != skip) ridge.push_back(verts[k]);
        }
        ++ridge_count[ridge];
      }
      facets[f].alive = false;
      ++dead;
    }
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      auto verts = ridge;
      verts.push_back(p);
      make_facet(verts);
    }
    if (dead > facets.size() / 2 + 64) {
      facets.erase(std::remove_if(facets.begin(), facets.end(), [](const Work& w) { return !w.alive; }),
                   facets.end());
      dead = 0;
    }
  }

  HullResult<T> out;
  std::map<std::size_t, std::vector<std::size_t>> incident;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    if (!facets[f].alive) continue;
    for (auto v : facets[f].f.vertices) incident[v].push_back(out.facets.size());
    out.facets.push_back(facets[f].f);
  }
  for (const auto& [v, fs] : incident) {
    Matrix<T> normals;
    for (auto f : fs) normals.push_back(out.facets[f].normal);
    if (matrix_rank(normals) == d) out.extreme.push_back(v);
  }
  return out;
}

}  // namespace

template <class T>
Polytope<T> Polytope<T>::empty(std::size_t dim) {
  Polytope p;
  p.dim_ = dim;
  return p;
}

template <class T>
Polytope<T> Polytope<T>::hull(std::size_t dim, std::vector<Point<T>> points) {
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorKind::kDimensionMismatch, "point of wrong length in hull input");
  }
  Polytope out = empty(dim);
  sort_unique(points);
  if (points.empty()) return out;
  if (points.size() == 1) {
    out.vertices_ = points;
    out.affine_dim_ = 0;
    return out;
  }

  Matrix<T> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(diff(points[i], points[0]));
  auto pivots = pivot_columns(diffs, dim);
  const std::size_t k = pivots.size();
  out.affine_dim_ = static_cast<int>(k);

  std::vector<std::size_t> extreme;
  if (k == 1) {
    // Points sorted lexicographically lie on a line: the ends are extreme.
    extreme = {0, points.size() - 1};
  } else if (k == dim) {
    auto result = full_hull(points, dim);
    extreme = std::move(result.extreme);
    out.facets_ = std::move(result.facets);
    out.facet_points_ = points;
  } else {
    std::vector<Point<T>> projected;
    projected.reserve(points.size());
    for (const auto& p : points) {
      Point<T> q;
      for (auto c : pivots) q.push_back(p[c]);
      projected.push_back(std::move(q));
    }
    // Projection onto the pivot coordinates is injective on the affine hull
    // and keeps lexicographic order of distinct points consistent enough for
    // the index mapping below.
    extreme = full_hull(projected, k).extreme;
  }
  for (auto i : extreme) out.vertices_.push_back(points[i]);
  sort_unique(out.vertices_);
  return out;
}

template <class T>
T Polytope<T>::volume() const {
  if (affine_dim_ < static_cast<int>(dim_) || dim_ == 0) return T(0);
  if (dim_ == 1) return vertices_.back()[0] - vertices_.front()[0];
  const Point<T>& base = vertices_.front();
  T total(0);
  for (const auto& f : facets_) {
    Matrix<T> m;
    for (auto v : f.vertices) m.push_back(diff(facet_points_[v], base));
    T det = determinant(m);
    if (sign_of(det) < 0) det = -det;
    total += det;
  }
  T fact(1);
  for (std::size_t i = 2; i <= dim_; ++i) fact *= T(static_cast<long>(i));
  return total / fact;
}

template <class T>
bool Polytope<T>::contains(const Point<T>& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::kDimensionMismatch, "point of wrong length");
  if (vertices_.empty()) return false;
  if (affine_dim_ == static_cast<int>(dim_) && dim_ >= 2) {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Facet<T>& f) { return sign_of(T(dot(f.normal, x) - f.offset)) <= 0; });
  }
  if (dim_ == 1) {
    return sign_of(T(x[0] - vertices_.front()[0])) >= 0 && sign_of(T(x[0] - vertices_.back()[0])) <= 0;
  }
  for (const auto& v : vertices_) {
    if (same_point(v, x)) return true;
  }
  // x lies in the hull iff it is not extreme once added.
  auto with = vertices_;
  with.push_back(x);
  auto h = hull(dim_, with);
  return std::none_of(h.vertices_.begin(), h.vertices_.end(), [&](const Point<T>& v) { return same_point(v, x); });
}

template <class T>
Polytope<T> Polytope<T>::scaled(const T& c) const {
  if (sign_of(c) < 0) throw Error(ErrorKind::kNonPositiveInput, "negative scale factor");
  std::vector<Point<T>> pts = vertices_;
  for (auto& p : pts) {
    for (auto& x : p) x *= c;
  }
  return hull(dim_, std::move(pts));
}

template <class T>
Polytope<T> Polytope<T>::translated(const Point<T>& t) const {
  if (t.size() != dim_) throw Error(ErrorKind::kDimensionMismatch, "translation of wrong length");
  std::vector<Point<T>> pts = vertices_;
  for (auto& p : pts) {
    for (std::size_t i = 0; i < dim_; ++i) p[i] += t[i];
  }
  return hull(dim_, std::move(pts));
}

template <class T>
Point<T> Polytope<T>::vertex_centroid() const {
  if (vertices_.empty()) throw Error(ErrorKind::kZeroVolume, "centroid of the empty polytope");
  Point<T> c(dim_, T(0));
  for (const auto& v : vertices_) {
    for (std::size_t i = 0; i < dim_; ++i) c[i] += v[i];
  }
  for (auto& x : c) x /= T(static_cast<long>(vertices_.size()));
  return c;
}

template <class T>
Polytope<T> minkowski_sum(const Polytope<T>& p, const Polytope<T>& q) {
  if (p.dim() != q.dim()) throw Error(ErrorKind::kDimensionMismatch, "Minkowski sum of different dimensions");
  if (p.is_empty() || q.is_empty()) return Polytope<T>::empty(p.dim());
  std::vector<Point<T>> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      Point<T> s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  }
  return Polytope<T>::hull(p.dim(), std::move(sums));
}

template <class T>
Polytope<T> clip(const Polytope<T>& p, const Point<T>& normal, const T& offset) {
  if (normal.size() != p.dim()) throw Error(ErrorKind::kDimensionMismatch, "clipping plane of wrong length");
  std::vector<Point<T>> inside, outside;
  std::vector<T> inside_val, outside_val;
  for (const auto& v : p.vertices()) {
    T val = dot(normal, v) - offset;
    if (sign_of(val) <= 0) {
      inside.push_back(v);
      inside_val.push_back(val);
    } else {
      outside.push_back(v);
      outside_val.push_back(val);
    }
  }
  std::vector<Point<T>> pts = inside;
  for (std::size_t i = 0; i < inside.size(); ++i) {
    if (sign_of(inside_val[i]) == 0) continue;
    for (std::size_t j = 0; j < outside.size(); ++j) {
      T t = inside_val[i] / (inside_val[i] - outside_val[j]);
      Point<T> x(p.dim());
      for (std::size_t c = 0; c < p.dim(); ++c) x[c] = inside[i][c] + t * (outside[j][c] - inside[i][c]);
      pts.push_back(std::move(x));
    }
  }
  return Polytope<T>::hull(p.dim(), std::move(pts));
}

Point<QuadExt> lift(const Point<Rational>& p) { return Point<QuadExt>(p.begin(), p.end()); }

Polytope<QuadExt> lift(const Polytope<Rational>& p) {
  std::vector<Point<QuadExt>> pts;
  for (const auto& v : p.vertices()) pts.push_back(lift(v));
  return Polytope<QuadExt>::hull(p.dim(), std::move(pts));
}

// -----------------------------------------------------------------------------
// Volume polynomials

namespace {

void compositions(std::size_t parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur.push_back(k);
    compositions(parts, total - k, cur, out);
    cur.pop_back();
  }
}

template <class T>
T monomial_value(const std::vector<T>& lambda, const std::vector<int>& alpha) {
  T v(1);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int k = 0; k < alpha[i]; ++k) v *= lambda[i];
  }
  return v;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

template <class T>
T VolumePolynomial<T>::evaluate(const std::vector<T>& lambda) const {
  if (lambda.size() != variables) throw Error(ErrorKind::kDimensionMismatch, "wrong number of variables");
  T total(0);
  for (const auto& [alpha, c] : coefficients) total += c * monomial_value(lambda, alpha);
  return total;
}

template <class T>
T VolumePolynomial<T>::coefficient(const std::vector<int>& alpha) const {
  auto it = coefficients.find(alpha);
  return it == coefficients.end() ? T(0) : it->second;
}

template <class T>
VolumePolynomial<T> volume_polynomial(const std::vector<Polytope<T>>& bodies) {
  if (bodies.empty()) throw Error(ErrorKind::kDimensionMismatch, "no bodies");
  const std::size_t d = bodies.front().dim();
  for (const auto& b : bodies) {
    if (b.dim() != d) throw Error(ErrorKind::kDimensionMismatch, "bodies of different dimension");
    if (b.is_empty()) throw Error(ErrorKind::kZeroVolume, "empty body in volume polynomial");
  }
  const std::size_t r = bodies.size();
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur;
  compositions(r, static_cast<int>(d), cur, alphas);

  // The lattice points of the dilated simplex are unisolvent for degree-d forms.
  Matrix<T> system;
  std::vector<T> values;
  for (const auto& node : alphas) {
    std::vector<T> lambda;
    for (int a : node) lambda.push_back(T(static_cast<long>(a)));
    std::vector<T> row;
    for (const auto& alpha : alphas) row.push_back(monomial_value(lambda, alpha));
    system.push_back(row);
    std::vector<Point<T>> origin{Point<T>(d, T(0))};
    Polytope<T> sum = Polytope<T>::hull(d, origin);
    for (std::size_t i = 0; i < r; ++i) {
      if (node[i] != 0) sum = minkowski_sum(sum, bodies[i].scaled(lambda[i]));
    }
    values.push_back(sum.volume());
  }
  auto solution = solve_linear(system, values);
  if (!solution) throw Error(ErrorKind::kDegenerateSystem, "volume polynomial nodes are singular");
  VolumePolynomial<T> out;
  out.degree = d;
  out.variables = r;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!is_zero((*solution)[i])) out.coefficients[alphas[i]] = (*solution)[i];
  }
  return out;
}

template <class T>
T mixed_volume(const VolumePolynomial<T>& poly, int i) {
  if (poly.variables != 2) throw Error(ErrorKind::kDimensionMismatch, "mixed_volume needs two bodies");
  const int d = static_cast<int>(poly.degree);
  Integer binom = factorial(d) / (factorial(i) * factorial(d - i));
  return poly.coefficient({d - i, i}) / T(Rational(binom));
}

// -----------------------------------------------------------------------------
// Brunn–Minkowski and homotheties

BrunnMinkowskiReport brunn_minkowski_check(const Polytope<Rational>& k, const Polytope<Rational>& l,
                                           const Rational& t) {
  if (k.dim() != l.dim()) throw Error(ErrorKind::kDimensionMismatch, "bodies of different dimension");
  if (k.is_empty() || l.is_empty()) throw Error(ErrorKind::kZeroVolume, "Brunn-Minkowski needs nonempty bodies");
  if (sgn(t) <= 0 || t >= 1) throw Error(ErrorKind::kNonPositiveInput, "t must lie in (0,1)");
  const unsigned d = static_cast<unsigned>(k.dim());
  const Rational s = 1 - t;
  const Rational vk = k.volume(), vl = l.volume();

  BrunnMinkowskiReport out;
  out.volume_mix = minkowski_sum(k.scaled(s), l.scaled(t)).volume();
  out.lhs = dth_root(Scalar(out.volume_mix), d);
  out.rhs = Scalar(s) * dth_root(Scalar(vk), d) + Scalar(t) * dth_root(Scalar(vl), d);

  auto power = [](Rational x, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
  };

  if (d == 1) {
    out.strict = out.volume_mix > s * vk + t * vl;
    return out;
  }
  // Exact route: Vol(L) = ρ^d Vol(K) with ρ rational (or one volume zero).
  std::optional<Rational> rhs_power;
  if (sgn(vk) == 0) {
    rhs_power = power(t, d) * vl;
  } else if (sgn(vl) == 0) {
    rhs_power = power(s, d) * vk;
  } else if (auto rho = rational_dth_root(Scalar(vl), Scalar(vk), d)) {
    rhs_power = vk * power(s + t * *rho, d);
  }
  if (rhs_power) {
    out.strict = out.volume_mix > *rhs_power;
    return out;
  }
  if (d == 2) {
    // rhs² = s²a + t²b + 2st·sqrt(ab); compare with volume_mix.
    QuadExt x(out.volume_mix - s * s * vk - t * t * vl);
    QuadExt y(2 * s * t);
    QuadExt z(vk * vl);
    out.strict = sign_of_difference_with_root(x, y, z) > 0;
    return out;
  }
  // Equality would force a homothety with rational factor, whose volume
  // ratio is a rational d-th power.
  out.strict = true;
  return out;
}

std::optional<Homothety> homothety_detect(const Polytope<Rational>& k, const Polytope<Rational>& l) {
  if (k.dim() != l.dim()) throw Error(ErrorKind::kDimensionMismatch, "bodies of different dimension");
  const Rational vk = k.volume(), vl = l.volume();
  if (sgn(vk) == 0 || sgn(vl) == 0) throw Error(ErrorKind::kZeroVolume, "homothety test needs positive volume");
  const unsigned d = static_cast<unsigned>(k.dim());
  Scalar c = dth_root(Scalar(vl / vk), d);
  if (c.is_rational()) {
    const Rational& cr = c.rational();
    auto ck = k.vertex_centroid();
    auto cl = l.vertex_centroid();
    Point<Rational> shift(k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) shift[i] = cl[i] - cr * ck[i];
    if (k.scaled(cr).translated(shift) != l) return std::nullopt;
    Homothety h{c, {}, false};
    for (const auto& x : shift) h.shift.emplace_back(x);
    return h;
  }
  if (c.is_exact()) {
    QuadExt cq = c.quad();
    auto kq = lift(k);
    auto ck = kq.vertex_centroid();
    auto cl = lift(l.vertex_centroid());
    Point<QuadExt> shift(k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) shift[i] = cl[i] - cq * ck[i];
    if (kq.scaled(cq).translated(shift) != lift(l)) return std::nullopt;
    Homothety h{c, {}, false};
    for (const auto& x : shift) h.shift.emplace_back(x);
    return h;
  }
  // Irrational factor in dimension ≥ 3: compare numerically.
  const double cf = c.to_double();
  auto kv = to_double_points(k);
  auto lv = to_double_points(l);
  std::vector<double> ck(k.dim(), 0.0), cl(k.dim(), 0.0);
  for (const auto& v : kv) {
    for (std::size_t i = 0; i < v.size(); ++i) ck[i] += v[i] / kv.size();
  }
  for (const auto& v : lv) {
    for (std::size_t i = 0; i < v.size(); ++i) cl[i] += v[i] / lv.size();
  }
  std::vector<double> shift(k.dim());
  for (std::size_t i = 0; i < k.dim(); ++i) shift[i] = cl[i] - cf * ck[i];
  for (auto& v : kv) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cf * v[i] + shift[i];
  }
  if (kv.size() != lv.size() || vertex_deviation(kv, lv) > 1e-9) return std::nullopt;
  Homothety h{c, {}, true};
  for (double x : shift) h.shift.push_back(Scalar::from_double(x, 1e-9));
  return h;
}

double vertex_deviation(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  auto one_way = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        double dist = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) dist += (p[i] - q[i]) * (p[i] - q[i]);
        best = std::min(best, std::sqrt(dist));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(one_way(a, b), one_way(b, a));
}

namespace {
double as_double(const Rational& x) { return x.get_d(); }
double as_double(const QuadExt& x) { return x.to_double(); }
}  // namespace

template <class T>
std::vector<std::vector<double>> to_double_points(const Polytope<T>& p) {
  std::vector<std::vector<double>> out;
  for (const auto& v : p.vertices()) {
    std::vector<double> q;
    for (const auto& x : v) q.push_back(as_double(x));
    out.push_back(std::move(q));
  }
  return out;
}

template class Polytope<Rational>;
template class Polytope<QuadExt>;
template Polytope<Rational> minkowski_sum(const Polytope<Rational>&, const Polytope<Rational>&);
template Polytope<QuadExt> minkowski_sum(const Polytope<QuadExt>&, const Polytope<QuadExt>&);
template Polytope<Rational> clip(const Polytope<Rational>&, const Point<Rational>&, const Rational&);
template Polytope<QuadExt> clip(const Polytope<QuadExt>&, const Point<QuadExt>&, const QuadExt&);
template struct VolumePolynomial<Rational>;
template struct VolumePolynomial<QuadExt>;
template VolumePolynomial<Rational> volume_polynomial(const std::vector<Polytope<Rational>>&);
template VolumePolynomial<QuadExt> volume_polynomial(const std::vector<Polytope<QuadExt>>&);
template Rational mixed_volume(const VolumePolynomial<Rational>&, int);
template QuadExt mixed_volume(const VolumePolynomial<QuadExt>&, int);
template std::vector<std::vector<double>> to_double_points(const Polytope<Rational>&);
template std::vector<std::vector<double>> to_double_points(const Polytope<QuadExt>&);

}  // namespace filtmult
