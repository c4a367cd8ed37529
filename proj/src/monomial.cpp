#include "filtmult/monomial.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "filtmult/linalg.hpp"

namespace filtmult {

// -----------------------------------------------------------------------------
// ExponentVector

std::int64_t ExponentVector::total_degree() const noexcept {
  return std::accumulate(coords_.begin(), coords_.end(), std::int64_t{0});
}

bool ExponentVector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

bool ExponentVector::divides(const ExponentVector& other) const noexcept {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] > other.coords_[i]) return false;
  }
  return true;
}

ExponentVector ExponentVector::scaled(std::int64_t k) const {
  ExponentVector out = *this;
  for (auto& c : out.coords_) c *= k;
  return out;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "exponent vectors of different length");
  ExponentVector out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) out.coords_[i] += b.coords_[i];
  return out;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) noexcept {
  return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                                b.coords_.end());
}

std::string to_string(const ExponentVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

// -----------------------------------------------------------------------------
// Minimalization

namespace {

struct Point2 {
  std::int64_t x, y;
};

// Staircase with x strictly increasing and y strictly decreasing.
class Staircase2 {
 public:
  bool contains(std::int64_t x, std::int64_t y) const {
    auto it = std::upper_bound(pts_.begin(), pts_.end(), x, [](std::int64_t v, const Point2& p) { return v < p.x; });
    if (it == pts_.begin()) return false;
    return std::prev(it)->y <= y;
  }

  void merge(const std::vector<Point2>& extra) {
    if (extra.empty()) return;
    std::vector<Point2> all;
    all.reserve(pts_.size() + extra.size());
    all.insert(all.end(), pts_.begin(), pts_.end());
    all.insert(all.end(), extra.begin(), extra.end());
    std::sort(all.begin(), all.end(), [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts_.clear();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& p : all) {
      if (p.y < best) {
        pts_.push_back(p);
        best = p.y;
      }
    }
  }

 private:
  std::vector<Point2> pts_;
};

std::vector<ExponentVector> minimalize_sorted_2d(const std::vector<ExponentVector>& sorted) {
  std::vector<ExponentVector> out;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& p : sorted) {
    if (p[1] < best) {
      out.push_back(p);
      best = p[1];
    }
  }
  return out;
}

std::vector<ExponentVector> minimalize_sorted_3d(const std::vector<ExponentVector>& sorted) {
  std::vector<ExponentVector> out;
  Staircase2 below;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j][0] == sorted[i][0]) ++j;
    // Within one x-slice the points are sorted by (y, z): a 2-d sweep.
    std::vector<Point2> accepted;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = i; k < j; ++k) {
      const auto& p = sorted[k];
      if (p[2] >= best) continue;
      best = p[2];
      if (below.contains(p[1], p[2])) continue;
      accepted.push_back({p[1], p[2]});
      out.push_back(p);
    }
    below.merge(accepted);
    i = j;
  }
  return out;
}

std::vector<ExponentVector> minimalize_sorted_generic(const std::vector<ExponentVector>& sorted) {
  std::vector<ExponentVector> out;
  for (const auto& p : sorted) {
    bool dominated = std::any_of(out.begin(), out.end(), [&](const ExponentVector& a) { return a.divides(p); });
    if (!dominated) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<ExponentVector> minimalize(std::vector<ExponentVector> points) {
  if (points.empty()) return points;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t d = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != d) throw Error(ErrorKind::kDimensionMismatch, "mixed dimensions in generator list");
  }
  switch (d) {
    case 0: return {points.front()};
    case 1: return {points.front()};
    case 2: return minimalize_sorted_2d(points);
    case 3: return minimalize_sorted_3d(points);
    default: return minimalize_sorted_generic(points);
  }
}

// -----------------------------------------------------------------------------
// MonomialIdeal

MonomialIdeal::MonomialIdeal(std::size_t dim, std::vector<ExponentVector> generators) : dim_(dim) {
  if (dim == 0) throw Error(ErrorKind::kDimensionMismatch, "ambient dimension must be positive");
  for (const auto& g : generators) {
    if (g.dim() != dim) throw Error(ErrorKind::kDimensionMismatch, "generator " + to_string(g) + " has wrong length");
    for (auto c : g) {
      if (c < 0) throw Error(ErrorKind::kSchema, "negative exponent in " + to_string(g));
    }
  }
  gens_ = minimalize(std::move(generators));
}

MonomialIdeal MonomialIdeal::unit(std::size_t dim) { return MonomialIdeal(dim, {ExponentVector(dim)}); }

MonomialIdeal MonomialIdeal::maximal_power(std::size_t dim, std::int64_t k) {
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < dim; ++i) {
    ExponentVector e(dim);
    e[i] = 1;
    gens.push_back(e);
  }
  return power(MonomialIdeal(dim, gens), k);
}

bool MonomialIdeal::is_unit() const noexcept { return !gens_.empty() && gens_.front().is_zero(); }

std::vector<std::optional<std::int64_t>> MonomialIdeal::pure_powers() const {
  std::vector<std::optional<std::int64_t>> out(dim_);
  for (const auto& g : gens_) {
    std::size_t support = 0;
    std::size_t axis = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (g[i] != 0) {
        ++support;
        axis = i;
      }
    }
    if (support == 0) {
      for (auto& o : out) o = 0;
      return out;
    }
    if (support == 1 && (!out[axis] || *out[axis] > g[axis])) out[axis] = g[axis];
  }
  return out;
}

bool MonomialIdeal::is_primary() const {
  if (is_unit()) return true;
  auto pp = pure_powers();
  return std::all_of(pp.begin(), pp.end(), [](const auto& p) { return p.has_value(); });
}

bool MonomialIdeal::contains(const ExponentVector& v) const {
  if (v.dim() != dim_) throw Error(ErrorKind::kDimensionMismatch, "membership test with wrong length");
  return std::any_of(gens_.begin(), gens_.end(), [&](const ExponentVector& g) { return g.divides(v); });
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
  if (other.dim_ != dim_) throw Error(ErrorKind::kDimensionMismatch, "ideals of different dimension");
  return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const ExponentVector& g) { return contains(g); });
}

std::string to_string(const MonomialIdeal& ideal) {
  std::string out = "<";
  for (std::size_t i = 0; i < ideal.generators().size(); ++i) {
    if (i) out += ",";
    out += to_string(ideal.generators()[i]);
  }
  return out + ">";
}

namespace {

void require_same_dim(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "ideals of different dimension");
}

// Colength of the ideal generated by `gens` (minimal, lexicographically
// sorted) in `dim` variables.
std::int64_t colength_sorted(const std::vector<ExponentVector>& gens, std::size_t dim) {
  if (gens.empty()) throw Error(ErrorKind::kNotPrimary, "zero ideal has infinite colength");
  if (gens.front().is_zero()) return 0;
  if (dim == 1) return gens.front()[0];
  if (gens.front()[0] != 0) throw Error(ErrorKind::kNotPrimary, "no pure power of some variable");

  std::optional<std::int64_t> axis_power;
  for (const auto& g : gens) {
    bool pure = true;
    for (std::size_t i = 1; i < dim; ++i) pure = pure && g[i] == 0;
    if (pure && (!axis_power || g[0] < *axis_power)) axis_power = g[0];
  }
  if (!axis_power) throw Error(ErrorKind::kNotPrimary, "no pure power of the first variable");

  if (dim == 2) {
    // Sorted by x ascending and y strictly descending.
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) total += (gens[i + 1][0] - gens[i][0]) * gens[i][1];
    return total;
  }

  std::int64_t total = 0;
  std::vector<ExponentVector> slice;
  std::size_t idx = 0;
  while (idx < gens.size()) {
    const std::int64_t x = gens[idx][0];
    if (x >= *axis_power) break;
    std::vector<ExponentVector> added = slice;
    while (idx < gens.size() && gens[idx][0] == x) {
      ExponentVector proj(dim - 1);
      for (std::size_t i = 1; i < dim; ++i) proj[i - 1] = gens[idx][i];
      added.push_back(proj);
      ++idx;
    }
    slice = minimalize(std::move(added));
    const std::int64_t next_x = idx < gens.size() ? std::min(gens[idx][0], *axis_power) : *axis_power;
    total += colength_sorted(slice, dim - 1) * (next_x - x);
  }
  return total;
}

}  // namespace

std::int64_t colength(const MonomialIdeal& ideal) { return colength_sorted(ideal.generators(), ideal.dim()); }

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  std::vector<ExponentVector> sums;
  sums.reserve(a.generators().size() * b.generators().size());
  for (const auto& g : a.generators()) {
    for (const auto& h : b.generators()) sums.push_back(g + h);
  }
  return MonomialIdeal(a.dim(), std::move(sums));
}

MonomialIdeal power(const MonomialIdeal& a, std::int64_t k) {
  if (k < 0) throw Error(ErrorKind::kNonPositiveInput, "negative ideal power");
  MonomialIdeal result = MonomialIdeal::unit(a.dim());
  MonomialIdeal base = a;
  while (k > 0) {
    if (k & 1) result = product(result, base);
    k >>= 1;
    if (k > 0) base = product(base, base);
  }
  return result;
}

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  std::vector<ExponentVector> lcms;
  for (const auto& g : a.generators()) {
    for (const auto& h : b.generators()) {
      ExponentVector m(a.dim());
      for (std::size_t i = 0; i < a.dim(); ++i) m[i] = std::max(g[i], h[i]);
      lcms.push_back(m);
    }
  }
  return MonomialIdeal(a.dim(), std::move(lcms));
}

MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  std::vector<ExponentVector> all = a.generators();
  all.insert(all.end(), b.generators().begin(), b.generators().end());
  return MonomialIdeal(a.dim(), std::move(all));
}

// -----------------------------------------------------------------------------
// Lattice regions

namespace {

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  // den > 0
  std::int64_t q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

struct RegionWalker {
  std::size_t dim;
  std::vector<Halfspace> rows;  // only rows with rhs > 0
  std::vector<std::int64_t> bounds;

  explicit RegionWalker(const LatticeRegion& region) : dim(region.dim) {
    for (const auto& r : region.rows) {
      if (r.normal.size() != dim) throw Error(ErrorKind::kDimensionMismatch, "halfspace of wrong length");
      for (auto c : r.normal) {
        if (c < 0) throw Error(ErrorKind::kSchema, "region rows need nonnegative normals");
      }
      if (r.rhs > 0) rows.push_back(r);
    }
    bounds.assign(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (const auto& r : rows) {
        if (r.normal[i] == 0) throw Error(ErrorKind::kNotPrimary, "region has no pure power along an axis");
        bounds[i] = std::max(bounds[i], ceil_div(r.rhs, r.normal[i]));
      }
    }
  }

  // Smallest last coordinate completing `prefix` into the region.
  std::int64_t height(const std::vector<std::int64_t>& prefix) const {
    std::int64_t need = 0;
    for (const auto& r : rows) {
      std::int64_t slack = r.rhs;
      for (std::size_t i = 0; i + 1 < dim; ++i) slack -= r.normal[i] * prefix[i];
      if (slack > 0) need = std::max(need, ceil_div(slack, r.normal[dim - 1]));
    }
    return need;
  }

  template <class Visit>
  void for_each_prefix(Visit&& visit) const {
    std::vector<std::int64_t> prefix(dim - 1, 0);
    while (true) {
      visit(prefix);
      std::size_t i = 0;
      while (i + 1 < dim) {
        if (prefix[i] < bounds[i]) {
          ++prefix[i];
          break;
        }
        prefix[i] = 0;
        ++i;
      }
      if (i + 1 >= dim) break;
    }
  }
};

}  // namespace

bool LatticeRegion::contains(const ExponentVector& v) const {
  if (v.dim() != dim) throw Error(ErrorKind::kDimensionMismatch, "membership test with wrong length");
  for (const auto& r : rows) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += r.normal[i] * v[i];
    if (s < r.rhs) return false;
  }
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c >= 0; });
}

MonomialIdeal LatticeRegion::ideal() const {
  RegionWalker walker(*this);
  if (walker.rows.empty()) return MonomialIdeal::unit(dim);
  if (dim == 1) return MonomialIdeal(1, {ExponentVector{walker.bounds[0]}});
  std::vector<ExponentVector> gens;
  std::vector<std::int64_t> neighbor(dim - 1);
  walker.for_each_prefix([&](const std::vector<std::int64_t>& prefix) {
    const std::int64_t t = walker.height(prefix);
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      if (prefix[i] == 0) continue;
      neighbor = prefix;
      --neighbor[i];
      if (walker.height(neighbor) <= t) return;
    }
    ExponentVector g(dim);
    for (std::size_t i = 0; i + 1 < dim; ++i) g[i] = prefix[i];
    g[dim - 1] = t;
    gens.push_back(g);
  });
  return MonomialIdeal(dim, std::move(gens));
}

std::int64_t LatticeRegion::colength() const {
  RegionWalker walker(*this);
  if (walker.rows.empty()) return 0;
  if (dim == 1) return walker.bounds[0];
  std::int64_t total = 0;
  walker.for_each_prefix([&](const std::vector<std::int64_t>& prefix) { total += walker.height(prefix); });
  return total;
}

// -----------------------------------------------------------------------------
// Newton polyhedra

namespace {

using Wide = __int128;

Wide det_wide(std::vector<std::vector<Wide>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Wide total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<Wide>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Wide> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(row);
    }
    Wide term = m[0][col] * det_wide(minor);
    total += (col % 2 == 0) ? term : -term;
  }
  return total;
}

// Normal to the hyperplane spanned by d − 1 difference vectors.
std::vector<Wide> generalized_cross(const std::vector<std::vector<Wide>>& diffs, std::size_t dim) {
  std::vector<Wide> normal(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<std::vector<Wide>> minor;
    for (const auto& d : diffs) {
      std::vector<Wide> row;
      for (std::size_t c = 0; c < dim; ++c) {
        if (c != k) row.push_back(d[c]);
      }
      minor.push_back(row);
    }
    Wide det = det_wide(minor);
    normal[k] = (k % 2 == 0) ? det : -det;
  }
  return normal;
}

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<Halfspace> make_facet(std::vector<Wide> normal, const ExponentVector& through,
                                    const std::vector<ExponentVector>& gens) {
  int sign = 0;
  for (auto c : normal) {
    if (c == 0) return std::nullopt;
    int s = c > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return std::nullopt;
  }
  if (sign < 0) {
    for (auto& c : normal) c = -c;
  }
  Wide g = 0;
  for (auto c : normal) g = gcd_wide(g, c);
  for (auto& c : normal) c /= g;
  Wide rhs = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) rhs += normal[i] * through[i];
  for (const auto& p : gens) {
    Wide s = 0;
    for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * p[i];
    if (s < rhs) return std::nullopt;
  }
  Halfspace h;
  for (auto c : normal) h.normal.push_back(static_cast<std::int64_t>(c));
  h.rhs = static_cast<std::int64_t>(rhs);
  return h;
}

std::vector<Halfspace> facets_2d(const std::vector<ExponentVector>& gens) {
  // gens: x ascending, y strictly descending. Lower convex chain.
  std::vector<ExponentVector> chain;
  for (const auto& p : gens) {
    while (chain.size() >= 2) {
      const auto& o = chain[chain.size() - 2];
      const auto& a = chain.back();
      Wide cross = Wide(a[0] - o[0]) * (p[1] - o[1]) - Wide(a[1] - o[1]) * (p[0] - o[0]);
      if (cross <= 0) {
        chain.pop_back();
      } else {
        break;
      }
    }
    chain.push_back(p);
  }
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& p = chain[i];
    const auto& q = chain[i + 1];
    std::int64_t nx = p[1] - q[1];
    std::int64_t ny = q[0] - p[0];
    std::int64_t g = std::gcd(nx, ny);
    nx /= g;
    ny /= g;
    out.push_back(Halfspace{{nx, ny}, nx * p[0] + ny * p[1]});
  }
  return out;
}

std::vector<Halfspace> facets_brute_force(const std::vector<ExponentVector>& gens, std::size_t dim) {
  std::set<Halfspace> found;
  const std::size_t n = gens.size();
  if (n < dim) return {};
  std::vector<std::size_t> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<std::vector<Wide>> diffs;
    for (std::size_t k = 1; k < dim; ++k) {
      std::vector<Wide> d(dim);
      for (std::size_t c = 0; c < dim; ++c) d[c] = Wide(gens[idx[k]][c]) - gens[idx[0]][c];
      diffs.push_back(d);
    }
    auto normal = generalized_cross(diffs, dim);
    if (auto h = make_facet(normal, gens[idx[0]], gens)) found.insert(*h);
    // next combination
    std::size_t i = dim;
    while (i > 0 && idx[i - 1] == n - dim + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

void require_primary(const MonomialIdeal& ideal) {
  if (!ideal.is_primary()) throw Error(ErrorKind::kNotPrimary, "ideal " + to_string(ideal) + " is not m-primary");
}

}  // namespace

std::vector<Halfspace> newton_facets(const MonomialIdeal& ideal) {
  require_primary(ideal);
  if (ideal.is_unit()) return {};
  const auto& gens = ideal.generators();
  switch (ideal.dim()) {
    case 1: return {Halfspace{{1}, gens.front()[0]}};
    case 2: return facets_2d(gens);
    default: return facets_brute_force(gens, ideal.dim());
  }
}

std::vector<ExponentVector> newton_polyhedron(const MonomialIdeal& ideal) {
  require_primary(ideal);
  const std::size_t d = ideal.dim();
  if (ideal.is_unit()) return {ExponentVector(d)};
  auto facets = newton_facets(ideal);
  std::vector<ExponentVector> vertices;
  for (const auto& g : ideal.generators()) {
    Matrix<Rational> tight;
    for (const auto& f : facets) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < d; ++i) s += f.normal[i] * g[i];
      if (s == f.rhs) {
        std::vector<Rational> row;
        for (auto c : f.normal) row.emplace_back(static_cast<long>(c));
        tight.push_back(row);
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (g[i] == 0) {
        std::vector<Rational> row(d, Rational(0));
        row[i] = 1;
        tight.push_back(row);
      }
    }
    if (matrix_rank(tight) == d) vertices.push_back(g);
  }
  return vertices;
}

MonomialIdeal integral_closure_ideal(const MonomialIdeal& ideal) {
  require_primary(ideal);
  if (ideal.is_unit()) return ideal;
  return LatticeRegion{ideal.dim(), newton_facets(ideal)}.ideal();
}

// -----------------------------------------------------------------------------
// Valuations

WeightValuation::WeightValuation(std::vector<std::int64_t> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorKind::kDimensionMismatch, "empty weight vector");
  // Zero weights are allowed for divisorial terms; a valuation needs one positive weight.
  if (std::any_of(weights_.begin(), weights_.end(), [](std::int64_t w) { return w < 0; }) ||
      std::all_of(weights_.begin(), weights_.end(), [](std::int64_t w) { return w == 0; })) {
    throw Error(ErrorKind::kNonPositiveInput, "valuation weights must be >= 0 and not all zero");
  }
}

std::int64_t WeightValuation::value(const ExponentVector& v) const {
  if (v.dim() != weights_.size()) throw Error(ErrorKind::kDimensionMismatch, "valuation of wrong length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * v[i];
  return s;
}

std::int64_t WeightValuation::value(const MonomialIdeal& ideal) const {
  if (ideal.generators().empty()) throw Error(ErrorKind::kNotPrimary, "valuation of the zero ideal");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& g : ideal.generators()) best = std::min(best, value(g));
  return best;
}

// -----------------------------------------------------------------------------
// Filtrations

std::string_view to_string(FiltrationKind kind) {
  switch (kind) {
    case FiltrationKind::kAdic: return "adic";
    case FiltrationKind::kDivisorialToric: return "divtoric";
    case FiltrationKind::kProduct: return "product";
    case FiltrationKind::kRescale: return "rescale";
    case FiltrationKind::kTruncate: return "truncate";
    case FiltrationKind::kClosure: return "closure";
    case FiltrationKind::kTable: return "table";
  }
  return "unknown";
}

struct Filtration::Node {
  FiltrationKind kind;
  std::size_t dim;
  std::optional<MonomialIdeal> ideal;  // adic ideal, table tail
  std::vector<DivisorialTerm> terms;
  std::vector<Filtration> children;
  std::int64_t parameter = 0;
  std::vector<MonomialIdeal> table;

  mutable std::mutex mutex;
  mutable std::map<std::int64_t, MonomialIdeal> cache;
  mutable std::optional<std::vector<Halfspace>> adic_facets;

  Node(FiltrationKind k, std::size_t d) : kind(k), dim(d) {}
};

namespace {

using Node = Filtration::Node;

std::int64_t ceil_to_int64(const Scalar& x) {
  Integer c = x.ceil();
  if (!c.fits_slong_p()) throw Error(ErrorKind::kCapReached, "level threshold exceeds 64-bit range");
  return c.get_si();
}

LatticeRegion divisorial_region(const Node& node, std::int64_t n) {
  LatticeRegion region{node.dim, {}};
  for (const auto& t : node.terms) {
    std::int64_t rhs = ceil_to_int64(t.coefficient * Scalar(Rational(static_cast<long>(n))));
    if (rhs > 0) region.rows.push_back(Halfspace{t.valuation.weights(), rhs});
  }
  return region;
}

bool closure_is_exact(const Filtration& f) {
  switch (f.kind()) {
    case FiltrationKind::kAdic:
    case FiltrationKind::kDivisorialToric:
      return true;
    case FiltrationKind::kRescale:
      return closure_is_exact(f.first());
    default:
      return false;
  }
}

}  // namespace

Filtration Filtration::adic(const MonomialIdeal& ideal) {
  auto node = std::make_shared<Node>(FiltrationKind::kAdic, ideal.dim());
  node->ideal = ideal;
  return Filtration(node);
}

Filtration Filtration::divisorial_toric(std::size_t dim, std::vector<DivisorialTerm> terms) {
  if (dim == 0) throw Error(ErrorKind::kDimensionMismatch, "ambient dimension must be positive");
  for (const auto& t : terms) {
    if (t.valuation.dim() != dim) throw Error(ErrorKind::kDimensionMismatch, "divisorial weight of wrong length");
    if (t.coefficient.sign() < 0) throw Error(ErrorKind::kNonPositiveInput, "divisorial coefficients must be >= 0");
  }
  auto node = std::make_shared<Node>(FiltrationKind::kDivisorialToric, dim);
  node->terms = std::move(terms);
  return Filtration(node);
}

Filtration Filtration::product(const Filtration& f, const Filtration& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::kDimensionMismatch, "product of filtrations of different dimension");
  auto node = std::make_shared<Node>(FiltrationKind::kProduct, f.dim());
  node->children = {f, g};
  return Filtration(node);
}

Filtration Filtration::rescale(const Filtration& f, std::int64_t l) {
  if (l < 1) throw Error(ErrorKind::kNonPositiveInput, "rescale factor must be positive");
  auto node = std::make_shared<Node>(FiltrationKind::kRescale, f.dim());
  node->children = {f};
  node->parameter = l;
  return Filtration(node);
}

Filtration Filtration::truncate(const Filtration& f, std::int64_t a) {
  if (a < 1) throw Error(ErrorKind::kNonPositiveInput, "truncation level must be positive");
  auto node = std::make_shared<Node>(FiltrationKind::kTruncate, f.dim());
  node->children = {f};
  node->parameter = a;
  return Filtration(node);
}

Filtration Filtration::closure(const Filtration& f, std::int64_t r_max) {
  if (r_max < 1) throw Error(ErrorKind::kNonPositiveInput, "r_max must be positive");
  auto node = std::make_shared<Node>(FiltrationKind::kClosure, f.dim());
  node->children = {f};
  node->parameter = r_max;
  return Filtration(node);
}

Filtration Filtration::table(std::vector<MonomialIdeal> levels, const MonomialIdeal& tail) {
  for (const auto& l : levels) {
    if (l.dim() != tail.dim()) throw Error(ErrorKind::kDimensionMismatch, "table levels of different dimension");
  }
  auto node = std::make_shared<Node>(FiltrationKind::kTable, tail.dim());
  node->table = std::move(levels);
  node->ideal = tail;
  return Filtration(node);
}

Filtration Filtration::trivial(std::size_t dim) { return adic(MonomialIdeal::unit(dim)); }

FiltrationKind Filtration::kind() const noexcept { return node_->kind; }
std::size_t Filtration::dim() const noexcept { return node_->dim; }

const MonomialIdeal& Filtration::ideal() const {
  if (!node_->ideal) throw Error(ErrorKind::kSchema, "filtration kind has no ideal");
  return *node_->ideal;
}

const std::vector<DivisorialTerm>& Filtration::terms() const {
  if (kind() != FiltrationKind::kDivisorialToric) throw Error(ErrorKind::kSchema, "not a divisorial filtration");
  return node_->terms;
}

const Filtration& Filtration::first() const {
  if (node_->children.empty()) throw Error(ErrorKind::kSchema, "filtration kind has no sub-filtration");
  return node_->children[0];
}

const Filtration& Filtration::second() const {
  if (node_->children.size() < 2) throw Error(ErrorKind::kSchema, "filtration kind has no second factor");
  return node_->children[1];
}

std::int64_t Filtration::parameter() const { return node_->parameter; }

const std::vector<MonomialIdeal>& Filtration::table_levels() const {
  if (kind() != FiltrationKind::kTable) throw Error(ErrorKind::kSchema, "not a table filtration");
  return node_->table;
}

bool Filtration::is_polyhedral() const {
  return kind() == FiltrationKind::kAdic || kind() == FiltrationKind::kDivisorialToric;
}

bool Filtration::is_trivial() const {
  switch (kind()) {
    case FiltrationKind::kAdic: return ideal().is_unit();
    case FiltrationKind::kDivisorialToric:
      return std::all_of(node_->terms.begin(), node_->terms.end(),
                         [](const DivisorialTerm& t) { return t.coefficient.sign() == 0; });
    default: return false;
  }
}

bool Filtration::approximate() const {
  if (kind() == FiltrationKind::kClosure && !closure_is_exact(first())) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const Filtration& c) { return c.approximate(); });
}

MonomialIdeal Filtration::level(std::int64_t n) const {
  if (n < 0) throw Error(ErrorKind::kNonPositiveInput, "negative filtration level");
  if (n == 0) return MonomialIdeal::unit(dim());
  {
    std::lock_guard<std::mutex> lock(node_->mutex);
    auto it = node_->cache.find(n);
    if (it != node_->cache.end()) return it->second;
  }

  std::optional<MonomialIdeal> result;
  switch (kind()) {
    case FiltrationKind::kAdic: {
      // Walk up from the highest cached power below n.
      std::int64_t start = 0;
      std::optional<MonomialIdeal> acc;
      {
        std::lock_guard<std::mutex> lock(node_->mutex);
        auto it = node_->cache.lower_bound(n);
        if (it != node_->cache.begin()) {
          --it;
          start = it->first;
          acc = it->second;
        }
      }
      if (!acc) acc = MonomialIdeal::unit(dim());
      const MonomialIdeal& base = ideal();
      // Intermediate powers are not cached; long schedules would hold them all.
      for (std::int64_t k = start + 1; k <= n; ++k) acc = filtmult::product(*acc, base);
      result = *acc;
      break;
    }
    case FiltrationKind::kDivisorialToric:
      result = divisorial_region(*node_, n).ideal();
      break;
    case FiltrationKind::kProduct:
      result = filtmult::product(first().level(n), second().level(n));
      break;
    case FiltrationKind::kRescale:
      result = first().level(parameter() * n);
      break;
    case FiltrationKind::kTruncate: {
      if (n <= parameter()) {
        result = first().level(n);
      } else {
        MonomialIdeal acc(dim(), {});
        for (std::int64_t i = 1; i <= n / 2; ++i) acc = sum(acc, filtmult::product(level(i), level(n - i)));
        result = acc;
      }
      break;
    }
    case FiltrationKind::kClosure: {
      const Filtration& base = first();
      const std::int64_t r_max = closure_is_exact(base) ? 1 : parameter();
      std::vector<ExponentVector> gens;
      for (std::int64_t r = 1; r <= r_max; ++r) {
        LatticeRegion region{dim(), base.closure_rows(r * n)};
        for (auto& row : region.rows) row.rhs = ceil_div(row.rhs, r);
        auto part = region.ideal();
        gens.insert(gens.end(), part.generators().begin(), part.generators().end());
      }
      result = MonomialIdeal(dim(), std::move(gens));
      break;
    }
    case FiltrationKind::kTable: {
      const auto& levels = node_->table;
      if (n <= static_cast<std::int64_t>(levels.size())) {
        result = levels[n - 1];
      } else {
        result = power(ideal(), n);
      }
      break;
    }
  }
  std::lock_guard<std::mutex> lock(node_->mutex);
  node_->cache.emplace(n, *result);
  return *result;
}

std::int64_t Filtration::colength(std::int64_t n) const {
  if (n == 0) return 0;
  if (kind() == FiltrationKind::kDivisorialToric) return divisorial_region(*node_, n).colength();
  return filtmult::colength(level(n));
}

bool Filtration::contains(std::int64_t n, const ExponentVector& v) const {
  if (v.dim() != dim()) throw Error(ErrorKind::kDimensionMismatch, "membership test with wrong length");
  if (n == 0) return true;
  switch (kind()) {
    case FiltrationKind::kDivisorialToric: return divisorial_region(*node_, n).contains(v);
    case FiltrationKind::kRescale: return first().contains(parameter() * n, v);
    default: return level(n).contains(v);
  }
}

std::vector<Halfspace> Filtration::closure_rows(std::int64_t n) const {
  if (n == 0) return {};
  switch (kind()) {
    case FiltrationKind::kAdic: {
      std::vector<Halfspace> facets;
      {
        std::lock_guard<std::mutex> lock(node_->mutex);
        if (!node_->adic_facets) node_->adic_facets = newton_facets(ideal());
        facets = *node_->adic_facets;
      }
      for (auto& f : facets) f.rhs *= n;
      return facets;
    }
    case FiltrationKind::kDivisorialToric:
      return divisorial_region(*node_, n).rows;
    case FiltrationKind::kRescale:
      return first().closure_rows(parameter() * n);
    default:
      return newton_facets(level(n));
  }
}

std::string describe(const Filtration& f) {
  std::ostringstream out;
  out << to_string(f.kind()) << "(";
  switch (f.kind()) {
    case FiltrationKind::kAdic: out << to_string(f.ideal()); break;
    case FiltrationKind::kDivisorialToric: {
      bool first = true;
      for (const auto& t : f.terms()) {
        if (!first) out << ",";
        first = false;
        out << "[";
        for (std::size_t i = 0; i < t.valuation.weights().size(); ++i) {
          if (i) out << ",";
          out << t.valuation.weights()[i];
        }
        out << "]:" << to_display_string(t.coefficient);
      }
      break;
    }
    case FiltrationKind::kProduct: out << describe(f.first()) << "," << describe(f.second()); break;
    case FiltrationKind::kRescale:
    case FiltrationKind::kTruncate:
    case FiltrationKind::kClosure: out << describe(f.first()) << "," << f.parameter(); break;
    case FiltrationKind::kTable: out << f.table_levels().size() << " levels, tail " << to_string(f.ideal()); break;
  }
  out << ")";
  return out.str();
}

std::optional<std::string> check_filtration_axioms(const Filtration& f, std::int64_t n_max) {
  if (!f.level(0).is_unit()) return "level 0 is not the unit ideal";
  if (!f.level(1).is_primary()) return "level 1 is not m-primary";
  for (std::int64_t n = 1; n < n_max; ++n) {
    if (!f.level(n).contains(f.level(n + 1))) return "level " + std::to_string(n + 1) + " not inside level " + std::to_string(n);
  }
  for (std::int64_t i = 1; i <= n_max; ++i) {
    for (std::int64_t j = i; i + j <= n_max; ++j) {
      if (!f.level(i + j).contains(product(f.level(i), f.level(j)))) {
        return "I_" + std::to_string(i) + " I_" + std::to_string(j) + " not inside I_" + std::to_string(i + j);
      }
    }
  }
  return std::nullopt;
}

// -----------------------------------------------------------------------------
// τ, γ and w invariants

std::int64_t tau(const Filtration& f, const WeightValuation& mu, std::int64_t m) {
  if (m < 1) throw Error(ErrorKind::kNonPositiveInput, "tau needs m >= 1");
  if (mu.dim() != f.dim()) throw Error(ErrorKind::kDimensionMismatch, "valuation of wrong length");
  return mu.value(f.level(m));
}

namespace {

// min μ·x over { x ≥ 0 : w_j·x ≥ a_j }, attained at a vertex.
Scalar divisorial_lp_min(const Filtration& f, const WeightValuation& mu) {
  const std::size_t d = f.dim();
  Matrix<Scalar> rows;
  std::vector<Scalar> rhs;
  for (const auto& t : f.terms()) {
    std::vector<Scalar> row;
    for (auto w : t.valuation.weights()) row.emplace_back(Rational(static_cast<long>(w)));
    rows.push_back(row);
    rhs.push_back(t.coefficient);
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Scalar> row(d, Scalar(0));
    row[i] = Scalar(1);
    rows.push_back(row);
    rhs.push_back(Scalar(0));
  }
  std::optional<Scalar> best;
  const std::size_t n = rows.size();
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Matrix<Scalar> a;
    std::vector<Scalar> b;
    for (auto i : idx) {
      a.push_back(rows[i]);
      b.push_back(rhs[i]);
    }
    if (auto x = solve_linear(a, b)) {
      bool feasible = true;
      for (std::size_t r = 0; r < n && feasible; ++r) {
        Scalar s(0);
        for (std::size_t c = 0; c < d; ++c) s += rows[r][c] * (*x)[c];
        feasible = s >= rhs[r];
      }
      if (feasible) {
        Scalar value(0);
        for (std::size_t c = 0; c < d; ++c) value += Scalar(Rational(static_cast<long>(mu.weights()[c]))) * (*x)[c];
        if (!best || value < *best) best = value;
      }
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best.value_or(Scalar(0));
}

}  // namespace

Scalar GammaEstimate::value() const {
  if (exact) return *exact;
  return Scalar(Float{upper.get_d(), std::max(spread.get_d(), kDefaultFloatTolerance)});
}

GammaEstimate gamma(const Filtration& f, const WeightValuation& mu, std::int64_t m_max) {
  if (m_max < 1) throw Error(ErrorKind::kNonPositiveInput, "gamma needs m_max >= 1");
  GammaEstimate out;
  std::optional<Rational> best;
  Rational last;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    Rational ratio = make_rational(tau(f, mu, m), m);
    if (!best || ratio < *best) {
      best = ratio;
      out.argmin_m = m;
    }
    last = ratio;
  }
  out.upper = *best;
  out.spread = last - *best;
  if (f.kind() == FiltrationKind::kAdic) {
    out.exact = Scalar(Rational(static_cast<long>(mu.value(f.ideal()))));
  } else if (f.kind() == FiltrationKind::kDivisorialToric) {
    out.exact = divisorial_lp_min(f, mu);
  }
  return out;
}

WValue w_invariant(const Filtration& f, const ExponentVector& v, std::int64_t n_cap) {
  if (n_cap < 1) throw Error(ErrorKind::kNonPositiveInput, "n_cap must be positive");
  if (v.dim() != f.dim()) throw Error(ErrorKind::kDimensionMismatch, "exponent vector of wrong length");
  if (v.is_zero()) return WValue{true, 0};
  for (std::int64_t m = 1; m <= n_cap; ++m) {
    if (!f.contains(m, v)) return WValue{false, m - 1};
  }
  throw Error(ErrorKind::kCapReached, "w(" + to_string(v) + ") >= n_cap=" + std::to_string(n_cap));
}

AsymptoticW asymptotic_w(const Filtration& f, const ExponentVector& v, std::int64_t k_max) {
  if (v.is_zero()) throw Error(ErrorKind::kNonPositiveInput, "asymptotic_w needs v != 0");
  if (k_max < 1) throw Error(ErrorKind::kNonPositiveInput, "k_max must be positive");
  auto w_adaptive = [&](const ExponentVector& u) {
    std::int64_t cap = 8 * (u.total_degree() + 1);
    for (int attempt = 0; attempt < 24; ++attempt) {
      try {
        return w_invariant(f, u, cap).value;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kCapReached) throw;
        cap *= 2;
      }
    }
    throw Error(ErrorKind::kCapReached, "w(" + to_string(u) + ") did not settle");
  };

  AsymptoticW out;
  std::optional<Rational> best;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    Rational ratio = make_rational(w_adaptive(v.scaled(k)), k);
    if (!best || ratio > *best) {
      best = ratio;
      out.argmax_k = k;
    }
  }
  out.best = *best;

  if (f.kind() == FiltrationKind::kDivisorialToric) {
    std::optional<Scalar> exact;
    bool all_rational = true;
    Integer period(1);
    for (const auto& t : f.terms()) {
      if (t.coefficient.sign() == 0) continue;
      Scalar ratio = Scalar(Rational(static_cast<long>(t.valuation.value(v)))) / t.coefficient;
      if (!exact || ratio < *exact) exact = ratio;
      if (ratio.is_rational()) {
        Integer den = ratio.rational().get_den();
        mpz_lcm(period.get_mpz_t(), period.get_mpz_t(), den.get_mpz_t());
      } else {
        all_rational = false;
      }
    }
    out.exact = exact;
    if (exact && all_rational && period.fits_slong_p() && period.get_si() <= 1000) {
      const std::int64_t k0 = period.get_si();
      const std::int64_t base = w_adaptive(v.scaled(k0));
      bool linear = true;
      for (std::int64_t n = 2; n <= 4 && linear; ++n) linear = w_adaptive(v.scaled(n * k0)) == n * base;
      out.eventually_linear = linear;
    }
  }
  return out;
}

}  // namespace filtmult
