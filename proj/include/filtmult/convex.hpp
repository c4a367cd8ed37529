#pragma once

// Exact convex polytopes in small dimension. Coordinates are Rational or
// QuadExt; all predicates are evaluated exactly.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "filtmult/numeric.hpp"

namespace filtmult {

template <class T>
using Point = std::vector<T>;

inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(const QuadExt& x) { return x.sign(); }

template <class T>
struct Facet {
  std::vector<std::size_t> vertices;  // indices into the hull input
  Point<T> normal;                    // outward
  T offset;                           // normal·x ≤ offset inside
};

template <class T>
class Polytope {
 public:
  Polytope() = default;
  static Polytope empty(std::size_t dim);
  /// Convex hull; the stored vertices are exactly the extreme points, sorted
  /// lexicographically.
  static Polytope hull(std::size_t dim, std::vector<Point<T>> points);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Point<T>>& vertices() const noexcept { return vertices_; }
  bool is_empty() const noexcept { return vertices_.empty(); }
  /// Dimension of the affine hull, −1 when empty.
  int affine_dim() const noexcept { return affine_dim_; }

  T volume() const;
  bool contains(const Point<T>& x) const;
  Polytope scaled(const T& c) const;
  Polytope translated(const Point<T>& t) const;
  /// Average of the vertices; commutes with homotheties.
  Point<T> vertex_centroid() const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Point<T>> vertices_;
  // Simplicial boundary triangulation, only for full-dimensional polytopes.
  std::vector<Facet<T>> facets_;
  std::vector<Point<T>> facet_points_;
};

template <class T>
Polytope<T> minkowski_sum(const Polytope<T>& p, const Polytope<T>& q);

/// P ∩ { x : normal·x ≤ offset }.
template <class T>
Polytope<T> clip(const Polytope<T>& p, const Point<T>& normal, const T& offset);

Polytope<QuadExt> lift(const Polytope<Rational>& p);
Point<QuadExt> lift(const Point<Rational>& p);

/// Vol(λ_1 K_1 + ... + λ_r K_r) as an exact homogeneous polynomial.
template <class T>
struct VolumePolynomial {
  std::size_t degree = 0;
  std::size_t variables = 0;
  /// Exponent multi-index (sums to degree) → coefficient.
  std::map<std::vector<int>, T> coefficients;

  T evaluate(const std::vector<T>& lambda) const;
  T coefficient(const std::vector<int>& alpha) const;
};

template <class T>
VolumePolynomial<T> volume_polynomial(const std::vector<Polytope<T>>& bodies);

/// Mixed volume V(K[d−i], L[i]) from the two-body polynomial.
template <class T>
T mixed_volume(const VolumePolynomial<T>& poly, int i);

struct BrunnMinkowskiReport {
  Rational volume_mix;  // Vol((1−t)K + tL)
  Scalar lhs;           // volume_mix^(1/d)
  Scalar rhs;           // (1−t)Vol(K)^(1/d) + t Vol(L)^(1/d)
  bool strict = false;
};

/// Decided exactly. For d = 2 by squaring in a quadratic field; otherwise
/// through the ratio Vol(L)/Vol(K): a rational d-th power gives an exact
/// comparison, any other ratio rules out equality for rational polytopes.
BrunnMinkowskiReport brunn_minkowski_check(const Polytope<Rational>& k, const Polytope<Rational>& l,
                                           const Rational& t);

struct Homothety {
  Scalar factor;
  std::vector<Scalar> shift;
  bool numeric = false;
};

/// L = c·K + shift, if it holds. Throws kZeroVolume.
std::optional<Homothety> homothety_detect(const Polytope<Rational>& k, const Polytope<Rational>& l);

/// Max distance from a vertex of one polytope to the nearest vertex of the
/// other, in double precision.
double vertex_deviation(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b);

template <class T>
std::vector<std::vector<double>> to_double_points(const Polytope<T>& p);

extern template class Polytope<Rational>;
extern template class Polytope<QuadExt>;

}  // namespace filtmult
