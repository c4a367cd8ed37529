#pragma once

// Value semigroups Γ(𝓘), the convex bodies Δ(𝓘) they generate, and their
// truncations Δ_c(𝓘) = Δ(𝓘) ∩ {Σx ≤ c}. The valuation is the identity on
// exponent vectors, so δ = 1 throughout.

#include <cstdint>
#include <optional>
#include <vector>

#include "filtmult/convex.hpp"
#include "filtmult/monomial.hpp"

namespace filtmult {

/// hull(vertices) + R_{≥0}^d, with `vertices` exactly the vertices.
class PolyhedralBody {
 public:
  PolyhedralBody(std::size_t dim, std::vector<Point<QuadExt>> points);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Point<QuadExt>>& vertices() const noexcept { return vertices_; }
  /// Largest Σx over the vertices. Above it the body agrees with the orthant.
  QuadExt max_vertex_degree() const;
  /// Meets every coordinate axis, so the complement in the orthant is bounded.
  bool is_primary() const;

  PolyhedralBody scaled(const QuadExt& c) const;
  Polytope<QuadExt> cut(const QuadExt& c) const;
  bool contains(const Point<QuadExt>& x) const;
  /// Volume of R_{≥0}^d minus the body. Throws kNotPrimary if unbounded.
  QuadExt covolume() const;

  friend bool operator==(const PolyhedralBody& a, const PolyhedralBody& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t dim_;
  std::vector<Point<QuadExt>> vertices_;
};

PolyhedralBody minkowski_sum(const PolyhedralBody& a, const PolyhedralBody& b);

/// Δ(𝓘) in closed form for every filtration kind. Throws kInexactInput for
/// float coefficients and kFieldMismatch when two quadratic fields meet.
PolyhedralBody exact_body(const Filtration& f);

/// hull of the minimal generators of level m, divided by m, plus the orthant.
PolyhedralBody level_body(const Filtration& f, std::int64_t m);

struct SemigroupLevel {
  std::int64_t m = 0;
  std::vector<ExponentVector> points;  // lexicographic
};

/// Exponents of level m with total degree ≤ cap.
SemigroupLevel semigroup_level(const Filtration& f, std::int64_t m, std::int64_t cap);

struct TruncatedBody {
  Polytope<QuadExt> body;
  Scalar c;
  std::int64_t m_max = 0;
  bool exact = false;
};

/// Δ_c from the closed-form body (exact = true). Throws kTruncationTooLow if
/// c is below the largest vertex degree.
TruncatedBody delta_body(const Filtration& f, const Scalar& c, std::int64_t m_max);
/// Δ_c approximated from levels m ≤ m_max; grows with m_max.
TruncatedBody delta_body_from_levels(const Filtration& f, const Scalar& c, std::int64_t m_max);

/// Largest total degree of a monomial outside the ideal; −1 for the unit ideal.
std::int64_t max_standard_degree(const MonomialIdeal& ideal);

struct TruncationLambda {
  std::int64_t lambda = 0;
  std::int64_t m_probe = 0;
  /// True when a proof covers every m (adic and divisorial-toric kinds).
  bool certified = false;
};

/// Smallest λ with {v : Σv ≥ λm} ⊆ level(m) for all m ≤ m_probe.
/// Throws kNoStabilization if some level is not m-primary.
TruncationLambda truncation_lambda(const Filtration& f, std::int64_t m_probe);

/// d!·(Vol(Δ_c(R)) − Vol(Δ_c(𝓘))), exact.
Scalar multiplicity_via_volume(const Filtration& f, const Scalar& c, std::int64_t m_max);

struct PairCut {
  Scalar alpha1;
  Scalar alpha2;
  Scalar phi;
};

/// The filtration {I(1)_{i n1} I(2)_{i n2}}_i.
Filtration pair_filtration(const Filtration& f1, const Filtration& f2, std::int64_t n1, std::int64_t n2);

/// Δ_Φ(n1, n2): the pair body cut at (α1 n1 + α2 n2)φ. Throws
/// kTruncationTooLow when φ·min(α1, α2) is below the bodies' vertex degrees.
TruncatedBody pair_body(const Filtration& f1, const Filtration& f2, std::int64_t n1, std::int64_t n2,
                        const PairCut& cut, std::int64_t m_max);

struct SuperadditivityReport {
  bool holds = false;
  /// n1Δ(1,0) + n2Δ(0,1) = Δ(n1,n2) at the probed level.
  bool bodies_equal = false;
  std::int64_t level = 0;
};

/// Checks n1Δ(1,0) + n2Δ(0,1) ⊆ Δ(n1,n2) on the bodies of level m_max.
SuperadditivityReport pair_superadditivity_check(const Filtration& f1, const Filtration& f2, std::int64_t n1,
                                                 std::int64_t n2, std::int64_t m_max);

struct PairHomothetyReport {
  bool homothetic = false;
  bool exact = false;
  Scalar ratio;  // (e_d/e_0)^(1/d)
  double max_deviation = 0.0;
};

/// Tests e_d^(1/d)·Δ_Φ(1,0) = e_0^(1/d)·Δ_Φ(0,1) with Φ = (e_0^(1/d), e_d^(1/d), φ).
PairHomothetyReport pair_homothety_check(const Filtration& f1, const Filtration& f2, const Scalar& e0,
                                         const Scalar& ed, const Scalar& phi);

Point<QuadExt> to_point(const ExponentVector& v);

}  // namespace filtmult
