#pragma once

// Monomial ideals of k[x_1..x_d] localized at the origin, and the
// filtrations built from them. Lengths are counts of standard monomials.

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "filtmult/numeric.hpp"

namespace filtmult {

class ExponentVector {
 public:
  using Storage = boost::container::small_vector<std::int64_t, 4>;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t dim) : coords_(dim, 0) {}
  ExponentVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}
  explicit ExponentVector(const std::vector<std::int64_t>& coords) : coords_(coords.begin(), coords.end()) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  std::int64_t total_degree() const noexcept;
  bool is_zero() const noexcept;
  /// Componentwise ≤, i.e. x^this divides x^other.
  bool divides(const ExponentVector& other) const noexcept;
  ExponentVector scaled(std::int64_t k) const;
  std::vector<std::int64_t> to_vector() const { return {coords_.begin(), coords_.end()}; }

  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
  friend bool operator==(const ExponentVector& a, const ExponentVector& b) noexcept {
    return a.coords_ == b.coords_;
  }
  /// Lexicographic.
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) noexcept;

 private:
  Storage coords_;
};

std::string to_string(const ExponentVector& v);

/// Minimal elements under componentwise order, sorted lexicographically.
std::vector<ExponentVector> minimalize(std::vector<ExponentVector> points);

class MonomialIdeal {
 public:
  /// The generators are minimalized. An empty list is the zero ideal.
  MonomialIdeal(std::size_t dim, std::vector<ExponentVector> generators);

  static MonomialIdeal unit(std::size_t dim);
  /// (x_1, ..., x_d)^k.
  static MonomialIdeal maximal_power(std::size_t dim, std::int64_t k = 1);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ExponentVector>& generators() const noexcept { return gens_; }
  bool is_unit() const noexcept;
  /// Finite colength: the unit ideal or an ideal containing a pure power of
  /// every variable.
  bool is_primary() const;
  /// Smallest a with x_i^a in the ideal, per axis.
  std::vector<std::optional<std::int64_t>> pure_powers() const;

  bool contains(const ExponentVector& v) const;
  /// other ⊆ this.
  bool contains(const MonomialIdeal& other) const;

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.dim_ == b.dim_ && a.gens_ == b.gens_;
  }

 private:
  std::size_t dim_;
  std::vector<ExponentVector> gens_;
};

std::string to_string(const MonomialIdeal& ideal);

/// Number of standard monomials. Throws kNotPrimary for infinite colength.
std::int64_t colength(const MonomialIdeal& ideal);

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& a, std::int64_t k);
MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);
/// Ideal sum.
MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b);

/// normal · v ≥ rhs. Normals of the regions used here are nonnegative.
struct Halfspace {
  std::vector<std::int64_t> normal;
  std::int64_t rhs = 0;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

/// Lattice points v ≥ 0 satisfying every row; rows must have nonnegative
/// normals. Such a set is closed upward, so it is a monomial ideal.
struct LatticeRegion {
  std::size_t dim = 0;
  std::vector<Halfspace> rows;

  bool contains(const ExponentVector& v) const;
  MonomialIdeal ideal() const;
  /// Number of lattice points outside the region.
  std::int64_t colength() const;
};

/// Facets of NP(I) = conv(generators) + R_{≥0}^d other than the coordinate
/// hyperplanes, with primitive integer normals (all entries positive).
std::vector<Halfspace> newton_facets(const MonomialIdeal& ideal);
/// Vertices of NP(I), sorted.
std::vector<ExponentVector> newton_polyhedron(const MonomialIdeal& ideal);
/// Monomials whose exponents lie in NP(I).
MonomialIdeal integral_closure_ideal(const MonomialIdeal& ideal);

/// Monomial valuation v ↦ weights·v. Weights are nonnegative, not all zero;
/// probe valuations in γ comparisons use positive weights.
class WeightValuation {
 public:
  explicit WeightValuation(std::vector<std::int64_t> weights);
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  std::size_t dim() const noexcept { return weights_.size(); }
  std::int64_t value(const ExponentVector& v) const;
  /// Minimum over generators; the unit ideal has value 0.
  std::int64_t value(const MonomialIdeal& ideal) const;

  friend bool operator==(const WeightValuation&, const WeightValuation&) = default;

 private:
  std::vector<std::int64_t> weights_;
};

struct DivisorialTerm {
  WeightValuation valuation;
  Scalar coefficient;
};

enum class FiltrationKind { kAdic, kDivisorialToric, kProduct, kRescale, kTruncate, kClosure, kTable };

std::string_view to_string(FiltrationKind kind);

/// An m-filtration I_0 = R ⊇ I_1 ⊇ ... of monomial ideals with
/// I_i I_j ⊆ I_{i+j}. Immutable; levels are memoized behind a mutex so a
/// filtration can be shared between threads.
class Filtration {
 public:
  static Filtration adic(const MonomialIdeal& ideal);
  /// I_n = { v : w_j · v ≥ ⌈n a_j⌉ for all j }. Coefficients may be
  /// irrational (quadratic) or zero.
  static Filtration divisorial_toric(std::size_t dim, std::vector<DivisorialTerm> terms);
  /// I_n = F_n G_n.
  static Filtration product(const Filtration& f, const Filtration& g);
  /// I_n = F_{l n}.
  static Filtration rescale(const Filtration& f, std::int64_t l);
  /// a-th truncation: I_n = F_n for n ≤ a, otherwise the sum of I_i I_{n−i}.
  static Filtration truncate(const Filtration& f, std::int64_t a);
  /// J_n = { f : f^r ∈ closure(F_{r n}) for some 1 ≤ r ≤ r_max }. Exact for
  /// adic and divisorial inputs; otherwise monotone increasing in r_max.
  static Filtration closure(const Filtration& f, std::int64_t r_max);
  /// Explicit levels I_1..I_k, then I_n = tail^n for n > k.
  static Filtration table(std::vector<MonomialIdeal> levels, const MonomialIdeal& tail);
  /// I_n = R for every n.
  static Filtration trivial(std::size_t dim);

  FiltrationKind kind() const noexcept;
  std::size_t dim() const noexcept;

  MonomialIdeal level(std::int64_t n) const;
  std::int64_t colength(std::int64_t n) const;
  bool contains(std::int64_t n, const ExponentVector& v) const;

  /// Rows whose lattice points are exactly the integral closure of level(n).
  std::vector<Halfspace> closure_rows(std::int64_t n) const;

  /// True when some Closure node truncates the r-range and may undercount.
  bool approximate() const;
  /// Adic or divisorial-toric: convex bodies and multiplicities are exact.
  bool is_polyhedral() const;
  bool is_trivial() const;

  // Kind-specific data. Each throws if the kind does not match.
  const MonomialIdeal& ideal() const;
  const std::vector<DivisorialTerm>& terms() const;
  const Filtration& first() const;
  const Filtration& second() const;
  std::int64_t parameter() const;
  const std::vector<MonomialIdeal>& table_levels() const;

  /// Structural identity (same node).
  bool same_node(const Filtration& other) const noexcept { return node_ == other.node_; }

  struct Node;

 private:
  explicit Filtration(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string describe(const Filtration& f);

/// Validates the defining properties on a sample: level 0 is R, level 1 is
/// m-primary, levels descend, and products land in the right level.
/// Returns a description of the first violation.
std::optional<std::string> check_filtration_axioms(const Filtration& f, std::int64_t n_max);

/// τ_{μ,m} = μ(I_m).
std::int64_t tau(const Filtration& f, const WeightValuation& mu, std::int64_t m);

struct GammaEstimate {
  /// min over m ≤ m_max of τ(m)/m: an upper bound for γ.
  Rational upper;
  std::int64_t argmin_m = 1;
  /// τ(m_max)/m_max − upper: how far the last sample still is from the best.
  Rational spread;
  /// Closed form when known (adic: μ(I); divisorial-toric: LP minimum).
  std::optional<Scalar> exact;
  /// exact if known, else `upper` as a float whose tolerance covers the spread.
  Scalar value() const;
};

GammaEstimate gamma(const Filtration& f, const WeightValuation& mu, std::int64_t m_max);

struct WValue {
  bool infinite = false;
  std::int64_t value = 0;
};

/// max{ m ≤ n_cap : v ∈ I_m }. Throws kCapReached if v ∈ I_{n_cap} (and v ≠ 0).
WValue w_invariant(const Filtration& f, const ExponentVector& v, std::int64_t n_cap);

struct AsymptoticW {
  /// max over k ≤ k_max of w(k v)/k.
  Rational best;
  std::int64_t argmax_k = 1;
  /// Closed form min_j (w_j · v)/a_j for divisorial-toric filtrations.
  std::optional<Scalar> exact;
  /// For rational divisorial data: w(n·k0·v) = n·w(k0·v) was checked for
  /// the period k0 and n ≤ 4.
  bool eventually_linear = false;
};

AsymptoticW asymptotic_w(const Filtration& f, const ExponentVector& v, std::int64_t k_max);

}  // namespace filtmult
