#pragma once

// Multiplicities of filtrations as limits of normalized colengths, mixed
// multiplicities of pairs, and the Minkowski / Rees / rescaling checks built
// on them. Every check reports finite evidence; nothing is auto-corrected.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "filtmult/monomial.hpp"
#include "filtmult/numeric.hpp"

namespace filtmult {

/// Homogeneous polynomial with Scalar coefficients, keyed by exponent tuple.
struct HomogeneousForm {
  std::size_t degree = 0;
  std::size_t variables = 0;
  std::map<std::vector<int>, Scalar> coefficients;

  Scalar evaluate(const std::vector<Scalar>& x) const;
  Scalar coefficient(const std::vector<int>& exponents) const;
  /// "33*n1^3 + (...)*n1^2*n2 + ..." in descending powers of n1.
  std::string to_string(int digits = 12) const;
};

std::vector<std::int64_t> default_schedule(std::size_t dim);

struct LimitEstimate {
  std::vector<std::int64_t> schedule;
  /// Normalized samples at each schedule entry.
  std::vector<Rational> raw;
  /// Richardson extrapolants, one per consecutive pair of samples.
  std::vector<Rational> extrapolated;
  Rational estimate;
  Rational lower;
  Rational upper;
  /// Closed form from the convex body, when the input is exact.
  std::optional<Scalar> exact;

  /// exact if present, else the estimate as a float covering the bracket.
  Scalar value() const;
  /// (upper − lower) / |estimate|.
  double relative_width() const;
  bool bracket_contains(const Scalar& x) const;
};

/// e(F) from d!·ℓ(R/F_m)/m^d along the schedule (strictly increasing, at
/// least two entries). Throws kNotPrimary.
LimitEstimate multiplicity_limit(const Filtration& f, const std::vector<std::int64_t>& schedule);

/// P(n) = lim ℓ(R/∏ F_j(m n_j))/m^d.
LimitEstimate mixed_function(const std::vector<Filtration>& fs, const std::vector<std::int64_t>& n,
                             const std::vector<std::int64_t>& schedule);

struct NodeValue {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  Scalar exact;              // covolume route
  std::optional<LimitEstimate> limit;
};

struct MixedMultiplicities {
  std::size_t d = 0;
  std::vector<Scalar> e;
  std::vector<double> lower;
  std::vector<double> upper;
  bool exact = false;
  std::vector<NodeValue> nodes;
  /// Largest |P(node) − form(node)| over the nodes off the top layer, from
  /// the limit estimates. 0 when no estimates were run.
  double homogeneity_residual = 0.0;

  HomogeneousForm polynomial() const;
  /// e(F1 F2) = Σ C(d,i) e_i.
  Scalar product_multiplicity() const;
};

/// Evaluates P at every node n1 + n2 ≤ d (excluding 0), solves the top layer
/// (k, d − k) for e_0..e_d and keeps the rest as a homogeneity check. With an
/// empty schedule only the exact covolume route runs. Throws kIllConditioned
/// when no exact route exists and a node's bracket is too wide.
MixedMultiplicities mixed_multiplicities(const Filtration& f1, const Filtration& f2,
                                         const std::vector<std::int64_t>& schedule);

enum class Relation { kStrict, kEquality, kViolated };
std::string_view to_string(Relation r);

struct InequalityCheck {
  int family = 0;  // 1..4
  int index = 0;   // i for families 1-3
  Relation relation = Relation::kStrict;
  Scalar lhs;
  Scalar rhs;
  std::string statement;
};

struct MinkowskiReport {
  std::vector<InequalityCheck> checks;
  bool all_hold = true;
  /// Equality in 4), equivalently in 3) for every i.
  bool equality = false;
  /// Inconsistency between the equality of 4) and of all of 3).
  std::optional<std::string> discrepancy;
  /// (1/d!)(e_0^(1/d) n1 + e_d^(1/d) n2)^d when equality holds.
  std::optional<HomogeneousForm> equality_form;
};

MinkowskiReport minkowski_report(const MixedMultiplicities& e);

struct GammaComparison {
  std::vector<std::int64_t> weights;
  Scalar gamma1;
  Scalar gamma2;
  bool consistent = false;  // e_d^(1/d) γ1 = e_0^(1/d) γ2
};

struct GammaRatioReport {
  Scalar xi;  // (e_d/e_0)^(1/d)
  std::vector<GammaComparison> rows;
  bool all_consistent = true;
};

/// γ values are exact minima over the vertices of the convex bodies.
GammaRatioReport gamma_ratio_check(const Filtration& f1, const Filtration& f2,
                                   const std::vector<WeightValuation>& valuations, const Scalar& e0,
                                   const Scalar& ed, std::int64_t m_max);

/// Valuations probed when none are given.
std::vector<WeightValuation> default_valuations(std::size_t dim);

enum class Verdict { kEquality, kStrict };
std::string_view to_string(Verdict v);

struct MinkowskiEqualityResult {
  Verdict verdict = Verdict::kStrict;
  MixedMultiplicities e;
  MinkowskiReport report;
  std::optional<Scalar> xi;
  std::optional<bool> bodies_homothetic;
  std::optional<GammaRatioReport> gamma;
  /// Set when the cross-checks disagree with the verdict.
  std::optional<std::string> discrepancy;
};

MinkowskiEqualityResult minkowski_equality_test(const Filtration& f1, const Filtration& f2,
                                                const std::vector<std::int64_t>& schedule, std::int64_t m_max);

enum class ReesVerdict { kEqualBoth, kEqualMultOnly, kDistinct };
std::string_view to_string(ReesVerdict v);

struct ReesResult {
  ReesVerdict verdict = ReesVerdict::kDistinct;
  Scalar e_small;
  Scalar e_big;
  /// First level where the closures differ.
  std::optional<std::int64_t> closure_mismatch;
  std::optional<std::string> note;
};

/// Throws kNotNested if F_small.level(n) ⊄ F_big.level(n) for some n ≤ m_max.
ReesResult rees_equality_check(const Filtration& small, const Filtration& big, std::int64_t m_max,
                               std::int64_t r_max);

enum class TrskVerdict { kRescaling, kStrict, kClosuresDiffer };
std::string_view to_string(TrskVerdict v);

struct TrskResult {
  TrskVerdict verdict = TrskVerdict::kStrict;
  Integer a{0};
  Integer b{0};
  std::optional<Scalar> xi;
  MinkowskiEqualityResult minkowski;
  std::int64_t levels_checked = 0;
  /// Candidates a/b that failed the closure comparison, with the level.
  std::vector<std::pair<std::string, std::int64_t>> rejected;
};

/// Throws kRationalityUndecided when equality holds but no a/b with
/// b ≤ q_cap is certified.
TrskResult trsk_check(const Filtration& f1, const Filtration& f2, const std::vector<std::int64_t>& schedule,
                      std::int64_t n_max, std::int64_t q_cap, std::int64_t r_max = 4);

enum class RigidityVerdict { kEqual, kMultiplicitiesDiffer, kFalsified };
std::string_view to_string(RigidityVerdict v);

struct RigidityResult {
  RigidityVerdict verdict = RigidityVerdict::kEqual;
  Scalar e_f;
  Scalar e_d;
  std::optional<std::int64_t> mismatch_level;
};

/// D must be divisorial-toric. Throws kNotNested if I(nD) ⊄ F_n for n ≤ m_max.
RigidityResult equal_mult_rigidity_check(const Filtration& f, const Filtration& d, std::int64_t m_max);

/// d! · covolume of the convex body.
Scalar exact_multiplicity(const Filtration& f);

}  // namespace filtmult
