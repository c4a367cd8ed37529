#pragma once

// Divisorial filtrations given by intersection data: a symmetric tensor of
// intersection numbers of the exceptional divisors E_1..E_r and a piecewise
// linear nef envelope D ↦ (γ_{E_i}(D)).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "filtmult/multiplicity.hpp"
#include "filtmult/numeric.hpp"

namespace filtmult {

class IntersectionTensor {
 public:
  IntersectionTensor() = default;
  IntersectionTensor(std::size_t d, std::vector<std::string> labels);

  std::size_t d() const noexcept { return d_; }
  std::size_t rank() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t label_index(const std::string& label) const;

  /// Keys are multisets of label indices; order does not matter.
  void set(std::vector<std::size_t> key, const Integer& value);
  Integer entry(std::vector<std::size_t> key) const;
  const std::map<std::vector<std::size_t>, Integer>& entries() const noexcept { return entries_; }
  /// Every one of the C(r+d−1, d) entries is present.
  bool complete() const;

 private:
  std::size_t d_ = 0;
  std::vector<std::string> labels_;
  std::map<std::vector<std::size_t>, Integer> entries_;
};

using DivisorCoeffs = std::vector<Scalar>;

/// Nonnegative and not all zero.
void validate_divisor(const DivisorCoeffs& d, std::size_t rank);

/// D_1 ··· D_d by multilinear expansion. Throws kDimensionMismatch.
Scalar intersection_product(const IntersectionTensor& t, const std::vector<DivisorCoeffs>& divisors);

struct EnvelopeCone {
  std::string name;
  /// row · n ≥ 0.
  std::vector<std::vector<Scalar>> inequalities;
  /// γ(D) = gamma · coeffs on this cone.
  std::vector<std::vector<Scalar>> gamma;

  bool contains(const DivisorCoeffs& d) const;
  bool contains_interior(const DivisorCoeffs& d) const;
  std::vector<Scalar> apply(const DivisorCoeffs& d) const;
};

struct NefEnvelope {
  std::size_t rank = 0;
  std::vector<EnvelopeCone> cones;

  /// Indices of every cone containing d.
  std::vector<std::size_t> containing(const DivisorCoeffs& d) const;
};

/// Checks γ ≥ coeffs on each cone and agreement of adjacent maps, at extreme
/// rays (rank 2) or at `samples` random integer points. Returns violations.
std::vector<std::string> check_envelope(const NefEnvelope& env, std::size_t samples, std::uint64_t seed = 1);

/// Throws kOutsideEnvelope, or kBoundaryAmbiguity when cones sharing d disagree.
std::vector<Scalar> gamma_eval(const NefEnvelope& env, const DivisorCoeffs& d);

/// −⟨(−D1)^{d1}·(−D2)^{d2}⟩ = −(−1)^d (γ(D1)·E)^{d1} (γ(D2)·E)^{d2}.
Scalar anti_positive_mixed(const IntersectionTensor& t, const NefEnvelope& env, const DivisorCoeffs& d1,
                           const DivisorCoeffs& d2, std::size_t k1, std::size_t k2);

/// e_i = anti_positive_mixed(D1, D2, d − i, i), exact.
MixedMultiplicities divisorial_mixed_multiplicities(const IntersectionTensor& t, const NefEnvelope& env,
                                                    const DivisorCoeffs& d1, const DivisorCoeffs& d2);

struct PiecewisePiece {
  std::size_t cone = 0;
  std::string name;
  /// (a, b) meaning a·n1 + b·n2 ≥ 0.
  std::vector<std::pair<Scalar, Scalar>> inequalities;
  /// f(n1, n2) = e(n1 D1 + n2 D2)/d! on this piece.
  HomogeneousForm f;
};

struct MixedPolynomial {
  HomogeneousForm form;
  /// Pieces of the single-divisor multiplicity along n1 D1 + n2 D2.
  std::vector<PiecewisePiece> piecewise;
  /// True when D1 and D2 do not share a cone.
  bool straddles = false;
};

MixedPolynomial mixed_polynomial(const IntersectionTensor& t, const NefEnvelope& env, const DivisorCoeffs& d1,
                                 const DivisorCoeffs& d2);

struct EqualityClassification {
  Verdict verdict = Verdict::kStrict;
  std::vector<Scalar> gamma1;
  std::vector<Scalar> gamma2;
  std::vector<std::size_t> cones1;
  std::vector<std::size_t> cones2;
  /// Expected behaviour for the cone pair, from the γ maps.
  std::string commentary;
};

EqualityClassification equality_classifier(const NefEnvelope& env, const IntersectionTensor& t,
                                           const DivisorCoeffs& d1, const DivisorCoeffs& d2);

/// "always", "iff proportional", "never" or "some pairs" for cones i, j.
std::string cone_pair_relation(const NefEnvelope& env, std::size_t i, std::size_t j);

struct Rescaling {
  Integer a;
  Integer b;
  Scalar xi;
};

/// (a, b) with a·γ(D1) = b·γ(D2). Throws kNotEquality, or
/// kRationalityUndecided when ξ is irrational or its denominator exceeds q_cap.
Rescaling find_rescaling(const NefEnvelope& env, const IntersectionTensor& t, const DivisorCoeffs& d1,
                         const DivisorCoeffs& d2, std::int64_t q_cap);

struct BuiltinExample {
  IntersectionTensor tensor;
  NefEnvelope envelope;
};

/// Three-region surface example over Q(√3).
BuiltinExample builtin_example();

/// 3/(9 − √3).
QuadExt builtin_region3_slope();

}  // namespace filtmult
