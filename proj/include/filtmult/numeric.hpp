#pragma once

// Exact number tower used throughout the library: arbitrary precision
// rationals, elements a + b*sqrt(n) of a real quadratic field, and floats
// that carry an absolute error bound.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "filtmult/errors.hpp"

namespace filtmult {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr double kDefaultFloatTolerance = 1e-12;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q" or "p" (optionally signed). Throws kSchema on malformed text.
Rational parse_rational(const std::string& text);

/// Always "p/q", as used by the JSON encoding.
std::string to_fraction_string(const Rational& r);
/// "p" for integers, "p/q" otherwise.
std::string to_display_string(const Rational& r);

Integer floor_rational(const Rational& r);
Integer ceil_rational(const Rational& r);

/// Splits n = k^2 * m with m squarefree. n must be positive.
std::pair<std::int64_t, std::int64_t> squarefree_decompose(std::int64_t n);

/// Exact d-th root of a nonnegative integer, if it is a perfect power.
std::optional<Integer> exact_integer_root(const Integer& value, unsigned long d);

// -----------------------------------------------------------------------------

/// a + b*sqrt(n) with n >= 2 squarefree. Elements with b == 0 are rational and
/// combine freely with any field; two irrational elements must share n.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& a) : a_(a) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QuadExt(const Rational& a, const Rational& b, std::int64_t n);

  /// sqrt(value) for a nonnegative integer; exact, possibly rational.
  static QuadExt sqrt_of(std::int64_t value);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  /// 0 when the element is rational.
  std::int64_t radicand() const noexcept { return n_; }
  bool is_rational() const noexcept { return sgn(b_) == 0; }

  int sign() const;
  QuadExt conjugate() const;
  /// (a + b√n)(a − b√n).
  Rational norm() const;
  QuadExt inverse() const;

  Integer floor() const;
  Integer ceil() const;
  double to_double() const;
  mpf_class to_mpf(unsigned long bits) const;

  QuadExt operator-() const;
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

  /// True when both operands can take part in one exact computation.
  static bool compatible(const QuadExt& x, const QuadExt& y) noexcept;

 private:
  void normalize();
  std::int64_t merged_radicand(const QuadExt& o) const;

  Rational a_{0};
  Rational b_{0};
  std::int64_t n_ = 0;
};

/// "p/q + r/s*sqrt(n)" with integers printed bare and the sign folded in.
std::string to_display_string(const QuadExt& x);

/// Exact sign of x − y·sqrt(z) for z ≥ 0, all in one quadratic field.
int sign_of_difference_with_root(const QuadExt& x, const QuadExt& y, const QuadExt& z);

// -----------------------------------------------------------------------------

struct Float {
  double value = 0.0;
  double tol = kDefaultFloatTolerance;
};

enum class ScalarKind { kRational, kQuadExt, kFloat };

class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(const Rational& r) : value_(r) { std::get<Rational>(value_).canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(const QuadExt& q);                 // NOLINT(google-explicit-constructor)
  Scalar(Float f) : value_(f) {}            // NOLINT(google-explicit-constructor)
  Scalar(int v) : value_(Rational(v)) {}    // NOLINT(google-explicit-constructor)

  static Scalar from_double(double value, double tol = kDefaultFloatTolerance) {
    return Scalar(Float{value, tol});
  }

  ScalarKind kind() const noexcept { return static_cast<ScalarKind>(value_.index()); }
  bool is_exact() const noexcept { return kind() != ScalarKind::kFloat; }
  bool is_rational() const noexcept { return kind() == ScalarKind::kRational; }

  const Rational& rational() const;
  /// Exact value lifted into a quadratic field. Throws for floats.
  QuadExt quad() const;
  Float as_float() const;
  double to_double() const;
  /// Absolute error bound; 0 for exact kinds.
  double tolerance() const noexcept;

  int sign() const;
  Scalar abs() const;
  Scalar inverse() const;
  Integer floor() const;
  Integer ceil() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  /// -1, 0 or 1. Exact kinds compare exactly; as soon as a float is involved
  /// values within the larger of the two tolerances compare equal.
  friend int compare(const Scalar& x, const Scalar& y);
  friend bool operator==(const Scalar& x, const Scalar& y) { return compare(x, y) == 0; }
  friend bool operator<(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return compare(x, y) > 0; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return compare(x, y) <= 0; }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return compare(x, y) >= 0; }

  const std::variant<Rational, QuadExt, Float>& variant() const noexcept { return value_; }

 private:
  std::variant<Rational, QuadExt, Float> value_;
};

Scalar pow(const Scalar& base, unsigned exponent);

/// Exact d-th root when the value is a rational perfect power or, for d = 2,
/// a nonnegative rational (giving an element of Q(√m)); otherwise a float.
Scalar dth_root(const Scalar& value, unsigned d);

/// Rendering used by reports: exact kinds as in to_display_string, floats as
/// "~" followed by `digits` significant digits.
std::string to_display_string(const Scalar& x, int digits = 12);

mpf_class to_mpf(const Scalar& x, unsigned long bits);
/// Newton iteration for x^(1/d), x ≥ 0.
mpf_class mpf_root(const mpf_class& x, unsigned d, unsigned long bits);

// -----------------------------------------------------------------------------
// Continued fractions and one-sided rational approximation.

struct Convergent {
  Integer p;
  Integer q;
};

/// Lazily expands a positive Scalar as a continued fraction. Exact kinds are
/// expanded exactly (quadratic irrationals are periodic so coefficient sizes
/// stay bounded); floats are expanded on the interval [v − tol, v + tol] and
/// the stream ends as soon as the interval no longer pins the next quotient.
class ConvergentStream {
 public:
  explicit ConvergentStream(const Scalar& xi);

  /// Next convergent, or nothing once the expansion terminated (rational
  /// input) or ran out of certified precision (float input).
  std::optional<Convergent> next();

  /// True when the expansion ended because a float was too coarse.
  bool precision_exhausted() const noexcept { return exhausted_; }
  /// True when the last convergent returned equals ξ exactly.
  bool terminated_exactly() const noexcept { return exact_end_; }

 private:
  std::optional<Integer> next_quotient();

  bool is_float_ = false;
  QuadExt remainder_;
  Rational lo_;
  Rational hi_;
  bool done_ = false;
  bool exhausted_ = false;
  bool exact_end_ = false;
  Integer p_prev_{1}, q_prev_{0}, p_prev2_{0}, q_prev2_{1};
};

struct Approximation {
  Integer p;
  Integer q;
};

/// First convergent p/q (p, q > 0) with 0 ≤ ξ − p/q < α/q.
/// Throws kNonPositiveInput, kPrecisionExhausted, or kCapReached if q would
/// exceed q_cap.
Approximation approximate_below(const Scalar& xi, const Rational& alpha,
                                const std::optional<Integer>& q_cap = std::nullopt);
/// First convergent p/q (p, q > 0) with −α/q < ξ − p/q ≤ 0.
Approximation approximate_above(const Scalar& xi, const Rational& alpha,
                                const std::optional<Integer>& q_cap = std::nullopt);

/// (num/den)^(1/d) when it is rational. Float inputs are rejected with
/// kInexactInput.
std::optional<Rational> rational_dth_root(const Scalar& num, const Scalar& den, unsigned d);

}  // namespace filtmult
