#include "filtmult/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace filtmult {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonPositiveInput: return "NonPositiveInput";
    case ErrorKind::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::kInexactInput: return "InexactInput";
    case ErrorKind::kFieldMismatch: return "FieldMismatch";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kNotPrimary: return "NotPrimary";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kCapReached: return "CapReached";
    case ErrorKind::kDegenerateSystem: return "DegenerateSystem";
    case ErrorKind::kZeroVolume: return "ZeroVolume";
    case ErrorKind::kTruncationTooLow: return "TruncationTooLow";
    case ErrorKind::kNoStabilization: return "NoStabilization";
    case ErrorKind::kIllConditioned: return "IllConditioned";
    case ErrorKind::kNotNested: return "NotNested";
    case ErrorKind::kRationalityUndecided: return "RationalityUndecided";
    case ErrorKind::kOutsideEnvelope: return "OutsideEnvelope";
    case ErrorKind::kBoundaryAmbiguity: return "BoundaryAmbiguity";
    case ErrorKind::kNotEquality: return "NotEquality";
    case ErrorKind::kSchema: return "SchemaError";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema:
    case ErrorKind::kDimensionMismatch:
      return 2;
    case ErrorKind::kPrecisionExhausted:
    case ErrorKind::kCapReached:
    case ErrorKind::kNoStabilization:
    case ErrorKind::kIllConditioned:
    case ErrorKind::kRationalityUndecided:
      return 4;
    default:
      return 3;
  }
}

// -----------------------------------------------------------------------------

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::kDivisionByZero, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw Error(ErrorKind::kSchema, "malformed rational '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorKind::kSchema, "malformed rational '" + text + "'");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::kSchema, "malformed rational '" + text + "'");
    }
    return Integer(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::kSchema, "zero denominator in '" + text + "'");
  return make_rational(num, den);
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_display_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return to_fraction_string(r);
}

Integer floor_rational(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_rational(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

std::pair<std::int64_t, std::int64_t> squarefree_decompose(std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::kNonPositiveInput, "squarefree_decompose needs n > 0");
  std::int64_t square = 1;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square *= p;
    }
  }
  return {square, rest};
}

std::optional<Integer> exact_integer_root(const Integer& value, unsigned long d) {
  if (value < 0) return std::nullopt;
  Integer root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), d) != 0) return root;
  return std::nullopt;
}

// -----------------------------------------------------------------------------

QuadExt::QuadExt(const Rational& a, const Rational& b, std::int64_t n) : a_(a), b_(b), n_(n) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) == 0) {
    n_ = 0;
    return;
  }
  if (n_ < 2) throw Error(ErrorKind::kNonPositiveInput, "radicand must be >= 2");
  auto [square, free] = squarefree_decompose(n_);
  if (free == 1) {
    a_ += b_ * Rational(static_cast<long>(square));
    b_ = 0;
    n_ = 0;
  } else {
    b_ *= Rational(static_cast<long>(square));
    n_ = free;
  }
}

QuadExt QuadExt::sqrt_of(std::int64_t value) {
  if (value < 0) throw Error(ErrorKind::kNonPositiveInput, "sqrt of a negative integer");
  if (value == 0) return QuadExt();
  return QuadExt(Rational(0), Rational(1), value);
}

void QuadExt::normalize() {
  if (sgn(b_) == 0) n_ = 0;
}

bool QuadExt::compatible(const QuadExt& x, const QuadExt& y) noexcept {
  return x.is_rational() || y.is_rational() || x.n_ == y.n_;
}

std::int64_t QuadExt::merged_radicand(const QuadExt& o) const {
  if (is_rational()) return o.n_;
  if (o.is_rational()) return n_;
  if (n_ != o.n_) {
    throw Error(ErrorKind::kFieldMismatch,
                "sqrt(" + std::to_string(n_) + ") and sqrt(" + std::to_string(o.n_) + ") mixed");
  }
  return n_;
}

int QuadExt::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational a2 = a_ * a_;
  Rational b2n = b_ * b_ * Rational(static_cast<long>(n_));
  return a2 > b2n ? sa : sb;
}

QuadExt QuadExt::conjugate() const {
  QuadExt out = *this;
  out.b_ = -out.b_;
  return out;
}

Rational QuadExt::norm() const {
  return a_ * a_ - b_ * b_ * Rational(static_cast<long>(n_));
}

QuadExt QuadExt::inverse() const {
  Rational nrm = norm();
  if (sgn(nrm) == 0) throw Error(ErrorKind::kDivisionByZero, "inverse of zero");
  QuadExt out;
  out.a_ = a_ / nrm;
  out.b_ = -b_ / nrm;
  out.n_ = n_;
  out.normalize();
  return out;
}

mpf_class QuadExt::to_mpf(unsigned long bits) const {
  mpf_class a(a_, bits);
  if (is_rational()) return a;
  mpf_class root(static_cast<double>(n_), bits);
  root = sqrt(root);
  mpf_class b(b_, bits);
  return mpf_class(a + b * root, bits);
}

double QuadExt::to_double() const {
  if (is_rational()) return a_.get_d();
  return to_mpf(128).get_d();
}

Integer QuadExt::floor() const {
  if (is_rational()) return floor_rational(a_);
  unsigned long bits = 128 + mpz_sizeinbase(a_.get_num_mpz_t(), 2) + mpz_sizeinbase(a_.get_den_mpz_t(), 2) +
                       mpz_sizeinbase(b_.get_num_mpz_t(), 2) + mpz_sizeinbase(b_.get_den_mpz_t(), 2);
  mpf_class approx = to_mpf(bits);
  mpf_class fl(0, bits);
  mpf_floor(fl.get_mpf_t(), approx.get_mpf_t());
  Integer k(fl);
  while (*this < QuadExt(Rational(k))) k -= 1;
  while (*this >= QuadExt(Rational(k + 1))) k += 1;
  return k;
}

Integer QuadExt::ceil() const {
  Integer f = floor();
  if (*this == QuadExt(Rational(f))) return f;
  return f + 1;
}

QuadExt QuadExt::operator-() const {
  QuadExt out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  std::int64_t n = merged_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  n_ = n;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  std::int64_t n = merged_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  n_ = n;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  std::int64_t n = merged_radicand(o);
  if (is_rational() && o.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(static_cast<long>(n));
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  n_ = n;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw Error(ErrorKind::kDivisionByZero, "division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    normalize();
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  if (!QuadExt::compatible(x, y)) return false;
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_display_string(const QuadExt& x) {
  if (x.is_rational()) return to_display_string(x.a());
  Rational mag = abs(x.b());
  std::string root = "sqrt(" + std::to_string(x.radicand()) + ")";
  std::string bterm = mag == 1 ? root : to_display_string(mag) + "*" + root;
  if (sgn(x.a()) == 0) return (sgn(x.b()) < 0 ? "-" : "") + bterm;
  return to_display_string(x.a()) + (sgn(x.b()) < 0 ? " - " : " + ") + bterm;
}

int sign_of_difference_with_root(const QuadExt& x, const QuadExt& y, const QuadExt& z) {
  if (z.sign() < 0) throw Error(ErrorKind::kNonPositiveInput, "square root of a negative value");
  int sy = y.sign();
  if (sy == 0 || z.sign() == 0) return x.sign();
  int sx = x.sign();
  // t = y*sqrt(z) has the sign of y.
  if (sx != sy) return sx != 0 ? sx : -sy;
  int cmp = (x * x - y * y * z).sign();
  return cmp * sx;
}

// -----------------------------------------------------------------------------

Scalar::Scalar(const QuadExt& q) {
  if (q.is_rational()) {
    value_ = q.a();
  } else {
    value_ = q;
  }
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw Error(ErrorKind::kInexactInput, "scalar is not rational");
}

QuadExt Scalar::quad() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return QuadExt(*r);
  if (const auto* q = std::get_if<QuadExt>(&value_)) return *q;
  throw Error(ErrorKind::kInexactInput, "float scalar has no exact value");
}

double Scalar::to_double() const {
  switch (kind()) {
    case ScalarKind::kRational: return std::get<Rational>(value_).get_d();
    case ScalarKind::kQuadExt: return std::get<QuadExt>(value_).to_double();
    case ScalarKind::kFloat: return std::get<Float>(value_).value;
  }
  return 0.0;
}

double Scalar::tolerance() const noexcept {
  if (const auto* f = std::get_if<Float>(&value_)) return f->tol;
  return 0.0;
}

Float Scalar::as_float() const { return Float{to_double(), tolerance()}; }

int Scalar::sign() const {
  switch (kind()) {
    case ScalarKind::kRational: return sgn(std::get<Rational>(value_));
    case ScalarKind::kQuadExt: return std::get<QuadExt>(value_).sign();
    case ScalarKind::kFloat: {
      const auto& f = std::get<Float>(value_);
      if (std::abs(f.value) <= f.tol) return 0;
      return f.value < 0 ? -1 : 1;
    }
  }
  return 0;
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

Integer Scalar::floor() const {
  if (is_exact()) return quad().floor();
  return Integer(std::floor(to_double()));
}

Integer Scalar::ceil() const {
  if (is_exact()) return quad().ceil();
  return Integer(std::ceil(to_double()));
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case ScalarKind::kRational: return Scalar(Rational(-std::get<Rational>(value_)));
    case ScalarKind::kQuadExt: return Scalar(-std::get<QuadExt>(value_));
    case ScalarKind::kFloat: {
      Float f = std::get<Float>(value_);
      f.value = -f.value;
      return Scalar(f);
    }
  }
  return *this;
}

namespace {

constexpr double kUlp = 4.0 * std::numeric_limits<double>::epsilon();

bool exact_pair(const Scalar& x, const Scalar& y) {
  if (!x.is_exact() || !y.is_exact()) return false;
  return QuadExt::compatible(x.quad(), y.quad());
}

}  // namespace

Scalar operator+(const Scalar& x, const Scalar& y) {
  if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() + y.rational()));
  if (exact_pair(x, y)) return Scalar(x.quad() + y.quad());
  Float a = x.as_float();
  Float b = y.as_float();
  double v = a.value + b.value;
  return Scalar(Float{v, a.tol + b.tol + kUlp * std::abs(v)});
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() * y.rational()));
  if (exact_pair(x, y)) return Scalar(x.quad() * y.quad());
  Float a = x.as_float();
  Float b = y.as_float();
  double v = a.value * b.value;
  double tol = std::abs(a.value) * b.tol + std::abs(b.value) * a.tol + a.tol * b.tol + kUlp * std::abs(v);
  return Scalar(Float{v, tol});
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_exact() && y.sign() == 0) throw Error(ErrorKind::kDivisionByZero, "division by zero");
  if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() / y.rational()));
  if (exact_pair(x, y)) return Scalar(x.quad() / y.quad());
  Float a = x.as_float();
  Float b = y.as_float();
  double denom = std::abs(b.value) - b.tol;
  if (denom <= 0) throw Error(ErrorKind::kDivisionByZero, "division by a float indistinguishable from zero");
  double v = a.value / b.value;
  double tol = (a.tol + std::abs(v) * b.tol) / denom + kUlp * std::abs(v);
  return Scalar(Float{v, tol});
}

int compare(const Scalar& x, const Scalar& y) {
  if (x.is_rational() && y.is_rational()) {
    int c = cmp(x.rational(), y.rational());
    return (c > 0) - (c < 0);
  }
  if (exact_pair(x, y)) return (x.quad() - y.quad()).sign();
  if (x.is_exact() && y.is_exact()) {
    // Irrationals from two different quadratic fields are never equal.
    mpf_class diff = x.quad().to_mpf(256) - y.quad().to_mpf(256);
    return sgn(diff);
  }
  Float a = x.as_float();
  Float b = y.as_float();
  double diff = a.value - b.value;
  double tol = std::max(a.tol, b.tol);
  if (std::abs(diff) <= tol) return 0;
  return diff < 0 ? -1 : 1;
}

Scalar pow(const Scalar& base, unsigned exponent) {
  Scalar out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

mpf_class to_mpf(const Scalar& x, unsigned long bits) {
  if (x.is_exact()) return x.quad().to_mpf(bits);
  return mpf_class(x.to_double(), bits);
}

mpf_class mpf_root(const mpf_class& x, unsigned d, unsigned long bits) {
  if (sgn(x) < 0) throw Error(ErrorKind::kNonPositiveInput, "root of a negative value");
  if (sgn(x) == 0 || d == 1) return mpf_class(x, bits);
  mpf_class y(std::pow(x.get_d(), 1.0 / d), bits);
  if (sgn(y) == 0 || !std::isfinite(y.get_d())) y = mpf_class(1, bits);
  mpf_class dd(d, bits);
  for (int iter = 0; iter < 200; ++iter) {
    mpf_class yd1(1, bits);
    for (unsigned k = 1; k < d; ++k) yd1 *= y;
    mpf_class next = ((dd - 1) * y + x / yd1) / dd;
    mpf_class delta = abs(next - y);
    y = next;
    mpf_class scale(1, bits);
    mpf_div_2exp(scale.get_mpf_t(), scale.get_mpf_t(), bits - 8);
    if (delta <= scale * abs(y)) break;
  }
  return y;
}

Scalar dth_root(const Scalar& value, unsigned d) {
  if (d == 0) throw Error(ErrorKind::kNonPositiveInput, "root degree must be positive");
  if (value.sign() < 0) throw Error(ErrorKind::kNonPositiveInput, "root of a negative value");
  if (d == 1) return value;
  if (value.is_rational()) {
    const Rational& r = value.rational();
    if (sgn(r) == 0) return Scalar(0);
    auto num = exact_integer_root(r.get_num(), d);
    auto den = exact_integer_root(r.get_den(), d);
    if (num && den) return Scalar(make_rational(*num, *den));
    if (d == 2) {
      Integer prod = r.get_num() * r.get_den();
      if (prod.fits_slong_p()) {
        QuadExt root = QuadExt::sqrt_of(prod.get_si());
        return Scalar(root / QuadExt(Rational(r.get_den())));
      }
    }
  }
  if (value.is_exact()) {
    mpf_class root = mpf_root(value.quad().to_mpf(256), d, 256);
    double v = root.get_d();
    return Scalar(Float{v, kDefaultFloatTolerance * std::max(1.0, std::abs(v))});
  }
  Float f = value.as_float();
  double v = std::pow(f.value, 1.0 / d);
  // d/dx x^(1/d) = x^(1/d - 1)/d bounds the propagated error away from 0.
  double slope = f.value > f.tol ? v / (d * (f.value - f.tol)) : 1.0;
  return Scalar(Float{v, f.tol * slope + kDefaultFloatTolerance * std::max(1.0, v)});
}

std::string to_display_string(const Scalar& x, int digits) {
  switch (x.kind()) {
    case ScalarKind::kRational: return to_display_string(x.rational());
    case ScalarKind::kQuadExt: return to_display_string(x.quad());
    case ScalarKind::kFloat: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "~%.*g", digits, x.to_double());
      return buf;
    }
  }
  return {};
}

// -----------------------------------------------------------------------------

ConvergentStream::ConvergentStream(const Scalar& xi) {
  if (xi.is_exact()) {
    remainder_ = xi.quad();
  } else {
    is_float_ = true;
    Float f = xi.as_float();
    Rational v(f.value);
    Rational t(f.tol);
    lo_ = v - t;
    hi_ = v + t;
  }
}

std::optional<Integer> ConvergentStream::next_quotient() {
  if (done_) return std::nullopt;
  if (!is_float_) {
    Integer a = remainder_.floor();
    QuadExt frac = remainder_ - QuadExt(Rational(a));
    if (frac.sign() == 0) {
      done_ = true;
      exact_end_ = true;
    } else {
      remainder_ = frac.inverse();
    }
    return a;
  }
  Integer a_lo = floor_rational(lo_);
  Integer a_hi = floor_rational(hi_);
  if (a_lo != a_hi) {
    done_ = true;
    exhausted_ = true;
    return std::nullopt;
  }
  Rational frac_lo = lo_ - Rational(a_lo);
  Rational frac_hi = hi_ - Rational(a_lo);
  if (sgn(frac_lo) == 0) {
    // The interval touches the integer a: the expansion may end here or go on.
    done_ = true;
    exhausted_ = true;
    return std::nullopt;
  }
  lo_ = 1 / frac_hi;
  hi_ = 1 / frac_lo;
  return a_lo;
}

std::optional<Convergent> ConvergentStream::next() {
  auto a = next_quotient();
  if (!a) return std::nullopt;
  Integer p = *a * p_prev_ + p_prev2_;
  Integer q = *a * q_prev_ + q_prev2_;
  p_prev2_ = p_prev_;
  q_prev2_ = q_prev_;
  p_prev_ = p;
  q_prev_ = q;
  return Convergent{p, q};
}

namespace {

enum class Side { kBelow, kAbove };

bool certifies(const Scalar& xi, const Convergent& c, const Rational& alpha, Side side) {
  Rational frac = make_rational(c.p, c.q);
  Rational bound = alpha / Rational(c.q);
  if (xi.is_exact()) {
    QuadExt diff = xi.quad() - QuadExt(frac);
    if (side == Side::kBelow) return diff.sign() >= 0 && (diff - QuadExt(bound)).sign() < 0;
    return diff.sign() <= 0 && (diff + QuadExt(bound)).sign() > 0;
  }
  Float f = xi.as_float();
  if (!(Rational(f.tol) < bound / 2)) return false;
  Rational v(f.value);
  Rational t(f.tol);
  Rational lo = v - t;
  Rational hi = v + t;
  if (side == Side::kBelow) return lo - frac >= 0 && hi - frac < bound;
  return hi - frac <= 0 && lo - frac > -bound;
}

Approximation approximate(const Scalar& xi, const Rational& alpha, const std::optional<Integer>& q_cap,
                          Side side) {
  if (sgn(alpha) <= 0) throw Error(ErrorKind::kNonPositiveInput, "alpha must be positive");
  if (xi.is_exact() ? xi.sign() <= 0 : xi.to_double() <= 0) {
    throw Error(ErrorKind::kNonPositiveInput, "xi must be positive");
  }
  ConvergentStream stream(xi);
  for (int iter = 0; iter < 100000; ++iter) {
    auto c = stream.next();
    if (!c) break;
    if (q_cap && c->q > *q_cap) {
      throw Error(ErrorKind::kCapReached, "denominator exceeded q_cap=" + q_cap->get_str());
    }
    if (c->p <= 0) continue;
    if (certifies(xi, *c, alpha, side)) return Approximation{c->p, c->q};
  }
  throw Error(ErrorKind::kPrecisionExhausted, "no convergent certifies the bound at the available precision");
}

}  // namespace

Approximation approximate_below(const Scalar& xi, const Rational& alpha, const std::optional<Integer>& q_cap) {
  return approximate(xi, alpha, q_cap, Side::kBelow);
}

Approximation approximate_above(const Scalar& xi, const Rational& alpha, const std::optional<Integer>& q_cap) {
  return approximate(xi, alpha, q_cap, Side::kAbove);
}

std::optional<Rational> rational_dth_root(const Scalar& num, const Scalar& den, unsigned d) {
  if (!num.is_exact() || !den.is_exact()) throw Error(ErrorKind::kInexactInput, "rational_dth_root needs exact input");
  if (d == 0) throw Error(ErrorKind::kNonPositiveInput, "root degree must be positive");
  if (num.sign() <= 0 || den.sign() <= 0) throw Error(ErrorKind::kNonPositiveInput, "num and den must be positive");
  if (!QuadExt::compatible(num.quad(), den.quad())) return std::nullopt;
  QuadExt ratio = num.quad() / den.quad();
  if (!ratio.is_rational()) return std::nullopt;
  const Rational& r = ratio.a();
  auto p = exact_integer_root(r.get_num(), d);
  auto q = exact_integer_root(r.get_den(), d);
  if (!p || !q) return std::nullopt;
  return make_rational(*p, *q);
}

}  // namespace filtmult
