#pragma once

// Exact integers and rationals (GMP) plus outward-rounded intervals (MPFR).
//
// Every transcendental quantity in the toolkit is carried as an Interval whose
// endpoints are exact dyadic rationals; verdicts compare endpoints exactly.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

namespace pacert {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// "p/q" for non-integers, "p" otherwise.
/// Always "p/q", "5/1" for integers.
inline std::string to_fraction_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return num.str() + "/" + den.str();
}

inline Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  const BigInt den(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(BigInt(text.substr(0, slash)), den);
}

/// Exact power with a non-negative exponent.
inline Rational pow_exact(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

/// RAII holder for one mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = kDefaultPrecision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
  }
  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~Real() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  static Real from_rational(const Rational& q, mpfr_prec_t precision, mpfr_rnd_t rnd) {
    Real r(precision);
    mpfr_set_q(r.get(), q.backend().data(), rnd);
    return r;
  }
  static Real from_integer(const BigInt& z, mpfr_prec_t precision, mpfr_rnd_t rnd) {
    Real r(precision);
    mpfr_set_z(r.get(), z.backend().data(), rnd);
    return r;
  }

  /// The exact dyadic value held.
  Rational to_rational() const {
    if (mpfr_zero_p(value_)) return Rational(0);
    if (!mpfr_number_p(value_)) throw std::domain_error("non-finite MPFR value");
    mpz_t mant;
    mpz_init(mant);
    const mpfr_exp_t e = mpfr_get_z_2exp(mant, value_);
    BigInt z(mant);
    mpz_clear(mant);
    Rational q(z);
    if (e >= 0) {
      q *= Rational(BigInt(1) << static_cast<unsigned>(e));
    } else {
      q /= Rational(BigInt(1) << static_cast<unsigned>(-e));
    }
    return q;
  }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] with outward-rounded arithmetic.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision = kDefaultPrecision) : lo_(precision), hi_(precision) {}

  static Interval point(const Rational& q, mpfr_prec_t precision = kDefaultPrecision) {
    Interval r(precision);
    r.lo_ = Real::from_rational(q, precision, MPFR_RNDD);
    r.hi_ = Real::from_rational(q, precision, MPFR_RNDU);
    return r;
  }
  static Interval point(const BigInt& z, mpfr_prec_t precision = kDefaultPrecision) {
    Interval r(precision);
    r.lo_ = Real::from_integer(z, precision, MPFR_RNDD);
    r.hi_ = Real::from_integer(z, precision, MPFR_RNDU);
    return r;
  }
  static Interval point(long value, mpfr_prec_t precision = kDefaultPrecision) {
    return point(BigInt(value), precision);
  }
  static Interval hull(const Rational& a, const Rational& b,
                       mpfr_prec_t precision = kDefaultPrecision) {
    if (b < a) throw std::invalid_argument("Interval::hull: lo > hi");
    Interval r(precision);
    r.lo_ = Real::from_rational(a, precision, MPFR_RNDD);
    r.hi_ = Real::from_rational(b, precision, MPFR_RNDU);
    return r;
  }
  static Interval pi(mpfr_prec_t precision = kDefaultPrecision) {
    Interval r(precision);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  mpfr_prec_t precision() const { return lo_.precision(); }
  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Rational lo_rational() const { return lo_.to_rational(); }
  Rational hi_rational() const { return hi_.to_rational(); }
  double mid() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }
  Rational width() const { return hi_rational() - lo_rational(); }

  bool contains(const Rational& q) const { return lo_rational() <= q && q <= hi_rational(); }
  bool contains(const Interval& other) const {
    return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
           mpfr_lessequal_p(other.hi_.get(), hi_.get());
  }
  /// Certainly this < other.
  bool certainly_less(const Interval& other) const {
    return mpfr_less_p(hi_.get(), other.lo_.get());
  }
  /// Certainly this <= other.
  bool certainly_less_equal(const Interval& other) const {
    return mpfr_lessequal_p(hi_.get(), other.lo_.get());
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    Real t(p);
    bool first = true;
    for (const Real* x : {&a.lo_, &a.hi_}) {
      for (const Real* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
      throw std::domain_error("Interval division by an interval containing zero");
    }
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    Real t(p);
    bool first = true;
    for (const Real* x : {&a.lo_, &a.hi_}) {
      for (const Real* y : {&b.lo_, &b.hi_}) {
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  friend Interval log(const Interval& a) {
    if (mpfr_sgn(a.lo_.get()) <= 0) throw std::domain_error("log of a non-positive interval");
    Interval r(a.precision());
    mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval exp(const Interval& a) {
    Interval r(a.precision());
    mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  /// Positive real l-th root of a non-negative interval.
  friend Interval root(const Interval& a, unsigned long l) {
    if (l == 0) throw std::domain_error("zeroth root");
    if (mpfr_sgn(a.lo_.get()) < 0) throw std::domain_error("root of a negative interval");
    Interval r(a.precision());
    mpfr_rootn_ui(r.lo_.get(), a.lo_.get(), l, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_.get(), a.hi_.get(), l, MPFR_RNDU);
    return r;
  }
  /// Odd-sign-safe monotone power for non-negative intervals.
  friend Interval pow(const Interval& a, unsigned long e) {
    if (mpfr_sgn(a.lo_.get()) < 0) throw std::domain_error("pow of a negative interval");
    Interval r(a.precision());
    mpfr_pow_ui(r.lo_.get(), a.lo_.get(), e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), a.hi_.get(), e, MPFR_RNDU);
    return r;
  }
  /// sin on an interval of width < pi lying inside [0, pi/2].
  friend Interval sin_increasing(const Interval& a) {
    Interval r(a.precision());
    mpfr_sin(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_sin(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }

  /// Smallest interval containing both.
  friend Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  /// Widen by +-radius (radius >= 0).
  Interval widened(const Rational& radius) const {
    Interval r = *this;
    const Real rd = Real::from_rational(radius, precision(), MPFR_RNDU);
    mpfr_sub(r.lo_.get(), lo_.get(), rd.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), rd.get(), MPFR_RNDU);
    return r;
  }

  /// "[lo, hi]" with exact fraction endpoints.
  std::string to_exact_string() const {
    return "[" + to_fraction_string(lo_rational()) + ", " + to_fraction_string(hi_rational()) + "]";
  }

 private:
  Real lo_;
  Real hi_;
};

/// Certified upper bound of log(q), q > 0, as an exact rational.
inline Rational log_upper(const Rational& q, mpfr_prec_t precision = kDefaultPrecision) {
  return log(Interval::point(q, precision)).hi_rational();
}

}  // namespace pacert
