// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_MP_HPP
#define ZPML_MP_HPP

#include <mpfr.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace zpml {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Bad inputs (domain violations, malformed files, invalid configs).
struct ValidationError : Error {
  using Error::Error;
};
/// Numerical failures (singular pivots, non-convergence, breakdowns).
struct NumericalError : Error {
  using Error::Error;
};

namespace mp {

using Prec = mpfr_prec_t;

constexpr Prec kMinPrec = 64;

/// Arbitrary-precision real number. Every value carries its own precision;
/// binary operations compute at the max of the operand precisions, so
/// precision is never silently downgraded. All rounding is to-nearest,
/// which makes results deterministic across runs and platforms.
class Real {
 public:
  Real() { mpfr_init2(v_, kMinPrec); }
  explicit Real(Prec prec) { mpfr_init2(v_, prec < kMinPrec ? kMinPrec : prec); }
  Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(double x, Prec prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(long x, Prec prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real parse(const std::string& s, Prec prec);
  static Real pi(Prec prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  Prec prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Decimal string with `digits` significant digits (0 = full precision).
  std::string str(int digits = 0) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
  friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
  friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
  friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }
  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) {
    Real r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator*(long a, const Real& b) { return b * a; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

 private:
  using MpfrBinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(MpfrBinOp op, const Real& a, const Real& b) {
    Real r(a.prec() > b.prec() ? a.prec() : b.prec());
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

inline Real un(int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Real& a) {
  Real r(a.prec());
  op(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real abs(const Real& a) { return un(mpfr_abs, a); }
inline Real sqrt(const Real& a) { return un(mpfr_sqrt, a); }
inline Real exp(const Real& a) { return un(mpfr_exp, a); }
inline Real log(const Real& a) { return un(mpfr_log, a); }
inline Real sin(const Real& a) { return un(mpfr_sin, a); }
inline Real cos(const Real& a) { return un(mpfr_cos, a); }
inline Real asin(const Real& a) { return un(mpfr_asin, a); }
inline Real floor(const Real& a) {
  Real r(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}
inline Real ceil(const Real& a) {
  Real r(a.prec());
  mpfr_ceil(r.raw(), a.raw());
  return r;
}
inline Real hypot(const Real& a, const Real& b) {
  Real r(a.prec() > b.prec() ? a.prec() : b.prec());
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(y.prec() > x.prec() ? y.prec() : x.prec());
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
/// 2^e at the given precision.
inline Real exp2i(long e, Prec prec) {
  Real r(prec);
  mpfr_set_si_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

/// Arbitrary-precision complex number built from two Reals.
struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(Prec prec) : re(Real::of(0.0, prec)), im(Real::of(0.0, prec)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  static Complex of(double r, double i, Prec prec) {
    return {Real::of(r, prec), Real::of(i, prec)};
  }
  static Complex of(std::complex<double> z, Prec prec) {
    return of(z.real(), z.imag(), prec);
  }
  static Complex of(const Real& r) { return {r, Real::of(0.0, r.prec())}; }

  Prec prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  std::complex<double> to_double() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  Complex operator-() const { return {-re, -im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }
};

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline Real abs(const Complex& a) { return hypot(a.re, a.im); }
/// Principal branch square root.
Complex sqrt(const Complex& a);

}  // namespace mp
}  // namespace zpml

#endif  // ZPML_MP_HPP
