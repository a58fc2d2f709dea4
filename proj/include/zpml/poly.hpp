// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_POLY_HPP
#define ZPML_POLY_HPP

#include <vector>

#include "zpml/mp.hpp"

namespace zpml {

/// Dense polynomial with arbitrary-precision complex coefficients, stored in
/// ascending degree order. The zero polynomial is the empty coefficient list
/// (degree() = -1 stands in for the -infinity convention); otherwise the
/// leading coefficient is nonzero and degree() equals coeffs.size()-1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<mp::Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const mp::Complex& v) { return Poly({v}); }
  static Poly zero() { return Poly(); }

  /// Expands prod_j (z - roots[j]) scaled by `leading`.
  static Poly from_roots(const std::vector<mp::Complex>& roots, const mp::Complex& leading);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mp::Complex>& coeffs() const { return c_; }
  const mp::Complex& operator[](size_t k) const { return c_[k]; }
  const mp::Complex& leading() const { return c_.back(); }
  mp::Prec prec() const;

  mp::Complex eval(const mp::Complex& z) const;
  /// Evaluates p, p' and p'' in one Horner sweep.
  void eval2(const mp::Complex& z, mp::Complex& p, mp::Complex& dp, mp::Complex& ddp) const;
  Poly derivative() const;

  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const mp::Complex& s);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);

  /// a - s*z*b with the exact cancellation of the leading term enforced when
  /// deg a = deg b + 1 (used by the Euclidean continued-fraction descent).
  static Poly fused_shift_sub(const Poly& a, const mp::Complex& s, const Poly& b);
  /// a - s*b with the leading-term cancellation enforced when deg a = deg b.
  static Poly fused_sub(const Poly& a, const mp::Complex& s, const Poly& b);

  /// max_k |c_k| as a crude scale.
  mp::Real coeff_scale() const;

 private:
  void trim();
  std::vector<mp::Complex> c_;
};

struct RootError : NumericalError {
  RootError(const std::string& msg, Poly p, std::vector<mp::Complex> best)
      : NumericalError(msg), poly(std::move(p)), best_iterates(std::move(best)) {}
  Poly poly;
  std::vector<mp::Complex> best_iterates;
};

/// All degree-many roots of p (degree >= 1 required). Companion-matrix
/// eigenvalues by a complex shifted-QR iteration, then every root polished by
/// Laguerre followed by Newton until the residual stagnates (3 iterations) or
/// drops below the precision floor. Trailing zero coefficients are deflated
/// exactly into roots at the origin first.
std::vector<mp::Complex> poly_roots(const Poly& p);

/// Dense LU solve with partial pivoting at working precision. A is row-major
/// n x n; throws NumericalError on a numerically singular pivot.
std::vector<mp::Complex> linear_solve(std::vector<std::vector<mp::Complex>> A,
                                      std::vector<mp::Complex> b);

}  // namespace zpml

#endif  // ZPML_POLY_HPP
