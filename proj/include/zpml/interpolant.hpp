// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_INTERPOLANT_HPP
#define ZPML_INTERPOLANT_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zpml/poly.hpp"
#include "zpml/zolotarev.hpp"

namespace zpml::interp {

/// Which impedance function the interpolant targets: the half-line impedance
/// F(z) = z^{-1/2} (limiting-absorption branch, cut in the lower half-plane)
/// or the uniform-lattice impedance F_h(z) = (z + (hz/2)^2)^{-1/2}.
struct ImpedanceKind {
  enum class Variant { Continuous, Discrete } variant = Variant::Continuous;
  double h = 0;  // lattice step for Discrete

  static ImpedanceKind continuous() { return {}; }
  static ImpedanceKind discrete(double h);
  bool is_discrete() const { return variant == Variant::Discrete; }
  double sigma() const { return h * h / 4; }
};

/// F or F_h at a complex point, at working precision.
mp::Complex impedance_eval(const ImpedanceKind& kind, const mp::Complex& z);
/// Double-precision convenience used by the sampling kernels.
std::complex<double> impedance_eval_d(const ImpedanceKind& kind, std::complex<double> z);

/// Moebius change of variables w = z/(sigma z + 1) and its inverse
/// z = w/(1 - sigma w); maps a negative/positive interval union to another
/// such union whenever -1/sigma < a1.
mp::Complex mobius(const mp::Complex& z, const mp::Real& sigma);
mp::Complex mobius_inv(const mp::Complex& w, const mp::Real& sigma);
double mobius_d(double z, double sigma);

/// Single-interval request: a degenerate two-interval problem with m1 = 0
/// (positive interval) or m2 = 0 (negative interval).
struct SingleInterval {
  double lo, hi;   // 0 < lo < hi for positive; lo < hi < 0 for negative
  bool negative = false;
};

/// Near-optimal rational interpolant R_n = P_{n-1}/Q_n of the impedance on K,
/// built from the roots of H_m (product of the two Zolotarev factors) by the
/// even/odd coefficient split. Everything is stored at build precision.
struct RationalInterpolant {
  Poly P, Q;                        // ascending coefficients, deg P <= n-1, deg Q = n
  std::vector<mp::Real> nodes;      // 2n interpolation nodes inside K
  std::vector<mp::Complex> poles;   // the n roots of Q
  std::vector<mp::Complex> residues;
  std::optional<zolotarev::IntervalPair> K;  // absent for single-interval builds
  std::optional<SingleInterval> single;
  ImpedanceKind kind;
  zolotarev::SplitPlan plan;
  mp::Prec precision = 0;

  int n() const { return static_cast<int>(poles.size()); }
  /// R(z) = P(z)/Q(z) at working precision.
  mp::Complex eval(const mp::Complex& z) const;
  /// Partial-fraction evaluation in double precision.
  std::complex<double> eval_pf_d(std::complex<double> z) const;
  std::vector<std::complex<double>> poles_d() const;
  std::vector<std::complex<double>> residues_d() const;
  /// JSON document with coefficients/nodes/poles/residues as full-precision
  /// decimal re/im string pairs.
  std::string to_json() const;
};

/// Builds the interpolant on the two-interval set K. For the Discrete kind, K
/// is first pushed through the Moebius map, the construction runs on the
/// image, and nodes/poles/residues/polynomials are pulled back. Optional
/// explicit (m1, m2) overrides the balancing rule.
RationalInterpolant build_interpolant(const zolotarev::IntervalPair& K, int m, ImpedanceKind kind,
                                      mp::Prec precision,
                                      std::optional<std::pair<int, int>> m_split = std::nullopt);

/// Degenerate single-interval build (m1 = 0 or m2 = 0).
RationalInterpolant build_interpolant(const SingleInterval& interval, int m, ImpedanceKind kind,
                                      mp::Prec precision);

/// Cross-check path: the same interpolant obtained by solving the 2n x 2n
/// interpolation linear system (q_n = 1 normalization) in high precision.
RationalInterpolant build_interpolant_linsys(const zolotarev::IntervalPair& K, int m,
                                             ImpedanceKind kind, mp::Prec precision);

/// max over log-spaced samples on K of |R(z)/F(z) - 1|, evaluated in double
/// precision (partial fractions) after the high-precision construction.
double relative_error(const RationalInterpolant& R, int samples_per_interval = 10000);

}  // namespace zpml::interp

#endif  // ZPML_INTERPOLANT_HPP
