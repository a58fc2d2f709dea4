// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_ZOLOTAREV_HPP
#define ZPML_ZOLOTAREV_HPP

#include <vector>

#include "zpml/mp.hpp"

namespace zpml::zolotarev {

/// Target set K = [a1,b1] U [a2,b2] with a1 < b1 < 0 < a2 < b2.
struct IntervalPair {
  double a1, b1, a2, b2;

  IntervalPair(double a1_, double b1_, double a2_, double b2_);
  bool symmetric() const { return a1 == -b2 && b1 == -a2; }
};

/// Solution of the single-interval Zolotarev problem on [c,d]: the roots of
/// the optimal monic degree-m polynomial, plus the bracketing bounds for the
/// attained minimax value E_m and the asymptotic rate rho^(delta).
struct ZolotarevFactor {
  mp::Real c, d;
  int m = 0;
  std::vector<mp::Real> roots;  // ascending, strictly inside (c,d)
  mp::Real rate;                // rho^(c/d)
  mp::Real lower_E, upper_E;    // bracket for E_m (upper capped at 1; E_m < 1 always)
};

/// Degree balancing between the two intervals plus the Theorem-2 data.
struct SplitPlan {
  int m = 0, m1 = 0, m2 = 0;
  double theta = 0;            // rounding offset, |theta| <= 1/2
  mp::Real rho1, rho2, rho;    // per-interval and combined rates
  mp::Real t2_lower, t2_upper; // Theorem-2 bracket for the relative error
  bool t2_condition_holds = false;  // 2 max(rho1^-1/2, rho2^-1/2) rho^m < 1
};

/// Cauchy-Hadamard rate rho^(delta) = exp(-pi K(mu')/(4 K(mu))) with
/// mu = ((1-sqrt(delta))/(1+sqrt(delta)))^2. Strictly decreasing in delta:
/// wider intervals (smaller ratio) converge slower.
mp::Real rate(const mp::Real& delta);

/// Roots s_j = d*dn((2m-2j+1) K(delta')/(2m), delta'), delta = c/d, together
/// with the E_m bracket 2 rho^m/(1+rho^{2m}) <= E_m <= 2 rho^m.
ZolotarevFactor zolotarev_roots(const mp::Real& c, const mp::Real& d, int m);

/// Balances m = m1 + m2 so both interval errors match: m1 is the nearest
/// integer to m log(rho2)/(log(rho1)+log(rho2)), ties broken toward larger m2.
SplitPlan split_degrees(const IntervalPair& K, int m, mp::Prec prec);

/// Theorem-2 numbers for a given plan: lower = 2 rho^m/(1+rho^m) and, when
/// the condition 2 M rho^m < 1 holds (M = max(rho1^-1/2, rho2^-1/2)),
/// upper = 4 M rho^m / (1 - 2 M rho^m); upper is NaN otherwise.
void theorem2_bounds(SplitPlan& plan, int m);

/// Default working precision: max(256, 16 m) bits.
inline mp::Prec default_precision(int m) { return std::max<mp::Prec>(256, 16 * static_cast<mp::Prec>(m)); }

}  // namespace zpml::zolotarev

#endif  // ZPML_ZOLOTAREV_HPP
