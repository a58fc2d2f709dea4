// SPDX-License-Identifier: Apache-2.0

#include "zpml/elliptic.hpp"

#include <vector>

namespace zpml::elliptic {

using mp::Prec;
using mp::Real;

namespace testhook {
std::atomic<bool> corrupt{false};
}

Modulus Modulus::of(const Real& delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw ValidationError("modulus delta must lie in (0,1)");
  Real dp = mp::sqrt((1L - delta) * (1L + delta));
  return {delta, dp};
}

Real complete_K_from_complement(const Real& delta_prime) {
  const Prec pr = delta_prime.prec();
  if (delta_prime.sign() <= 0) throw ValidationError("complete_K: delta must be < 1");
  Real a = Real::of(1.0, pr);
  Real b = delta_prime;
  const Real tol = mp::exp2i(-static_cast<long>(pr) + 2, pr);
  for (int it = 0; it < 8 * 64 && mp::abs(a - b) > tol * a; ++it) {
    Real am = (a + b) / 2L;
    b = mp::sqrt(a * b);
    a = am;
  }
  Real k = Real::pi(pr) / (a * 2L);
  if (testhook::corrupt.load(std::memory_order_relaxed))
    k = k * (Real::of(1.0, pr) + mp::exp2i(-60, pr));
  return k;
}

Real complete_K(const Real& delta) {
  const Prec pr = delta.prec();
  if (delta.sign() < 0 || delta >= 1.0) throw ValidationError("complete_K: delta must lie in [0,1)");
  if (delta.is_zero()) {
    Real k = Real::pi(pr) / 2L;
    if (testhook::corrupt.load(std::memory_order_relaxed))
      k = k * (Real::of(1.0, pr) + mp::exp2i(-60, pr));
    return k;
  }
  return complete_K_from_complement(mp::sqrt((1L - delta) * (1L + delta)));
}

void jacobi_sn_dn(const Real& u, const Real& kappa, Real& sn, Real& dn) {
  const Prec pr = std::max(u.prec(), kappa.prec());
  if (kappa.sign() < 0 || kappa >= 1.0) throw ValidationError("jacobi_sn_dn: kappa must lie in [0,1)");
  const Real one = Real::of(1.0, pr);
  const Real tol = mp::exp2i(-static_cast<long>(pr) + 3, pr);
  if (kappa.is_zero()) {
    sn = mp::sin(u);
    dn = one;
    return;
  }
  // descending AGM chain a_i, b_i, c_i
  std::vector<Real> av{one}, cv{kappa};
  Real a = one, b = mp::sqrt((1L - kappa) * (1L + kappa));
  while (mp::abs(cv.back()) > tol * a) {
    Real am = (a + b) / 2L;
    Real c = (a - b) / 2L;
    b = mp::sqrt(a * b);
    a = am;
    av.push_back(a);
    cv.push_back(c);
    if (av.size() > 200) throw NumericalError("jacobi_sn_dn: Landen chain failed to contract");
  }
  const size_t N = av.size() - 1;
  // phi_N = 2^N a_N u, then descend with the arcsine recurrence
  Real phi = av[N] * u * mp::exp2i(static_cast<long>(N), pr);
  for (size_t i = N; i >= 1; --i) {
    Real t = (cv[i] / av[i]) * mp::sin(phi);
    t = mp::min(mp::max(t, -one), one);
    phi = (phi + mp::asin(t)) / 2L;
  }
  sn = mp::sin(phi);
  Real s2 = sn * sn;
  dn = mp::sqrt(one - kappa * kappa * s2);
}

}  // namespace zpml::elliptic
