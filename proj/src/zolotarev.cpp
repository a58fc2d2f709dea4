// SPDX-License-Identifier: Apache-2.0

#include "zpml/zolotarev.hpp"

#include <cmath>

#include "zpml/elliptic.hpp"

namespace zpml::zolotarev {

using mp::Prec;
using mp::Real;

IntervalPair::IntervalPair(double a1_, double b1_, double a2_, double b2_)
    : a1(a1_), b1(b1_), a2(a2_), b2(b2_) {
  if (!(a1 < b1 && b1 < 0 && 0 < a2 && a2 < b2))
    throw ValidationError("interval pair must satisfy a1 < b1 < 0 < a2 < b2");
}

Real rate(const Real& delta) {
  const Prec pr = delta.prec();
  if (!(delta > 0.0) || !(delta < 1.0)) throw ValidationError("rate: delta must lie in (0,1)");
  Real sd = mp::sqrt(delta);
  Real mu = (1L - sd) / (1L + sd);
  mu = mu * mu;
  Real mup = mp::sqrt((1L - mu) * (1L + mu));
  Real kmu = elliptic::complete_K(mu);
  Real kmup = elliptic::complete_K(mup);
  return mp::exp(-(Real::pi(pr) * kmup) / (kmu * 4L));
}

ZolotarevFactor zolotarev_roots(const Real& c, const Real& d, int m) {
  if (!(c > 0.0) || !(c < d)) throw ValidationError("zolotarev_roots: need 0 < c < d");
  if (m < 1) throw ValidationError("zolotarev_roots: need m >= 1");
  const Prec pr = std::max(c.prec(), d.prec());
  ZolotarevFactor f;
  f.c = c;
  f.d = d;
  f.m = m;
  elliptic::Modulus mod = elliptic::Modulus::of(c / d);
  Real kp = elliptic::complete_K_from_complement(mod.delta);  // K(delta')
  f.roots.reserve(static_cast<size_t>(m));
  for (int j = 1; j <= m; ++j) {
    Real u = kp * static_cast<long>(2 * m - 2 * j + 1) / static_cast<long>(2 * m);
    Real sn(pr), dn(pr);
    elliptic::jacobi_sn_dn(u, mod.delta_prime, sn, dn);
    f.roots.push_back(d * dn);
  }
  f.rate = rate(mod.delta);
  Real rm = mp::exp(mp::log(f.rate) * static_cast<long>(m));
  f.lower_E = (rm * 2L) / (1L + rm * rm);
  f.upper_E = mp::min(rm * 2L, Real::of(1.0, pr));  // E_m < 1 always
  return f;
}

SplitPlan split_degrees(const IntervalPair& K, int m, Prec prec) {
  if (m < 2 || m % 2 != 0) throw ValidationError("split_degrees: m must be even and >= 2");
  SplitPlan plan;
  plan.m = m;
  Real d1 = mp::sqrt(Real::of(K.b1, prec) / Real::of(K.a1, prec));
  Real d2 = mp::sqrt(Real::of(K.a2, prec) / Real::of(K.b2, prec));
  plan.rho1 = rate(d1);
  plan.rho2 = rate(d2);
  Real l1 = mp::log(plan.rho1), l2 = mp::log(plan.rho2);
  Real x = Real::of(static_cast<long>(m), prec) * l2 / (l1 + l2);
  // nearest integer; the exact half-ties go to the larger m2
  Real m1r = mp::ceil(x - Real::of(0.5, prec));
  plan.m1 = static_cast<int>(m1r.to_double());
  plan.m2 = m - plan.m1;
  plan.theta = (m1r - x).to_double();
  plan.rho = mp::exp(l1 * l2 / (l1 + l2));
  theorem2_bounds(plan, m);
  return plan;
}

void theorem2_bounds(SplitPlan& plan, int m) {
  const Prec pr = plan.rho.prec();
  Real rm = mp::exp(mp::log(plan.rho) * static_cast<long>(m));
  plan.t2_lower = (rm * 2L) / (1L + rm);
  Real M = mp::max(1L / mp::sqrt(plan.rho1), 1L / mp::sqrt(plan.rho2));
  Real q = M * rm * 2L;
  plan.t2_condition_holds = q < 1.0;
  if (plan.t2_condition_holds) {
    plan.t2_upper = (M * rm * 4L) / (1L - q);
  } else {
    plan.t2_upper = Real(pr);  // NaN: bound not applicable
  }
}

}  // namespace zpml::zolotarev
