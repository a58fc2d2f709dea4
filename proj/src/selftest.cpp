// SPDX-License-Identifier: Apache-2.0

#include "zpml/selftest.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <vector>

#include "zpml/elliptic.hpp"
#include "zpml/interpolant.hpp"
#include "zpml/quadrature.hpp"
#include "zpml/sfraction.hpp"

namespace zpml::selftest {

using mp::Complex;
using mp::Real;

namespace {

constexpr mp::Prec kPrec = 256;

Real quadrature_K(double delta) {
  Real d = Real::of(delta, kPrec);
  Real d2 = d * d;
  auto f = [&](const Real& x, const Real& omx) {
    // 1 / sqrt((1-x^2)(1 - delta^2 x^2)); 1-x^2 = (1-x)(1+x)
    Real one_minus_x2 = omx * (1L + x);
    return 1L / mp::sqrt(one_minus_x2 * (1L - d2 * x * x));
  };
  return quad::integrate01(f, kPrec, mp::exp2i(-120, kPrec));
}

bool suite_elliptic(std::ostream& os) {
  const double tol = 1e-25;
  double worst = 0;
  for (double delta : {1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999}) {
    Real kd = elliptic::complete_K(Real::of(delta, kPrec));
    Real ref = quadrature_K(delta);
    worst = std::max(worst, mp::abs(kd - ref).to_double());
    // quarter- and half-period identities of dn
    Real kappa = Real::of(std::min(delta, 0.999), kPrec);
    Real K = elliptic::complete_K(kappa);
    Real sn(kPrec), dn(kPrec);
    elliptic::jacobi_sn_dn(K, kappa, sn, dn);
    Real kp = mp::sqrt((1L - kappa) * (1L + kappa));
    worst = std::max(worst, mp::abs(dn - kp).to_double());
    elliptic::jacobi_sn_dn(K / 2L, kappa, sn, dn);
    worst = std::max(worst, mp::abs(dn - mp::sqrt(kp)).to_double());
    // Pythagorean identity along a u sweep
    for (int i = 1; i <= 8; ++i) {
      elliptic::jacobi_sn_dn(K * static_cast<long>(i) / 9L, kappa, sn, dn);
      Real resid = kappa * kappa * sn * sn + dn * dn - 1L;
      worst = std::max(worst, mp::abs(resid).to_double());
    }
  }
  bool ok = worst < tol;
  os << "elliptic-oracle        " << (ok ? "PASS" : "FAIL") << "  worst=" << worst << "\n";
  return ok;
}

bool suite_roots(std::ostream& os, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0;
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Complex> roots;
    for (int i = 0; i < 20; ++i)
      roots.push_back(Complex::of(unit(rng), unit(rng), kPrec));
    Poly p = Poly::from_roots(roots, Complex::of(1.0, 0.0, kPrec));
    auto found = poly_roots(p);
    for (const auto& r : roots) {
      double best = HUGE_VAL;
      for (const auto& f : found) best = std::min(best, mp::abs(r - f).to_double());
      worst = std::max(worst, best);
    }
  }
  bool ok = worst < 1e-30;
  os << "root-round-trip        " << (ok ? "PASS" : "FAIL") << "  worst=" << worst << "\n";
  return ok;
}

bool suite_cf_and_bracket(std::ostream& os, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  zolotarev::IntervalPair K(-1e3, -1, 1, 1e4);
  bool bracket_ok = true;
  double worst_rt = 0;
  for (int m : {12, 18}) {
    auto R = interp::build_interpolant(K, m, interp::ImpedanceKind::continuous(), 512);
    auto steps = sfrac::to_sfraction(R);
    std::uniform_real_distribution<double> logneg(std::log(1.0), std::log(1e3));
    std::uniform_real_distribution<double> logpos(std::log(1.0), std::log(1e4));
    std::bernoulli_distribution side(0.5);
    for (int i = 0; i < 100; ++i) {
      double z = side(rng) ? std::exp(logpos(rng)) : -std::exp(logneg(rng));
      auto cf = sfrac::eval_cf_d(steps, {z, 0});
      auto pq = R.eval(Complex::of(z, 0, 512)).to_double();
      worst_rt = std::max(worst_rt, std::abs(cf - pq) / std::abs(pq));
    }
    double err = interp::relative_error(R);
    double lo = R.plan.t2_lower.to_double(), hi = R.plan.t2_upper.to_double();
    if (!(R.plan.t2_condition_holds && err >= lo && err <= hi)) bracket_ok = false;
  }
  const bool rt_ok = worst_rt < 1e-10;
  os << "cf-round-trip          " << (rt_ok ? "PASS" : "FAIL") << "  worst=" << worst_rt << "\n";
  os << "table1-bracketing      " << (bracket_ok ? "PASS" : "FAIL") << "\n";
  return rt_ok && bracket_ok;
}

}  // namespace

bool run(std::ostream& os, std::uint64_t seed) {
  bool ok = true;
  ok &= suite_elliptic(os);
  ok &= suite_roots(os, seed);
  ok &= suite_cf_and_bracket(os, seed);
  os << (ok ? "selftest: all suites passed" : "selftest: FAILURES detected") << "\n";
  return ok;
}

}  // namespace zpml::selftest
