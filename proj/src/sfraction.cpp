// SPDX-License-Identifier: Apache-2.0

#include "zpml/sfraction.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace zpml::sfrac {

using mp::Complex;
using mp::Prec;
using mp::Real;

std::vector<std::complex<double>> GridSteps::hhat_d() const {
  std::vector<std::complex<double>> v(hhat.size());
  for (size_t i = 0; i < hhat.size(); ++i) v[i] = hhat[i].to_double();
  return v;
}
std::vector<std::complex<double>> GridSteps::hstep_d() const {
  std::vector<std::complex<double>> v(hstep.size());
  for (size_t i = 0; i < hstep.size(); ++i) v[i] = hstep[i].to_double();
  return v;
}

namespace {

Complex bilinear(const std::vector<Complex>& a, const std::vector<Complex>& b, Prec pr) {
  Complex s(pr);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

GridSteps steps_from_jacobi(const std::vector<Complex>& alpha, const std::vector<Complex>& beta,
                            const Complex& h0, Prec pr) {
  const int n = static_cast<int>(alpha.size());
  GridSteps g;
  g.n = n;
  g.hhat.assign(static_cast<size_t>(n), Complex(pr));
  g.hstep.assign(static_cast<size_t>(n), Complex(pr));
  const Complex one = Complex::of(1.0, 0.0, pr);
  g.hhat[0] = h0;
  g.hstep[0] = -(one / (alpha[0] * h0));
  for (int k = 1; k < n; ++k) {
    const Complex& b = beta[static_cast<size_t>(k - 1)];
    g.hhat[static_cast<size_t>(k)] =
        one / (b * b * g.hstep[static_cast<size_t>(k - 1)] * g.hstep[static_cast<size_t>(k - 1)] *
               g.hhat[static_cast<size_t>(k - 1)]);
    g.hstep[static_cast<size_t>(k)] =
        -(one / (alpha[static_cast<size_t>(k)] * g.hhat[static_cast<size_t>(k)] +
                 one / g.hstep[static_cast<size_t>(k - 1)]));
  }
  return g;
}

GridSteps lanczos_steps(const std::vector<Complex>& poles, const std::vector<Complex>& residues,
                        Prec pr) {
  const int n = static_cast<int>(poles.size());
  const Real breakdown_tol = mp::exp2i(-static_cast<long>(pr) / 2, pr);
  Complex sum(pr);
  for (const auto& r : residues) sum += r;
  if (mp::abs(sum).is_zero()) throw BreakdownError("sum of residues vanishes", -1);
  Complex h0 = Complex::of(1.0, 0.0, pr) / sum;

  std::vector<Complex> v(static_cast<size_t>(n), Complex(pr));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = mp::sqrt(h0 * residues[static_cast<size_t>(i)]);

  std::vector<std::vector<Complex>> q;
  std::vector<Complex> alpha, beta;
  for (int k = 0; k < n; ++k) {
    q.push_back(v);
    std::vector<Complex> av(static_cast<size_t>(n), Complex(pr));
    for (int i = 0; i < n; ++i) av[static_cast<size_t>(i)] = poles[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    Complex a = bilinear(q.back(), av, pr);
    alpha.push_back(a);
    std::vector<Complex> w = av;
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] -= a * v[static_cast<size_t>(i)];
    if (k > 0)
      for (int i = 0; i < n; ++i)
        w[static_cast<size_t>(i)] -= beta[static_cast<size_t>(k - 1)] * q[static_cast<size_t>(k - 1)][static_cast<size_t>(i)];
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j <= k; ++j) {
        Complex proj = bilinear(w, q[static_cast<size_t>(j)], pr);
        for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] -= proj * q[static_cast<size_t>(j)][static_cast<size_t>(i)];
      }
    if (k < n - 1) {
      Complex t = bilinear(w, w, pr);
      Real scale(pr);
      {
        Real s = Real::of(0.0, pr);
        for (const auto& wi : w) {
          Real m = mp::abs(wi);
          s += m * m;
        }
        scale = s;
      }
      if (mp::abs(t) < breakdown_tol * scale || scale.is_zero())
        throw BreakdownError("quasi-inner product underflow in Lanczos at step " + std::to_string(k), k);
      Complex b = mp::sqrt(t);
      beta.push_back(b);
      for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] / b;
    }
  }
  return steps_from_jacobi(alpha, beta, h0, pr);
}

}  // namespace

GridSteps to_sfraction_lanczos(const interp::RationalInterpolant& R) {
  const Prec pr = R.precision;
  try {
    return lanczos_steps(R.poles, R.residues, pr);
  } catch (const BreakdownError&) {
    // one retry with deterministically perturbed residues
    const Real eps = mp::exp2i(-static_cast<long>(pr) + 8, pr);
    std::vector<Complex> pert = R.residues;
    for (size_t j = 0; j < pert.size(); ++j) {
      Real f = Real::of(1.0, pr) + eps * static_cast<long>(j % 3 + 1);
      pert[j] = pert[j] * Complex::of(f);
    }
    return lanczos_steps(R.poles, pert, pr);
  }
}

GridSteps to_sfraction_euclid(const interp::RationalInterpolant& R) {
  const Prec pr = R.precision;
  const int n = R.Q.degree();
  if (R.P.degree() != n - 1)
    throw BreakdownError("euclid: deg P must be exactly n-1 for the 2n-step descent", 0);
  GridSteps g;
  g.n = n;
  g.hhat.reserve(static_cast<size_t>(n));
  g.hstep.reserve(static_cast<size_t>(n));
  Poly N = R.Q, D = R.P;
  const Real tol = mp::exp2i(-static_cast<long>(pr) + 16, pr);
  auto lead_ok = [&](const Poly& p) {
    return !p.is_zero() && mp::abs(p.leading()) > tol * p.coeff_scale();
  };
  for (int level = 0; level < n; ++level) {
    if (N.degree() != D.degree() + 1 || !lead_ok(D))
      throw BreakdownError("euclid: degree drop (breakdown) at level " + std::to_string(level), level);
    Complex hh = N.leading() / D.leading();
    Poly N1 = Poly::fused_shift_sub(N, hh, D);
    if (N1.degree() != D.degree() || !lead_ok(N1))
      throw BreakdownError("euclid: degree drop (breakdown) at level " + std::to_string(level), level);
    Complex hs = D.leading() / N1.leading();
    Poly D1 = Poly::fused_sub(D, hs, N1);
    g.hhat.push_back(hh);
    g.hstep.push_back(hs);
    N = std::move(N1);
    D = std::move(D1);
  }
  return g;
}

GridSteps to_sfraction(const interp::RationalInterpolant& R, double consistency_tol) {
  GridSteps lan = to_sfraction_lanczos(R);
  GridSteps euc;
  try {
    euc = to_sfraction_euclid(R);
  } catch (const BreakdownError& e) {
    throw NumericalError(std::string("step conversion consistency check unavailable: ") + e.what());
  }
  for (int k = 0; k < lan.n; ++k) {
    auto rel = [](std::complex<double> a, std::complex<double> b) {
      double s = std::max(std::abs(a), std::abs(b));
      return s == 0 ? 0.0 : std::abs(a - b) / s;
    };
    if (rel(lan.hhat[static_cast<size_t>(k)].to_double(), euc.hhat[static_cast<size_t>(k)].to_double()) > consistency_tol ||
        rel(lan.hstep[static_cast<size_t>(k)].to_double(), euc.hstep[static_cast<size_t>(k)].to_double()) > consistency_tol)
      throw NumericalError("Lanczos and Euclidean step sequences disagree at index " + std::to_string(k));
  }
  for (int k = 0; k < lan.n; ++k) {
    auto finite_nonzero = [](const Complex& c) {
      double a = mp::abs(c).to_double();
      return std::isfinite(a) && a > 0;
    };
    if (!finite_nonzero(lan.hhat[static_cast<size_t>(k)]) || !finite_nonzero(lan.hstep[static_cast<size_t>(k)]))
      throw NumericalError("grid step " + std::to_string(k) + " is zero or non-finite");
  }
  return lan;
}

namespace {
template <class C>
C eval_cf_impl(const std::vector<C>& hhat, const std::vector<C>& hstep, const C& z, const C& one) {
  const size_t n = hhat.size();
  C t = hhat[n - 1] * z + one / hstep[n - 1];
  for (size_t j = n - 1; j >= 1; --j) {
    t = hstep[j - 1] + one / t;
    t = hhat[j - 1] * z + one / t;
  }
  return one / t;
}
}  // namespace

Complex eval_cf(const GridSteps& steps, const Complex& z) {
  const Prec pr = std::max<Prec>(z.prec(), steps.hhat.empty() ? mp::kMinPrec : steps.hhat[0].prec());
  Complex one = Complex::of(1.0, 0.0, pr);
  Complex r = eval_cf_impl(steps.hhat, steps.hstep, z, one);
  if (!std::isfinite(mp::abs(r).to_double()))
    throw NumericalError("eval_cf: pole hit along the descent");
  return r;
}

std::complex<double> eval_cf_d(const std::vector<std::complex<double>>& hhat,
                               const std::vector<std::complex<double>>& hstep,
                               std::complex<double> z) {
  std::complex<double> r = eval_cf_impl(hhat, hstep, z, std::complex<double>(1, 0));
  if (!std::isfinite(std::abs(r))) throw NumericalError("eval_cf: pole hit along the descent");
  return r;
}

std::complex<double> eval_cf_d(const GridSteps& steps, std::complex<double> z) {
  return eval_cf_d(steps.hhat_d(), steps.hstep_d(), z);
}

void write_steps_csv(std::ostream& os, const GridSteps& steps) {
  os << "index,hhat_re,hhat_im,h_re,h_im\n";
  char buf[128];
  for (int k = 0; k < steps.n; ++k) {
    auto hh = steps.hhat[static_cast<size_t>(k)].to_double();
    auto hs = steps.hstep[static_cast<size_t>(k)].to_double();
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", k, hh.real(), hh.imag(),
                  hs.real(), hs.imag());
    os << buf;
  }
}

std::string steps_to_json(const GridSteps& steps) {
  nlohmann::json j;
  j["n"] = steps.n;
  for (int k = 0; k < steps.n; ++k) {
    auto hh = steps.hhat[static_cast<size_t>(k)].to_double();
    auto hs = steps.hstep[static_cast<size_t>(k)].to_double();
    j["hhat"].push_back({hh.real(), hh.imag()});
    j["h"].push_back({hs.real(), hs.imag()});
  }
  return j.dump(2);
}

}  // namespace zpml::sfrac
