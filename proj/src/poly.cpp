// SPDX-License-Identifier: Apache-2.0

#include "zpml/poly.hpp"

#include <algorithm>
#include <cmath>

namespace zpml {

using mp::Complex;
using mp::Prec;
using mp::Real;

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

mp::Prec Poly::prec() const {
  Prec p = mp::kMinPrec;
  for (const auto& c : c_) p = std::max(p, c.prec());
  return p;
}

Poly Poly::from_roots(const std::vector<Complex>& roots, const Complex& leading) {
  std::vector<Complex> c{leading};
  for (const auto& r : roots) {
    c.emplace_back(Complex(leading.prec()));
    for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -(r * c[0]);
  }
  return Poly(std::move(c));
}

Complex Poly::eval(const Complex& z) const {
  if (c_.empty()) return Complex(z.prec());
  Complex acc = c_.back();
  for (size_t k = c_.size() - 1; k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

void Poly::eval2(const Complex& z, Complex& p, Complex& dp, Complex& ddp) const {
  const Prec pr = std::max(prec(), z.prec());
  p = Complex(pr);
  dp = Complex(pr);
  ddp = Complex(pr);
  for (size_t k = c_.size(); k-- > 0;) {
    ddp = ddp * z + dp;
    dp = dp * z + p;
    p = p * z + c_[k];
  }
  ddp = ddp * Complex::of(2.0, 0.0, pr);
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Complex> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Real::of(static_cast<long>(k), c_[k].prec());
  return Poly(std::move(d));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const Prec pr = std::max(a.prec(), b.prec());
  std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex(pr));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Complex& s) {
  std::vector<Complex> c = a.c_;
  for (auto& ck : c) ck = ck * s;
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  const Prec pr = std::max(a.prec(), b.prec());
  std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(pr));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  const Prec pr = std::max(a.prec(), b.prec());
  std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(pr));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return Poly(std::move(c));
}

Poly Poly::fused_shift_sub(const Poly& a, const Complex& s, const Poly& b) {
  const Prec pr = std::max(a.prec(), b.prec());
  std::vector<Complex> c(a.c_.size(), Complex(pr));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k + 1] -= s * b.c_[k];
  // the top coefficients cancel by construction of s; drop the roundoff dust
  if (a.c_.size() == b.c_.size() + 1) c.pop_back();
  return Poly(std::move(c));
}

Poly Poly::fused_sub(const Poly& a, const Complex& s, const Poly& b) {
  const Prec pr = std::max(a.prec(), b.prec());
  std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(pr));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] -= s * b.c_[k];
  if (a.c_.size() == b.c_.size() && !c.empty()) c.pop_back();
  return Poly(std::move(c));
}

mp::Real Poly::coeff_scale() const {
  Real s = Real::of(0.0, prec());
  for (const auto& c : c_) s = mp::max(s, mp::abs(c));
  return s;
}

namespace {

struct Givens {
  Real c;      // real, >= 0
  Complex s;   // rows: [c s; -conj(s) c]
};

Givens make_givens(const Complex& f, const Complex& g, Complex& r_out) {
  const Prec pr = std::max(f.prec(), g.prec());
  Real af = mp::abs(f), ag = mp::abs(g);
  if (ag.is_zero()) {
    r_out = f;
    return {Real::of(1.0, pr), Complex(pr)};
  }
  if (af.is_zero()) {
    r_out = Complex::of(ag);
    return {Real::of(0.0, pr), mp::conj(g) / ag};
  }
  Real d = mp::hypot(af, ag);
  Complex u = f / af;  // unit phase of f
  r_out = u * d;
  return {af / d, (u * mp::conj(g)) / d};
}

// Parlett-Reinsch balancing with powers of two (double-precision magnitudes
// are adequate for the coefficient ranges this library sees).
void balance(std::vector<std::vector<Complex>>& H) {
  const size_t n = H.size();
  bool again = true;
  int sweeps = 0;
  while (again && sweeps++ < 30) {
    again = false;
    for (size_t i = 0; i < n; ++i) {
      double cn = 0, rn = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        cn += mp::abs(H[j][i]).to_double();
        rn += mp::abs(H[i][j]).to_double();
      }
      if (cn == 0 || rn == 0 || !std::isfinite(cn) || !std::isfinite(rn)) continue;
      double f = 1, s = cn + rn;
      while (cn < rn / 2) {
        cn *= 4;
        f *= 2;
      }
      while (cn > rn * 2) {
        cn /= 4;
        f /= 2;
      }
      if (f != 1 && (cn + rn) < 0.95 * s) {
        again = true;
        Real fr = Real::of(f, H[i][i].prec());
        for (size_t j = 0; j < n; ++j) {
          H[i][j] = H[i][j] / fr;
          H[j][i] = H[j][i] * fr;
        }
      }
    }
  }
}

std::vector<Complex> hessenberg_qr_eigenvalues(std::vector<std::vector<Complex>> H, Prec pr,
                                               const Poly& origin) {
  const int n = static_cast<int>(H.size());
  const Real eps = mp::exp2i(-static_cast<long>(pr) + 6, pr);
  std::vector<Complex> eig(static_cast<size_t>(n), Complex(pr));
  int hi = n - 1;
  int iter = 0, total = 0;
  const int max_total = 80 * n + 200;
  auto subdiag_small = [&](int k) {
    return mp::abs(H[k][k - 1]) <= eps * (mp::abs(H[k - 1][k - 1]) + mp::abs(H[k][k]));
  };
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = H[0][0];
      break;
    }
    if (subdiag_small(hi)) {
      eig[hi] = H[hi][hi];
      --hi;
      iter = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && !subdiag_small(lo)) --lo;
    if (++total > max_total)
      throw RootError("companion QR iteration failed to converge", origin, eig);
    // Wilkinson shift from the trailing 2x2, nudged on stagnation
    Complex a = H[hi - 1][hi - 1], b = H[hi - 1][hi], c = H[hi][hi - 1], d = H[hi][hi];
    Complex sigma;
    if (++iter % 14 == 0) {
      sigma = d + Complex::of(mp::abs(c) + mp::abs(b));
    } else {
      Complex t = (a - d) * Real::of(0.5, pr);
      Complex disc = mp::sqrt(t * t + b * c);
      Complex l1 = d + t + disc, l2 = d + t - disc;
      sigma = (mp::abs(l1 - d) <= mp::abs(l2 - d)) ? l1 : l2;
    }
    for (int k = lo; k <= hi; ++k) H[k][k] -= sigma;
    std::vector<Givens> rots(static_cast<size_t>(hi - lo));
    for (int k = lo; k < hi; ++k) {
      Complex r(pr);
      Givens g = make_givens(H[k][k], H[k + 1][k], r);
      rots[static_cast<size_t>(k - lo)] = g;
      H[k][k] = r;
      H[k + 1][k] = Complex(pr);
      for (int j = k + 1; j <= hi; ++j) {
        Complex x = H[k][j], y = H[k + 1][j];
        H[k][j] = x * g.c + g.s * y;
        H[k + 1][j] = y * g.c - mp::conj(g.s) * x;
      }
    }
    for (int k = lo; k < hi; ++k) {
      const Givens& g = rots[static_cast<size_t>(k - lo)];
      for (int i = lo; i <= std::min(hi, k + 1); ++i) {
        Complex x = H[i][k], y = H[i][k + 1];
        H[i][k] = x * g.c + mp::conj(g.s) * y;
        H[i][k + 1] = y * g.c - g.s * x;
      }
    }
    for (int k = lo; k <= hi; ++k) H[k][k] += sigma;
  }
  return eig;
}

// Laguerre step sequence with the NR-style running residual floor; stops when
// the residual stagnates over 3 iterations or hits the floor.
Complex polish_root(const Poly& p, Complex x) {
  const Prec pr = std::max(p.prec(), x.prec());
  const Real eps = mp::exp2i(-static_cast<long>(pr) + 4, pr);
  const long deg = p.degree();
  const Real degr = Real::of(deg, pr);
  Complex best = x;
  Real best_res = Real::of(HUGE_VAL, pr);
  int stag = 0;
  auto horner_floor = [&](const Complex& z, Complex& pv) {
    Real ax = mp::abs(z);
    Real err = mp::abs(p.coeffs().back());
    pv = p.coeffs().back();
    for (size_t k = p.coeffs().size() - 1; k-- > 0;) {
      pv = pv * z + p.coeffs()[k];
      err = err * ax + mp::abs(pv);
    }
    return err * eps;
  };
  for (int phase = 0; phase < 2; ++phase) {  // 0: Laguerre, 1: Newton
    for (int it = 0; it < 60; ++it) {
      Complex pv, dp, ddp;
      p.eval2(x, pv, dp, ddp);
      Complex dummy;
      Real floor = horner_floor(x, dummy);
      Real res = mp::abs(pv);
      if (res < best_res) {
        best_res = res;
        best = x;
        stag = 0;
      } else if (++stag >= 3) {
        stag = 0;
        break;
      }
      if (res <= floor) return x;
      Complex dx(pr);
      if (phase == 0) {
        Complex g = dp / pv;
        Complex g2 = g * g;
        Complex h = g2 - ddp / pv;
        Complex sq = mp::sqrt((h * degr - g2) * Real::of(deg - 1, pr));
        Complex dp1 = g + sq, dm = g - sq;
        Complex den = (mp::abs(dp1) >= mp::abs(dm)) ? dp1 : dm;
        if (mp::abs(den).is_zero()) break;
        dx = Complex::of(degr) / den;
      } else {
        if (mp::abs(dp).is_zero()) break;
        dx = pv / dp;
      }
      x = x - dx;
    }
    x = best;
  }
  return best;
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& p) {
  if (p.degree() < 1) throw ValidationError("poly_roots requires degree >= 1");
  const Prec pr = p.prec();
  std::vector<Complex> coeffs = p.coeffs();
  std::vector<Complex> roots;
  // exact deflation of roots at the origin
  size_t nz = 0;
  while (nz < coeffs.size() - 1 && coeffs[nz].is_zero()) ++nz;
  for (size_t k = 0; k < nz; ++k) roots.emplace_back(Complex(pr));
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(nz));
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n >= 1) {
    std::vector<Complex> monic(coeffs.begin(), coeffs.end() - 1);
    for (auto& c : monic) c = c / coeffs.back();
    std::vector<std::vector<Complex>> H(static_cast<size_t>(n),
                                        std::vector<Complex>(static_cast<size_t>(n), Complex(pr)));
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) H[static_cast<size_t>(i) + 1][static_cast<size_t>(i)] = Complex::of(1.0, 0.0, pr);
      H[static_cast<size_t>(i)][static_cast<size_t>(n) - 1] = -monic[static_cast<size_t>(i)];
    }
    balance(H);
    Poly reduced{std::vector<Complex>(coeffs)};
    std::vector<Complex> eig = hessenberg_qr_eigenvalues(std::move(H), pr, reduced);
    for (auto& e : eig) roots.push_back(polish_root(reduced, e));
  }
  return roots;
}

std::vector<Complex> linear_solve(std::vector<std::vector<Complex>> A, std::vector<Complex> b) {
  const size_t n = A.size();
  if (n == 0 || b.size() != n) throw ValidationError("linear_solve: dimension mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw ValidationError("linear_solve: matrix not square");
  Prec pr = mp::kMinPrec;
  for (const auto& row : A)
    for (const auto& v : row) pr = std::max(pr, v.prec());
  Real scale = Real::of(0.0, pr);
  for (const auto& row : A)
    for (const auto& v : row) scale = mp::max(scale, mp::abs(v));
  const Real tol = scale * mp::exp2i(-static_cast<long>(pr) + 8, pr);
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    Real pm = mp::abs(A[k][k]);
    for (size_t i = k + 1; i < n; ++i) {
      Real m = mp::abs(A[i][k]);
      if (m > pm) {
        pm = m;
        piv = i;
      }
    }
    if (pm <= tol)
      throw NumericalError("linear_solve: numerically singular pivot at column " + std::to_string(k));
    if (piv != k) {
      std::swap(A[piv], A[k]);
      std::swap(b[piv], b[k]);
    }
    for (size_t i = k + 1; i < n; ++i) {
      Complex f = A[i][k] / A[k][k];
      if (f.is_zero()) continue;
      for (size_t j = k + 1; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Complex> x(n, Complex(pr));
  for (size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace zpml
