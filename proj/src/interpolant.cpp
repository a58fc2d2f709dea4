// SPDX-License-Identifier: Apache-2.0

#include "zpml/interpolant.hpp"

#include <algorithm>
#include <cmath>

#include "zpml/elliptic.hpp"
#include "zpml/kernels.hpp"
#include "json.hpp"

namespace zpml::interp {

using mp::Complex;
using mp::Prec;
using mp::Real;
using zolotarev::IntervalPair;
using zolotarev::SplitPlan;
using zolotarev::ZolotarevFactor;

ImpedanceKind ImpedanceKind::discrete(double h) {
  if (!(h > 0)) throw ValidationError("discrete impedance requires h > 0");
  ImpedanceKind k;
  k.variant = Variant::Discrete;
  k.h = h;
  return k;
}

namespace {

// argument with the branch cut rotated into the lower half-plane:
// theta in (-pi/2, 3pi/2]
Real arg_upper(const Complex& z) {
  const Prec pr = z.prec();
  Real th = mp::atan2(z.im, z.re);
  Real half_pi = Real::pi(pr) / 2L;
  if (th < -half_pi) th += Real::pi(pr) * 2L;
  return th;
}

// F(z) = z^{-1/2} continued from R+ per the limiting absorption principle
Complex inv_sqrt_upper(const Complex& z) {
  const Prec pr = z.prec();
  if (z.is_zero()) throw ValidationError("impedance: z = 0 is the branch point");
  Real th = arg_upper(z) / -2L;
  Real rm = 1L / mp::sqrt(mp::abs(z));
  return {rm * mp::cos(th), rm * mp::sin(th)};
}

}  // namespace

Complex impedance_eval(const ImpedanceKind& kind, const Complex& z) {
  if (!kind.is_discrete()) return inv_sqrt_upper(z);
  const Prec pr = z.prec();
  Real sigma = Real::of(kind.sigma(), pr);
  Complex den = Complex::of(sigma) * z + Complex::of(1.0, 0.0, pr);
  if (mp::abs(den).is_zero()) throw ValidationError("discrete impedance: sigma z + 1 = 0");
  Complex w = z / den;
  return inv_sqrt_upper(w) / den;
}

std::complex<double> impedance_eval_d(const ImpedanceKind& kind, std::complex<double> z) {
  auto inv_sqrt = [](std::complex<double> v) {
    double th = std::atan2(v.imag(), v.real());
    if (th < -M_PI / 2) th += 2 * M_PI;
    return std::polar(1.0 / std::sqrt(std::abs(v)), -th / 2);
  };
  if (!kind.is_discrete()) return inv_sqrt(z);
  std::complex<double> den = kind.sigma() * z + 1.0;
  return inv_sqrt(z / den) / den;
}

Complex mobius(const Complex& z, const Real& sigma) {
  const Prec pr = std::max(z.prec(), sigma.prec());
  Complex den = Complex::of(sigma) * z + Complex::of(1.0, 0.0, pr);
  if (mp::abs(den).is_zero()) throw ValidationError("mobius: z at the pole of the map");
  return z / den;
}

Complex mobius_inv(const Complex& w, const Real& sigma) {
  const Prec pr = std::max(w.prec(), sigma.prec());
  Complex den = Complex::of(1.0, 0.0, pr) - Complex::of(sigma) * w;
  if (mp::abs(den).is_zero()) throw ValidationError("mobius_inv: w at the pole of the inverse map");
  return w / den;
}

double mobius_d(double z, double sigma) { return z / (sigma * z + 1); }

Complex RationalInterpolant::eval(const Complex& z) const { return P.eval(z) / Q.eval(z); }

std::vector<std::complex<double>> RationalInterpolant::poles_d() const {
  std::vector<std::complex<double>> v(poles.size());
  for (size_t i = 0; i < poles.size(); ++i) v[i] = poles[i].to_double();
  return v;
}

std::vector<std::complex<double>> RationalInterpolant::residues_d() const {
  std::vector<std::complex<double>> v(residues.size());
  for (size_t i = 0; i < residues.size(); ++i) v[i] = residues[i].to_double();
  return v;
}

std::complex<double> RationalInterpolant::eval_pf_d(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (size_t j = 0; j < poles.size(); ++j)
    acc += residues[j].to_double() / (z - poles[j].to_double());
  return acc;
}

namespace {

struct FactorRoots {
  std::vector<Real> neg;  // s_j of the negative-interval factor (real, in s-space)
  std::vector<Real> pos;  // s_j of the positive-interval factor
};

// Assembles H_m(s) = prod (s - i s1_j) * prod (s - s2_j) and splits parity:
// H_m(s) = -s P(s^2) + Q(s^2).
void split_parity(const FactorRoots& fr, Prec pr, Poly& P, Poly& Q) {
  std::vector<Complex> roots;
  roots.reserve(fr.neg.size() + fr.pos.size());
  for (const auto& s : fr.neg) roots.push_back({Real::of(0.0, pr), s});
  for (const auto& s : fr.pos) roots.push_back(Complex::of(s));
  Poly H = Poly::from_roots(roots, Complex::of(1.0, 0.0, pr));
  const auto& c = H.coeffs();
  std::vector<Complex> q, p;
  for (size_t k = 0; k < c.size(); k += 2) q.push_back(c[k]);
  for (size_t k = 1; k < c.size(); k += 2) p.push_back(-c[k]);
  P = Poly(std::move(p));
  Q = Poly(std::move(q));
}

// P(z) (sigma z + 1)^{n-1-deg-shift} style substitution: given ascending
// coefficients of a degree-d polynomial in w and the identity
// w = z/(sigma z + 1), returns sum_k c_k z^k (sigma z + 1)^{D-k} for D >= d.
Poly substitute_mobius(const Poly& pw, int D, const Real& sigma, Prec pr) {
  Poly one = Poly::constant(Complex::of(1.0, 0.0, pr));
  Poly lin{std::vector<Complex>{Complex::of(1.0, 0.0, pr), Complex::of(sigma)}};  // 1 + sigma z
  std::vector<Poly> powers(static_cast<size_t>(D) + 1);
  powers[0] = one;
  for (int j = 1; j <= D; ++j) powers[static_cast<size_t>(j)] = powers[static_cast<size_t>(j - 1)] * lin;
  Poly z_mono = one;
  Poly lin_z{std::vector<Complex>{Complex(pr), Complex::of(1.0, 0.0, pr)}};  // z
  Poly acc;
  for (int k = 0; k <= pw.degree(); ++k) {
    Poly term = z_mono * powers[static_cast<size_t>(D - k)];
    acc = acc + term * pw[static_cast<size_t>(k)];
    z_mono = z_mono * lin_z;
  }
  return acc;
}

void residues_from_pq(const Poly& P, const Poly& Q, const std::vector<Complex>& poles, Prec pr,
                      std::vector<Complex>& res) {
  Poly dQ = Q.derivative();
  const Real tiny = Q.coeff_scale() * mp::exp2i(-static_cast<long>(pr) + 8, pr);
  res.clear();
  res.reserve(poles.size());
  for (const auto& p : poles) {
    Complex d = dQ.eval(p);
    if (mp::abs(d) <= tiny)
      throw NumericalError("interpolant: |Q'(pole)| underflow, pole multiplicity suspected");
    res.push_back(P.eval(p) / d);
  }
}

RationalInterpolant finish_build(FactorRoots fr, SplitPlan plan, ImpedanceKind kind, Prec pr,
                                 std::optional<IntervalPair> K, std::optional<SingleInterval> single) {
  RationalInterpolant R;
  R.kind = kind;
  R.plan = std::move(plan);
  R.precision = pr;
  R.K = K;
  R.single = single;

  Poly Pw, Qw;
  split_parity(fr, pr, Pw, Qw);
  const int n = Qw.degree();

  // nodes in construction (w) space: -(s_neg)^2 ascending, then +(s_pos)^2
  std::vector<Real> wnodes;
  for (size_t j = fr.neg.size(); j-- > 0;) wnodes.push_back(-(fr.neg[j] * fr.neg[j]));
  for (const auto& s : fr.pos) wnodes.push_back(s * s);

  std::vector<Complex> wpoles = poly_roots(Qw);

  if (kind.is_discrete()) {
    Real sigma = Real::of(kind.sigma(), pr);
    R.P = substitute_mobius(Pw, n - 1, sigma, pr);
    R.Q = substitute_mobius(Qw, n, sigma, pr);
    R.nodes.reserve(wnodes.size());
    for (const auto& w : wnodes)
      R.nodes.push_back(mobius_inv(Complex::of(w), sigma).re);
    R.poles.reserve(wpoles.size());
    for (const auto& w : wpoles) R.poles.push_back(mobius_inv(w, sigma));
  } else {
    R.P = Pw;
    R.Q = Qw;
    R.nodes = std::move(wnodes);
    R.poles = std::move(wpoles);
  }
  residues_from_pq(R.P, R.Q, R.poles, pr, R.residues);
  return R;
}

IntervalPair map_interval(const IntervalPair& K, double sigma) {
  return {mobius_d(K.a1, sigma), mobius_d(K.b1, sigma), mobius_d(K.a2, sigma),
          mobius_d(K.b2, sigma)};
}

void check_nyquist(const ImpedanceKind& kind, double a1) {
  if (kind.is_discrete() && !(-1.0 / kind.sigma() < a1))
    throw ValidationError("Nyquist precondition violated: need -1/sigma < a1 (refine h)");
}

}  // namespace

RationalInterpolant build_interpolant(const IntervalPair& K, int m, ImpedanceKind kind,
                                      Prec precision, std::optional<std::pair<int, int>> m_split) {
  if (m < 2 || m % 2 != 0) throw ValidationError("build_interpolant: m must be even and >= 2");
  check_nyquist(kind, K.a1);
  IntervalPair Kc = kind.is_discrete() ? map_interval(K, kind.sigma()) : K;

  SplitPlan plan;
  if (m_split) {
    auto [m1, m2] = *m_split;
    if (m1 < 0 || m2 < 0 || m1 + m2 != m) throw ValidationError("explicit m1+m2 must equal m");
    plan = zolotarev::split_degrees(Kc, m, precision);
    plan.m1 = m1;
    plan.m2 = m2;
    plan.theta = 0;
    zolotarev::theorem2_bounds(plan, m);
  } else {
    plan = zolotarev::split_degrees(Kc, m, precision);
  }
  if (plan.m1 == 0)
    return build_interpolant(SingleInterval{K.a2, K.b2, false}, m, kind, precision);
  if (plan.m2 == 0)
    return build_interpolant(SingleInterval{K.a1, K.b1, true}, m, kind, precision);

  FactorRoots fr;
  ZolotarevFactor f1 = zolotarev::zolotarev_roots(mp::sqrt(Real::of(-Kc.b1, precision)),
                                                  mp::sqrt(Real::of(-Kc.a1, precision)), plan.m1);
  ZolotarevFactor f2 = zolotarev::zolotarev_roots(mp::sqrt(Real::of(Kc.a2, precision)),
                                                  mp::sqrt(Real::of(Kc.b2, precision)), plan.m2);
  fr.neg = std::move(f1.roots);
  fr.pos = std::move(f2.roots);
  return finish_build(std::move(fr), std::move(plan), kind, precision, K, std::nullopt);
}

RationalInterpolant build_interpolant(const SingleInterval& interval, int m, ImpedanceKind kind,
                                      Prec precision) {
  if (m < 2 || m % 2 != 0) throw ValidationError("build_interpolant: m must be even and >= 2");
  if (interval.negative) {
    if (!(interval.lo < interval.hi && interval.hi < 0))
      throw ValidationError("negative interval requires lo < hi < 0");
    check_nyquist(kind, interval.lo);
  } else {
    if (!(0 < interval.lo && interval.lo < interval.hi))
      throw ValidationError("positive interval requires 0 < lo < hi");
  }
  double lo = interval.lo, hi = interval.hi;
  if (kind.is_discrete()) {
    lo = mobius_d(lo, kind.sigma());
    hi = mobius_d(hi, kind.sigma());
  }
  FactorRoots fr;
  SplitPlan plan;
  plan.m = m;
  if (interval.negative) {
    ZolotarevFactor f = zolotarev::zolotarev_roots(mp::sqrt(Real::of(-hi, precision)),
                                                   mp::sqrt(Real::of(-lo, precision)), m);
    fr.neg = std::move(f.roots);
    plan.m1 = m;
    plan.m2 = 0;
    plan.rho1 = f.rate;
    plan.rho2 = f.rate;
    plan.rho = f.rate;
  } else {
    ZolotarevFactor f = zolotarev::zolotarev_roots(mp::sqrt(Real::of(lo, precision)),
                                                   mp::sqrt(Real::of(hi, precision)), m);
    fr.pos = std::move(f.roots);
    plan.m1 = 0;
    plan.m2 = m;
    plan.rho1 = f.rate;
    plan.rho2 = f.rate;
    plan.rho = f.rate;
  }
  zolotarev::theorem2_bounds(plan, m);
  return finish_build(std::move(fr), std::move(plan), kind, precision, std::nullopt, interval);
}

RationalInterpolant build_interpolant_linsys(const IntervalPair& K, int m, ImpedanceKind kind,
                                             Prec precision) {
  // same nodes as the primary path, coefficients from the interpolation system
  RationalInterpolant primary = build_interpolant(K, m, kind, precision);
  const int n = primary.n();
  const size_t dim = 2 * static_cast<size_t>(n);
  if (primary.nodes.size() != dim) throw NumericalError("linsys path: unexpected node count");
  std::vector<std::vector<Complex>> A(dim, std::vector<Complex>(dim, Complex(precision)));
  std::vector<Complex> rhs(dim, Complex(precision));
  for (size_t j = 0; j < dim; ++j) {
    Complex z = Complex::of(primary.nodes[j]);
    Complex F = impedance_eval(kind, z);
    Complex zp = Complex::of(1.0, 0.0, precision);
    for (int k = 0; k < n; ++k) {
      A[j][static_cast<size_t>(k)] = zp;                            // P coefficients
      A[j][static_cast<size_t>(n + k)] = -(F * zp);                 // Q coefficients (q_n = 1)
      zp = zp * z;
    }
    rhs[j] = F * zp;  // F z^n
  }
  std::vector<Complex> sol = linear_solve(std::move(A), std::move(rhs));
  std::vector<Complex> pc(sol.begin(), sol.begin() + n);
  std::vector<Complex> qc(sol.begin() + n, sol.end());
  qc.push_back(Complex::of(1.0, 0.0, precision));
  RationalInterpolant R;
  R.P = Poly(std::move(pc));
  R.Q = Poly(std::move(qc));
  R.nodes = primary.nodes;
  R.K = primary.K;
  R.kind = kind;
  R.plan = primary.plan;
  R.precision = precision;
  R.poles = poly_roots(R.Q);
  residues_from_pq(R.P, R.Q, R.poles, precision, R.residues);
  return R;
}

double relative_error(const RationalInterpolant& R, int samples_per_interval) {
  auto pts = [&]() {
    std::vector<double> xs;
    if (R.K) {
      xs = par::log_space_negative(R.K->a1, R.K->b1, samples_per_interval);
      auto pos = par::log_space(R.K->a2, R.K->b2, samples_per_interval);
      xs.insert(xs.end(), pos.begin(), pos.end());
    } else if (R.single) {
      xs = R.single->negative ? par::log_space_negative(R.single->lo, R.single->hi, samples_per_interval)
                              : par::log_space(R.single->lo, R.single->hi, samples_per_interval);
    } else {
      throw ValidationError("relative_error: interpolant carries no target set");
    }
    return xs;
  }();
  return par::max_scan(pts, [&](double x) {
    std::complex<double> z(x, 0);
    return std::abs(R.eval_pf_d(z) / impedance_eval_d(R.kind, z) - 1.0);
  });
}

std::string RationalInterpolant::to_json() const {
  nlohmann::json j;
  auto cplx = [](const Complex& z) {
    return nlohmann::json::array({z.re.str(), z.im.str()});
  };
  j["precision_bits"] = static_cast<long>(precision);
  j["n"] = n();
  j["m"] = plan.m;
  j["m1"] = plan.m1;
  j["m2"] = plan.m2;
  j["kind"] = kind.is_discrete() ? "discrete" : "continuous";
  if (kind.is_discrete()) j["h"] = kind.h;
  if (K) j["K"] = {K->a1, K->b1, K->a2, K->b2};
  if (single) j["interval"] = {single->lo, single->hi};
  for (const auto& c : P.coeffs()) j["P"].push_back(cplx(c));
  for (const auto& c : Q.coeffs()) j["Q"].push_back(cplx(c));
  for (const auto& x : nodes) j["nodes"].push_back(x.str());
  for (const auto& p : poles) j["poles"].push_back(cplx(p));
  for (const auto& r : residues) j["residues"].push_back(cplx(r));
  return j.dump(2);
}

}  // namespace zpml::interp
