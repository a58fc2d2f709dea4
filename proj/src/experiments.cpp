// SPDX-License-Identifier: Apache-2.0

#include "zpml/experiments.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "zpml/sfraction.hpp"

namespace zpml::helm {

using cd = std::complex<double>;

namespace {

sfrac::GridSteps layer_for(const zolotarev::IntervalPair& K, int m, double h, mp::Prec prec) {
  if (prec == 0) prec = zolotarev::default_precision(m);
  auto R = interp::build_interpolant(K, m, interp::ImpedanceKind::discrete(h), prec);
  return sfrac::to_sfraction(R);
}

double snap(double x, double h) { return std::llround(x / h) * h; }

}  // namespace

SpectralIntervals waveguide_intervals(double height, double h, double k, double margin) {
  const int N = static_cast<int>(std::llround(height / h)) - 1;
  auto op = TangentialOperator::make(height, N);
  return spectral_intervals(op, k, margin);
}

ExperimentResult run_waveguide(const WaveguideParams& p) {
  ExperimentResult res;
  SpectralIntervals si = waveguide_intervals(p.height, p.h, p.k, p.margin);
  res.K = si.K;

  const double sx = p.source_x ? snap(*p.source_x, p.h) : p.len - p.h;
  const double sy = snap(p.source_y ? *p.source_y : 50 * M_PI / 512, p.h);
  auto make_problem = [&](double len, const sfrac::GridSteps& layer) {
    HelmholtzProblem2D prob;
    prob.ax = make_axis(0, len, p.h, &layer, &layer);
    prob.ay = make_axis(0, p.height, p.h, nullptr, nullptr);
    prob.k = p.k;
    prob.source = {sx, sy, p.amplitude};
    return prob;
  };

  for (int m : p.m_list) {
    sfrac::GridSteps layer = layer_for(si.K, m, p.h, p.precision);
    FieldSolution u_ref = assemble_and_solve(make_problem(p.len_ref, layer));
    FieldSolution u = assemble_and_solve(make_problem(p.len, layer));
    Region region{0, p.len, 0, p.height};
    double err = restriction_error(u_ref, u, region);
    res.points.push_back({m, err});
    if (p.keep_field && m == p.m_list.back()) res.last_field = std::move(u_ref);
  }
  res.fitted_rate = fitted_rate(res.points);
  res.expected_rho = zolotarev::split_degrees(si.K, 2, 256).rho.to_double();
  return res;
}

double tensor_wave_speed(double x, double y) {
  if (y >= 0.2575 && y <= 0.4425) return 1.0 / std::sqrt(2.0);  // slow sediment slab
  if (x >= 0.35 && x <= 0.65 && y >= 0.15 && y <= 0.25) return std::sqrt(2.0);
  return 1.0;
}

namespace {

// union of the per-edge inclusion intervals of a square domain [lo,hi]^2
SpectralIntervals tensor_intervals(double lo, double hi, double h, double k, double margin) {
  const int N = static_cast<int>(std::llround((hi - lo) / h)) - 1;
  auto op_x = TangentialOperator::make(hi - lo, N, [&](double t) {
    return tensor_wave_speed(lo + t, lo);  // profile along the bottom/top edges
  });
  auto op_y = TangentialOperator::make(hi - lo, N, [&](double t) {
    return tensor_wave_speed(lo, lo + t);  // profile along the left/right edges
  });
  SpectralIntervals sx = spectral_intervals(op_x, k, margin);
  SpectralIntervals sy = spectral_intervals(op_y, k, margin);
  zolotarev::IntervalPair K(std::min(sx.K.a1, sy.K.a1), std::max(sx.K.b1, sy.K.b1),
                            std::min(sx.K.a2, sy.K.a2), std::max(sx.K.b2, sy.K.b2));
  return {K, sx.i0};
}

// eigenvalues of the 1D c^2-weighted second-difference operator including the
// complex layer steps; returns max |Im| (how far the spectrum lifts off axis)
double lifted_extent(const AxisGrid& ax, const std::vector<double>& cline) {
  const int M = static_cast<int>(ax.size());
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(M, M);
  for (int t = 0; t < M; ++t) {
    cd hw = ax.hstep[static_cast<size_t>(t)], he = ax.hstep[static_cast<size_t>(t) + 1];
    cd dh = ax.hhat[static_cast<size_t>(t)];
    double c2 = cline[static_cast<size_t>(t)] * cline[static_cast<size_t>(t)];
    if (t > 0) T(t, t - 1) = -c2 / (dh * hw);
    if (t + 1 < M) T(t, t + 1) = -c2 / (dh * he);
    T(t, t) = c2 * (1.0 / (dh * hw) + 1.0 / (dh * he));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T, false);
  double ext = 0;
  for (int i = 0; i < M; ++i) ext = std::max(ext, std::abs(es.eigenvalues()[i].imag()));
  return ext;
}

}  // namespace

ExperimentResult run_tensor(const TensorParams& p) {
  ExperimentResult res;
  const double lo1 = 0.0, hi1 = 1.0, lo2 = 0.1, hi2 = 0.9;
  SpectralIntervals s1 = tensor_intervals(lo1, hi1, p.h, p.k, p.margin);
  SpectralIntervals s2 = tensor_intervals(lo2, hi2, p.h, p.k, p.margin);
  res.K = s1.K;

  auto make_problem = [&](double lo, double hi, const sfrac::GridSteps& layer) {
    HelmholtzProblem2D prob;
    prob.ax = make_axis(lo, hi, p.h, &layer, &layer);
    prob.ay = make_axis(lo, hi, p.h, &layer, &layer);
    prob.k = p.k;
    prob.wave_speed = tensor_wave_speed;
    prob.source = {snap(p.source_x, p.h), snap(p.source_y, p.h), p.amplitude};
    return prob;
  };

  for (int m : p.m_list) {
    sfrac::GridSteps layer1 = layer_for(s1.K, m, p.h, p.precision);
    sfrac::GridSteps layer2 = layer_for(s2.K, m, p.h, p.precision);
    HelmholtzProblem2D prob1 = make_problem(lo1, hi1, layer1);
    FieldSolution u1 = assemble_and_solve(prob1);
    FieldSolution u2 = assemble_and_solve(make_problem(lo2, hi2, layer2));
    Region region{lo2, hi2, lo2, hi2};
    double err = restriction_error(u1, u2, region);
    res.points.push_back({m, err});
    if (m == p.m_list.back()) {
      if (p.eigen_diagnostic) {
        std::vector<double> cline(prob1.ay.size());
        for (size_t t = 0; t < cline.size(); ++t)
          cline[t] = prob1.c_at(prob1.ax.first_phys, static_cast<int>(t));
        res.lifted_imag_extent = lifted_extent(prob1.ay, cline);
      }
      if (p.keep_field) res.last_field = std::move(u1);
    }
  }
  res.fitted_rate = fitted_rate(res.points);
  res.expected_rho = zolotarev::split_degrees(s1.K, 2, 256).rho.to_double();
  return res;
}

}  // namespace zpml::helm
