// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_EXPERIMENTS_HPP
#define ZPML_EXPERIMENTS_HPP

#include <optional>
#include <string>

#include "zpml/helmholtz.hpp"
#include "zpml/interpolant.hpp"

namespace zpml::helm {

struct ExperimentResult {
  std::vector<SweepPoint> points;
  double fitted_rate = 0;
  double expected_rho = 0;  // Theorem-2 rate for the design intervals
  zolotarev::IntervalPair K{-2, -1, 1, 2};
  std::optional<FieldSolution> last_field;     // domain-1 field of the largest m
  double lifted_imag_extent = 0;               // tensor only: max |Im| of layered 1D operator eigenvalues
};

/// Infinite-strip waveguide: Laplacian + k^2 on [0,L]x[0,H], Dirichlet walls
/// in y, absorbing layers on both x ends; accuracy measured against the
/// double-length domain restricted to [0,H]^2.
struct WaveguideParams {
  double k = 50;
  double h = M_PI / 512;
  double height = M_PI;
  double len_ref = 2 * M_PI;  // reference domain length
  double len = M_PI;          // test domain length
  std::vector<int> m_list = {8, 12, 16, 20, 24, 28, 32, 36};
  double margin = 0.05;
  std::complex<double> amplitude{10, 0};
  std::optional<double> source_x;  // default: one grid step inside the right edge
  std::optional<double> source_y;  // default: 50pi/512 snapped to the grid
  mp::Prec precision = 0;          // 0 = per-m default
  bool keep_field = false;
};

ExperimentResult run_waveguide(const WaveguideParams& p);

/// Tensor PML: variable wave speed c(x,y), absorbing layers on all four
/// edges of [0,1]^2, accuracy against the same problem on [0.1,0.9]^2.
struct TensorParams {
  double k = 120;
  double h = 1.0 / 400;
  std::vector<int> m_list = {14, 18, 22, 26};
  double margin = 0.05;
  std::complex<double> amplitude{1, 0};
  double source_x = 120.0 / 400, source_y = 280.0 / 400;
  mp::Prec precision = 0;
  bool keep_field = false;
  bool eigen_diagnostic = false;  // report how far the layered 1D operators lift off the real axis
};

/// The built-in wave-speed map: background 1, a slow horizontal slab
/// (c = 1/sqrt(2) for 0.2575 <= y <= 0.4425, spanning all x) and a fast
/// square inclusion (c = sqrt(2) on [0.35,0.65] x [0.15,0.25]).
double tensor_wave_speed(double x, double y);

ExperimentResult run_tensor(const TensorParams& p);

/// Design set for the waveguide's tangential operator (Dirichlet y-line).
SpectralIntervals waveguide_intervals(double height, double h, double k, double margin);

}  // namespace zpml::helm

#endif  // ZPML_EXPERIMENTS_HPP
