// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_SFRACTION_HPP
#define ZPML_SFRACTION_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "zpml/interpolant.hpp"

namespace zpml::sfrac {

/// Complex grid steps equivalent to R_n written as the finite Stieltjes
/// continued fraction: hhat = (h^_0 .. h^_{n-1}) dual steps, hstep = (h_1 ..
/// h_n) primal steps.
struct GridSteps {
  int n = 0;
  std::vector<mp::Complex> hhat;
  std::vector<mp::Complex> hstep;

  std::vector<std::complex<double>> hhat_d() const;
  std::vector<std::complex<double>> hstep_d() const;
};

struct BreakdownError : NumericalError {
  BreakdownError(const std::string& msg, int step) : NumericalError(msg), step_index(step) {}
  int step_index;
};

/// Converts poles/residues into grid steps via the complex-symmetric
/// (bilinear, no conjugation) Lanczos process with full reorthogonalization,
/// followed by the tridiagonal-to-step recursion; the polynomial Euclidean
/// division of (Q, P) is run as an independent cross-check and the two step
/// sequences must agree entrywise to `consistency_tol`.
GridSteps to_sfraction(const interp::RationalInterpolant& R, double consistency_tol = 1e-8);

/// Lanczos-only and Euclid-only paths, exposed for tests.
GridSteps to_sfraction_lanczos(const interp::RationalInterpolant& R);
GridSteps to_sfraction_euclid(const interp::RationalInterpolant& R);

/// Bottom-up evaluation of the continued fraction at z.
mp::Complex eval_cf(const GridSteps& steps, const mp::Complex& z);
std::complex<double> eval_cf_d(const GridSteps& steps, std::complex<double> z);
/// Evaluation from raw double step lists (uniform-lattice truncations etc).
std::complex<double> eval_cf_d(const std::vector<std::complex<double>>& hhat,
                               const std::vector<std::complex<double>>& hstep,
                               std::complex<double> z);

/// index,hhat_re,hhat_im,h_re,h_im rows at 17 significant digits.
void write_steps_csv(std::ostream& os, const GridSteps& steps);
std::string steps_to_json(const GridSteps& steps);

}  // namespace zpml::sfrac

#endif  // ZPML_SFRACTION_HPP
