// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_KERNELS_HPP
#define ZPML_KERNELS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace zpml::par {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// implementation the OpenMP path is tested against.
enum class Exec { Serial, OpenMP };

/// max_i f(xs[i]); f must be pure.
template <class F>
double max_scan(const std::vector<double>& xs, F&& f, Exec exec = Exec::OpenMP) {
  double m = -HUGE_VAL;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
  if (exec == Exec::OpenMP) {
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, f(xs[static_cast<size_t>(i)]));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, f(xs[static_cast<size_t>(i)]));
  }
  return m;
}

/// Log-spaced samples of [lo, hi], 0 < lo < hi, endpoints included.
std::vector<double> log_space(double lo, double hi, int n);
/// Log-spaced samples of a negative interval [a, b], a < b < 0.
std::vector<double> log_space_negative(double a, double b, int n);

}  // namespace zpml::par

#endif  // ZPML_KERNELS_HPP
