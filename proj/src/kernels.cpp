// SPDX-License-Identifier: Apache-2.0

#include "zpml/kernels.hpp"

#include <stdexcept>

namespace zpml::par {

std::vector<double> log_space(double lo, double hi, int n) {
  if (!(0 < lo && lo < hi) || n < 2) throw std::invalid_argument("log_space: need 0 < lo < hi, n >= 2");
  std::vector<double> xs(static_cast<size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    xs[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

std::vector<double> log_space_negative(double a, double b, int n) {
  if (!(a < b && b < 0)) throw std::invalid_argument("log_space_negative: need a < b < 0");
  std::vector<double> xs = log_space(-b, -a, n);
  for (auto& x : xs) x = -x;
  return xs;
}

}  // namespace zpml::par
