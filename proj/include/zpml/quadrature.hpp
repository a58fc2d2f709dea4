// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_QUADRATURE_HPP
#define ZPML_QUADRATURE_HPP

#include <functional>

#include "zpml/mp.hpp"

namespace zpml::quad {

/// Integrand on (0,1); receives both x and 1-x so endpoint-singular factors
/// can be evaluated without cancellation.
using Integrand01 = std::function<mp::Real(const mp::Real& x, const mp::Real& one_minus_x)>;

/// Tanh-sinh (double-exponential) quadrature of f over (0,1). Handles
/// integrable endpoint singularities; doubles the node density until two
/// consecutive levels agree to `tol` (absolute). Used as the independent
/// integration oracle by the self-test and the unit tests.
mp::Real integrate01(const Integrand01& f, mp::Prec prec, const mp::Real& tol);

}  // namespace zpml::quad

#endif  // ZPML_QUADRATURE_HPP
