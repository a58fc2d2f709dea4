// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_ELLIPTIC_HPP
#define ZPML_ELLIPTIC_HPP

#include <atomic>

#include "zpml/mp.hpp"

namespace zpml::elliptic {

/// Interval-ratio modulus pair (delta, delta' = sqrt(1 - delta^2)).
struct Modulus {
  mp::Real delta;
  mp::Real delta_prime;

  /// Builds from delta in (0,1); delta' computed as sqrt((1-d)(1+d)) which
  /// stays accurate when delta is close to 1.
  static Modulus of(const mp::Real& delta);
};

/// Complete elliptic integral of the first kind as a function of the
/// MODULUS delta in [0, 1) (not the parameter m = delta^2), by AGM iteration.
/// K(0) = pi/2.
mp::Real complete_K(const mp::Real& delta);

/// Same integral parametrized by the complementary modulus, for callers that
/// know delta' exactly (avoids forming 1 - delta^2 when delta' is tiny).
mp::Real complete_K_from_complement(const mp::Real& delta_prime);

/// Jacobi elliptic sn and dn for real u in [0, K(kappa)] and modulus kappa in
/// [0, 1), via the descending Landen (AGM) transformation. dn is computed from
/// dn^2 = 1 - kappa^2 sn^2, which is strictly decreasing on [0, K].
void jacobi_sn_dn(const mp::Real& u, const mp::Real& kappa, mp::Real& sn, mp::Real& dn);

namespace testhook {
/// Selftest negative control: when set, complete_K returns a slightly
/// perturbed value so oracle suites must detect the corruption.
extern std::atomic<bool> corrupt;
}  // namespace testhook

}  // namespace zpml::elliptic

#endif  // ZPML_ELLIPTIC_HPP
