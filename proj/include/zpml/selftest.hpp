// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_SELFTEST_HPP
#define ZPML_SELFTEST_HPP

#include <cstdint>
#include <iosfwd>

namespace zpml::selftest {

/// Runs the oracle-backed property suites (elliptic vs quadrature, root
/// round trips, continued-fraction round trips, Table-1 bracketing at
/// m in {12, 18}) and prints one line per suite. Deterministic for a fixed
/// seed. Returns true when every suite passes.
bool run(std::ostream& os, std::uint64_t seed);

}  // namespace zpml::selftest

#endif  // ZPML_SELFTEST_HPP
