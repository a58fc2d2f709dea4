// SPDX-License-Identifier: Apache-2.0

#include "zpml/mp.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace zpml::mp {

Real Real::parse(const std::string& s, Prec prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw ValidationError("not a valid decimal number: '" + s + "'");
  return r;
}

std::string Real::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return "0";
  if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 2;
  mpfr_exp_t e;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (m[0] == '-') {
    sign = "-";
    m = m.substr(1);
  }
  // mantissa m has an implied decimal point before the first digit, x = 0.m * 10^e
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

Complex sqrt(const Complex& a) {
  const Prec p = a.prec();
  if (a.is_zero()) return Complex(p);
  Real r = abs(a);
  Real t = sqrt((r + abs(a.re)) / 2L);
  if (a.re.sign() >= 0) {
    return {t, a.im / (t * 2L)};
  }
  Real u = abs(a.im) / (t * 2L);
  if (a.im.sign() >= 0) return {u, t};
  return {u, -t};
}

}  // namespace zpml::mp
