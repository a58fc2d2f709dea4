// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "json.hpp"
#include "zpml/interpolant.hpp"

using namespace zpml;
using mp::Complex;
using mp::Real;

namespace {
constexpr mp::Prec kPrec = 512;
const zolotarev::IntervalPair kTable(-1e3, -1, 1, 1e4);
}  // namespace

TEST_CASE("impedance values on both semi-axes and the lattice variant") {
  auto cont = interp::ImpedanceKind::continuous();
  auto f4 = interp::impedance_eval_d(cont, {4, 0});
  CHECK(f4.real() == doctest::Approx(0.5));
  CHECK(f4.imag() == doctest::Approx(0.0).epsilon(1e-15));
  auto fm4 = interp::impedance_eval_d(cont, {-4, 0});
  CHECK(fm4.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(fm4.imag() == doctest::Approx(-0.5));
  auto disc = interp::ImpedanceKind::discrete(2.0);
  CHECK(interp::impedance_eval_d(disc, {3, 0}).real() == doctest::Approx(1.0 / std::sqrt(12.0)));
  CHECK_THROWS_AS(interp::impedance_eval(cont, Complex(128)), ValidationError);
  // high-precision and double paths agree
  for (double z : {-900.0, -2.5, 3.0, 7e3}) {
    auto a = interp::impedance_eval(disc, Complex::of(z, 0, 256)).to_double();
    auto b = interp::impedance_eval_d(disc, {z, 0});
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(b));
  }
}

TEST_CASE("mobius map: identity at sigma 0, sign preservation, round trip") {
  Real zero_sigma = Real::of(0.0, 256);
  Complex z = Complex::of(3.5, -1.25, 256);
  CHECK(mp::abs(interp::mobius(z, zero_sigma) - z).to_double() == 0.0);
  Real sigma = Real::of(0.3, 256);
  double a2 = 7.0;
  double w = interp::mobius_d(a2, 0.3);
  CHECK(w > 0);
  CHECK(w < a2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    Complex zi = Complex::of(u(rng), u(rng), 256);
    Complex back = interp::mobius_inv(interp::mobius(zi, sigma), sigma);
    CHECK(mp::abs(back - zi).to_double() < 1e-70);
  }
}

TEST_CASE("table configurations reproduce the printed relative errors") {
  auto R18 = interp::build_interpolant(kTable, 18, interp::ImpedanceKind::continuous(), kPrec);
  CHECK(interp::relative_error(R18) == doctest::Approx(1.15e-3).epsilon(0.05));
  auto R12 = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  CHECK(interp::relative_error(R12) == doctest::Approx(2.47e-2).epsilon(0.05));
}

TEST_CASE("interpolation conditions hold at every node to the precision floor") {
  auto R = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  REQUIRE(R.nodes.size() == 12);
  const double floor = std::pow(2.0, -static_cast<double>(kPrec) / 2);
  for (const auto& x : R.nodes) {
    Complex z = Complex::of(x);
    Complex ratio = R.eval(z) / interp::impedance_eval(R.kind, z);
    CHECK(mp::abs(ratio - Complex::of(1.0, 0.0, kPrec)).to_double() < floor);
  }
}

TEST_CASE("partial fractions reproduce P/Q at random points") {
  auto R = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  CHECK(R.n() == 6);
  CHECK(static_cast<int>(R.poles.size()) == 6);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 20; ++i) {
    std::complex<double> z(u(rng), std::abs(u(rng)) + 1.0);
    auto pf = R.eval_pf_d(z);
    auto pq = R.eval(Complex::of(z, kPrec)).to_double();
    CHECK(std::abs(pf - pq) <= 1e-10 * std::abs(pq));
  }
}

TEST_CASE("symmetric target: poles sit on the lower imaginary axis symmetrically") {
  zolotarev::IntervalPair K(-1e4, -1, 1, 1e4);
  auto R = interp::build_interpolant(K, 12, interp::ImpedanceKind::continuous(), kPrec);
  auto poles = R.poles_d();
  for (auto p : poles) CHECK(p.imag() < 0);
  // reflection across the imaginary axis maps the pole set to itself
  for (auto p : poles) {
    std::complex<double> mirror(-p.real(), p.imag());
    double best = HUGE_VAL;
    for (auto q : poles) best = std::min(best, std::abs(q - mirror));
    CHECK(best <= 1e-10 * std::abs(p));
  }
}

TEST_CASE("degenerate single positive interval is a Stieltjes function") {
  auto R = interp::build_interpolant(interp::SingleInterval{1, 1e4, false}, 10,
                                     interp::ImpedanceKind::continuous(), kPrec);
  CHECK(R.n() == 5);
  for (auto p : R.poles_d()) {
    CHECK(p.real() < 0);
    CHECK(std::abs(p.imag()) <= 1e-12 * std::abs(p.real()));
  }
  for (auto r : R.residues_d()) {
    CHECK(r.real() > 0);
    CHECK(std::abs(r.imag()) <= 1e-12 * r.real());
  }
}

TEST_CASE("discrete-kind error approaches the continuous one as h shrinks") {
  auto Rc = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  double ec = interp::relative_error(Rc);
  double prev_gap = HUGE_VAL;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    auto Rh = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::discrete(h), kPrec);
    double eh = interp::relative_error(Rh);
    double gap = std::abs(eh - ec) / ec;
    CHECK(gap <= prev_gap * 1.10);  // monotone-ish approach
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.10);
}

TEST_CASE("interpolation linear system path agrees with the root-based path") {
  auto Ra = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  auto Rb = interp::build_interpolant_linsys(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  for (double z : {-875.0, -31.0, -1.5, 2.0, 47.0, 9.4e3}) {
    Complex zz = Complex::of(z, 0, kPrec);
    Complex va = Ra.eval(zz), vb = Rb.eval(zz);
    CHECK(mp::abs(va - vb).to_double() <= 1e-12 * mp::abs(va).to_double());
  }
}

TEST_CASE("error scan is stable against sampling density") {
  auto R = interp::build_interpolant(kTable, 12, interp::ImpedanceKind::continuous(), kPrec);
  double e1 = interp::relative_error(R, 10000);
  double e2 = interp::relative_error(R, 20000);
  CHECK(std::abs(e1 - e2) <= 0.01 * e1);
}

TEST_CASE("json serialization carries full-precision decimal values") {
  auto R = interp::build_interpolant(kTable, 6, interp::ImpedanceKind::continuous(), 320);
  auto j = nlohmann::json::parse(R.to_json());
  CHECK(j["m"] == 6);
  CHECK(j["n"] == 3);
  CHECK(j["P"].size() == 3);
  CHECK(j["Q"].size() == 4);
  CHECK(j["nodes"].size() == 6);
  CHECK(j["poles"].size() == 3);
  Real re = Real::parse(j["poles"][0][0].get<std::string>(), 320);
  Real im = Real::parse(j["poles"][0][1].get<std::string>(), 320);
  CHECK(mp::abs(Complex{re, im} - R.poles[0]).to_double() <
        1e-90 * mp::abs(R.poles[0]).to_double());
}

TEST_CASE("nyquist precondition and argument validation") {
  CHECK_THROWS_AS(interp::build_interpolant(kTable, 12, interp::ImpedanceKind::discrete(0.09), kPrec),
                  ValidationError);  // -1/sigma = -493 > a1
  CHECK_THROWS_AS(interp::build_interpolant(kTable, 13, interp::ImpedanceKind::continuous(), kPrec),
                  ValidationError);
  CHECK_THROWS_AS(interp::build_interpolant(interp::SingleInterval{-3, -1, false}, 10,
                                            interp::ImpedanceKind::continuous(), kPrec),
                  ValidationError);
}
