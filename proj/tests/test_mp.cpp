// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "zpml/poly.hpp"

using namespace zpml;
using mp::Complex;
using mp::Real;

TEST_CASE("precision propagates as the max of the operands") {
  Real a = Real::of(1.0, 128);
  Real b = Real::of(3.0, 512);
  CHECK((a / b).prec() == 512);
  CHECK((b * a).prec() == 512);
  Complex z = Complex::of(1.0, 2.0, 128);
  Complex w = Complex::of(0.5, -0.25, 320);
  CHECK((z * w).prec() == 320);
}

TEST_CASE("decimal string round trip") {
  Real x = mp::sqrt(Real::of(2.0, 256));
  Real y = Real::parse(x.str(), 256);
  CHECK(mp::abs(x - y).to_double() < 1e-74);
  CHECK_THROWS_AS(Real::parse("not-a-number", 64), ValidationError);
}

TEST_CASE("poly_from_roots basic shapes") {
  Poly one = Poly::from_roots({}, Complex::of(1.0, 0.0, 128));
  CHECK(one.degree() == 0);
  CHECK(one.eval(Complex::of(7.0, 0.0, 128)).to_double() == std::complex<double>(1, 0));

  Poly p = Poly::from_roots({Complex::of(1.0, 0.0, 128), Complex::of(-1.0, 0.0, 128)},
                            Complex::of(1.0, 0.0, 128));
  CHECK(p.degree() == 2);
  CHECK(p[0].to_double() == std::complex<double>(-1, 0));
  CHECK(p[1].to_double() == std::complex<double>(0, 0));
  CHECK(p[2].to_double() == std::complex<double>(1, 0));
  CHECK(p.eval(Complex::of(2.0, 0.0, 128)).to_double() == std::complex<double>(3, 0));
}

TEST_CASE("evaluation at the construction roots sits below the precision floor") {
  const mp::Prec prec = 256;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> roots;
  for (int i = 0; i < 20; ++i) roots.push_back(Complex::of(u(rng), u(rng), prec));
  Poly p = Poly::from_roots(roots, Complex::of(1.0, 0.0, prec));
  Real floor = mp::exp2i(-prec / 2, prec);
  for (const auto& r : roots) CHECK(mp::abs(p.eval(r)) < floor);
}

TEST_CASE("poly_roots on tiny fixed cases") {
  Poly p({Complex::of(-1.0, 0.0, 256), Complex::of(0.0, 0.0, 256), Complex::of(1.0, 0.0, 256)});
  auto r = poly_roots(p);
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(),
            [](const Complex& a, const Complex& b) { return a.re.to_double() < b.re.to_double(); });
  CHECK(mp::abs(r[0] - Complex::of(-1.0, 0.0, 256)).to_double() < 1e-70);
  CHECK(mp::abs(r[1] - Complex::of(1.0, 0.0, 256)).to_double() < 1e-70);

  // z^3: triple root at the origin, deflated exactly
  Poly cubic({Complex(256), Complex(256), Complex(256), Complex::of(1.0, 0.0, 256)});
  auto rc = poly_roots(cubic);
  REQUIRE(rc.size() == 3);
  for (const auto& x : rc) CHECK(mp::abs(x).to_double() == 0.0);

  CHECK_THROWS_AS(poly_roots(Poly::constant(Complex::of(3.0, 0.0, 64))), ValidationError);
}

TEST_CASE("degree-30 well separated roots recovered to 1e-30 at 256 bits") {
  const mp::Prec prec = 256;
  std::vector<Complex> roots;
  for (int j = 0; j < 30; ++j) {
    double r = 0.5 + 0.1 * j, th = 2 * M_PI * j / 30.0 + 0.37;
    roots.push_back(Complex::of(r * std::cos(th), r * std::sin(th), prec));
  }
  Poly p = Poly::from_roots(roots, Complex::of(1.0, 0.0, prec));
  auto found = poly_roots(p);
  REQUIRE(found.size() == 30);
  for (const auto& r : roots) {
    double best = HUGE_VAL;
    for (const auto& f : found) best = std::min(best, mp::abs(r - f).to_double() / mp::abs(r).to_double());
    CHECK(best < 1e-30);
  }
}

TEST_CASE("root round trip on random unit-disk sets reaches half the working precision") {
  const mp::Prec prec = 256;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> roots;
  for (int i = 0; i < 20; ++i) roots.push_back(Complex::of(u(rng), u(rng), prec));
  Poly p = Poly::from_roots(roots, Complex::of(1.0, 0.0, prec));
  auto found = poly_roots(p);
  const double tol = std::pow(2.0, -static_cast<double>(prec) / 2);
  for (const auto& r : roots) {
    double best = HUGE_VAL;
    for (const auto& f : found) best = std::min(best, mp::abs(r - f).to_double());
    CHECK(best < tol);
  }
}

TEST_CASE("linear_solve fixed and randomized systems") {
  const mp::Prec prec = 256;
  auto C = [&](double re) { return Complex::of(re, 0.0, prec); };
  SUBCASE("identity") {
    std::vector<std::vector<Complex>> A{{C(1), C(0)}, {C(0), C(1)}};
    auto x = linear_solve(A, {C(3), C(-7)});
    CHECK(x[0].to_double() == std::complex<double>(3, 0));
    CHECK(x[1].to_double() == std::complex<double>(-7, 0));
  }
  SUBCASE("diagonal") {
    std::vector<std::vector<Complex>> A{{C(2), C(0)}, {C(0), C(4)}};
    auto x = linear_solve(A, {C(2), C(4)});
    CHECK(std::abs(x[0].to_double() - 1.0) < 1e-70);
    CHECK(std::abs(x[1].to_double() - 1.0) < 1e-70);
  }
  SUBCASE("random well-conditioned 20x20 against a known solution") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 20;
    std::vector<std::vector<Complex>> A(n, std::vector<Complex>(n, Complex(prec)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        A[i][j] = Complex::of(u(rng) + (i == j ? 8.0 : 0.0), u(rng), prec);
    std::vector<Complex> xk, b(n, Complex(prec));
    for (int i = 0; i < n; ++i) xk.push_back(Complex::of(u(rng), u(rng), prec));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b[static_cast<size_t>(i)] += A[static_cast<size_t>(i)][static_cast<size_t>(j)] * xk[static_cast<size_t>(j)];
    auto x = linear_solve(A, b);
    for (int i = 0; i < n; ++i)
      CHECK(mp::abs(x[static_cast<size_t>(i)] - xk[static_cast<size_t>(i)]).to_double() < 1e-40);
  }
  SUBCASE("singular matrix is rejected") {
    std::vector<std::vector<Complex>> A{{C(1), C(2)}, {C(2), C(4)}};
    CHECK_THROWS_AS(linear_solve(A, {C(1), C(1)}), NumericalError);
  }
}
