// SPDX-License-Identifier: Apache-2.0

#include <tuple>

#include "doctest.h"
#include "zpml/kernels.hpp"
#include "zpml/zolotarev.hpp"

using namespace zpml;
using mp::Real;

namespace {
constexpr mp::Prec kPrec = 256;

bool sig3(double x, double printed) {
  // x rounds to the same 3-significant-digit value as `printed`
  return std::abs(x - printed) <= 0.50001 * std::pow(10, std::floor(std::log10(std::abs(printed))) - 2);
}

double reflection_max(const std::vector<double>& roots, double c, double d, int n, par::Exec exec) {
  auto xs = par::log_space(c, d, n);
  return par::max_scan(
      xs,
      [&](double s) {
        double v = 1;
        for (double r : roots) v *= std::abs((s - r) / (s + r));
        return v;
      },
      exec);
}
}  // namespace

TEST_CASE("interval pair ordering is validated") {
  CHECK_THROWS_AS(zolotarev::IntervalPair(-1, -2, 1, 2), ValidationError);
  CHECK_THROWS_AS(zolotarev::IntervalPair(-2, -1, 2, 1), ValidationError);
  CHECK_THROWS_AS(zolotarev::IntervalPair(-2, 1, 2, 3), ValidationError);
  CHECK_NOTHROW(zolotarev::IntervalPair(-1e3, -1, 1, 1e4));
}

TEST_CASE("single root at m = 1 is the geometric mean") {
  auto f = zolotarev::zolotarev_roots(Real::of(1.0, kPrec), Real::of(4.0, kPrec), 1);
  REQUIRE(f.roots.size() == 1);
  CHECK(mp::abs(f.roots[0] - Real::of(2.0, kPrec)).to_double() < 1e-70);
}

TEST_CASE("roots are ordered strictly inside (c, d)") {
  const std::tuple<double, double, int> cases[] = {
      {1.0, 4.0, 3}, {1.0, 1e4, 10}, {0.5, 2.0, 7}, {1e-3, 1.0, 12}};
  for (auto [c, d, m] : cases) {
    auto f = zolotarev::zolotarev_roots(Real::of(c, kPrec), Real::of(d, kPrec), m);
    REQUIRE(static_cast<int>(f.roots.size()) == m);
    double prev = c;
    for (const auto& r : f.roots) {
      double v = r.to_double();
      CHECK(v > prev);
      CHECK(v < d);
      prev = v;
    }
  }
}

TEST_CASE("brute-force reflection maximum falls inside the E_m bracket") {
  auto f = zolotarev::zolotarev_roots(Real::of(1.0, kPrec), Real::of(1e4, kPrec), 10);
  std::vector<double> roots(f.roots.size());
  for (size_t i = 0; i < roots.size(); ++i) roots[i] = f.roots[i].to_double();
  double mx_omp = reflection_max(roots, 1.0, 1e4, 100000, par::Exec::OpenMP);
  double mx_ser = reflection_max(roots, 1.0, 1e4, 100000, par::Exec::Serial);
  CHECK(mx_omp == mx_ser);  // max reductions are order independent
  CHECK(mx_omp >= f.lower_E.to_double());
  CHECK(mx_omp <= f.upper_E.to_double());
}

TEST_CASE("rate reproduces the worked example constants") {
  // K = [-1e3,-1] U [1,1e4]: delta1 = sqrt(b1/a1), delta2 = sqrt(a2/b2)
  Real rho1 = zolotarev::rate(mp::sqrt(Real::of(1e-3, kPrec)));
  Real rho2 = zolotarev::rate(mp::sqrt(Real::of(1e-4, kPrec)));
  CHECK(sig3(rho1.to_double(), 0.361));
  CHECK(sig3(rho2.to_double(), 0.439));
}

TEST_CASE("rate is strictly decreasing in the interval ratio and stays in (0,1)") {
  double prev = 1.0;
  for (double d : {1e-6, 1e-4, 1e-3, 0.01, 0.1, 0.3, 0.6, 0.9, 0.99}) {
    double r = zolotarev::rate(Real::of(d, kPrec)).to_double();
    CHECK(r > 0.0);
    CHECK(r < 1.0);
    CHECK(r < prev);  // wider interval (smaller ratio) converges slower
    prev = r;
  }
  CHECK_THROWS_AS(zolotarev::rate(Real::of(0.0, kPrec)), ValidationError);
  CHECK_THROWS_AS(zolotarev::rate(Real::of(1.0, kPrec)), ValidationError);
}

TEST_CASE("degree balancing matches the worked table") {
  zolotarev::IntervalPair K(-1e3, -1, 1, 1e4);
  const std::pair<int, std::pair<int, int>> rows[] = {
      {6, {3, 3}},   {12, {5, 7}},  {18, {8, 10}},  {24, {11, 13}}, {30, {13, 17}},
      {36, {16, 20}}, {42, {19, 23}}, {48, {21, 27}}, {54, {24, 30}}, {60, {27, 33}}};
  for (auto [m, split] : rows) {
    auto plan = zolotarev::split_degrees(K, m, 320);
    CHECK(plan.m1 == split.first);
    CHECK(plan.m2 == split.second);
    CHECK(std::abs(plan.theta) <= 0.5);
    CHECK(plan.m1 + plan.m2 == m);
  }
  CHECK(sig3(zolotarev::split_degrees(K, 12, 320).rho.to_double(), 0.634));
}

TEST_CASE("symmetric target splits evenly with zero offset") {
  zolotarev::IntervalPair K(-1e4, -1, 1, 1e4);
  auto plan = zolotarev::split_degrees(K, 14, 320);
  CHECK(plan.m1 == 7);
  CHECK(plan.m2 == 7);
  CHECK(std::abs(plan.theta) < 1e-12);
}

TEST_CASE("theorem-2 bounds reproduce the printed table rows") {
  zolotarev::IntervalPair K(-1e3, -1, 1, 1e4);
  auto p6 = zolotarev::split_degrees(K, 6, 320);
  CHECK(p6.t2_condition_holds);
  CHECK(sig3(p6.t2_lower.to_double(), 1.22e-1));
  CHECK(sig3(p6.t2_upper.to_double(), 5.52e-1));
  auto p12 = zolotarev::split_degrees(K, 12, 320);
  CHECK(sig3(p12.t2_lower.to_double(), 8.41e-3));
  CHECK(sig3(p12.t2_upper.to_double(), 2.85e-2));
}

TEST_CASE("theorem-2 bounds approach their asymptotic forms for large m") {
  zolotarev::IntervalPair K(-1e3, -1, 1, 1e4);
  auto p = zolotarev::split_degrees(K, 60, 320);
  double rho = p.rho.to_double();
  double rm = std::pow(rho, 60);
  double M = std::max(1 / std::sqrt(p.rho1.to_double()), 1 / std::sqrt(p.rho2.to_double()));
  CHECK(p.t2_lower.to_double() == doctest::Approx(2 * rm).epsilon(1e-8));
  CHECK(p.t2_upper.to_double() == doctest::Approx(4 * M * rm).epsilon(1e-8));
}
