// SPDX-License-Identifier: Apache-2.0
//
// Serial vs OpenMP timings for the data-parallel kernels: error-scan
// reductions, reflection-coefficient scans, operator application, and the
// restriction max-norm.

#include <chrono>
#include <cstdio>

#include "zpml/experiments.hpp"
#include "zpml/interpolant.hpp"
#include "zpml/kernels.hpp"
#include "zpml/sfraction.hpp"
#include "zpml/zolotarev.hpp"

using namespace zpml;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_of(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double omp) {
  std::printf("%-28s serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n", name, serial * 1e3,
              omp * 1e3, serial / omp);
}

}  // namespace

int main() {
  zolotarev::IntervalPair K(-1e3, -1, 1, 1e4);
  auto R = interp::build_interpolant(K, 18, interp::ImpedanceKind::continuous(), 512);
  auto poles = R.poles_d();
  auto res = R.residues_d();

  {  // relative-error scan over a dense sample set
    auto xs = par::log_space(1, 1e4, 200000);
    auto f = [&](double x) {
      std::complex<double> z(x, 0), acc(0, 0);
      for (size_t j = 0; j < poles.size(); ++j) acc += res[j] / (z - poles[j]);
      return std::abs(acc * std::sqrt(x) - 1.0);
    };
    volatile double sink = 0;
    double ts = time_of([&] { sink = par::max_scan(xs, f, par::Exec::Serial); });
    double tp = time_of([&] { sink = par::max_scan(xs, f, par::Exec::OpenMP); });
    (void)sink;
    report("impedance error scan", ts, tp);
  }

  {  // Zolotarev reflection coefficient |Z(s)/Z(-s)| brute force
    auto zf = zolotarev::zolotarev_roots(mp::Real::of(1.0, 256), mp::Real::of(100.0, 256), 10);
    std::vector<double> roots(zf.roots.size());
    for (size_t i = 0; i < roots.size(); ++i) roots[i] = zf.roots[i].to_double();
    auto xs = par::log_space(1, 100, 1000000);
    auto f = [&](double s) {
      double v = 1;
      for (double r : roots) v *= std::abs((s - r) / (s + r));
      return v;
    };
    volatile double sink = 0;
    double ts = time_of([&] { sink = par::max_scan(xs, f, par::Exec::Serial); });
    double tp = time_of([&] { sink = par::max_scan(xs, f, par::Exec::OpenMP); });
    (void)sink;
    report("reflection scan", ts, tp);
  }

  {  // 5-point operator application on a quick waveguide grid
    auto si = helm::waveguide_intervals(M_PI, M_PI / 256, 50, 0.05);
    auto Rq = interp::build_interpolant(si.K, 12, interp::ImpedanceKind::discrete(M_PI / 256), 512);
    auto layer = sfrac::to_sfraction(Rq);
    helm::HelmholtzProblem2D prob;
    prob.ax = helm::make_axis(0, 2 * M_PI, M_PI / 256, &layer, &layer);
    prob.ay = helm::make_axis(0, M_PI, M_PI / 256, nullptr, nullptr);
    prob.k = 50;
    std::vector<std::complex<double>> x(prob.unknowns(), {1.0, -0.5});
    volatile double sink = 0;
    double ts = time_of([&] { sink = std::abs(helm::apply_operator(prob, x, par::Exec::Serial)[0]); });
    double tp = time_of([&] { sink = std::abs(helm::apply_operator(prob, x, par::Exec::OpenMP)[0]); });
    (void)sink;
    report("operator apply", ts, tp);

    auto u = helm::assemble_and_solve(prob);
    helm::Region region{0, M_PI, 0, M_PI};
    double ts2 = time_of([&] { sink = helm::restriction_error(u, u, region, par::Exec::Serial) + 1; });
    double tp2 = time_of([&] { sink = helm::restriction_error(u, u, region, par::Exec::OpenMP) + 1; });
    report("restriction max-norm", ts2, tp2);
  }
  return 0;
}
