// SPDX-License-Identifier: Apache-2.0

#include "zpml/helmholtz.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

namespace zpml::helm {

using cd = std::complex<double>;

TangentialOperator TangentialOperator::make(double length, int N,
                                            std::function<double(double)> profile) {
  if (!(length > 0) || N < 2) throw ValidationError("tangential operator: need length > 0, N >= 2");
  TangentialOperator op;
  op.length = length;
  op.N = N;
  op.h = length / (N + 1);
  if (profile) {
    op.c.resize(static_cast<size_t>(N));
    for (int i = 1; i <= N; ++i) {
      double ci = profile(i * op.h);
      if (!(ci > 0)) throw ValidationError("tangential operator: wave speed must be positive");
      op.c[static_cast<size_t>(i - 1)] = ci;
    }
    if (std::all_of(op.c.begin(), op.c.end(), [&](double v) { return v == op.c[0]; }) &&
        op.c[0] == 1.0)
      op.c.clear();
  }
  return op;
}

bool TangentialOperator::constant_c() const {
  if (c.empty()) return true;
  return std::all_of(c.begin(), c.end(), [&](double v) { return v == c[0]; });
}

std::vector<double> TangentialOperator::eigenvalues() const {
  if (!constant_c()) return eigenvalues_tridiagonal();
  std::vector<double> lam(static_cast<size_t>(N));
  const double c0 = c.empty() ? 1.0 : c[0];
  for (int j = 1; j <= N; ++j) {
    double s = std::sin(j * M_PI / (2.0 * (N + 1)));
    lam[static_cast<size_t>(j - 1)] = c0 * c0 * 4.0 * s * s / (h * h);
  }
  return lam;
}

std::vector<double> TangentialOperator::eigenvalues_tridiagonal() const {
  // similarity transform C (-D) C is symmetric tridiagonal with the same
  // spectrum as L = -C^2 D
  std::vector<double> lam(static_cast<size_t>(N));
  auto cv = [&](int i) { return c.empty() ? 1.0 : c[static_cast<size_t>(i)]; };
  Eigen::VectorXd diag(N), sub(N - 1);
  for (int i = 0; i < N; ++i) diag[i] = 2.0 * cv(i) * cv(i) / (h * h);
  for (int i = 0; i + 1 < N; ++i) sub[i] = -cv(i) * cv(i + 1) / (h * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
  for (int i = 0; i < N; ++i) lam[static_cast<size_t>(i)] = es.eigenvalues()[i];
  std::sort(lam.begin(), lam.end());
  return lam;
}

SpectralIntervals spectral_intervals(const TangentialOperator& op, double k, double margin) {
  if (margin < 0) throw ValidationError("spectral_intervals: margin must be >= 0");
  std::vector<double> lam = op.eigenvalues();
  const double k2 = k * k;
  auto it = std::lower_bound(lam.begin(), lam.end(), k2);
  int i0 = static_cast<int>(it - lam.begin());  // eigenvalues strictly below k^2
  if (i0 == 0 || i0 == op.N)
    throw ValidationError("spectral_intervals: k^2 outside the spectrum, no gap to split");
  double below = lam[static_cast<size_t>(i0 - 1)], above = lam[static_cast<size_t>(i0)];
  if (!(below < k2 && k2 < above) || (above - below) < 1e-12 * std::abs(k2))
    throw ValidationError("spectral_intervals: k^2 falls inside an eigenvalue cluster");
  double a1 = (lam.front() - k2) * (1 + margin);
  double b1 = below - k2;
  double a2 = above - k2;
  double b2 = (lam.back() - k2) * (1 + margin);
  return {zolotarev::IntervalPair(a1, b1, a2, b2), i0};
}

int AxisGrid::index_of(double x) const {
  for (int t = first_phys; t <= last_phys; ++t)
    if (std::abs(coord[static_cast<size_t>(t)] - x) < 1e-9 * h) return t;
  throw ValidationError("axis: coordinate does not lie on the grid");
}

AxisGrid make_axis(double lo, double hi, double h, const sfrac::GridSteps* left_layer,
                   const sfrac::GridSteps* right_layer) {
  if (!(h > 0) || !(lo < hi)) throw ValidationError("make_axis: need lo < hi and h > 0");
  const int Nc = static_cast<int>(std::llround((hi - lo) / h));
  if (std::abs(Nc * h - (hi - lo)) > 1e-9 * h)
    throw ValidationError("make_axis: (hi-lo)/h must be an integer cell count");
  AxisGrid g;
  g.h = h;
  auto push = [&](cd hs, cd hh, double x) {
    g.hstep.push_back(hs);
    g.hhat.push_back(hh);
    g.coord.push_back(x);
  };
  const double nanv = std::nan("");
  if (left_layer) {
    auto hh = left_layer->hhat_d();
    auto hs = left_layer->hstep_d();
    const int n = left_layer->n;
    // mirrored: wall sits beyond layer node n-1; edge node lo gets hhat0 + h/2
    for (int j = n - 1; j >= 1; --j) push(hs[static_cast<size_t>(j)], hh[static_cast<size_t>(j)], nanv);
    push(hs[0], hh[0] + h / 2, lo);
    g.first_phys = static_cast<int>(g.hhat.size()) - 1;
  } else {
    g.first_phys = 0;
  }
  // interior nodes lo+h .. hi-h; a side without a layer has its Dirichlet
  // wall at the boundary node itself, a side with a layer owns that node
  for (int i = 1; i <= Nc - 1; ++i) push({h, 0}, {h, 0}, lo + i * h);
  if (right_layer) {
    auto hh = right_layer->hhat_d();
    auto hs = right_layer->hstep_d();
    const int n = right_layer->n;
    push({h, 0}, hh[0] + h / 2, hi);
    g.last_phys = static_cast<int>(g.hhat.size()) - 1;
    for (int j = 1; j <= n - 1; ++j) push(hs[static_cast<size_t>(j - 1)], hh[static_cast<size_t>(j)], nanv);
    g.hstep.push_back(hs[static_cast<size_t>(n - 1)]);  // final step to the wall
  } else {
    g.last_phys = static_cast<int>(g.hhat.size()) - 1;
    g.hstep.push_back({h, 0});
  }
  return g;
}

double HelmholtzProblem2D::c_at(int ix, int iy) const {
  if (!wave_speed) return 1.0;
  double x = ax.coord[static_cast<size_t>(ix)];
  double y = ay.coord[static_cast<size_t>(iy)];
  // clamp into the physical box: tangentially constant extension into layers
  double xlo = ax.coord[static_cast<size_t>(ax.first_phys)];
  double xhi = ax.coord[static_cast<size_t>(ax.last_phys)];
  double ylo = ay.coord[static_cast<size_t>(ay.first_phys)];
  double yhi = ay.coord[static_cast<size_t>(ay.last_phys)];
  if (std::isnan(x)) x = (ix < ax.first_phys) ? xlo : xhi;
  if (std::isnan(y)) y = (iy < ay.first_phys) ? ylo : yhi;
  return wave_speed(std::clamp(x, xlo, xhi), std::clamp(y, ylo, yhi));
}

namespace {

struct Stencil {
  cd diag, west, east, south, north;
};

Stencil stencil_at(const HelmholtzProblem2D& p, int ix, int iy) {
  const auto& ax = p.ax;
  const auto& ay = p.ay;
  const cd hw = ax.hstep[static_cast<size_t>(ix)], he = ax.hstep[static_cast<size_t>(ix) + 1];
  const cd hs = ay.hstep[static_cast<size_t>(iy)], hn = ay.hstep[static_cast<size_t>(iy) + 1];
  const cd dx = ax.hhat[static_cast<size_t>(ix)], dy = ay.hhat[static_cast<size_t>(iy)];
  Stencil s;
  s.west = 1.0 / (dx * hw);
  s.east = 1.0 / (dx * he);
  s.south = 1.0 / (dy * hs);
  s.north = 1.0 / (dy * hn);
  const double c = p.c_at(ix, iy);
  s.diag = -(s.west + s.east + s.south + s.north) + p.k * p.k / (c * c);
  return s;
}

}  // namespace

std::vector<cd> assemble_rhs(const HelmholtzProblem2D& p) {
  const size_t ny = p.ay.size();
  std::vector<cd> b(p.unknowns(), cd(0, 0));
  if (p.source.amplitude != cd(0, 0)) {
    int ix = p.ax.index_of(p.source.x);
    int iy = p.ay.index_of(p.source.y);
    const double c = p.c_at(ix, iy);
    cd cell = p.ax.hhat[static_cast<size_t>(ix)] * p.ay.hhat[static_cast<size_t>(iy)];
    b[static_cast<size_t>(ix) * ny + static_cast<size_t>(iy)] =
        p.source.amplitude / cell / (c * c);
  }
  return b;
}

FieldSolution assemble_and_solve(const HelmholtzProblem2D& p, par::Exec exec) {
  const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(p.ax.size());
  const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(p.ay.size());
  const std::ptrdiff_t n = nx * ny;
  std::vector<Eigen::Triplet<cd>> trips(static_cast<size_t>(5 * n));
  const bool omp = exec == par::Exec::OpenMP;
#pragma omp parallel for schedule(static) if (omp)
  for (std::ptrdiff_t ix = 0; ix < nx; ++ix) {
    for (std::ptrdiff_t iy = 0; iy < ny; ++iy) {
      const std::ptrdiff_t row = ix * ny + iy;
      Stencil s = stencil_at(p, static_cast<int>(ix), static_cast<int>(iy));
      auto* t = &trips[static_cast<size_t>(5 * row)];
      t[0] = {static_cast<int>(row), static_cast<int>(row), s.diag};
      t[1] = (ix > 0) ? Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row - ny), s.west}
                      : Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row), cd(0, 0)};
      t[2] = (ix + 1 < nx) ? Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row + ny), s.east}
                           : Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row), cd(0, 0)};
      t[3] = (iy > 0) ? Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row - 1), s.south}
                      : Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row), cd(0, 0)};
      t[4] = (iy + 1 < ny) ? Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row + 1), s.north}
                           : Eigen::Triplet<cd>{static_cast<int>(row), static_cast<int>(row), cd(0, 0)};
    }
  }
  Eigen::SparseMatrix<cd> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  std::vector<cd> rhs = assemble_rhs(p);
  Eigen::Map<const Eigen::VectorXcd> b(rhs.data(), n);
  Eigen::SparseLU<Eigen::SparseMatrix<cd>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw NumericalError("sparse LU factorization failed (near-resonant system?)");
  Eigen::VectorXcd x = lu.solve(b);
  FieldSolution sol;
  sol.ax = p.ax;
  sol.ay = p.ay;
  sol.u.assign(x.data(), x.data() + n);
  return sol;
}

std::vector<cd> apply_operator(const HelmholtzProblem2D& p, const std::vector<cd>& x,
                               par::Exec exec) {
  const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(p.ax.size());
  const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(p.ay.size());
  if (x.size() != static_cast<size_t>(nx * ny)) throw ValidationError("apply_operator: size mismatch");
  std::vector<cd> y(x.size());
  const bool omp = exec == par::Exec::OpenMP;
#pragma omp parallel for schedule(static) if (omp)
  for (std::ptrdiff_t ix = 0; ix < nx; ++ix) {
    for (std::ptrdiff_t iy = 0; iy < ny; ++iy) {
      const size_t row = static_cast<size_t>(ix * ny + iy);
      Stencil s = stencil_at(p, static_cast<int>(ix), static_cast<int>(iy));
      cd acc = s.diag * x[row];
      if (ix > 0) acc += s.west * x[row - static_cast<size_t>(ny)];
      if (ix + 1 < nx) acc += s.east * x[row + static_cast<size_t>(ny)];
      if (iy > 0) acc += s.south * x[row - 1];
      if (iy + 1 < ny) acc += s.north * x[row + 1];
      y[row] = acc;
    }
  }
  return y;
}

double restriction_error(const FieldSolution& u1, const FieldSolution& u2, const Region& region,
                         par::Exec exec) {
  const double h = u2.ax.h;
  if (std::abs(u1.ax.h - h) > 1e-12 * h || std::abs(u1.ay.h - h) > 1e-12 * h)
    throw ValidationError("restriction_error: fields live on different step sizes");
  // collect u2's physical nodes inside the region and locate them in u1
  const double x1base = u1.ax.coord[static_cast<size_t>(u1.ax.first_phys)];
  const double y1base = u1.ay.coord[static_cast<size_t>(u1.ay.first_phys)];
  std::vector<std::pair<int, int>> pairs_x, pairs_y;
  for (int ix = u2.ax.first_phys; ix <= u2.ax.last_phys; ++ix) {
    double x = u2.ax.coord[static_cast<size_t>(ix)];
    if (!(x >= region.x0 - 1e-12 && x <= region.x1 + 1e-12)) continue;
    int jx = u1.ax.first_phys + static_cast<int>(std::llround((x - x1base) / h));
    if (jx < u1.ax.first_phys || jx > u1.ax.last_phys ||
        std::abs(u1.ax.coord[static_cast<size_t>(jx)] - x) > 1e-9 * h)
      throw ValidationError("restriction_error: node sets do not match in x");
    pairs_x.emplace_back(ix, jx);
  }
  for (int iy = u2.ay.first_phys; iy <= u2.ay.last_phys; ++iy) {
    double y = u2.ay.coord[static_cast<size_t>(iy)];
    if (!(y >= region.y0 - 1e-12 && y <= region.y1 + 1e-12)) continue;
    int jy = u1.ay.first_phys + static_cast<int>(std::llround((y - y1base) / h));
    if (jy < u1.ay.first_phys || jy > u1.ay.last_phys ||
        std::abs(u1.ay.coord[static_cast<size_t>(jy)] - y) > 1e-9 * h)
      throw ValidationError("restriction_error: node sets do not match in y");
    pairs_y.emplace_back(iy, jy);
  }
  if (pairs_x.empty() || pairs_y.empty())
    throw ValidationError("restriction_error: region contains no common nodes");
  double dmax = 0, nmax = 0;
  const std::ptrdiff_t npx = static_cast<std::ptrdiff_t>(pairs_x.size());
  const bool omp = exec == par::Exec::OpenMP;
#pragma omp parallel for schedule(static) reduction(max : dmax, nmax) if (omp)
  for (std::ptrdiff_t i = 0; i < npx; ++i) {
    auto [ix2, ix1] = pairs_x[static_cast<size_t>(i)];
    for (auto [iy2, iy1] : pairs_y) {
      cd a = u1.at(ix1, iy1), b = u2.at(ix2, iy2);
      dmax = std::max(dmax, std::abs(a - b));
      nmax = std::max(nmax, std::abs(a));
    }
  }
  if (nmax == 0) throw NumericalError("restriction_error: reference field vanishes on the region");
  return dmax / nmax;
}

std::complex<double> solve_layer_1d(const sfrac::GridSteps& steps, cd a, cd b) {
  const int n = steps.n;
  auto hh = steps.hhat_d();
  auto hs = steps.hstep_d();
  // Thomas algorithm on the tridiagonal system of the layer recursion
  std::vector<cd> diag(static_cast<size_t>(n)), lower(static_cast<size_t>(n)),
      upper(static_cast<size_t>(n)), rhs(static_cast<size_t>(n), cd(0, 0));
  // h_j = hs[j-1]; row j couples u_{j-1}, u_j, u_{j+1} with u_n = 0
  for (int j = 0; j < n; ++j) {
    const size_t sj = static_cast<size_t>(j);
    cd inv_left = (j == 0) ? cd(0, 0) : 1.0 / (hh[sj] * hs[sj - 1]);
    cd inv_right = 1.0 / (hh[sj] * hs[sj]);
    lower[sj] = inv_left;
    upper[sj] = (j + 1 < n) ? inv_right : cd(0, 0);
    diag[sj] = -inv_left - inv_right - a;
  }
  rhs[0] = -b / hh[0];
  // forward elimination
  for (int j = 1; j < n; ++j) {
    cd w = lower[static_cast<size_t>(j)] / diag[static_cast<size_t>(j - 1)];
    diag[static_cast<size_t>(j)] -= w * upper[static_cast<size_t>(j - 1)];
    rhs[static_cast<size_t>(j)] -= w * rhs[static_cast<size_t>(j - 1)];
  }
  std::vector<cd> u(static_cast<size_t>(n));
  u[static_cast<size_t>(n - 1)] = rhs[static_cast<size_t>(n - 1)] / diag[static_cast<size_t>(n - 1)];
  for (int j = n - 2; j >= 0; --j)
    u[static_cast<size_t>(j)] =
        (rhs[static_cast<size_t>(j)] - upper[static_cast<size_t>(j)] * u[static_cast<size_t>(j + 1)]) /
        diag[static_cast<size_t>(j)];
  return u[0];
}

double fitted_rate(const std::vector<SweepPoint>& points) {
  if (points.size() < 2) throw ValidationError("fitted_rate: need at least two sweep points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : points) {
    if (!(p.err > 0)) throw ValidationError("fitted_rate: errors must be positive");
    double x = p.m, y = std::log(p.err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace zpml::helm
