// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_HELMHOLTZ_HPP
#define ZPML_HELMHOLTZ_HPP

#include <complex>
#include <functional>
#include <vector>

#include "zpml/kernels.hpp"
#include "zpml/pml_grid.hpp"
#include "zpml/zolotarev.hpp"

namespace zpml::helm {

/// Tridiagonal Dirichlet discretization of -c(t)^2 d^2/dt^2 on (0, length),
/// sampled at the N interior nodes t_i = i*h, h = length/(N+1).
struct TangentialOperator {
  double length = 0;
  int N = 0;
  double h = 0;
  std::vector<double> c;  // size N; empty means c == 1

  static TangentialOperator make(double length, int N, std::function<double(double)> profile = {});
  bool constant_c() const;
  /// Ascending eigenvalues of L; the analytic cosine formula when c is
  /// constant, a symmetric tridiagonal eigensolve (similarity C(-D)C) else.
  std::vector<double> eigenvalues() const;
  /// The tridiagonal eigensolve unconditionally (oracle cross-check path).
  std::vector<double> eigenvalues_tridiagonal() const;
};

struct SpectralIntervals {
  zolotarev::IntervalPair K;
  int i0;  // eigenvalue count left of k^2
};

/// Inclusion intervals for spec(L - k^2 I): inner edges exact, outer edges
/// pushed outward by the relative margin. Throws if k^2 does not fall
/// strictly between two consecutive eigenvalues.
SpectralIntervals spectral_intervals(const TangentialOperator& op, double k, double margin);

/// One axis of a tensor-product grid: a uniform interior with an optional
/// absorbing layer glued to either end (merged dual step hhat0 + h/2 at the
/// edge node, Dirichlet wall beyond the last layer node).
struct AxisGrid {
  std::vector<std::complex<double>> hstep;  // size() + 1 primal steps, walls included
  std::vector<std::complex<double>> hhat;   // dual step at each unknown node
  std::vector<double> coord;                // physical coordinate, NaN inside layers
  int first_phys = 0, last_phys = -1;
  double h = 0;

  size_t size() const { return hhat.size(); }
  bool is_phys(int t) const { return t >= first_phys && t <= last_phys; }
  /// Unknown index of the physical coordinate x (must lie on the grid).
  int index_of(double x) const;
};

AxisGrid make_axis(double lo, double hi, double h, const sfrac::GridSteps* left_layer,
                   const sfrac::GridSteps* right_layer);

struct PointSource {
  double x = 0, y = 0;
  std::complex<double> amplitude{0, 0};
};

/// 2D problem c(x,y)^2 (u_xx + u_yy) + k^2 u = f, assembled in the
/// c^2-divided form on the PML-augmented tensor grid. The wave speed is
/// evaluated with coordinates clamped to the physical box, which extends it
/// tangentially constant into the layers.
struct HelmholtzProblem2D {
  AxisGrid ax, ay;
  double k = 0;
  std::function<double(double, double)> wave_speed;  // empty means c == 1
  PointSource source;

  size_t unknowns() const { return ax.size() * ay.size(); }
  double c_at(int ix, int iy) const;
};

struct FieldSolution {
  AxisGrid ax, ay;
  std::vector<std::complex<double>> u;  // row-major: ix * ay.size() + iy

  std::complex<double> at(int ix, int iy) const {
    return u[static_cast<size_t>(ix) * ay.size() + static_cast<size_t>(iy)];
  }
};

/// Direct sparse complex LU solve of the 5-point variable-step system.
/// Throws NumericalError on a singular factorization (near-resonance).
FieldSolution assemble_and_solve(const HelmholtzProblem2D& p, par::Exec exec = par::Exec::OpenMP);

/// y = M x for the assembled operator, without forming the sparse matrix.
std::vector<std::complex<double>> apply_operator(const HelmholtzProblem2D& p,
                                                 const std::vector<std::complex<double>>& x,
                                                 par::Exec exec = par::Exec::OpenMP);
/// Right-hand side of the assembled system (point source, c^2-divided).
std::vector<std::complex<double>> assemble_rhs(const HelmholtzProblem2D& p);

struct Region {
  double x0, x1, y0, y1;
  bool contains(double x, double y) const {
    return x >= x0 - 1e-12 && x <= x1 + 1e-12 && y >= y0 - 1e-12 && y <= y1 + 1e-12;
  }
};

/// max |u1 - u2| / max |u1| over coincident physical nodes inside the region.
double restriction_error(const FieldSolution& u1, const FieldSolution& u2, const Region& region,
                         par::Exec exec = par::Exec::OpenMP);

/// Scalar 1D solve of the layer recursion with A = a: returns u_0, which the
/// Schur-complement identity makes equal to R_n(a) * b.
std::complex<double> solve_layer_1d(const sfrac::GridSteps& steps, std::complex<double> a,
                                    std::complex<double> b);

struct SweepPoint {
  int m;
  double err;
};
/// exp of the least-squares slope of log(err) against m.
double fitted_rate(const std::vector<SweepPoint>& points);

}  // namespace zpml::helm

#endif  // ZPML_HELMHOLTZ_HPP
