// SPDX-License-Identifier: Apache-2.0

#ifndef ZPML_PML_GRID_HPP
#define ZPML_PML_GRID_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "zpml/sfraction.hpp"

namespace zpml::grid {

/// A uniform interior grid glued to a PML layer as one step sequence.
/// Signed index convention: j runs -ell..n-1 for dual steps and -ell..n for
/// primal steps; arrays are stored zero-based with `offset() = ell`, so
/// hhat(j) = merged_hhat[j+ell]. The gluing convention is hhat(0) =
/// layer.hhat[0] + h/2, every other interior step equals h and layer steps
/// pass through unchanged.
struct MergedGrid {
  double h = 0;
  int ell = 0;
  sfrac::GridSteps layer;
  std::vector<std::complex<double>> merged_hhat;  // j = -ell .. n-1
  std::vector<std::complex<double>> merged_h;     // j = -ell .. n

  int offset() const { return ell; }
  int n() const { return layer.n; }
  /// Primal nodes x_{-ell}..x_n, the index range of the single merged
  /// recursion (the walls x_{-ell-1} and x_n carry the Dirichlet data).
  int total_points() const { return ell + layer.n + 1; }
  std::complex<double> hhat(int j) const { return merged_hhat[static_cast<size_t>(j + ell)]; }
  std::complex<double> hstep(int j) const { return merged_h[static_cast<size_t>(j + ell)]; }
};

MergedGrid merge_grid(double h, int ell, const sfrac::GridSteps& layer);

/// Self-describing grid file: '#'-prefixed metadata lines (key=value),
/// a header row, then index,hhat_re,hhat_im,h_re,h_im rows at 17 significant
/// digits. Reading is a lossless round trip on the decimal representation.
void write_grid_file(std::ostream& os, const MergedGrid& g,
                     const std::map<std::string, std::string>& metadata = {});
MergedGrid read_grid_file(std::istream& is, std::map<std::string, std::string>* metadata = nullptr);

std::string merged_to_json(const MergedGrid& g, const std::map<std::string, std::string>& metadata = {});

}  // namespace zpml::grid

#endif  // ZPML_PML_GRID_HPP
