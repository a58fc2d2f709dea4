// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <sstream>

#include "doctest.h"
#include "zpml/pml_grid.hpp"

using namespace zpml;
using mp::Complex;

namespace {

sfrac::GridSteps fake_layer(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.5);
  sfrac::GridSteps g;
  g.n = n;
  for (int k = 0; k < n; ++k) {
    g.hhat.push_back(Complex::of(u(rng), -u(rng), 64));
    g.hstep.push_back(Complex::of(u(rng), -u(rng), 64));
  }
  return g;
}

}  // namespace

TEST_CASE("merging is index-exact") {
  auto layer = fake_layer(3, 1);
  auto g = grid::merge_grid(0.25, 2, layer);
  CHECK(g.merged_hhat.size() == 5);  // ell + n
  CHECK(g.merged_h.size() == 6);     // ell + n + 1
  CHECK(g.total_points() == 6);      // ell + n + 1
  for (int j = -2; j < 0; ++j) CHECK(g.hhat(j) == std::complex<double>(0.25, 0));
  for (int j = -2; j <= 0; ++j) CHECK(g.hstep(j) == std::complex<double>(0.25, 0));
  CHECK(g.hhat(0) == layer.hhat_d()[0] + 0.125);
  for (int j = 1; j < 3; ++j) CHECK(g.hhat(j) == layer.hhat_d()[static_cast<size_t>(j)]);
  for (int j = 1; j <= 3; ++j) CHECK(g.hstep(j) == layer.hstep_d()[static_cast<size_t>(j - 1)]);
}

TEST_CASE("zero interior dual points leaves only the glued edge and the layer") {
  auto layer = fake_layer(4, 2);
  auto g = grid::merge_grid(0.5, 0, layer);
  CHECK(g.merged_hhat.size() == 4);
  CHECK(g.merged_h.size() == 5);
  CHECK(g.hhat(0) == layer.hhat_d()[0] + 0.25);
  CHECK(g.hstep(0) == std::complex<double>(0.5, 0));
}

TEST_CASE("layer of uniform steps h merges into a uniform grid except the 3h/2 edge") {
  sfrac::GridSteps layer;
  layer.n = 3;
  for (int k = 0; k < 3; ++k) {
    layer.hhat.push_back(Complex::of(0.2, 0.0, 64));
    layer.hstep.push_back(Complex::of(0.2, 0.0, 64));
  }
  auto g = grid::merge_grid(0.2, 2, layer);
  for (int j = -2; j < 3; ++j) {
    if (j == 0)
      CHECK(g.hhat(j) == std::complex<double>(0.3, 0));
    else
      CHECK(g.hhat(j) == std::complex<double>(0.2, 0));
  }
  for (int j = -2; j <= 3; ++j) CHECK(g.hstep(j) == std::complex<double>(0.2, 0));
}

TEST_CASE("grid file write/read round trip is byte identical") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    auto g = grid::merge_grid(0.125, 3, fake_layer(5, seed));
    std::ostringstream os1;
    grid::write_grid_file(os1, g, {{"kind", "discrete"}, {"m", "10"}});
    std::istringstream is(os1.str());
    std::map<std::string, std::string> meta;
    auto g2 = grid::read_grid_file(is, &meta);
    CHECK(meta.at("kind") == "discrete");
    CHECK(meta.at("m") == "10");
    std::ostringstream os2;
    grid::write_grid_file(os2, g2, {{"kind", "discrete"}, {"m", "10"}});
    CHECK(os1.str() == os2.str());
  }
}

TEST_CASE("parse failures carry a line number") {
  std::istringstream empty("");
  CHECK_THROWS_AS(grid::read_grid_file(empty), ValidationError);
  std::istringstream garbage("# zpml-merged-grid v1\n# h=0.1\n# ell=0\n# n=1\nindex,hhat_re,hhat_im,h_re,h_im\n0,bogus,0,0.1,0\n");
  try {
    grid::read_grid_file(garbage);
    FAIL("expected a parse error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }
}

TEST_CASE("hand-written two-step file parses to the written values") {
  std::string text =
      "# zpml-merged-grid v1\n"
      "# h=0.5\n"
      "# ell=0\n"
      "# n=2\n"
      "index,hhat_re,hhat_im,h_re,h_im\n"
      "0,0.75,-0.125,0.5,0\n"
      "1,0.25,-0.5,0.3,-0.2\n"
      "2,,,0.1,-0.4\n";
  std::istringstream is(text);
  auto g = grid::read_grid_file(is);
  CHECK(g.h == 0.5);
  CHECK(g.ell == 0);
  CHECK(g.n() == 2);
  CHECK(g.hhat(0) == std::complex<double>(0.75, -0.125));
  CHECK(g.hhat(1) == std::complex<double>(0.25, -0.5));
  CHECK(g.hstep(1) == std::complex<double>(0.3, -0.2));
  CHECK(g.hstep(2) == std::complex<double>(0.1, -0.4));
  // the layer reconstructed from the merged arrays undoes the h/2 convention
  CHECK(g.layer.hhat_d()[0] == std::complex<double>(0.5, -0.125));
}

TEST_CASE("merge validation") {
  CHECK_THROWS_AS(grid::merge_grid(0, 1, fake_layer(2, 9)), ValidationError);
  CHECK_THROWS_AS(grid::merge_grid(0.1, -1, fake_layer(2, 9)), ValidationError);
  CHECK_THROWS_AS(grid::merge_grid(0.1, 1, sfrac::GridSteps{}), ValidationError);
}
