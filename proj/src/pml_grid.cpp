// SPDX-License-Identifier: Apache-2.0

#include "zpml/pml_grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace zpml::grid {

MergedGrid merge_grid(double h, int ell, const sfrac::GridSteps& layer) {
  if (!(h > 0)) throw ValidationError("merge_grid: h must be positive");
  if (ell < 0) throw ValidationError("merge_grid: ell must be >= 0");
  if (layer.n < 1) throw ValidationError("merge_grid: empty layer");
  MergedGrid g;
  g.h = h;
  g.ell = ell;
  g.layer = layer;
  const int n = layer.n;
  g.merged_hhat.assign(static_cast<size_t>(ell + n), {h, 0});
  g.merged_h.assign(static_cast<size_t>(ell + n + 1), {h, 0});
  auto hh = layer.hhat_d();
  auto hs = layer.hstep_d();
  g.merged_hhat[static_cast<size_t>(ell)] = hh[0] + h / 2;  // j = 0
  for (int j = 1; j < n; ++j) g.merged_hhat[static_cast<size_t>(ell + j)] = hh[static_cast<size_t>(j)];
  for (int j = 1; j <= n; ++j) g.merged_h[static_cast<size_t>(ell + j)] = hs[static_cast<size_t>(j - 1)];
  return g;
}

namespace {
std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_grid_file(std::ostream& os, const MergedGrid& g,
                     const std::map<std::string, std::string>& metadata) {
  os << "# zpml-merged-grid v1\n";
  os << "# h=" << fmt17(g.h) << "\n";
  os << "# ell=" << g.ell << "\n";
  os << "# n=" << g.n() << "\n";
  for (const auto& [k, v] : metadata) os << "# " << k << "=" << v << "\n";
  os << "index,hhat_re,hhat_im,h_re,h_im\n";
  for (int j = -g.ell; j <= g.n(); ++j) {
    os << j << ",";
    if (j <= g.n() - 1) {
      auto hh = g.hhat(j);
      os << fmt17(hh.real()) << "," << fmt17(hh.imag()) << ",";
    } else {
      os << ",,";
    }
    auto hs = g.hstep(j);
    os << fmt17(hs.real()) << "," << fmt17(hs.imag()) << "\n";
  }
}

MergedGrid read_grid_file(std::istream& is, std::map<std::string, std::string>* metadata) {
  MergedGrid g;
  int n = -1;
  bool have_h = false, have_ell = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw ValidationError("grid file parse error at line " + std::to_string(lineno) + ": " + why);
  };
  bool header_seen = false;
  std::vector<std::complex<double>> hhat, hstep;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      size_t s = body.find_first_not_of(' ');
      if (s == std::string::npos) continue;
      body = body.substr(s);
      size_t eq = body.find('=');
      if (eq == std::string::npos) continue;  // banner line
      std::string key = body.substr(0, eq), val = body.substr(eq + 1);
      if (key == "h") {
        g.h = std::strtod(val.c_str(), nullptr);
        have_h = true;
      } else if (key == "ell") {
        g.ell = std::atoi(val.c_str());
        have_ell = true;
      } else if (key == "n") {
        n = std::atoi(val.c_str());
      } else if (metadata) {
        (*metadata)[key] = val;
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("index,", 0) != 0) fail("expected column header 'index,...'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (cells.size() < 5) cells.emplace_back();
    if (cells.size() != 5) fail("expected 5 comma-separated fields");
    auto num = [&](const std::string& s) {
      char* end = nullptr;
      double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str()) fail("bad number '" + s + "'");
      return v;
    };
    if (!cells[1].empty()) hhat.emplace_back(num(cells[1]), num(cells[2]));
    hstep.emplace_back(num(cells[3]), num(cells[4]));
  }
  if (!header_seen || hstep.empty()) {
    lineno = std::max(lineno, 1);
    throw ValidationError("grid file parse error at line " + std::to_string(lineno) +
                          ": no grid rows found");
  }
  if (!have_h || !have_ell || n < 1) fail("missing h/ell/n metadata");
  if (static_cast<int>(hhat.size()) != g.ell + n || static_cast<int>(hstep.size()) != g.ell + n + 1)
    fail("row count does not match ell/n metadata");
  g.merged_hhat = std::move(hhat);
  g.merged_h = std::move(hstep);
  // reconstruct the layer from the merged arrays
  g.layer.n = n;
  g.layer.hhat.clear();
  g.layer.hstep.clear();
  auto first = g.hhat(0) - g.h / 2;
  g.layer.hhat.push_back(mp::Complex::of(first, 64));
  for (int j = 1; j < n; ++j) g.layer.hhat.push_back(mp::Complex::of(g.hhat(j), 64));
  for (int j = 1; j <= n; ++j) g.layer.hstep.push_back(mp::Complex::of(g.hstep(j), 64));
  return g;
}

std::string merged_to_json(const MergedGrid& g, const std::map<std::string, std::string>& metadata) {
  nlohmann::json j;
  j["h"] = g.h;
  j["ell"] = g.ell;
  j["n"] = g.n();
  for (const auto& [k, v] : metadata) j["metadata"][k] = v;
  for (int i = -g.ell; i <= g.n(); ++i) {
    if (i <= g.n() - 1) j["hhat"].push_back({g.hhat(i).real(), g.hhat(i).imag()});
    j["hstep"].push_back({g.hstep(i).real(), g.hstep(i).imag()});
  }
  return j.dump(2);
}

}  // namespace zpml::grid
