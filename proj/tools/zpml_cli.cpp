// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: builds near-optimal complex PML grids for
// indefinite Helmholtz problems (two-interval rational interpolation of the
// inverse-square-root impedance), converts them to finite-difference steps,
// and reproduces the error tables and 2D convergence experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zpml/elliptic.hpp"
#include "zpml/experiments.hpp"
#include "zpml/interpolant.hpp"
#include "zpml/pml_grid.hpp"
#include "zpml/selftest.hpp"
#include "zpml/sfraction.hpp"

using json = nlohmann::json;
using namespace zpml;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_csv_doubles(const std::string& s, size_t expect) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    double x = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) throw ValidationError("bad number in list: '" + cell + "'");
    v.push_back(x);
  }
  if (expect && v.size() != expect)
    throw ValidationError("expected " + std::to_string(expect) + " comma-separated values");
  return v;
}

std::vector<int> parse_m_list(const std::string& s) {
  std::vector<int> v;
  for (double x : parse_csv_doubles(s, 0)) v.push_back(static_cast<int>(std::llround(x)));
  if (v.empty()) throw ValidationError("empty m list");
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) throw ValidationError("m list must be strictly increasing");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open output file: " + path);
  return os;
}

void echo_config(const json& cfg, const std::string& out_prefix) {
  std::cout << "config: " << cfg.dump() << "\n";
  auto os = open_out(out_prefix + ".config.json");
  os << cfg.dump(2) << "\n";
}

json load_config_file(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream is(argv[i + 1]);
      if (!is) throw ValidationError(std::string("cannot read config file: ") + argv[i + 1]);
      json j;
      is >> j;
      return j;
    }
  return json::object();
}

template <class T>
void from_cfg(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg[key].get<T>();
}

interp::ImpedanceKind make_kind(const std::string& kind, double h) {
  if (kind == "continuous") return interp::ImpedanceKind::continuous();
  if (kind == "discrete") return interp::ImpedanceKind::discrete(h);
  throw ValidationError("kind must be 'continuous' or 'discrete'");
}

// ---------------------------------------------------------------- approx ---

struct ApproxArgs {
  std::string interval = "-1e3,-1,1,1e4";
  std::string m_list = "6,12,18,24,30,36,42,48,54,60";
  std::string kind = "continuous";
  double h = 0.01;
  long precision = 0;
  int samples = 10000;
  std::string out = "zpml_approx";
  std::string surface;
  std::string dump_interpolant;
};

int cmd_approx(const ApproxArgs& a) {
  auto iv = parse_csv_doubles(a.interval, 4);
  zolotarev::IntervalPair K(iv[0], iv[1], iv[2], iv[3]);
  std::vector<int> ms = parse_m_list(a.m_list);
  interp::ImpedanceKind kind = make_kind(a.kind, a.h);
  mp::Prec prec = a.precision > 0 ? static_cast<mp::Prec>(a.precision)
                                  : zolotarev::default_precision(ms.back());
  json cfg = {{"command", "approx"},       {"interval", iv},
              {"m_list", ms},              {"kind", a.kind},
              {"h", a.h},                  {"precision_bits", static_cast<long>(prec)},
              {"samples", a.samples},      {"out", a.out}};
  echo_config(cfg, a.out);

  auto os = open_out(a.out + ".csv");
  os << "m,m1,m2,lower_bound,relative_error,upper_bound,condition\n";
  char buf[256];
  for (int m : ms) {
    auto R = interp::build_interpolant(K, m, kind, prec);
    double err = interp::relative_error(R, a.samples);
    double lo = R.plan.t2_lower.to_double();
    double hi = R.plan.t2_condition_holds ? R.plan.t2_upper.to_double() : std::nan("");
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.6e,%.6e,%.6e,%d\n", m, R.plan.m1, R.plan.m2, lo,
                  err, hi, R.plan.t2_condition_holds ? 1 : 0);
    os << buf;
    std::cout << buf;
    if (!a.dump_interpolant.empty() && m == ms.back()) {
      auto js = open_out(a.dump_interpolant);
      js << R.to_json() << "\n";
    }
    if (!a.surface.empty() && m == ms.back()) {
      auto ss = open_out(a.surface);
      ss << "re,im,rel_err\n";
      // symmetric-log grid over the complex plane around K
      auto symlog = [](double lo_mag, double hi_mag, int n, std::vector<double>& out_v) {
        out_v.push_back(0);
        for (int i = 0; i < n; ++i) {
          double v = lo_mag * std::pow(hi_mag / lo_mag, static_cast<double>(i) / (n - 1));
          out_v.push_back(v);
          out_v.push_back(-v);
        }
        std::sort(out_v.begin(), out_v.end());
      };
      std::vector<double> xs, ys;
      symlog(std::abs(K.b1) * 0.1, 2 * K.b2, 120, xs);
      symlog(1e-1, 2 * std::sqrt(-K.a1 * K.b2), 60, ys);
      for (double y : ys)
        for (double x : xs) {
          std::complex<double> z(x, y);
          if (std::abs(z) == 0.0) continue;
          double e = std::abs(R.eval_pf_d(z) / interp::impedance_eval_d(R.kind, z) - 1.0);
          std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e\n", x, y, e);
          ss << buf;
        }
    }
  }
  return 0;
}

// ------------------------------------------------------------------ grid ---

struct GridArgs {
  std::string interval;
  std::string interval1, interval2;
  int m = 0;
  int m1 = -1, m2 = -1;
  std::string kind = "continuous";
  double h = 0.01;
  long precision = 0;
  std::string out = "zpml_grid";
  double merge_h = 0;
  int merge_ell = -1;
};

int cmd_grid(const GridArgs& a) {
  int m = a.m;
  if (a.m1 >= 0 && a.m2 >= 0) m = a.m1 + a.m2;
  if (m <= 0) throw ValidationError("grid: specify --m or both --m1 and --m2");
  interp::ImpedanceKind kind = make_kind(a.kind, a.h);
  mp::Prec prec = a.precision > 0 ? static_cast<mp::Prec>(a.precision)
                                  : zolotarev::default_precision(m);

  interp::RationalInterpolant R;
  json iv_echo;
  if (!a.interval.empty()) {
    auto iv = parse_csv_doubles(a.interval, 4);
    zolotarev::IntervalPair K(iv[0], iv[1], iv[2], iv[3]);
    std::optional<std::pair<int, int>> split;
    if (a.m1 >= 0 && a.m2 >= 0) split = std::make_pair(a.m1, a.m2);
    R = interp::build_interpolant(K, m, kind, prec, split);
    iv_echo = iv;
  } else if (!a.interval2.empty()) {
    auto iv = parse_csv_doubles(a.interval2, 2);
    R = interp::build_interpolant(interp::SingleInterval{iv[0], iv[1], false}, m, kind, prec);
    iv_echo = iv;
  } else if (!a.interval1.empty()) {
    auto iv = parse_csv_doubles(a.interval1, 2);
    R = interp::build_interpolant(interp::SingleInterval{iv[0], iv[1], true}, m, kind, prec);
    iv_echo = iv;
  } else {
    throw ValidationError("grid: one of --interval, --interval1, --interval2 is required");
  }

  json cfg = {{"command", "grid"}, {"interval", iv_echo}, {"m", m},
              {"m1", R.plan.m1},   {"m2", R.plan.m2},     {"kind", a.kind},
              {"h", a.h},          {"precision_bits", static_cast<long>(prec)},
              {"out", a.out}};
  echo_config(cfg, a.out);

  auto steps = sfrac::to_sfraction(R);
  {
    auto os = open_out(a.out + "_steps.csv");
    sfrac::write_steps_csv(os, steps);
    auto js = open_out(a.out + "_steps.json");
    js << sfrac::steps_to_json(steps) << "\n";
  }
  {
    // cumulative grid-point locations: primal x_j = sum h_i, dual from hhat
    auto os = open_out(a.out + "_points.csv");
    os << "kind,index,re,im\n";
    char buf[160];
    std::complex<double> x(0, 0), xd(0, 0);
    std::snprintf(buf, sizeof buf, "primal,0,%.17g,%.17g\n", 0.0, 0.0);
    os << buf;
    std::snprintf(buf, sizeof buf, "dual,0,%.17g,%.17g\n", 0.0, 0.0);
    os << buf;
    for (int j = 0; j < steps.n; ++j) {
      x += steps.hstep[static_cast<size_t>(j)].to_double();
      xd += steps.hhat[static_cast<size_t>(j)].to_double();
      std::snprintf(buf, sizeof buf, "primal,%d,%.17g,%.17g\n", j + 1, x.real(), x.imag());
      os << buf;
      std::snprintf(buf, sizeof buf, "dual,%d,%.17g,%.17g\n", j + 1, xd.real(), xd.imag());
      os << buf;
    }
  }
  if (a.merge_h > 0 && a.merge_ell >= 0) {
    auto merged = grid::merge_grid(a.merge_h, a.merge_ell, steps);
    auto os = open_out(a.out + "_merged.csv");
    grid::write_grid_file(os, merged,
                          {{"kind", a.kind},
                           {"m", std::to_string(m)},
                           {"precision_bits", std::to_string(static_cast<long>(prec))}});
  }
  std::cout << "wrote " << a.out << "_steps.csv (" << steps.n << " dual/primal step pairs)\n";
  return 0;
}

// ----------------------------------------------------- waveguide / tensor ---

struct ExperimentArgs {
  double k = 0;  // 0 = command default
  double h = 0;
  std::string m_list;
  double margin = 0.05;
  long precision = 0;
  std::string out;
  bool quick = false;
  bool dump_fields = false;
  bool eigen_diagnostic = false;
  double source_x = std::nan(""), source_y = std::nan("");
};

void write_sweep(const std::string& out, const helm::ExperimentResult& res, const json& cfg) {
  echo_config(cfg, out);
  auto os = open_out(out + ".csv");
  os << "m,err\n";
  char buf[96];
  for (const auto& p : res.points) {
    std::snprintf(buf, sizeof buf, "%d,%.9e\n", p.m, p.err);
    os << buf;
    std::cout << buf;
  }
  json summary = {{"fitted_rate", res.fitted_rate},
                  {"expected_rho", res.expected_rho},
                  {"K", {res.K.a1, res.K.b1, res.K.a2, res.K.b2}}};
  auto js = open_out(out + "_summary.json");
  js << summary.dump(2) << "\n";
  std::cout << "fitted_rate=" << res.fitted_rate << " expected_rho=" << res.expected_rho << "\n";
}

void dump_field(const std::string& path, const helm::FieldSolution& f) {
  auto os = open_out(path);
  os << "ix,iy,x,y,re,im\n";
  char buf[200];
  for (size_t ix = 0; ix < f.ax.size(); ++ix)
    for (size_t iy = 0; iy < f.ay.size(); ++iy) {
      auto v = f.at(static_cast<int>(ix), static_cast<int>(iy));
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.9g,%.9g,%.12e,%.12e\n", ix, iy, f.ax.coord[ix],
                    f.ay.coord[iy], v.real(), v.imag());
      os << buf;
    }
}

int cmd_waveguide(ExperimentArgs a) {
  helm::WaveguideParams p;
  if (a.quick) {
    p.h = M_PI / 128;
    p.m_list = {8, 12, 16, 20};
  }
  if (a.k > 0) p.k = a.k;
  if (a.h > 0) p.h = a.h;
  if (!a.m_list.empty()) p.m_list = parse_m_list(a.m_list);
  p.margin = a.margin;
  p.precision = a.precision > 0 ? static_cast<mp::Prec>(a.precision) : 0;
  p.keep_field = a.dump_fields;
  if (!std::isnan(a.source_x)) p.source_x = a.source_x;
  if (!std::isnan(a.source_y)) p.source_y = a.source_y;
  if (a.out.empty()) a.out = "zpml_waveguide";
  json cfg = {{"command", "waveguide"},
              {"k", p.k},
              {"h", p.h},
              {"m_list", p.m_list},
              {"margin", p.margin},
              {"precision_bits", static_cast<long>(p.precision)},
              {"quick", a.quick},
              {"out", a.out}};
  auto res = helm::run_waveguide(p);
  write_sweep(a.out, res, cfg);
  if (a.dump_fields && res.last_field) dump_field(a.out + "_field.csv", *res.last_field);
  return 0;
}

int cmd_tensor(ExperimentArgs a) {
  helm::TensorParams p;
  if (a.quick) {
    p.h = 1.0 / 100;
    p.k = 40;
    p.m_list = {8, 12, 16};
  }
  if (a.k > 0) p.k = a.k;
  if (a.h > 0) p.h = a.h;
  if (!a.m_list.empty()) p.m_list = parse_m_list(a.m_list);
  p.margin = a.margin;
  p.precision = a.precision > 0 ? static_cast<mp::Prec>(a.precision) : 0;
  p.keep_field = a.dump_fields;
  p.eigen_diagnostic = a.eigen_diagnostic;
  if (a.out.empty()) a.out = "zpml_tensor";
  json cfg = {{"command", "tensor"},
              {"k", p.k},
              {"h", p.h},
              {"m_list", p.m_list},
              {"margin", p.margin},
              {"precision_bits", static_cast<long>(p.precision)},
              {"quick", a.quick},
              {"out", a.out}};
  auto res = helm::run_tensor(p);
  write_sweep(a.out, res, cfg);
  if (p.eigen_diagnostic)
    std::cout << "layered 1D operator spectrum: max |Im lambda| = " << res.lifted_imag_extent
              << "\n";
  if (a.dump_fields && res.last_field) dump_field(a.out + "_field.csv", *res.last_field);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zpml: near-optimal complex finite-difference PML grids for indefinite Helmholtz problems"};
  app.require_subcommand(1);

  json cfg;
  try {
    cfg = load_config_file(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override its values)");

  ApproxArgs aa;
  from_cfg(cfg, "interval", aa.interval);
  from_cfg(cfg, "m_list", aa.m_list);
  from_cfg(cfg, "kind", aa.kind);
  from_cfg(cfg, "h", aa.h);
  from_cfg(cfg, "precision_bits", aa.precision);
  from_cfg(cfg, "samples", aa.samples);
  from_cfg(cfg, "out", aa.out);
  auto* capprox = app.add_subcommand("approx", "error table of the two-interval interpolant");
  capprox->add_option("--interval", aa.interval, "a1,b1,a2,b2");
  capprox->add_option("--m-list", aa.m_list, "comma-separated even degrees");
  capprox->add_option("--kind", aa.kind, "continuous|discrete");
  capprox->add_option("--h", aa.h, "lattice step for --kind discrete");
  capprox->add_option("--precision-bits", aa.precision, "working precision (0 = max(256,16m))");
  capprox->add_option("--samples", aa.samples, "samples per interval for the error scan");
  capprox->add_option("--out", aa.out, "output prefix");
  capprox->add_option("--surface", aa.surface, "also dump |R/F-1| over the complex plane (CSV)");
  capprox->add_option("--dump-interpolant", aa.dump_interpolant, "write the largest-m interpolant JSON");

  GridArgs ga;
  from_cfg(cfg, "interval", ga.interval);
  from_cfg(cfg, "m", ga.m);
  from_cfg(cfg, "kind", ga.kind);
  from_cfg(cfg, "h", ga.h);
  from_cfg(cfg, "precision_bits", ga.precision);
  from_cfg(cfg, "out", ga.out);
  auto* cgrid = app.add_subcommand("grid", "complex grid steps from the continued fraction");
  cgrid->add_option("--interval", ga.interval, "a1,b1,a2,b2");
  cgrid->add_option("--interval1", ga.interval1, "negative single interval: a1,b1");
  cgrid->add_option("--interval2", ga.interval2, "positive single interval: a2,b2");
  cgrid->add_option("--m", ga.m, "total degree (even)");
  cgrid->add_option("--m1", ga.m1, "explicit negative-interval degree");
  cgrid->add_option("--m2", ga.m2, "explicit positive-interval degree");
  cgrid->add_option("--kind", ga.kind, "continuous|discrete");
  cgrid->add_option("--h", ga.h, "lattice step for --kind discrete");
  cgrid->add_option("--precision-bits", ga.precision, "working precision");
  cgrid->add_option("--out", ga.out, "output prefix");
  cgrid->add_option("--merge-h", ga.merge_h, "also merge with a uniform interior of this step");
  cgrid->add_option("--merge-ell", ga.merge_ell, "interior dual point count for merging");

  ExperimentArgs wa, ta;
  from_cfg(cfg, "margin", wa.margin);
  from_cfg(cfg, "margin", ta.margin);
  auto add_exp_opts = [](CLI::App* c, ExperimentArgs& e) {
    c->add_option("--k", e.k, "wave number");
    c->add_option("--h", e.h, "interior grid step");
    c->add_option("--m-list", e.m_list, "comma-separated even degrees");
    c->add_option("--margin", e.margin, "relative outward margin on the outer spectral bounds");
    c->add_option("--precision-bits", e.precision, "working precision (0 = per-m default)");
    c->add_option("--out", e.out, "output prefix");
    c->add_flag("--quick", e.quick, "reduced-size configuration");
    c->add_flag("--dump-fields", e.dump_fields, "write the largest-m reference field CSV");
  };
  auto* cwave = app.add_subcommand("waveguide", "infinite-strip convergence experiment");
  add_exp_opts(cwave, wa);
  cwave->add_option("--source-x", wa.source_x, "point source x (default: one step inside the right edge)");
  cwave->add_option("--source-y", wa.source_y, "point source y (default: 50pi/512, grid-snapped)");
  auto* ctens = app.add_subcommand("tensor", "four-sided PML with tangentially varying wave speed");
  add_exp_opts(ctens, ta);
  ctens->add_flag("--eigen-diagnostic", ta.eigen_diagnostic,
                  "report how far the layered 1D spectra lift off the real axis");

  std::uint64_t seed = 12345;
  bool corrupt = false;
  auto* cself = app.add_subcommand("selftest", "oracle-backed property suites");
  cself->add_option("--seed", seed, "RNG seed for the randomized suites");
  cself->add_flag("--corrupt-elliptic", corrupt,
                  "negative control: perturb the elliptic constants so the suite must fail");

  CLI11_PARSE(app, argc, argv);

  try {
    if (capprox->parsed()) return cmd_approx(aa);
    if (cgrid->parsed()) return cmd_grid(ga);
    if (cwave->parsed()) return cmd_waveguide(wa);
    if (ctens->parsed()) return cmd_tensor(ta);
    if (cself->parsed()) {
      elliptic::testhook::corrupt.store(corrupt);
      std::ostringstream report;
      bool ok = selftest::run(report, seed);
      std::cout << report.str();
      return ok ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
