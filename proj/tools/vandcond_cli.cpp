// Copyright 2026 The vandcond Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through vandcond.h.
//
// Exit status: 0 success, 1 usage error (including rejected argument values),
// 2 numerical or I/O failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vandcond/vandcond.h"

namespace {

struct Failure {
  vc_status status;
  std::string context;
};

void check(vc_status st, const std::string& context = {}) {
  if (st != VC_OK) throw Failure{st, context};
}

struct UsageError {
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Nodes = std::unique_ptr<vc_nodes, Deleter<vc_nodes, vc_nodes_free>>;
using Matrix = std::unique_ptr<vc_matrix, Deleter<vc_matrix, vc_matrix_free>>;
using Certificate = std::unique_ptr<vc_certificate, Deleter<vc_certificate, vc_certificate_free>>;
using Measure = std::unique_ptr<vc_measure, Deleter<vc_measure, vc_measure_free>>;
using SweepConfig = std::unique_ptr<vc_sweep_config, Deleter<vc_sweep_config, vc_sweep_config_free>>;
using Sweep = std::unique_ptr<vc_sweep, Deleter<vc_sweep, vc_sweep_free>>;

template <class Fn>
std::string fetch_text(Fn&& fn) {
  std::size_t needed = 0;
  check(fn(nullptr, 0, &needed));
  std::string buf(needed, '\0');
  check(fn(buf.data(), buf.size(), &needed));
  buf.resize(needed > 0 ? needed - 1 : 0);
  return buf;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- node sources -----------------------------------------------------------

struct NodeSource {
  std::string nodes_file;
  std::string scenario;
  std::size_t s = 0;
  std::size_t ell = 0;
  double delta = 0.0;
  double tau = 0.0;

  void add_to(CLI::App* app, bool need_ell_default) {
    app->add_option("--nodes-file", nodes_file, "nodes file, one angle per line");
    app->add_option("--scenario", scenario, "generate nodes: C1, C2, FIG1 or XMIN");
    app->add_option("--s", s, "number of nodes for --scenario");
    app->add_option("--ell", ell,
                    need_ell_default ? "cluster size bound (default: inferred)"
                                     : "cluster size bound");
    app->add_option("--delta", delta, "minimal separation for --scenario");
    app->add_option("--tau", tau, "cluster radius in units of Delta (default ell-1)");
  }

  Nodes load() const {
    vc_nodes* raw = nullptr;
    if (!nodes_file.empty()) {
      if (!scenario.empty()) throw UsageError{"--nodes-file and --scenario are exclusive"};
      check(vc_nodes_load(nodes_file.c_str(), &raw), nodes_file);
      return Nodes(raw);
    }
    if (scenario.empty()) throw UsageError{"need --nodes-file or --scenario"};
    if (!(delta > 0.0)) throw UsageError{"--scenario needs --delta > 0"};
    std::string sc = scenario;
    for (auto& c : sc) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const std::size_t e = ell == 0 ? 2 : ell;
    if (sc == "FIG1") check(vc_nodes_gen_c1(3, 2, delta, &raw));
    else if (s == 0) throw UsageError{"--scenario " + scenario + " needs --s"};
    else if (sc == "C1") check(vc_nodes_gen_c1(s, e, delta, &raw));
    else if (sc == "C2") check(vc_nodes_gen_c2(s, e, delta, &raw));
    else if (sc == "XMIN") check(vc_nodes_gen_xmin(s, e, delta, &raw, nullptr, nullptr));
    else throw UsageError{"unknown scenario '" + scenario + "'"};
    return Nodes(raw);
  }

  vc_cluster_params params(const vc_nodes* nodes) const {
    vc_cluster_params p{};
    check(vc_infer_cluster_params(nodes, ell, tau, &p), "cluster parameters");
    return p;
  }
};

void print_params(const vc_cluster_params& p) {
  std::cout << "delta: " << g17(p.delta) << "\nrho: " << g17(p.rho) << "\ns: " << p.s
            << "\nell: " << p.ell << "\ntau: " << g17(p.tau) << '\n';
}

vc_sinc_route parse_route(const std::string& name) {
  if (name == "eigen") return VC_SINC_EIGEN;
  if (name == "quadrature") return VC_SINC_QUADRATURE;
  if (name == "extended") return VC_SINC_EXTENDED;
  throw UsageError{"unknown route '" + name + "'"};
}

// ---- gram -------------------------------------------------------------------

struct GramArgs {
  std::string nodes_file;
  double omega = 0.0;
  std::int64_t n_half = 0;
  std::string route = "extended";
};

void run_gram(const GramArgs& a) {
  vc_nodes* raw = nullptr;
  check(vc_nodes_load(a.nodes_file.c_str(), &raw), a.nodes_file);
  Nodes nodes(raw);
  vc_matrix* mraw = nullptr;
  if (a.n_half > 0) check(vc_gram_finite(nodes.get(), a.omega, a.n_half, &mraw));
  else check(vc_gram_sinc(nodes.get(), a.omega, &mraw));
  Matrix g(mraw);
  const std::size_t s = vc_matrix_rows(g.get());
  std::cout << (a.n_half > 0 ? "# G_N, N=" + std::to_string(a.n_half) : std::string("# G"))
            << ", Omega=" << g17(a.omega) << " (real part; the matrix is real symmetric)\n";
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      double re = 0.0, im = 0.0;
      check(vc_matrix_get(g.get(), i, j, &re, &im));
      std::cout << (j ? " " : "") << g17(re);
    }
    std::cout << '\n';
  }
  std::vector<double> ev(s);
  check(vc_matrix_eigenvalues(g.get(), ev.data(), ev.size()));
  std::cout << "eigenvalues:";
  for (double v : ev) std::cout << ' ' << g17(v);
  std::cout << '\n';
  if (a.n_half > 0) {
    std::cout << "lambda_min: " << g17(ev.front()) << '\n';
  } else {
    double lam = 0.0;
    check(vc_lambda_min_sinc(nodes.get(), a.omega, parse_route(a.route), &lam));
    std::cout << "lambda_min: " << g17(lam) << " (route " << a.route << ")\n";
  }
}

// ---- bounds -----------------------------------------------------------------

struct BoundsArgs {
  NodeSource src;
  double omega = 0.0;
  std::int64_t n_half = 0;
};

void run_bounds(const BoundsArgs& a) {
  Nodes nodes = a.src.load();
  const vc_cluster_params p = a.src.params(nodes.get());
  std::cout << fetch_text([&](char* b, std::size_t c, std::size_t* n) {
    return vc_bounds_csv(nodes.get(), &p, a.omega, a.n_half, b, c, n);
  });
}

// ---- certify ----------------------------------------------------------------

struct CertifyArgs {
  NodeSource src;
  double omega = 0.0;
  std::int64_t n_half = 0;
  double xi = 0.5;
  bool skip_oracle = false;
};

int run_certify(const CertifyArgs& a) {
  Nodes nodes = a.src.load();
  const vc_cluster_params p = a.src.params(nodes.get());
  print_params(p);
  vc_certificate* raw = nullptr;
  check(vc_certify(nodes.get(), &p, a.omega, a.n_half, a.xi, &raw), "certify");
  Certificate cert(raw);
  if (!a.skip_oracle) check(vc_certificate_attach_oracle(cert.get(), nodes.get()));
  std::cout << fetch_text([&](char* b, std::size_t c, std::size_t* n) {
    return vc_certificate_text(cert.get(), b, c, n);
  });
  int ok = 0;
  const std::string msg = fetch_text([&](char* b, std::size_t c, std::size_t* n) {
    return vc_certificate_verify(cert.get(), nodes.get(), &p, &ok, b, c, n);
  });
  std::cout << "verified: " << (ok ? "yes" : "no: " + msg) << '\n';
  vc_certificate_summary sum{};
  check(vc_certificate_summary_get(cert.get(), &sum));
  if (sum.has_oracle) {
    const bool sound = sum.certified_sigma <= sum.oracle_sigma * (1.0 + 1e-10);
    std::cout << "sound: " << (sound ? "yes" : "no") << '\n';
    if (!sound) return 2;
  }
  return ok ? 0 : 2;
}

// ---- sweeps -----------------------------------------------------------------

// Flags forwarded verbatim as config settings; later flags win over --config.
const char* const kSweepKeys[] = {"scenario", "s",        "ell",       "delta-lo",
                                  "delta-hi", "omega",    "omega-policy", "omega-lo",
                                  "omega-hi", "samples",  "seed",      "nodes-file",
                                  "N",        "xi",       "tau",       "lambda-route"};
// paired with kSweepKeys
const char* const kSweepHelp[] = {
    "C1, C2, FIG1, XMIN or CUSTOM",
    "number of nodes",
    "cluster size bound",
    "smallest Delta (log-uniform draw)",
    "largest Delta",
    "fixed bandwidth; selects the fixed policy",
    "window, fixed or sweep",
    "lower bandwidth for the sweep policy",
    "upper bandwidth for the sweep policy",
    "number of random draws",
    "64-bit seed",
    "nodes file for CUSTOM",
    "half-length N; adds sigma_min_VN and certified_sigma",
    "bad-set measure fraction (default 0.5)",
    "cluster radius in units of Delta (default ell-1)",
    "eigen, quadrature or extended (default)"};
static_assert(std::size(kSweepHelp) == std::size(kSweepKeys));

struct SweepArgs {
  std::string config;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<std::string> values = std::vector<std::string>(std::size(kSweepKeys));
  std::string out_csv;
  std::string out_svg;
  unsigned threads = 0;
  std::vector<double> overlays;
  std::string variant = "C1";
};

void add_sweep_flags(CLI::App* app, SweepArgs& a, bool preset) {
  app->add_option("--config", a.config, "key = value settings file; flags override it");
  for (std::size_t k = 0; k < std::size(kSweepKeys); ++k) {
    app->add_option(std::string("--") + kSweepKeys[k], a.values[k], kSweepHelp[k]);
  }
  app->add_option("--out-csv", a.out_csv, preset ? "CSV path (default <preset>.csv)" : "CSV path (default stdout)");
  app->add_option("--out-svg", a.out_svg, "SVG scatter of lambda_min_G against SRF");
  app->add_option("--threads", a.threads, "worker threads (default VANDCOND_THREADS or all cores)");
  if (!preset) app->add_option("--overlay", a.overlays, "power-law exponents drawn on the SVG");
}

void apply_sweep_flags(CLI::App* app, vc_sweep_config* cfg, const SweepArgs& a) {
  if (!a.config.empty()) check(vc_sweep_config_load(cfg, a.config.c_str()), a.config);
  for (std::size_t k = 0; k < std::size(kSweepKeys); ++k) {
    if (app->count(std::string("--") + kSweepKeys[k]) == 0) continue;
    check(vc_sweep_config_set(cfg, kSweepKeys[k], a.values[k].c_str()),
          std::string("--") + kSweepKeys[k]);
  }
  check(vc_sweep_config_validate(cfg));
}

Sweep execute(const vc_sweep_config* cfg, unsigned threads) {
  vc_sweep* raw = nullptr;
  check(vc_sweep_run(cfg, threads, &raw), "sweep");
  return Sweep(raw);
}

void write_svg(const vc_sweep* sweep, const std::string& path, const std::vector<double>& exps,
               const std::vector<std::string>& labels) {
  std::vector<const char*> lp;
  for (const auto& l : labels) lp.push_back(l.c_str());
  check(vc_sweep_write_svg(sweep, path.c_str(), "srf", "lambda_min_G", exps.data(), lp.data(),
                           exps.size()),
        path);
}

void run_sweep_cmd(CLI::App* app, const SweepArgs& a) {
  vc_sweep_config* raw = nullptr;
  check(vc_sweep_config_create(&raw));
  SweepConfig cfg(raw);
  apply_sweep_flags(app, cfg.get(), a);
  Sweep sweep = execute(cfg.get(), a.threads);
  if (a.out_csv.empty()) {
    std::cout << fetch_text([&](char* b, std::size_t c, std::size_t* n) {
      return vc_sweep_csv(sweep.get(), b, c, n);
    });
  } else {
    check(vc_sweep_write_csv(sweep.get(), a.out_csv.c_str()), a.out_csv);
    std::cerr << "wrote " << vc_sweep_size(sweep.get()) << " records to " << a.out_csv << '\n';
  }
  if (!a.out_svg.empty()) {
    std::vector<std::string> labels;
    for (double e : a.overlays) labels.push_back("SRF^" + g17(e));
    write_svg(sweep.get(), a.out_svg, a.overlays, labels);
  }
}

int run_preset(CLI::App* app, const std::string& name, const SweepArgs& a) {
  vc_sweep_config* raw = nullptr;
  vc_preset_info info{};
  const bool fig4 = name == "fig4";
  check(vc_sweep_config_preset(name.c_str(), fig4 ? a.variant.c_str() : nullptr, &raw, &info));
  SweepConfig cfg(raw);
  apply_sweep_flags(app, cfg.get(), a);
  const std::string stem = fig4 ? name + "_" + a.variant : name;
  const std::string csv = a.out_csv.empty() ? stem + ".csv" : a.out_csv;
  const std::string svg = a.out_svg.empty() ? stem + ".svg" : a.out_svg;
  Sweep sweep = execute(cfg.get(), a.threads);
  check(vc_sweep_write_csv(sweep.get(), csv.c_str()), csv);
  std::vector<double> exps(info.overlay_exponent, info.overlay_exponent + info.overlay_count);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < info.overlay_count; ++k) labels.emplace_back(info.overlay_label[k]);
  write_svg(sweep.get(), svg, exps, labels);
  std::cout << "preset: " << stem << "\nsamples: " << vc_sweep_size(sweep.get())
            << "\ncsv: " << csv << "\nsvg: " << svg << "\nfit_srf_range: " << g17(info.fit_lo)
            << ' ' << g17(info.fit_hi) << '\n';
  vc_line_fit fit{};
  check(vc_sweep_fit(sweep.get(), info.fit_lo, info.fit_hi, &fit), "slope fit");
  std::cout << "fit_points: " << fit.count << "\nslope: " << g17(fit.slope)
            << "\nr_squared: " << g17(fit.r_squared)
            << "\nexpected_slope: " << g17(info.expected_slope) << '\n';
  return 0;
}

// ---- prolate ----------------------------------------------------------------

struct ProlateArgs {
  std::vector<std::size_t> s = {2, 3, 4};
  std::vector<double> w = {1e-2, 3e-3, 1e-3};
  std::string route = "extended";
};

void run_prolate(const ProlateArgs& a) {
  const vc_sinc_route route = parse_route(a.route);
  std::cout << "s,W,lambda_min_Q,slepian_asymptotic,ratio,asymptotic_regime\n";
  for (std::size_t s : a.s) {
    for (double w : a.w) {
      double lam = 0.0, asym = 0.0;
      int valid = 0;
      check(vc_prolate_lambda_min(s, w, route, &lam), "prolate");
      check(vc_slepian_lambda(s, w, &asym, &valid), "slepian");
      std::cout << s << ',' << g17(w) << ',' << g17(lam) << ',' << g17(asym) << ','
                << g17(lam / asym) << ',' << valid << '\n';
    }
  }
}

// ---- minimax ----------------------------------------------------------------

struct MinimaxArgs {
  std::size_t s = 2;
  std::size_t ell = 2;
  double delta = 1e-3;
  double epsilon = 1e-6;
  std::optional<double> omega;
  std::vector<double> srf = {10, 20, 50, 100, 200, 500, 1000};
  std::string save_measure;
};

void run_minimax(const MinimaxArgs& a) {
  std::vector<double> omegas;
  if (a.omega) omegas.push_back(*a.omega);
  else
    for (double f : a.srf) omegas.push_back(std::numbers::pi / (a.delta * f));
  std::cout << "srf,omega,lambda_min,mu_norm,muhat_norm,implied_lower,ratio\n";
  std::vector<double> xs, ys;
  for (double om : omegas) {
    vc_minimax_record r{};
    vc_measure* mu = nullptr;
    check(vc_minimax(a.s, a.ell, a.delta, om, a.epsilon, &r, a.save_measure.empty() ? nullptr : &mu,
                     nullptr, nullptr),
          "minimax");
    Measure keep(mu);
    if (keep) check(vc_measure_save(keep.get(), a.save_measure.c_str()), a.save_measure);
    std::cout << g17(r.srf) << ',' << g17(r.omega) << ',' << g17(r.lambda_min) << ','
              << g17(r.mu_norm) << ',' << g17(r.muhat_norm) << ',' << g17(r.implied_lower) << ','
              << g17(r.ratio) << '\n';
    xs.push_back(r.srf);
    ys.push_back(r.implied_lower);
  }
  if (xs.size() >= 2) {
    vc_line_fit fit{};
    check(vc_fit_loglog(xs.data(), ys.data(), xs.size(), &fit), "fit");
    std::cout << "# slope of implied_lower vs SRF: " << g17(fit.slope) << " (expected "
              << 2 * a.ell - 1 << ")\n";
  }
}

// ---- norm -------------------------------------------------------------------

struct NormArgs {
  std::string measure_file;
  double omega = 0.0;
  std::size_t q = 100000;
};

void run_norm(const NormArgs& a) {
  vc_measure* raw = nullptr;
  check(vc_measure_load(a.measure_file.c_str(), &raw), a.measure_file);
  Measure mu(raw);
  double g = 0.0, quad = 0.0;
  check(vc_measure_norm_gram(mu.get(), a.omega, &g));
  check(vc_measure_norm_quadrature(mu.get(), a.omega, a.q, &quad));
  std::cout << "norm_gram: " << g17(g) << "\nnorm_quadrature: " << g17(quad)
            << "\nrelative_difference: " << g17(g > 0.0 ? std::abs(g - quad) / g : std::abs(quad))
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditioning of clustered Fourier/Vandermonde matrices", "vandcond"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vc_version()));

  GramArgs gram;
  auto* gram_cmd = app.add_subcommand("gram", "print G (or G_N with --N) and lambda_min");
  gram_cmd->add_option("--nodes-file", gram.nodes_file)->required();
  gram_cmd->add_option("--omega", gram.omega)->required();
  gram_cmd->add_option("--N", gram.n_half, "use G_N instead of the sinc Gramian");
  gram_cmd->add_option("--route", gram.route, "eigen, quadrature or extended");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "CSV table of every bound");
  bounds.src.add_to(bounds_cmd, true);
  bounds_cmd->add_option("--omega", bounds.omega)->required();
  bounds_cmd->add_option("--N", bounds.n_half, "adds the finite-N rows");

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "decimation certificate with oracle sigma_min");
  cert.src.add_to(cert_cmd, true);
  cert_cmd->add_option("--omega", cert.omega)->required();
  cert_cmd->add_option("--N", cert.n_half)->required();
  cert_cmd->add_option("--xi", cert.xi, "bad-set measure fraction (default 0.5)");
  cert_cmd->add_flag("--no-oracle", cert.skip_oracle);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "randomized (Delta, Omega) sweep");
  add_sweep_flags(sweep_cmd, sweep, false);

  SweepArgs fig1, fig4, fig5;
  auto* fig1_cmd = app.add_subcommand("fig1", "FIG1 preset: nodes (Delta, 2Delta, -pi/4)");
  add_sweep_flags(fig1_cmd, fig1, true);
  auto* fig4_cmd = app.add_subcommand("fig4", "C1/C2 preset sweeps");
  add_sweep_flags(fig4_cmd, fig4, true);
  fig4_cmd->add_option("--variant", fig4.variant, "C1 or C2")
      ->check(CLI::IsMember({"C1", "C2"}));
  auto* fig5_cmd = app.add_subcommand("fig5", "breakdown preset: Omega below the window");
  add_sweep_flags(fig5_cmd, fig5, true);

  ProlateArgs prolate;
  auto* prolate_cmd = app.add_subcommand("prolate", "lambda_min(Q(s,W)) against the Slepian asymptotic");
  prolate_cmd->add_option("--s", prolate.s)->delimiter(',');
  prolate_cmd->add_option("--w", prolate.w)->delimiter(',');
  prolate_cmd->add_option("--route", prolate.route, "eigen, quadrature or extended");

  MinimaxArgs mm;
  auto* mm_cmd = app.add_subcommand("minimax", "minimax lower-bound construction");
  mm_cmd->add_option("--s", mm.s);
  mm_cmd->add_option("--ell", mm.ell);
  mm_cmd->add_option("--delta", mm.delta);
  mm_cmd->add_option("--epsilon", mm.epsilon);
  mm_cmd->add_option("--omega", mm.omega, "single bandwidth instead of the SRF list");
  mm_cmd->add_option("--srf", mm.srf, "SRF values")->delimiter(',');
  mm_cmd->add_option("--save-measure", mm.save_measure, "write the measure (last bandwidth)");

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "band-limited norm via Gramian and quadrature");
  norm_cmd->add_option("--measure-file", norm.measure_file)->required();
  norm_cmd->add_option("--omega", norm.omega)->required();
  norm_cmd->add_option("--q", norm.q, "quadrature samples (default 100000)");

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*gram_cmd) run_gram(gram);
    else if (*bounds_cmd) run_bounds(bounds);
    else if (*cert_cmd) return run_certify(cert);
    else if (*sweep_cmd) run_sweep_cmd(sweep_cmd, sweep);
    else if (*fig1_cmd) return run_preset(fig1_cmd, "fig1", fig1);
    else if (*fig4_cmd) return run_preset(fig4_cmd, "fig4", fig4);
    else if (*fig5_cmd) return run_preset(fig5_cmd, "fig5", fig5);
    else if (*prolate_cmd) run_prolate(prolate);
    else if (*mm_cmd) run_minimax(mm);
    else if (*norm_cmd) run_norm(norm);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << '\n';
    return 1;
  } catch (const Failure& f) {
    std::cerr << "error";
    if (!f.context.empty()) std::cerr << " (" << f.context << ")";
    std::cerr << ": " << vc_status_string(f.status) << ": " << vc_last_error_message() << '\n';
    return f.status == VC_ERR_INVALID_ARGUMENT ? 1 : 2;
  }
  return 0;
}
