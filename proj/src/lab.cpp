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

#include "vandcond/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "csv.hpp"
#include "vandcond/bounds.hpp"
#include "vandcond/certify.hpp"
#include "vandcond/error.hpp"
#include "vandcond/format.hpp"

namespace vandcond {

namespace {

constexpr double kPi = std::numbers::pi;

std::string lower(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

std::string normalize_key(std::string key) {
  key = lower(key);
  std::replace(key.begin(), key.end(), '_', '-');
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  return key;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const std::int64_t v = csv::to_int(value);
  if (v < 0) fail(ErrorCode::InvalidArgument, key + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// RNG

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64(seed) ^ splitmix64(stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL)) {}

std::uint64_t CounterRng::next() noexcept { return splitmix64(key_ ^ splitmix64(counter_++)); }

double CounterRng::uniform01() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

double CounterRng::log_uniform(double lo, double hi) noexcept {
  if (lo == hi) return lo;
  const double v = std::exp(uniform(std::log(lo), std::log(hi)));
  return std::clamp(v, lo, hi);
}

// ---------------------------------------------------------------------------
// Config

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::c1: return "C1";
    case Scenario::c2: return "C2";
    case Scenario::fig1: return "FIG1";
    case Scenario::xmin: return "XMIN";
    case Scenario::custom: return "CUSTOM";
  }
  return "?";
}

std::string to_string(OmegaPolicy p) {
  switch (p) {
    case OmegaPolicy::window: return "window";
    case OmegaPolicy::fixed: return "fixed";
    case OmegaPolicy::sweep: return "sweep";
  }
  return "?";
}

Scenario parse_scenario(const std::string& text) {
  const std::string t = lower(text);
  if (t == "c1") return Scenario::c1;
  if (t == "c2") return Scenario::c2;
  if (t == "fig1") return Scenario::fig1;
  if (t == "xmin") return Scenario::xmin;
  if (t == "custom") return Scenario::custom;
  fail(ErrorCode::InvalidArgument, "unknown scenario '" + text + "'");
}

OmegaPolicy parse_omega_policy(const std::string& text) {
  const std::string t = lower(text);
  if (t == "window") return OmegaPolicy::window;
  if (t == "fixed") return OmegaPolicy::fixed;
  if (t == "sweep") return OmegaPolicy::sweep;
  fail(ErrorCode::InvalidArgument, "unknown omega policy '" + text + "'");
}

void SweepConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::InvalidArgument, what); };
  if (samples < 1) bad("samples must be >= 1");
  if (scenario != Scenario::custom) {
    if (!(delta_lo > 0.0) || !(delta_lo <= delta_hi)) bad("need 0 < delta-lo <= delta-hi");
  }
  if (scenario == Scenario::fig1 && (s != 3 || ell != 2)) bad("FIG1 is fixed at s=3, ell=2");
  if (ell < 2 || ell > s) bad("need 2 <= ell <= s");
  if (tau && *tau < static_cast<double>(ell) - 1.0) bad("tau must be >= ell - 1");
  if (omega_policy == OmegaPolicy::fixed && !(omega > 0.0)) bad("omega must be positive");
  if (omega_policy == OmegaPolicy::sweep && !(omega_lo > 0.0 && omega_lo <= omega_hi)) {
    bad("need 0 < omega-lo <= omega-hi");
  }
  if (n_half && *n_half < 1) bad("N must be >= 1");
  if (!(xi_fraction > 0.0 && xi_fraction < 1.0)) bad("xi must lie in (0, 1)");
  if (scenario == Scenario::custom && nodes_file.empty()) bad("CUSTOM needs nodes-file");
}

void apply_setting(SweepConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalize_key(trim(raw_key));
  const std::string value = trim(raw_value);
  if (key == "scenario") cfg.scenario = parse_scenario(value);
  else if (key == "s") cfg.s = to_count(key, value);
  else if (key == "ell") cfg.ell = to_count(key, value);
  else if (key == "delta-lo") cfg.delta_lo = csv::to_double(value);
  else if (key == "delta-hi") cfg.delta_hi = csv::to_double(value);
  else if (key == "delta") cfg.delta_lo = cfg.delta_hi = csv::to_double(value);
  else if (key == "omega-policy") cfg.omega_policy = parse_omega_policy(value);
  else if (key == "omega") {
    cfg.omega = csv::to_double(value);
    cfg.omega_policy = OmegaPolicy::fixed;
  } else if (key == "omega-lo") cfg.omega_lo = csv::to_double(value);
  else if (key == "omega-hi") cfg.omega_hi = csv::to_double(value);
  else if (key == "samples") cfg.samples = to_count(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(csv::to_int(value));
  else if (key == "n" || key == "n-half") cfg.n_half = csv::to_int(value);
  else if (key == "xi") cfg.xi_fraction = csv::to_double(value);
  else if (key == "tau") cfg.tau = csv::to_double(value);
  else if (key == "lambda-route") {
    const std::string v = lower(value);
    if (v == "eigen") cfg.lambda_route = SincRoute::eigen;
    else if (v == "quadrature") cfg.lambda_route = SincRoute::quadrature;
    else if (v == "extended") cfg.lambda_route = SincRoute::extended;
    else fail(ErrorCode::InvalidArgument, "unknown lambda route '" + value + "'");
  } else if (key == "nodes-file") cfg.nodes_file = value;
  else if (key == "out-csv") cfg.out_csv = value;
  else if (key == "out-svg") cfg.out_svg = value;
  else fail(ErrorCode::InvalidArgument, "unknown setting '" + raw_key + "'");
}

void load_config_text(SweepConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::Io, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void load_config_file(SweepConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  load_config_text(cfg, in);
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

ClusterParams params_for(const NodeConfiguration& x, double delta, std::size_t ell, double tau) {
  double rho = outer_separation(x, tau * delta);
  // a single cluster admits any rho; pi is the largest wrap distance
  if (!std::isfinite(rho)) rho = kPi;
  return ClusterParams{delta, rho, x.size(), ell, tau};
}

ScenarioInstance build_instance(const SweepConfig& cfg, double delta,
                                const std::optional<NodeConfiguration>& custom) {
  const double tau = cfg.tau.value_or(static_cast<double>(cfg.ell) - 1.0);
  switch (cfg.scenario) {
    case Scenario::c1: {
      auto x = gen_c1(cfg.s, cfg.ell, delta);
      auto p = params_for(x, delta, cfg.ell, tau);
      return {std::move(x), p};
    }
    case Scenario::c2: {
      auto x = gen_c2(cfg.s, cfg.ell, delta);
      auto p = params_for(x, delta, cfg.ell, tau);
      return {std::move(x), p};
    }
    case Scenario::fig1: {
      auto x = gen_c1(3, 2, delta);
      auto p = params_for(x, delta, 2, tau);
      return {std::move(x), p};
    }
    case Scenario::xmin: {
      auto xm = gen_xmin(cfg.s, cfg.ell, delta);
      const double t = cfg.tau.value_or(xm.tau_prime);
      return {std::move(xm.nodes), ClusterParams{delta, xm.rho_prime, cfg.s, cfg.ell, t}};
    }
    case Scenario::custom: {
      const NodeConfiguration& x = *custom;
      if (x.size() != cfg.s) {
        fail(ErrorCode::InvalidArgument, "nodes file has " + std::to_string(x.size()) +
                                             " nodes but s=" + std::to_string(cfg.s));
      }
      const double d = min_separation(x);
      return {x, params_for(x, d, cfg.ell, tau)};
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown scenario");
}

SweepRecord run_sample(const SweepConfig& cfg, std::size_t index,
                       const std::optional<NodeConfiguration>& custom) {
  CounterRng rng(cfg.seed, index);
  const double delta = cfg.scenario == Scenario::custom
                           ? 0.0
                           : rng.log_uniform(cfg.delta_lo, cfg.delta_hi);
  const ScenarioInstance inst = build_instance(cfg, delta, custom);
  const ClusterParams& p = inst.params;
  const OmegaWindow win = omega_window(p);
  double omega = cfg.omega;
  if (cfg.omega_policy == OmegaPolicy::window) {
    if (win.empty()) {
      fail(ErrorCode::InvalidArgument, "empty Omega window at Delta=" + format_g(p.delta));
    }
    omega = rng.log_uniform(win.lo, win.hi);
  } else if (cfg.omega_policy == OmegaPolicy::sweep) {
    omega = rng.log_uniform(cfg.omega_lo, cfg.omega_hi);
  }

  SweepRecord r;
  r.delta = p.delta;
  r.omega = omega;
  r.srf = srf(p.delta, omega);
  r.lambda_min_g = lambda_min_sinc(inst.nodes, omega, cfg.lambda_route);
  r.bound_main_lambda = main_lower_bound(p, omega, BoundTarget::lambda).value;
  r.bound_upper_prolate = optimality_upper_bound(p.s, p.ell, p.delta, omega).value;
  r.in_window = win.contains(omega);
  if (cfg.n_half) {
    const BandParams band{omega, *cfg.n_half};
    r.n_half = *cfg.n_half;
    double peak = 0.0;
    for (double t : inst.nodes.nodes()) peak = std::max(peak, std::abs(t));
    if (omega / static_cast<double>(band.n_half) * peak <= kPi) {
      r.sigma_min_vn = sigma_min(vandermonde_scaled(inst.nodes, band));
      try {
        r.certified_sigma = certify(inst.nodes, p, band, cfg.xi_fraction).certified_sigma;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoAdmissibleLambda) throw;
      }
    }
  }
  return r;
}

std::optional<NodeConfiguration> load_custom(const SweepConfig& cfg) {
  if (cfg.scenario != Scenario::custom) return std::nullopt;
  return NodeConfiguration::load(cfg.nodes_file);
}

}  // namespace

ScenarioInstance build_scenario(const SweepConfig& cfg, double delta) {
  return build_instance(cfg, delta, load_custom(cfg));
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("VANDCOND_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, unsigned threads) {
  cfg.validate();
  const auto custom = load_custom(cfg);
  const std::size_t n = cfg.samples;
  std::vector<SweepRecord> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = run_sample(cfg, i, custom);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = sweep_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// Fits

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "fit needs paired data");
  if (x.size() < 2) fail(ErrorCode::InsufficientData, "fit needs at least two points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      fail(ErrorCode::InsufficientData, "log-log fit needs positive data");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = compensated_sum(lx) / static_cast<double>(n);
  const double my = compensated_sum(ly) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) fail(ErrorCode::InsufficientData, "all abscissae coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  fit.count = n;
  return fit;
}

LineFit fit_loglog_slope(const std::vector<SweepRecord>& records, double srf_lo, double srf_hi) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    if (r.srf < srf_lo || r.srf > srf_hi || !(r.lambda_min_g > kLambdaFloor)) continue;
    x.push_back(r.srf);
    y.push_back(r.lambda_min_g);
  }
  if (x.size() < 10) {
    fail(ErrorCode::InsufficientData, "only " + std::to_string(x.size()) +
                                          " records in the SRF range above the lambda floor");
  }
  return fit_loglog(x, y);
}

double theil_sen_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "fit needs paired data");
  std::vector<double> slopes;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] != x[j]) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
  if (slopes.empty()) fail(ErrorCode::InsufficientData, "no distinct abscissae");
  const std::size_t mid = slopes.size() / 2;
  std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid), slopes.end());
  const double upper = slopes[mid];
  if (slopes.size() % 2 == 1) return upper;
  const double lower = *std::max_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// ---------------------------------------------------------------------------
// CSV

std::string sweep_csv_header() {
  return "delta,omega,srf,lambda_min_G,sigma_min_VN,n_half,bound_main_lambda,"
         "bound_upper_prolate,certified_sigma,in_window";
}

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << sweep_csv_header() << '\n';
  for (const auto& r : records) {
    out << format_g(r.delta) << ',' << format_g(r.omega) << ',' << format_g(r.srf) << ','
        << format_g(r.lambda_min_g) << ',' << csv::field(r.sigma_min_vn) << ','
        << csv::field(r.n_half) << ',' << format_g(r.bound_main_lambda) << ','
        << format_g(r.bound_upper_prolate) << ',' << csv::field(r.certified_sigma) << ','
        << (r.in_window ? 1 : 0) << '\n';
  }
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  emit_csv(records, out);
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

std::vector<SweepRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Io, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != sweep_csv_header()) fail(ErrorCode::Io, "unexpected CSV header");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 10) fail(ErrorCode::Io, "sweep row needs 10 fields");
    SweepRecord r;
    r.delta = csv::to_double(f[0]);
    r.omega = csv::to_double(f[1]);
    r.srf = csv::to_double(f[2]);
    r.lambda_min_g = csv::to_double(f[3]);
    r.sigma_min_vn = csv::to_opt_double(f[4]);
    r.n_half = csv::to_opt_int(f[5]);
    r.bound_main_lambda = csv::to_double(f[6]);
    r.bound_upper_prolate = csv::to_double(f[7]);
    r.certified_sigma = csv::to_opt_double(f[8]);
    if (f[9] != "0" && f[9] != "1") fail(ErrorCode::Io, "in_window must be 0 or 1");
    r.in_window = f[9] == "1";
    out.push_back(r);
  }
  return out;
}

std::vector<SweepRecord> parse_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  return parse_csv(in);
}

std::optional<double> record_field(const SweepRecord& r, const std::string& name) {
  if (name == "delta") return r.delta;
  if (name == "omega") return r.omega;
  if (name == "srf") return r.srf;
  if (name == "lambda_min_G") return r.lambda_min_g;
  if (name == "sigma_min_VN") return r.sigma_min_vn;
  if (name == "n_half") {
    if (!r.n_half) return std::nullopt;
    return static_cast<double>(*r.n_half);
  }
  if (name == "bound_main_lambda") return r.bound_main_lambda;
  if (name == "bound_upper_prolate") return r.bound_upper_prolate;
  if (name == "certified_sigma") return r.certified_sigma;
  if (name == "in_window") return r.in_window ? 1.0 : 0.0;
  fail(ErrorCode::InvalidArgument, "unknown record field '" + name + "'");
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Axis {
  double lo = 0.0;  // log10
  double hi = 0.0;
  double pixel_lo = 0.0;
  double pixel_hi = 0.0;

  double map(double log_value) const {
    return pixel_lo + (log_value - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }
};

Axis padded_axis(double lo, double hi, double pixel_lo, double pixel_hi) {
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad, pixel_lo, pixel_hi};
}

}  // namespace

void emit_svg_scatter(const std::vector<SweepRecord>& records, const std::string& x_field,
                      const std::string& y_field, const std::vector<PowerLawOverlay>& overlays,
                      std::ostream& out) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    const auto x = record_field(r, x_field);
    const auto y = record_field(r, y_field);
    if (!x || !y || !(*x > 0.0) || !(*y > 0.0)) continue;
    xs.push_back(std::log10(*x));
    ys.push_back(std::log10(*y));
  }
  if (xs.empty()) fail(ErrorCode::InsufficientData, "no positive points to plot");

  constexpr double width = 640.0, height = 480.0;
  constexpr double left = 80.0, right = 20.0, top = 20.0, bottom = 60.0;
  const Axis ax = padded_axis(*std::min_element(xs.begin(), xs.end()),
                              *std::max_element(xs.begin(), xs.end()), left, width - right);
  // pixel y grows downward
  const Axis ay = padded_axis(*std::min_element(ys.begin(), ys.end()),
                              *std::max_element(ys.begin(), ys.end()), height - bottom, top);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<defs><clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\""
      << width - left - right << "\" height=\"" << height - top - bottom
      << "\"/></clipPath></defs>\n"
      << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right
      << "\" height=\"" << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";

  char buf[64];
  for (int d = static_cast<int>(std::ceil(ax.lo)); d <= static_cast<int>(std::floor(ax.hi)); ++d) {
    const double px = ax.map(d);
    std::snprintf(buf, sizeof buf, "%.2f", px);
    out << "<path d=\"M" << buf << ' ' << height - bottom << " v6\" stroke=\"black\"/>"
        << "<text x=\"" << buf << "\" y=\"" << height - bottom + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ay.lo)); d <= static_cast<int>(std::floor(ay.hi)); ++d) {
    const double py = ay.map(d);
    std::snprintf(buf, sizeof buf, "%.2f", py);
    out << "<path d=\"M" << left << ' ' << buf << " h-6\" stroke=\"black\"/>"
        << "<text x=\"" << left - 8 << "\" y=\"" << buf
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15
      << "\" font-size=\"14\" text-anchor=\"middle\">" << x_field << "</text>\n"
      << "<text x=\"18\" y=\"" << (top + height - bottom) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (top + height - bottom) / 2 << ")\">" << y_field << "</text>\n";

  out << "<g fill=\"steelblue\" fill-opacity=\"0.7\">\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    char cx[32], cy[32];
    std::snprintf(cx, sizeof cx, "%.2f", ax.map(xs[i]));
    std::snprintf(cy, sizeof cy, "%.2f", ay.map(ys[i]));
    out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2.5\"/>\n";
  }
  out << "</g>\n";

  std::vector<double> sx(xs), sy(ys);
  std::nth_element(sx.begin(), sx.begin() + static_cast<std::ptrdiff_t>(sx.size() / 2), sx.end());
  std::nth_element(sy.begin(), sy.begin() + static_cast<std::ptrdiff_t>(sy.size() / 2), sy.end());
  const double median_x = sx[sx.size() / 2], median_y = sy[sy.size() / 2];
  static const char* const colors[] = {"firebrick", "darkgreen", "darkorange", "purple"};
  std::size_t k = 0;
  for (const auto& ov : overlays) {
    const double x0 = ov.anchor_x ? std::log10(*ov.anchor_x) : median_x;
    const double y0 = ov.anchor_y ? std::log10(*ov.anchor_y) : median_y;
    const double ya = y0 + ov.exponent * (ax.lo - x0);
    const double yb = y0 + ov.exponent * (ax.hi - x0);
    const char* color = colors[k % 4];
    out << "<line x1=\"" << ax.map(ax.lo) << "\" y1=\"" << ay.map(ya) << "\" x2=\""
        << ax.map(ax.hi) << "\" y2=\"" << ay.map(yb) << "\" stroke=\"" << color
        << "\" stroke-dasharray=\"6 4\" clip-path=\"url(#plot)\"/>\n"
        << "<text x=\"" << width - right - 8 << "\" y=\"" << top + 18 + 16 * static_cast<double>(k)
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">" << ov.label
        << "</text>\n";
    ++k;
  }
  out << "</svg>\n";
}

void emit_svg_scatter(const std::vector<SweepRecord>& records, const std::string& x_field,
                      const std::string& y_field, const std::vector<PowerLawOverlay>& overlays,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  emit_svg_scatter(records, x_field, y_field, overlays, out);
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Presets

namespace {

PowerLawOverlay overlay(double exponent, const std::string& label) {
  return PowerLawOverlay{exponent, label, std::nullopt, std::nullopt};
}

}  // namespace

Preset preset_fig1() {
  Preset p;
  p.config.scenario = Scenario::fig1;
  p.config.s = 3;
  p.config.ell = 2;
  p.config.omega_policy = OmegaPolicy::window;
  p.config.samples = 200;
  p.expected_slope = -2.0;
  p.overlays = {overlay(-2.0, "SRF^-2"), overlay(-4.0, "SRF^-4")};
  return p;
}

Preset preset_fig4(const std::string& variant) {
  Preset p;
  const std::string v = lower(variant);
  if (v == "c1") {
    p.config.scenario = Scenario::c1;
    p.config.s = 8;
    p.config.ell = 4;
  } else if (v == "c2") {
    p.config.scenario = Scenario::c2;
    p.config.s = 5;
    p.config.ell = 2;
  } else {
    fail(ErrorCode::InvalidArgument, "fig4 variant must be C1 or C2");
  }
  p.config.omega_policy = OmegaPolicy::window;
  p.config.samples = 200;
  const double ell = static_cast<double>(p.config.ell);
  const double s = static_cast<double>(p.config.s);
  p.expected_slope = -2.0 * (ell - 1.0);
  p.overlays = {overlay(-2.0 * (ell - 1.0), "SRF^-2(l-1)"), overlay(-2.0 * (s - 1.0), "SRF^-2(s-1)")};
  return p;
}

Preset preset_fig5() {
  Preset p;
  constexpr double delta = 1e-3;
  const double rho = kPi / 4.0 + delta;
  p.config.scenario = Scenario::fig1;
  p.config.s = 3;
  p.config.ell = 2;
  p.config.delta_lo = p.config.delta_hi = delta;
  p.config.omega_policy = OmegaPolicy::sweep;
  p.config.omega_lo = 0.05 / rho;
  p.config.omega_hi = 4.0 * kPi * 3.0 / rho;
  p.config.samples = 200;
  // the decade 0.1 <= Omega rho <= 1 below the window
  p.fit_lo = kPi * rho / delta;
  p.fit_hi = 10.0 * kPi * rho / delta;
  p.expected_slope = -4.0;
  p.overlays = {overlay(-2.0, "SRF^-2(l-1)"), overlay(-4.0, "SRF^-2(s-1)")};
  return p;
}

}  // namespace vandcond
