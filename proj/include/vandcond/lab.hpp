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

// Sweep harness: deterministic randomized experiments over (Delta, Omega),
// slope fits, CSV and SVG output, and the figure presets.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vandcond/clusters.hpp"
#include "vandcond/matrices.hpp"

namespace vandcond {

/// Counter-based generator: output i of stream (seed, stream) is a pure
/// function of the triple, so samples can run in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;
  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept;
  double log_uniform(double lo, double hi) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

enum class Scenario { c1, c2, fig1, xmin, custom };
enum class OmegaPolicy {
  window,  // log-uniform inside omega_window
  fixed,   // omega
  sweep,   // log-uniform in [omega_lo, omega_hi]
};

std::string to_string(Scenario s);
std::string to_string(OmegaPolicy p);
Scenario parse_scenario(const std::string& text);
OmegaPolicy parse_omega_policy(const std::string& text);

struct SweepConfig {
  Scenario scenario = Scenario::c1;
  std::size_t s = 8;
  std::size_t ell = 4;
  double delta_lo = 1e-6;
  double delta_hi = 1e-2;
  OmegaPolicy omega_policy = OmegaPolicy::window;
  double omega = 1.0;
  double omega_lo = 1.0;
  double omega_hi = 10.0;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> n_half;  // enables sigma_min_VN and certified_sigma
  double xi_fraction = 0.5;
  std::optional<double> tau;  // defaults to ell - 1
  SincRoute lambda_route = SincRoute::extended;
  std::string nodes_file;
  std::string out_csv;
  std::string out_svg;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

/// Applies one "key = value" setting; keys match the CLI flag names with '-'
/// or '_' interchangeable.
void apply_setting(SweepConfig& cfg, const std::string& key, const std::string& value);
/// Flat "key = value" file; '#' comments.
void load_config_text(SweepConfig& cfg, std::istream& in);
void load_config_file(SweepConfig& cfg, const std::string& path);

struct SweepRecord {
  double delta = 0.0;
  double omega = 0.0;
  double srf = 0.0;
  double lambda_min_g = 0.0;
  std::optional<double> sigma_min_vn;
  std::optional<std::int64_t> n_half;
  double bound_main_lambda = 0.0;
  double bound_upper_prolate = 0.0;
  std::optional<double> certified_sigma;
  bool in_window = false;

  bool operator==(const SweepRecord&) const = default;
};

/// Node layout and cluster parameters a scenario produces at step delta.
struct ScenarioInstance {
  NodeConfiguration nodes;
  ClusterParams params;
};

ScenarioInstance build_scenario(const SweepConfig& cfg, double delta);

/// Thread count from VANDCOND_THREADS, else hardware concurrency (>= 1).
unsigned sweep_threads();

/// Deterministic in cfg.seed; output order is sample order regardless of
/// threads (0 means sweep_threads()).
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, unsigned threads = 0);

inline constexpr double kLambdaFloor = 1e-13;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t count = 0;
};

/// Least squares through (log x, log y). InsufficientData below two points or
/// for non-positive values.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/// log lambda_min_G against log SRF over records with srf in [lo, hi] and
/// lambda above kLambdaFloor; InsufficientData below 10 such records.
LineFit fit_loglog_slope(const std::vector<SweepRecord>& records, double srf_lo, double srf_hi);

/// Median of pairwise slopes.
double theil_sen_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string sweep_csv_header();
void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> parse_csv(std::istream& in);
std::vector<SweepRecord> parse_csv_file(const std::string& path);

/// Field accessor by CSV column name; nullopt when the field is absent.
std::optional<double> record_field(const SweepRecord& r, const std::string& name);

struct PowerLawOverlay {
  double exponent = 0.0;
  std::string label;
  /// Line passes through (anchor_x, anchor_y); defaults to the median data point.
  std::optional<double> anchor_x;
  std::optional<double> anchor_y;
};

/// Log-log scatter, one <circle> per plotted record, one <line> per overlay,
/// axes padded 5% in log space.
void emit_svg_scatter(const std::vector<SweepRecord>& records, const std::string& x_field,
                      const std::string& y_field, const std::vector<PowerLawOverlay>& overlays,
                      std::ostream& out);
void emit_svg_scatter(const std::vector<SweepRecord>& records, const std::string& x_field,
                      const std::string& y_field, const std::vector<PowerLawOverlay>& overlays,
                      const std::string& path);

struct Preset {
  SweepConfig config;
  double fit_lo = 10.0;  // SRF range used for the slope
  double fit_hi = 1e3;
  double expected_slope = 0.0;
  std::vector<PowerLawOverlay> overlays;
};

Preset preset_fig1();
/// variant "C1" (s=8, ell=4) or "C2" (s=5, ell=2).
Preset preset_fig4(const std::string& variant);
Preset preset_fig5();

}  // namespace vandcond
