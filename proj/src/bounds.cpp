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

#include "vandcond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "csv.hpp"
#include "vandcond/error.hpp"
#include "vandcond/format.hpp"
#include "vandcond/matrices.hpp"

namespace vandcond {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double srf(double delta, double omega) {
  require_positive(delta, "Delta");
  require_positive(omega, "Omega");
  return kPi / (delta * omega);
}

BoundReport aubel_bound(std::int64_t n_half, double delta_n) {
  if (n_half < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  require_positive(delta_n, "Delta_N");
  const double two_n = 2.0 * static_cast<double>(n_half);
  BoundReport r;
  r.name = "aubel";
  r.condition = "2N+1 > 2pi/Delta_N";
  r.n = n_half;
  r.delta = delta_n;
  r.valid = two_n + 1.0 > 2.0 * kPi / delta_n;
  const double radicand = 1.0 + 1.0 / two_n - 2.0 * kPi / (two_n * delta_n);
  r.value = std::sqrt(std::max(radicand, 0.0));
  return r;
}

double slepian_constant(std::size_t s) {
  if (s < 1) fail(ErrorCode::InvalidArgument, "s must be >= 1");
  if (s > 30) fail(ErrorCode::Range, "Slepian constant overflows the binomial for s > 30");
  // binom(2s-2, s-1) by the multiplicative recurrence; exact in 64 bits here
  const std::uint64_t n = 2 * (s - 1), k = s - 1;
  std::uint64_t b = 1;
  for (std::uint64_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  const double bd = static_cast<double>(b);
  return std::ldexp(1.0, static_cast<int>(2 * s - 2)) /
         (static_cast<double>(2 * s - 1) * bd * bd * bd);
}

BoundReport slepian_lambda_asymptotic(std::size_t s, double w) {
  if (!(w > 0.0 && w < 0.5)) fail(ErrorCode::InvalidArgument, "W must lie in (0, 1/2)");
  BoundReport r;
  r.name = "slepian";
  r.condition = "W << 1 (advisory W <= 0.05)";
  r.s = s;
  r.value = std::pow(2.0 * kPi * w, static_cast<double>(2 * s - 1)) * slepian_constant(s) / kPi;
  r.valid = w <= 0.05;
  return r;
}

double main_constant(std::size_t s, bool* underflow) {
  if (s < 1) fail(ErrorCode::InvalidArgument, "s must be >= 1");
  const double sd = static_cast<double>(s);
  const double log_value =
      -std::log(2.0) - (sd - 1.0) * std::log(2.0 * kPi) - (2.0 * sd - 1.0) * std::log(sd);
  const double smallest = std::numeric_limits<double>::min();
  if (underflow) *underflow = false;
  if (log_value < std::log(smallest)) {
    if (underflow) *underflow = true;
    return smallest;
  }
  double value = 0.5;
  for (std::size_t i = 1; i < s; ++i) value /= 2.0 * kPi;
  for (std::size_t i = 1; i < 2 * s; ++i) value /= sd;
  return value;
}

OmegaWindow omega_window(const ClusterParams& p) {
  require_positive(p.rho, "rho");
  require_positive(p.delta, "Delta");
  require_positive(p.tau, "tau");
  const double sd = static_cast<double>(p.s);
  return {4.0 * kPi * sd / p.rho, kPi * sd / (p.tau * p.delta)};
}

std::int64_t n_threshold(std::size_t s, double omega) {
  require_positive(omega, "Omega");
  const auto sd = static_cast<std::int64_t>(s);
  const auto blocks = static_cast<std::int64_t>(std::ceil(omega / (4.0 * static_cast<double>(s))));
  return 2 * sd * sd * sd * blocks;
}

BoundReport main_lower_bound(const ClusterParams& p, double omega, BoundTarget target) {
  require_positive(omega, "Omega");
  if (p.ell < 2) fail(ErrorCode::InvalidArgument, "ell must be >= 2");
  const OmegaWindow win = omega_window(p);
  const double c = main_constant(p.s);
  const double sigma = c * std::pow(p.delta * omega, static_cast<double>(p.ell - 1));
  BoundReport r;
  r.name = target == BoundTarget::sigma ? "main_sigma" : "main_lambda";
  r.condition = "4 tau Delta <= rho and 4 pi s/rho <= Omega <= pi s/(tau Delta)";
  r.s = p.s;
  r.ell = p.ell;
  r.delta = p.delta;
  r.omega = omega;
  r.valid = 4.0 * p.tau * p.delta <= p.rho && win.contains(omega);
  r.value = target == BoundTarget::sigma ? sigma : sigma * sigma;
  return r;
}

BoundReport cor_finite_n_bound(const ClusterParams& p, std::int64_t n_half) {
  if (n_half < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  if (p.ell < 2) fail(ErrorCode::InvalidArgument, "ell must be >= 2");
  require_positive(p.delta, "Delta");
  require_positive(p.rho, "rho");
  const double n = static_cast<double>(n_half);
  const double sd = static_cast<double>(p.s);
  BoundReport r;
  r.name = "cor_finite_n";
  r.condition = "max(4 pi s/rho, 4 s^3) <= N <= pi s/(tau Delta), 4 tau Delta <= min(rho, 1/s^2)";
  r.s = p.s;
  r.ell = p.ell;
  r.delta = p.delta;
  r.n = n_half;
  r.value = main_constant(p.s) * std::pow(n * p.delta, static_cast<double>(p.ell - 1));
  const double n_lo = std::max(4.0 * kPi * sd / p.rho, 4.0 * sd * sd * sd);
  const double n_hi = kPi * sd / (p.tau * p.delta);
  r.valid = n_lo <= n && n <= n_hi && 4.0 * p.tau * p.delta <= std::min(p.rho, 1.0 / (sd * sd));
  return r;
}

bool within_shrunk_interval(const std::vector<double>& xi, std::size_t s) {
  const double scale = 1.0 / (static_cast<double>(s) * static_cast<double>(s));
  return std::all_of(xi.begin(), xi.end(), [&](double v) {
    return v > -kPi / 2.0 * scale && v <= kPi / 2.0 * scale;
  });
}

BoundReport optimality_upper_bound(std::size_t s, std::size_t ell, double delta, double omega) {
  require_positive(delta, "Delta");
  require_positive(omega, "Omega");
  if (ell < 2 || ell > s) fail(ErrorCode::Range, "need 2 <= ell <= s");
  if (!(delta < kPi / (2.0 * static_cast<double>(ell - 1)))) {
    fail(ErrorCode::Range, "need Delta < pi/(2(ell-1))");
  }
  // centered copy of the cluster; the Gramian depends only on differences
  const double t0 = -0.5 * (static_cast<double>(ell) + 1.0) * delta;
  const NodeConfiguration cluster = gen_equispaced(ell, delta, t0);
  BoundReport r;
  r.name = "optimality_upper";
  r.condition = "Delta Omega < 1";
  r.s = s;
  r.ell = ell;
  r.delta = delta;
  r.omega = omega;
  r.valid = delta * omega < 1.0;
  r.value = lambda_min_sinc(cluster, omega, SincRoute::quadrature);
  return r;
}

SigmaMaxEnvelope sigma_max_envelope(std::size_t s, std::int64_t n_half) {
  if (n_half < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  const double two_n = 2.0 * static_cast<double>(n_half);
  return {1.0, std::sqrt(static_cast<double>(s) * (two_n + 1.0) / two_n)};
}

std::vector<BoundReport> bound_table(const NodeConfiguration& x, const ClusterParams& p,
                                     double omega, std::optional<std::int64_t> n_half) {
  std::vector<BoundReport> out;
  out.push_back(main_lower_bound(p, omega, BoundTarget::sigma));
  out.push_back(main_lower_bound(p, omega, BoundTarget::lambda));
  out.push_back(optimality_upper_bound(p.s, p.ell, p.delta, omega));
  if (!n_half) return out;
  out.push_back(cor_finite_n_bound(p, *n_half));
  const double scale = omega / static_cast<double>(*n_half);
  double delta_n = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      delta_n = std::min(delta_n, wrap_distance(scale * (x[j] - x[i])));
  BoundReport aubel = aubel_bound(*n_half, delta_n);
  aubel.s = p.s;
  aubel.ell = p.ell;
  aubel.omega = omega;
  out.push_back(aubel);
  BoundReport top;
  top.name = "sigma_max_upper";
  top.value = sigma_max_envelope(p.s, *n_half).upper;
  top.valid = true;
  top.condition = "always";
  top.s = p.s;
  top.ell = p.ell;
  top.n = *n_half;
  out.push_back(top);
  return out;
}

std::string bound_csv_header() { return "name,value,valid,s,ell,delta,omega,n"; }

std::string to_csv_row(const BoundReport& r) {
  return r.name + ',' + format_g(r.value) + ',' + (r.valid ? "1" : "0") + ',' +
         std::to_string(r.s) + ',' + std::to_string(r.ell) + ',' + csv::field(r.delta) + ',' +
         csv::field(r.omega) + ',' + csv::field(r.n);
}

BoundReport parse_bound_csv_row(const std::string& line) {
  const auto f = csv::split(line);
  if (f.size() != 8) fail(ErrorCode::Io, "bound row needs 8 fields");
  BoundReport r;
  r.name = f[0];
  r.value = csv::to_double(f[1]);
  if (f[2] != "0" && f[2] != "1") fail(ErrorCode::Io, "valid must be 0 or 1");
  r.valid = f[2] == "1";
  r.s = static_cast<std::size_t>(csv::to_int(f[3]));
  r.ell = static_cast<std::size_t>(csv::to_int(f[4]));
  r.delta = csv::to_opt_double(f[5]);
  r.omega = csv::to_opt_double(f[6]);
  r.n = csv::to_opt_int(f[7]);
  return r;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& rows) {
  out << bound_csv_header() << '\n';
  for (const auto& r : rows) out << to_csv_row(r) << '\n';
}

}  // namespace vandcond
