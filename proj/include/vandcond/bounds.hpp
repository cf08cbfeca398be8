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

// Closed-form conditioning bounds and constants. Out-of-window inputs yield a
// report with valid == false instead of an error.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vandcond/clusters.hpp"

namespace vandcond {

struct BoundReport {
  std::string name;
  double value = 0.0;
  bool valid = false;
  std::string condition;  // the inequality that gates validity
  std::size_t s = 0;
  std::size_t ell = 0;
  std::optional<double> delta;
  std::optional<double> omega;
  std::optional<std::int64_t> n;
};

/// pi / (Delta Omega).
double srf(double delta, double omega);

/// sqrt(1 + 1/2N - 2 pi/(2N Delta_N)), valid when 2N+1 > 2 pi / Delta_N.
/// Value is clamped to 0 outside the window.
BoundReport aubel_bound(std::int64_t n_half, double delta_n);

/// 2^{2s-2} / ((2s-1) binom(2s-2, s-1)^3). Range error for s > 30.
double slepian_constant(std::size_t s);

/// (1/pi) (2 pi W)^{2s-1} slepian_constant(s); advisory validity W <= 0.05.
BoundReport slepian_lambda_asymptotic(std::size_t s, double w);

/// 1 / (2 (2 pi)^{s-1} s^{2s-1}). On underflow below the smallest normal
/// double, returns that value and sets *underflow.
double main_constant(std::size_t s, bool* underflow = nullptr);

struct OmegaWindow {
  double lo = 0.0;  // 4 pi s / rho
  double hi = 0.0;  // pi s / (tau Delta)
  bool empty() const noexcept { return lo > hi; }
  bool contains(double omega) const noexcept { return lo <= omega && omega <= hi; }
};

OmegaWindow omega_window(const ClusterParams& p);

/// 2 s^3 ceil(Omega / 4s).
std::int64_t n_threshold(std::size_t s, double omega);

enum class BoundTarget { sigma, lambda };

/// C (Delta Omega)^{ell-1} for sigma, its square for lambda. Valid when
/// 4 tau Delta <= rho and Omega lies in the window.
BoundReport main_lower_bound(const ClusterParams& p, double omega, BoundTarget target);

/// main_constant(s) (N Delta)^{ell-1}; valid when
/// max(4 pi s/rho, 4 s^3) <= N <= pi s/(tau Delta) and 4 tau Delta <= min(rho, 1/s^2).
BoundReport cor_finite_n_bound(const ClusterParams& p, std::int64_t n_half);

/// True when every xi_j lies in (1/s^2)(-pi/2, pi/2].
bool within_shrunk_interval(const std::vector<double>& xi, std::size_t s);

/// lambda_min of the ell x ell equispaced sinc Gramian with step Delta: an
/// upper bound for lambda_min(G(x_min, Omega)) by interlacing. Range error
/// unless Delta < pi/(2(ell-1)); valid when Delta Omega < 1.
BoundReport optimality_upper_bound(std::size_t s, std::size_t ell, double delta, double omega);

struct SigmaMaxEnvelope {
  double lower = 1.0;
  double upper = 0.0;  // sqrt(s (2N+1) / 2N)
};

SigmaMaxEnvelope sigma_max_envelope(std::size_t s, std::int64_t n_half);

/// Every node-dependent bound for (x, p, Omega) in a fixed order: main_sigma,
/// main_lambda, optimality_upper, then with N also cor_finite_n, aubel and
/// sigma_max_upper.
std::vector<BoundReport> bound_table(const NodeConfiguration& x, const ClusterParams& p,
                                     double omega, std::optional<std::int64_t> n_half);

/// CSV columns: name,value,valid,s,ell,delta,omega,n. Absent fields are empty.
std::string bound_csv_header();
std::string to_csv_row(const BoundReport& r);
BoundReport parse_bound_csv_row(const std::string& line);
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& rows);

}  // namespace vandcond
