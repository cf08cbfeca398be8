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

// Decimation-and-blowup lower-bound certificates for sigma_min(V_N(x, Omega)).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vandcond/clusters.hpp"
#include "vandcond/matrices.hpp"

namespace vandcond {

struct BlowupMargins {
  double cluster_margin = 0.0;  // +inf when no cluster has a second member
  double far_margin = 0.0;      // +inf when every node is in every cluster
};

/// Minimum blown-up wrap distances lambda*|y - t_j| inside and outside x^(j).
BlowupMargins blowup_margins(const NodeConfiguration& x, const ClusterDecomposition& decomp,
                             double lambda);

struct LambdaChoice {
  std::int64_t m = 0;
  double lambda = 0.0;  // Omega m / N
  BlowupMargins margins;
};

/// Scans m = ceil(N/2s)..floor(N/s) and keeps the admissible m with the
/// largest far margin (smaller m on ties). nullopt when none qualifies.
std::optional<LambdaChoice> admissible_lambda_search(const NodeConfiguration& x,
                                                     const ClusterDecomposition& decomp,
                                                     const BandParams& band, double xi_fraction);

struct BadSetScan {
  double measure_fraction = 0.0;
  std::size_t interval_count = 0;
};

/// Uniform scan of [Omega/2s, Omega/s] for the far-margin threshold (1-xi)pi/s^2.
BadSetScan bad_set_scan(const NodeConfiguration& x, const ClusterDecomposition& decomp,
                        const BandParams& band, double xi_fraction, std::size_t grid_points);

struct RowBlock {
  std::int64_t n = 0;
  std::vector<std::int64_t> rows;  // row indices in [-N, N]
};

/// Blocks R_n, n = -m+1..m-1: R_n = {n + km} for n >= 0, {n - km} for n < 0.
std::vector<RowBlock> interleaved_partition(std::int64_t n_half, std::int64_t m, std::size_t s);

/// max_i prod_{j != i} (1 + |xi_j|) / |xi_j - xi_i|.
double gautschi_inverse_bound(std::span<const Complex> xi);

/// (pi^{1-s}/sqrt s) min_j prod_{k != j} delta_{j,k} with angular distances
/// delta. Independent of the start exponent, which is therefore not an input.
double block_sigma_bound(std::span<const Complex> xi);
double block_sigma_bound_angles(std::span<const double> theta);

struct DecimationCertificate {
  std::int64_t n_half = 0;
  double omega = 0.0;
  std::int64_t m = 0;
  double lambda = 0.0;
  double xi_fraction = 0.5;
  std::vector<double> blown_nodes;  // u_j = lambda t_j
  double cluster_margin = 0.0;
  double far_margin = 0.0;
  std::vector<RowBlock> blocks;
  std::vector<double> block_bounds;  // paired with blocks
  double certified_sigma = 0.0;
  double crude_sigma = 0.0;
  std::optional<double> oracle_sigma;

  /// "key: value" lines.
  std::string to_text() const;
};

/// Throws InvalidCluster if validation fails and NoAdmissibleLambda if the
/// decimation search comes back empty.
DecimationCertificate certify(const NodeConfiguration& x, const ClusterParams& p,
                              const BandParams& band, double xi_fraction = 0.5);

/// Fills oracle_sigma with the directly computed sigma_min(V_N(x, Omega)).
void attach_oracle(DecimationCertificate& cert, const NodeConfiguration& x);

/// Recomputes margins, block layout and the aggregate; returns an empty string
/// when everything checks, otherwise the first discrepancy.
std::string verify_certificate(const DecimationCertificate& cert, const NodeConfiguration& x,
                               const ClusterParams& p);

}  // namespace vandcond
