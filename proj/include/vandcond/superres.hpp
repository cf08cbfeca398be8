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

// Grid-supported spike measures, the band-limited L2 norm, the cluster-merging
// witness and the constructive minimax lower-bound experiment.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vandcond/clusters.hpp"
#include "vandcond/numkernel.hpp"

namespace vandcond {

/// sum_j a_j delta_{k_j Delta}. Indices are distinct, inside the grid, and
/// kept sorted ascending with their amplitudes.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Grid grid, std::vector<std::int64_t> indices, std::vector<Complex> amplitudes);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<std::int64_t>& indices() const noexcept { return indices_; }
  const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return indices_.size(); }

  /// Support positions k_j Delta.
  std::vector<double> positions() const;
  NodeConfiguration support() const;
  /// Discrete l2 norm of the amplitude vector.
  double norm2() const;

  /// Text form: "delta <step>" header, then "k re im" per spike.
  static DiscreteMeasure read_text(std::istream& in);
  static DiscreteMeasure load(const std::string& path);
  void write_text(std::ostream& out) const;
  void save(const std::string& path) const;

 private:
  Grid grid_;
  std::vector<std::int64_t> indices_;
  std::vector<Complex> amplitudes_;
};

/// mu1 - mu2 on the union of supports; exact cancellations are dropped.
DiscreteMeasure difference(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

/// Samples of Phi on the uniform grid omega_q = -Omega + q 2 Omega/(Q-1).
struct MeasurementFunction {
  double omega = 0.0;
  std::vector<Complex> samples;

  std::size_t count() const noexcept { return samples.size(); }
  double frequency(std::size_t q) const;
};

/// sum_j a_j e^{i w t_j}.
Complex mu_hat(const DiscreteMeasure& mu, double w);

/// Phi = mu_hat on Q uniform samples of [-Omega, Omega].
MeasurementFunction sample_measurement(const DiscreteMeasure& mu, double omega, std::size_t q);

/// sqrt(c^* G(supp mu, Omega) c).
double norm2_omega_gram(const DiscreteMeasure& mu, double omega);

/// Composite trapezoid value of sqrt((1/2 Omega) int |Phi|^2). Requires Q >= 33.
double norm2_omega_quadrature(const MeasurementFunction& phi);

struct MergeWitness {
  double rho_prime = 0.0;
  double tau_prime = 0.0;
  std::size_t ell_prime = 0;
  std::size_t s_prime = 0;
  std::size_t interval_index = 0;  // C in {2, ..., 2s+2}
  double interval_lo = 0.0;        // a
  double interval_hi = 0.0;        // b = K a
  DiscreteMeasure diff;            // mu1 - mu2
};

/// Ladder I_0 = [0, tau Delta], I_j = [K^{j-1}, K^j] tau Delta; returns the
/// first I_C (C >= 2) free of all pairwise support distances up to rho/2.
/// DeltaTooLarge if Delta > rho / (2 tau K^{2s+2}); InvalidCluster if an input
/// measure is not (Delta, rho, s, ell, tau)-clustered.
MergeWitness merge_cluster_witness(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                   const ClusterParams& p, double ladder_ratio = 2.0);

struct MinimaxRecord {
  std::size_t s = 0;
  std::size_t ell = 0;
  double delta = 0.0;
  double omega = 0.0;
  double epsilon = 0.0;
  double srf = 0.0;
  double lambda_min = 0.0;     // of G(x_min, Omega)
  double mu_norm = 0.0;        // ||mu||_2
  double muhat_norm = 0.0;     // ||mu_hat||_{2, Omega}
  double implied_lower = 0.0;  // ||mu||_2 / 2
  double ratio = 0.0;          // implied_lower / (SRF^{2 ell - 1} epsilon)
  double rho_prime = 0.0;
  double tau_prime = 0.0;
  std::vector<std::int64_t> grid_indices;  // snapped x_min(2s, 2 ell)
};

struct MinimaxConstruction {
  MinimaxRecord record;
  DiscreteMeasure mu;   // minimal-eigenvector measure, ||mu_hat|| = epsilon
  DiscreteMeasure mu1;  // mu = mu1 - mu2
  DiscreteMeasure mu2;
};

/// Builds x_min(2s, 2 ell) on the Delta grid and the minimal eigenvector of its
/// sinc Gramian scaled so that ||mu_hat||_{2, Omega} = epsilon. Eigenvector,
/// normalization and norms are computed in binary128; the returned measures
/// carry the amplitudes rounded to double.
MinimaxConstruction minimax_construct(std::size_t s, std::size_t ell, double delta, double omega,
                                      double epsilon);

MinimaxRecord minimax_lower_experiment(std::size_t s, std::size_t ell, double delta, double omega,
                                       double epsilon);

}  // namespace vandcond
