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

// Clustered node configurations on the torus: wrap-around geometry, the
// cluster validator, deterministic generators and the super-resolution grid.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vandcond {

/// Relative slack for geometric comparisons against Delta, tau*Delta, rho.
inline constexpr double kGeomTol = 1e-12;
/// Absolute slack in radians: differences of nodes near +-pi/2 carry rounding
/// of a few ulp(pi/2) regardless of Delta.
inline constexpr double kNodeTol = 4e-15;

/// |t| reduced to the principal interval (-pi, pi]; result in [0, pi].
double wrap_distance(double t) noexcept;

/// Distinct nodes in (-pi/2, pi/2], kept sorted ascending.
class NodeConfiguration {
 public:
  NodeConfiguration() = default;
  /// Sorts; throws DuplicateNodes on exact equality and Range outside the
  /// half-open interval (a 1e-14 relative slack admits the grid point -pi/2
  /// rounded up).
  explicit NodeConfiguration(std::vector<double> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t j) const { return nodes_[j]; }

  /// One node per line, 17 significant digits. '#' starts a comment.
  static NodeConfiguration read_text(std::istream& in);
  static NodeConfiguration load(const std::string& path);
  void write_text(std::ostream& out) const;
  void save(const std::string& path) const;

 private:
  std::vector<double> nodes_;
};

double min_separation(const NodeConfiguration& x);

struct ClusterParams {
  double delta = 0.0;
  double rho = 0.0;
  std::size_t s = 0;
  std::size_t ell = 2;
  double tau = 1.0;
};

struct ClusterDecomposition {
  ClusterParams params;
  std::vector<std::vector<std::size_t>> member_sets;  // member_sets[j] contains j
  std::vector<std::size_t> sizes;

  std::size_t max_size() const;
};

struct Violation {
  enum class Kind {
    ParameterRange,  // s, ell, tau or delta outside the admissible ranges
    TooClose,        // member of x^(j) closer than Delta
    TooFar,          // nonmember closer than rho
    ClusterTooLarge, // r_j > ell
  };
  Kind kind;
  std::size_t j = 0;  // node whose cluster is examined
  std::size_t k = 0;  // offending partner (== j for size/range violations)
  double value = 0.0; // observed distance or size
  double bound = 0.0; // bound it violated
  std::string message;
};

struct ClusterValidation {
  std::optional<ClusterDecomposition> decomposition;
  std::vector<Violation> violations;

  bool ok() const noexcept { return decomposition.has_value(); }
  std::string report() const;
};

/// Membership x^(j) = { y : |y - t_j|_T <= tau Delta }. Requires rho > tau Delta
/// (AmbiguousMembership otherwise); every violated condition is reported.
ClusterValidation validate_cluster(const NodeConfiguration& x, const ClusterParams& p);

/// t_j = t0 + j Delta, j = 1..ell.
NodeConfiguration gen_equispaced(std::size_t ell, double delta, double t0 = 0.0);

/// Cluster jDelta (j <= ell) plus s-ell nodes -pi/2 + k (pi/2)/(s-ell+1).
NodeConfiguration gen_c1(std::size_t s, std::size_t ell, double delta);

/// Two groups of floor(s/2) and s - floor(s/2) nodes, each with an ell-cluster
/// at the start of its quarter-circle and the rest equally spaced after it.
NodeConfiguration gen_c2(std::size_t s, std::size_t ell, double delta);

struct XminConfiguration {
  NodeConfiguration nodes;
  double rho_prime = 0.0;  // pi / (2 (s - ell + 1))
  double tau_prime = 0.0;  // ell - 1
};

XminConfiguration gen_xmin(std::size_t s, std::size_t ell, double delta);

/// Smallest wrap distance among pairs farther apart than `radius`; infinity
/// if there is no such pair. Gives the rho a generator layout achieves for a
/// given cluster radius.
double outer_separation(const NodeConfiguration& x, double radius);

/// Parameters read off a node set: Delta = min_separation, tau = ell - 1 unless
/// given, rho = outer_separation (pi for a single cluster). Without an ell the
/// smallest ell >= 2 that validates is used. InvalidCluster if none does.
ClusterParams infer_cluster_params(const NodeConfiguration& x,
                                   std::optional<std::size_t> ell = std::nullopt,
                                   std::optional<double> tau = std::nullopt);

struct Grid {
  double delta = 0.0;
  std::int64_t index_bound = 0;  // floor(pi / (2 Delta))

  explicit Grid(double step);
  double point(std::int64_t k) const noexcept { return static_cast<double>(k) * delta; }
  /// Nearest index, clamped to [-index_bound, index_bound].
  std::int64_t nearest_index(double t) const noexcept;
};

/// Each node replaced by the nearest grid point; Collision if two coincide.
NodeConfiguration snap_to_grid(const NodeConfiguration& x, const Grid& g);
std::vector<std::int64_t> snap_indices(const NodeConfiguration& x, const Grid& g);

}  // namespace vandcond
