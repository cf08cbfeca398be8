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

#include "vandcond/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "vandcond/bounds.hpp"
#include "vandcond/error.hpp"
#include "vandcond/format.hpp"

namespace vandcond {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_band(const BandParams& band) {
  if (!(band.omega > 0.0) || !std::isfinite(band.omega)) {
    fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  }
  if (band.n_half < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
}

void check_xi(double xi_fraction) {
  if (!(xi_fraction > 0.0 && xi_fraction < 1.0)) {
    fail(ErrorCode::InvalidArgument, "xi fraction must lie in (0, 1)");
  }
}

bool is_member(const ClusterDecomposition& decomp, std::size_t j, std::size_t k) {
  const auto& set = decomp.member_sets[j];
  return std::find(set.begin(), set.end(), k) != set.end();
}

double far_threshold(double xi_fraction, std::size_t s) {
  const double sd = static_cast<double>(s);
  return (1.0 - xi_fraction) * kPi / (sd * sd);
}

bool admissible(const BlowupMargins& mg, double lambda, double delta, double far_bound) {
  return mg.cluster_margin >= lambda * (delta * (1.0 - kGeomTol) - kNodeTol) && mg.far_margin >= far_bound;
}

}  // namespace

BlowupMargins blowup_margins(const NodeConfiguration& x, const ClusterDecomposition& decomp,
                             double lambda) {
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "lambda must be positive");
  if (decomp.member_sets.size() != x.size()) {
    fail(ErrorCode::DimensionMismatch, "decomposition does not match configuration");
  }
  BlowupMargins mg{kInf, kInf};
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k == j) continue;
      const double d = wrap_distance(lambda * (x[k] - x[j]));
      if (is_member(decomp, j, k)) {
        mg.cluster_margin = std::min(mg.cluster_margin, d);
      } else {
        mg.far_margin = std::min(mg.far_margin, d);
      }
    }
  }
  return mg;
}

std::optional<LambdaChoice> admissible_lambda_search(const NodeConfiguration& x,
                                                     const ClusterDecomposition& decomp,
                                                     const BandParams& band, double xi_fraction) {
  check_band(band);
  check_xi(xi_fraction);
  const auto s = static_cast<std::int64_t>(x.size());
  const std::int64_t n = band.n_half;
  const std::int64_t m_lo = std::max<std::int64_t>(1, (n + 2 * s - 1) / (2 * s));
  const std::int64_t m_hi = n / s;
  const double far_bound = far_threshold(xi_fraction, x.size());
  const double delta = decomp.params.delta;
  std::optional<LambdaChoice> best;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    const double lambda = band.omega * static_cast<double>(m) / static_cast<double>(n);
    const BlowupMargins mg = blowup_margins(x, decomp, lambda);
    if (!admissible(mg, lambda, delta, far_bound)) continue;
    if (!best || mg.far_margin > best->margins.far_margin) best = LambdaChoice{m, lambda, mg};
  }
  return best;
}

BadSetScan bad_set_scan(const NodeConfiguration& x, const ClusterDecomposition& decomp,
                        const BandParams& band, double xi_fraction, std::size_t grid_points) {
  check_band(band);
  check_xi(xi_fraction);
  if (grid_points < 2) fail(ErrorCode::InvalidArgument, "scan needs at least two points");
  const double sd = static_cast<double>(x.size());
  const double lo = band.omega / (2.0 * sd);
  const double hi = band.omega / sd;
  const double far_bound = far_threshold(xi_fraction, x.size());
  BadSetScan out;
  std::size_t bad = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double lambda = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    const bool violating = blowup_margins(x, decomp, lambda).far_margin < far_bound;
    if (violating) {
      ++bad;
      if (!in_run) ++out.interval_count;
    }
    in_run = violating;
  }
  out.measure_fraction = static_cast<double>(bad) / static_cast<double>(grid_points);
  return out;
}

std::vector<RowBlock> interleaved_partition(std::int64_t n_half, std::int64_t m, std::size_t s) {
  if (m < 1 || s < 1) fail(ErrorCode::InvalidArgument, "need m >= 1 and s >= 1");
  if (m * static_cast<std::int64_t>(s) > n_half) {
    fail(ErrorCode::Range, "m*s = " + std::to_string(m * static_cast<std::int64_t>(s)) +
                               " exceeds N = " + std::to_string(n_half));
  }
  std::vector<RowBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(2 * m - 1));
  for (std::int64_t n = -m + 1; n <= m - 1; ++n) {
    RowBlock b;
    b.n = n;
    const std::int64_t sign = n < 0 ? -1 : 1;
    const std::int64_t base = n < 0 ? -n : n;
    for (std::size_t k = 0; k < s; ++k) {
      b.rows.push_back(sign * (base + static_cast<std::int64_t>(k) * m));
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

double gautschi_inverse_bound(std::span<const Complex> xi) {
  if (xi.empty()) fail(ErrorCode::InvalidArgument, "no nodes");
  double best = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (j == i) continue;
      const double gap = std::abs(xi[j] - xi[i]);
      if (gap == 0.0) fail(ErrorCode::DuplicateNodes, "repeated node in Gautschi bound");
      prod *= (1.0 + std::abs(xi[j])) / gap;
    }
    best = std::max(best, prod);
  }
  return best;
}

double block_sigma_bound_angles(std::span<const double> theta) {
  if (theta.empty()) fail(ErrorCode::InvalidArgument, "no nodes");
  const std::size_t s = theta.size();
  double best = kInf;
  for (std::size_t j = 0; j < s; ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < s; ++k) {
      if (k == j) continue;
      const double d = wrap_distance(theta[j] - theta[k]);
      if (d == 0.0) fail(ErrorCode::DuplicateNodes, "repeated node in block bound");
      prod *= d;
    }
    best = std::min(best, prod);
  }
  return std::pow(kPi, 1.0 - static_cast<double>(s)) / std::sqrt(static_cast<double>(s)) * best;
}

double block_sigma_bound(std::span<const Complex> xi) {
  std::vector<double> theta(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) theta[j] = std::arg(xi[j]);
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = i + 1; j < xi.size(); ++j)
      if (xi[i] == xi[j]) fail(ErrorCode::DuplicateNodes, "repeated node in block bound");
  return block_sigma_bound_angles(theta);
}

std::string DecimationCertificate::to_text() const {
  std::ostringstream out;
  out << "n_half: " << n_half << '\n';
  out << "omega: " << format_g(omega) << '\n';
  out << "m: " << m << '\n';
  out << "lambda: " << format_g(lambda) << '\n';
  out << "xi_fraction: " << format_g(xi_fraction) << '\n';
  out << "blown_nodes:";
  for (double u : blown_nodes) out << ' ' << format_g(u);
  out << '\n';
  out << "cluster_margin: " << format_g(cluster_margin) << '\n';
  out << "far_margin: " << format_g(far_margin) << '\n';
  out << "block_count: " << blocks.size() << '\n';
  const bool uniform = std::all_of(block_bounds.begin(), block_bounds.end(),
                                   [&](double b) { return b == block_bounds.front(); });
  if (uniform && !block_bounds.empty()) {
    out << "block_bound: " << format_g(block_bounds.front()) << '\n';
  } else {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      out << "block_bound[" << blocks[i].n << "]: " << format_g(block_bounds[i]) << '\n';
    }
  }
  out << "certified_sigma: " << format_g(certified_sigma) << '\n';
  out << "crude_sigma: " << format_g(crude_sigma) << '\n';
  if (oracle_sigma) out << "oracle_sigma: " << format_g(*oracle_sigma) << '\n';
  return out.str();
}

namespace {

double aggregate(const std::vector<double>& bounds) {
  double acc = 0.0;
  for (double b : bounds) acc += b * b;
  return std::sqrt(acc);
}

}  // namespace

DecimationCertificate certify(const NodeConfiguration& x, const ClusterParams& p,
                              const BandParams& band, double xi_fraction) {
  check_band(band);
  check_xi(xi_fraction);
  const ClusterValidation validation = validate_cluster(x, p);
  if (!validation.ok()) fail(ErrorCode::InvalidCluster, validation.report());
  const ClusterDecomposition& decomp = *validation.decomposition;

  const auto choice = admissible_lambda_search(x, decomp, band, xi_fraction);
  if (!choice) {
    fail(ErrorCode::NoAdmissibleLambda,
         "no m in [N/2s, N/s] meets both margins at N=" + std::to_string(band.n_half));
  }

  DecimationCertificate cert;
  cert.n_half = band.n_half;
  cert.omega = band.omega;
  cert.m = choice->m;
  cert.lambda = choice->lambda;
  cert.xi_fraction = xi_fraction;
  cert.cluster_margin = choice->margins.cluster_margin;
  cert.far_margin = choice->margins.far_margin;
  cert.blown_nodes.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) cert.blown_nodes[j] = cert.lambda * x[j];
  cert.blocks = interleaved_partition(band.n_half, cert.m, x.size());
  // every block is a column-scaled V(e^{iu}, 0), so the bound is shared
  const double beta = block_sigma_bound_angles(cert.blown_nodes) /
                      std::sqrt(2.0 * static_cast<double>(band.n_half));
  cert.block_bounds.assign(cert.blocks.size(), beta);
  cert.certified_sigma = aggregate(cert.block_bounds);
  cert.crude_sigma =
      main_constant(x.size()) * std::pow(p.delta * band.omega, static_cast<double>(p.ell - 1));
  return cert;
}

void attach_oracle(DecimationCertificate& cert, const NodeConfiguration& x) {
  const ComplexMatrix v = vandermonde_scaled(x, BandParams{cert.omega, cert.n_half});
  cert.oracle_sigma = sigma_min(v, SigmaMode::gram);
}

std::string verify_certificate(const DecimationCertificate& cert, const NodeConfiguration& x,
                               const ClusterParams& p) {
  const ClusterValidation validation = validate_cluster(x, p);
  if (!validation.ok()) return "configuration is not clustered: " + validation.report();
  const auto s = x.size();
  const double sd = static_cast<double>(s);
  const double n = static_cast<double>(cert.n_half);
  const double lambda = cert.omega * static_cast<double>(cert.m) / n;
  if (lambda != cert.lambda) return "lambda != Omega m / N";
  if (static_cast<double>(cert.m) * 2.0 * sd < n || static_cast<double>(cert.m) * sd > n) {
    return "lambda outside [Omega/2s, Omega/s]";
  }
  const BlowupMargins mg = blowup_margins(x, *validation.decomposition, lambda);
  if (mg.cluster_margin != cert.cluster_margin || mg.far_margin != cert.far_margin) {
    return "recomputed margins differ";
  }
  if (!admissible(mg, lambda, p.delta, far_threshold(cert.xi_fraction, s))) {
    return "margins violate the admissibility inequalities";
  }
  if (cert.blocks.size() != static_cast<std::size_t>(2 * cert.m - 1)) return "block count != 2m-1";
  if (cert.block_bounds.size() != cert.blocks.size()) return "block bounds do not pair with blocks";
  std::set<std::int64_t> used;
  for (const auto& b : cert.blocks) {
    if (b.rows.size() != s) return "block of wrong size";
    for (std::int64_t r : b.rows) {
      if (r < -cert.n_half || r > cert.n_half) return "row index outside [-N, N]";
      if (!used.insert(r).second) return "row " + std::to_string(r) + " used twice";
    }
  }
  const double beta = block_sigma_bound_angles(cert.blown_nodes) / std::sqrt(2.0 * n);
  for (double b : cert.block_bounds) {
    if (b != beta) return "block bound differs from recomputation";
  }
  if (aggregate(cert.block_bounds) != cert.certified_sigma) return "aggregate mismatch";
  return {};
}

}  // namespace vandcond
