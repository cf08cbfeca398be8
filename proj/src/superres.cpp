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

#include "vandcond/superres.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "extended.hpp"
#include "vandcond/bounds.hpp"
#include "vandcond/error.hpp"
#include "vandcond/format.hpp"
#include "vandcond/matrices.hpp"

namespace vandcond {

namespace {

constexpr double kPi = std::numbers::pi;
// Relative inflation of the ladder interval when testing distances against it.
constexpr double kLadderSlack = 1e-9;

}  // namespace

DiscreteMeasure::DiscreteMeasure(Grid grid, std::vector<std::int64_t> indices,
                                 std::vector<Complex> amplitudes)
    : grid_(grid) {
  if (indices.size() != amplitudes.size()) {
    fail(ErrorCode::DimensionMismatch, "index and amplitude counts differ");
  }
  std::vector<std::size_t> order(indices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
  for (std::size_t i : order) {
    const std::int64_t k = indices[i];
    if (k < -grid_.index_bound || k > grid_.index_bound) {
      fail(ErrorCode::Range, "grid index " + std::to_string(k) + " outside +-" +
                                 std::to_string(grid_.index_bound));
    }
    if (!indices_.empty() && indices_.back() == k) {
      fail(ErrorCode::DuplicateNodes, "grid index " + std::to_string(k) + " repeated");
    }
    const Complex a = amplitudes[i];
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      fail(ErrorCode::InvalidArgument, "amplitude is not finite");
    }
    indices_.push_back(k);
    amplitudes_.push_back(a);
  }
}

std::vector<double> DiscreteMeasure::positions() const {
  std::vector<double> t(indices_.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = grid_.point(indices_[j]);
  return t;
}

NodeConfiguration DiscreteMeasure::support() const { return NodeConfiguration(positions()); }

double DiscreteMeasure::norm2() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc = std::hypot(acc, std::abs(a));
  return acc;
}

DiscreteMeasure DiscreteMeasure::read_text(std::istream& in) {
  std::string line;
  std::optional<double> delta;
  std::vector<std::int64_t> idx;
  std::vector<Complex> amp;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "delta") {
      double d = 0.0;
      if (!(ls >> d)) fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad delta");
      delta = d;
      continue;
    }
    if (!delta) fail(ErrorCode::Io, "measure text must start with a delta line");
    std::istringstream row(line);
    std::int64_t k = 0;
    double re = 0.0, im = 0.0;
    if (!(row >> k >> re >> im)) {
      fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 'k re im'");
    }
    idx.push_back(k);
    amp.emplace_back(re, im);
  }
  if (!delta) fail(ErrorCode::Io, "measure text has no delta line");
  return DiscreteMeasure(Grid(*delta), std::move(idx), std::move(amp));
}

DiscreteMeasure DiscreteMeasure::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  return read_text(in);
}

void DiscreteMeasure::write_text(std::ostream& out) const {
  out << "delta " << format_g(grid_.delta) << '\n';
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    out << indices_[j] << ' ' << format_g(amplitudes_[j].real()) << ' '
        << format_g(amplitudes_[j].imag()) << '\n';
  }
}

void DiscreteMeasure::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  write_text(out);
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

DiscreteMeasure difference(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  if (mu1.grid().delta != mu2.grid().delta) {
    fail(ErrorCode::InvalidArgument, "measures live on different grids");
  }
  std::map<std::int64_t, Complex> acc;
  for (std::size_t j = 0; j < mu1.size(); ++j) acc[mu1.indices()[j]] += mu1.amplitudes()[j];
  for (std::size_t j = 0; j < mu2.size(); ++j) acc[mu2.indices()[j]] -= mu2.amplitudes()[j];
  std::vector<std::int64_t> idx;
  std::vector<Complex> amp;
  for (const auto& [k, a] : acc) {
    if (a == Complex(0.0)) continue;
    idx.push_back(k);
    amp.push_back(a);
  }
  return DiscreteMeasure(mu1.grid(), std::move(idx), std::move(amp));
}

double MeasurementFunction::frequency(std::size_t q) const {
  const double step = 2.0 * omega / static_cast<double>(samples.size() - 1);
  return -omega + step * static_cast<double>(q);
}

Complex mu_hat(const DiscreteMeasure& mu, double w) {
  CompensatedAccumulator acc;
  const auto t = mu.positions();
  for (std::size_t j = 0; j < t.size(); ++j) acc.add(mu.amplitudes()[j] * std::polar(1.0, w * t[j]));
  return acc.value();
}

MeasurementFunction sample_measurement(const DiscreteMeasure& mu, double omega, std::size_t q) {
  if (!(omega > 0.0)) fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  if (q < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
  MeasurementFunction phi;
  phi.omega = omega;
  phi.samples.resize(q);
  for (std::size_t i = 0; i < q; ++i) phi.samples[i] = mu_hat(mu, phi.frequency(i));
  return phi;
}

double norm2_omega_gram(const DiscreteMeasure& mu, double omega) {
  if (mu.size() == 0) return 0.0;
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  }
  // c^* G c = a^T G a + b^T G b for real symmetric G and c = a + ib; binary128
  // keeps the cancellation between large amplitudes from eating the result
  const std::vector<double> t = mu.positions();
  const auto g = extended::sinc_gram(t, omega);
  std::vector<extended::quad> re(mu.size()), im(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    re[j] = mu.amplitudes()[j].real();
    im[j] = mu.amplitudes()[j].imag();
  }
  const extended::quad form = extended::quadratic_form(g, re) + extended::quadratic_form(g, im);
  return form > 0 ? static_cast<double>(extended::sqrt(form)) : 0.0;
}

double norm2_omega_quadrature(const MeasurementFunction& phi) {
  const std::size_t q = phi.count();
  if (q < 33) fail(ErrorCode::InvalidArgument, "trapezoid rule needs Q >= 33");
  if (!(phi.omega > 0.0)) fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  std::vector<double> terms(q);
  for (std::size_t i = 0; i < q; ++i) {
    const double w = (i == 0 || i + 1 == q) ? 0.5 : 1.0;
    terms[i] = w * std::norm(phi.samples[i]);
  }
  // h / (2 Omega) with h = 2 Omega / (Q - 1)
  const double integral = compensated_sum(terms) / static_cast<double>(q - 1);
  return std::sqrt(integral);
}

namespace {

void require_clustered(const DiscreteMeasure& mu, const ClusterParams& p, const char* which) {
  if (mu.size() < 2) return;
  ClusterParams q = p;
  q.s = mu.size();
  q.ell = std::min(p.ell, mu.size());
  const ClusterValidation v = validate_cluster(mu.support(), q);
  if (!v.ok()) fail(ErrorCode::InvalidCluster, std::string(which) + ": " + v.report());
}

}  // namespace

MergeWitness merge_cluster_witness(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                   const ClusterParams& p, double ladder_ratio) {
  if (!(ladder_ratio >= 2.0)) fail(ErrorCode::InvalidArgument, "ladder ratio K must be >= 2");
  if (mu1.grid().delta != p.delta || mu2.grid().delta != p.delta) {
    fail(ErrorCode::InvalidArgument, "measure grid step differs from Delta");
  }
  if (!(p.tau >= 1.0) || !(p.rho > 0.0)) fail(ErrorCode::InvalidArgument, "need tau >= 1, rho > 0");
  const double k = ladder_ratio;
  const double delta0 = p.rho / (2.0 * p.tau * std::pow(k, static_cast<double>(2 * p.s + 2)));
  if (p.delta > delta0) {
    fail(ErrorCode::DeltaTooLarge,
         "Delta=" + format_g(p.delta) + " exceeds Delta0=" + format_g(delta0));
  }
  require_clustered(mu1, p, "mu1");
  require_clustered(mu2, p, "mu2");

  // Pairwise gaps of the union of supports, in grid units, up to rho/2.
  std::vector<std::int64_t> all(mu1.indices());
  all.insert(all.end(), mu2.indices().begin(), mu2.indices().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const double half_rho_units = 0.5 * p.rho / p.delta;
  std::vector<double> gaps;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double g = static_cast<double>(all[j] - all[i]);
      if (g <= half_rho_units) gaps.push_back(g);
    }

  const std::size_t last = 2 * p.s + 2;
  for (std::size_t c = 2; c <= last; ++c) {
    const double lo_units = std::pow(k, static_cast<double>(c - 1)) * p.tau;
    const double hi_units = k * lo_units;
    const bool free = std::none_of(gaps.begin(), gaps.end(), [&](double g) {
      return g >= lo_units * (1.0 - kLadderSlack) && g <= hi_units * (1.0 + kLadderSlack);
    });
    if (!free) continue;

    DiscreteMeasure diff = difference(mu1, mu2);
    const double tau_prime = lo_units;
    const double rho_prime = k * tau_prime * p.delta;
    std::size_t ell_prime = diff.size();
    if (diff.size() >= 2) {
      std::size_t largest = 1;
      for (std::size_t i = 0; i < diff.size(); ++i) {
        std::size_t members = 0;
        for (std::size_t j = 0; j < diff.size(); ++j) {
          const double g = std::abs(static_cast<double>(diff.indices()[j] - diff.indices()[i]));
          if (g <= tau_prime * (1.0 + kGeomTol)) ++members;
        }
        largest = std::max(largest, members);
      }
      ell_prime = std::max<std::size_t>(2, largest);
    }
    const std::size_t s_prime = diff.size();
    return MergeWitness{rho_prime, tau_prime,        ell_prime,       s_prime, c,
                        tau_prime * p.delta, rho_prime, std::move(diff)};
  }
  fail(ErrorCode::NoFreeInterval, "every ladder interval I_2..I_{2s+2} meets a distance");
}

MinimaxConstruction minimax_construct(std::size_t s, std::size_t ell, double delta, double omega,
                                      double epsilon) {
  if (ell < 1 || ell > s) fail(ErrorCode::Range, "need 1 <= ell <= s");
  if (!(delta > 0.0) || !(delta < kPi / (2.0 * static_cast<double>(2 * ell - 1)))) {
    fail(ErrorCode::Range, "need 0 < Delta < pi/(2(2 ell - 1))");
  }
  if (!(omega > 0.0) || !(epsilon > 0.0)) {
    fail(ErrorCode::InvalidArgument, "Omega and epsilon must be positive");
  }
  const XminConfiguration xm = gen_xmin(2 * s, 2 * ell, delta);
  const Grid grid(delta);
  const std::vector<std::int64_t> idx = snap_indices(xm.nodes, grid);
  std::vector<double> t(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) t[j] = grid.point(idx[j]);

  using extended::quad;
  const std::size_t n = t.size();
  const std::vector<quad> g = extended::sinc_gram(t, omega);
  const extended::SymmetricSpectrum spec = extended::symmetric_eigen(g, n);
  std::vector<quad> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = spec.vector_entry(i, 0);
  // fix the sign so the first nonzero entry is positive
  for (quad v : c) {
    if (v == 0) continue;
    if (v < 0) for (quad& x : c) x = -x;
    break;
  }
  const quad scale = static_cast<quad>(epsilon) / extended::sqrt(extended::quadratic_form(g, c));
  for (quad& x : c) x *= scale;
  quad sq = 0;
  for (quad x : c) sq += x * x;

  MinimaxRecord rec;
  rec.s = s;
  rec.ell = ell;
  rec.delta = delta;
  rec.omega = omega;
  rec.epsilon = epsilon;
  rec.srf = srf(delta, omega);
  rec.lambda_min = static_cast<double>(spec.eigenvalues.front());
  rec.muhat_norm = static_cast<double>(extended::sqrt(extended::quadratic_form(g, c)));
  rec.mu_norm = static_cast<double>(extended::sqrt(sq));
  rec.implied_lower = 0.5 * rec.mu_norm;
  rec.ratio = rec.implied_lower / (std::pow(rec.srf, static_cast<double>(2 * ell - 1)) * epsilon);
  rec.rho_prime = xm.rho_prime;
  rec.tau_prime = xm.tau_prime;
  rec.grid_indices = idx;

  std::vector<Complex> amp(n);
  for (std::size_t i = 0; i < n; ++i) amp[i] = static_cast<double>(c[i]);

  // Alternate by sorted position inside the separated group (the negative
  // nodes, listed first) and inside the cluster group; mu1 takes even slots.
  std::vector<std::int64_t> i1, i2;
  std::vector<Complex> a1, a2;
  const std::size_t separated = n - 2 * ell;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t slot = j < separated ? j : j - separated;
    if (slot % 2 == 0) {
      i1.push_back(idx[j]);
      a1.push_back(amp[j]);
    } else {
      i2.push_back(idx[j]);
      a2.push_back(-amp[j]);
    }
  }
  return MinimaxConstruction{rec, DiscreteMeasure(grid, idx, amp),
                             DiscreteMeasure(grid, std::move(i1), std::move(a1)),
                             DiscreteMeasure(grid, std::move(i2), std::move(a2))};
}

MinimaxRecord minimax_lower_experiment(std::size_t s, std::size_t ell, double delta, double omega,
                                       double epsilon) {
  return minimax_construct(s, ell, delta, omega, epsilon).record;
}

}  // namespace vandcond
