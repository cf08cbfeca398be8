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

#include "vandcond/clusters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "vandcond/error.hpp"
#include "vandcond/format.hpp"

namespace vandcond {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kDomainSlack = 1e-14;

std::string trim(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

}  // namespace

double wrap_distance(double t) noexcept {
  return std::abs(std::remainder(t, 2.0 * kPi));
}

NodeConfiguration::NodeConfiguration(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) fail(ErrorCode::InvalidArgument, "node configuration is empty");
  const double lo = -kHalfPi * (1.0 + kDomainSlack);
  const double hi = kHalfPi * (1.0 + kDomainSlack);
  for (double t : nodes_) {
    if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "node is not finite");
    if (t < lo || t > hi) {
      fail(ErrorCode::Range, "node " + format_g(t) + " outside (-pi/2, pi/2]");
    }
  }
  std::sort(nodes_.begin(), nodes_.end());
  for (std::size_t j = 1; j < nodes_.size(); ++j) {
    if (nodes_[j] == nodes_[j - 1]) {
      fail(ErrorCode::DuplicateNodes, "node " + format_g(nodes_[j]) + " repeated");
    }
  }
}

NodeConfiguration NodeConfiguration::read_text(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": not a number: " + body);
    }
    values.push_back(v);
  }
  return NodeConfiguration(std::move(values));
}

NodeConfiguration NodeConfiguration::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  return read_text(in);
}

void NodeConfiguration::write_text(std::ostream& out) const {
  for (double t : nodes_) out << format_g(t) << '\n';
}

void NodeConfiguration::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  write_text(out);
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

double min_separation(const NodeConfiguration& x) {
  if (x.size() < 2) fail(ErrorCode::InvalidArgument, "separation needs at least two nodes");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      best = std::min(best, wrap_distance(x[i] - x[j]));
  return best;
}

double outer_separation(const NodeConfiguration& x, double radius) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = wrap_distance(x[i] - x[j]);
      if (d > radius * (1.0 + kGeomTol) + kNodeTol) best = std::min(best, d);
    }
  return best;
}

ClusterParams infer_cluster_params(const NodeConfiguration& x, std::optional<std::size_t> ell,
                                   std::optional<double> tau) {
  const std::size_t s = x.size();
  if (s < 2) fail(ErrorCode::InvalidArgument, "need at least two nodes");
  const double delta = min_separation(x);
  const std::size_t first = ell.value_or(2);
  const std::size_t last = ell.value_or(s);
  std::string report = "ell must satisfy 2 <= ell <= s";
  for (std::size_t e = first; e <= last && e >= 2; ++e) {
    const double t = tau.value_or(static_cast<double>(e) - 1.0);
    double rho = outer_separation(x, t * delta);
    if (!std::isfinite(rho)) rho = kPi;
    const ClusterParams p{delta, rho, s, e, t};
    if (!(rho > t * delta)) {
      report = "rho <= tau Delta at ell=" + std::to_string(e);
      continue;
    }
    const ClusterValidation v = validate_cluster(x, p);
    if (v.ok()) return p;
    report = v.report();
  }
  fail(ErrorCode::InvalidCluster, "no cluster parameters fit the nodes: " + report);
}

std::size_t ClusterDecomposition::max_size() const {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

std::string ClusterValidation::report() const {
  if (violations.empty()) return "valid\n";
  std::string out;
  for (const auto& v : violations) out += v.message + '\n';
  return out;
}

ClusterValidation validate_cluster(const NodeConfiguration& x, const ClusterParams& p) {
  const double radius = p.tau * p.delta;
  if (!(p.rho > radius)) {
    fail(ErrorCode::AmbiguousMembership,
         "rho=" + format_g(p.rho) + " <= tau*Delta=" + format_g(radius));
  }
  ClusterValidation out;
  auto range = [&](const std::string& msg, double value, double bound) {
    out.violations.push_back({Violation::Kind::ParameterRange, 0, 0, value, bound, msg});
  };
  const auto s = x.size();
  if (!(p.delta > 0.0)) range("Delta must be positive", p.delta, 0.0);
  if (p.s != s) {
    range("s=" + std::to_string(p.s) + " but configuration has " + std::to_string(s) + " nodes",
          static_cast<double>(p.s), static_cast<double>(s));
  }
  if (p.ell < 2 || p.ell > s) {
    range("ell=" + std::to_string(p.ell) + " outside [2, s]", static_cast<double>(p.ell),
          static_cast<double>(s));
  }
  if (p.tau < static_cast<double>(p.ell) - 1.0) {
    range("tau=" + format_g(p.tau) + " < ell-1", p.tau, static_cast<double>(p.ell) - 1.0);
  }
  if (p.delta > 0.0 && p.tau >= kPi / p.delta) {
    range("tau=" + format_g(p.tau) + " >= pi/Delta", p.tau, kPi / p.delta);
  }

  ClusterDecomposition dec;
  dec.params = p;
  dec.member_sets.resize(s);
  dec.sizes.resize(s);
  const double in_radius = radius * (1.0 + kGeomTol) + kNodeTol;
  const double near_bound = p.delta * (1.0 - kGeomTol) - kNodeTol;
  const double far_bound = p.rho * (1.0 - kGeomTol) - kNodeTol;
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t k = 0; k < s; ++k) {
      if (k == j) {
        dec.member_sets[j].push_back(j);
        continue;
      }
      const double d = wrap_distance(x[k] - x[j]);
      if (d <= in_radius) {
        dec.member_sets[j].push_back(k);
        if (d < near_bound) {
          out.violations.push_back(
              {Violation::Kind::TooClose, j, k, d, p.delta,
               "nodes " + std::to_string(j) + "," + std::to_string(k) + ": distance " +
                   format_g(d) + " < Delta=" + format_g(p.delta)});
        }
      } else if (d < far_bound) {
        out.violations.push_back(
            {Violation::Kind::TooFar, j, k, d, p.rho,
             "nodes " + std::to_string(j) + "," + std::to_string(k) + ": distance " +
                 format_g(d) + " in (tau*Delta, rho=" + format_g(p.rho) + ")"});
      }
    }
    dec.sizes[j] = dec.member_sets[j].size();
    if (dec.sizes[j] > p.ell) {
      out.violations.push_back(
          {Violation::Kind::ClusterTooLarge, j, j, static_cast<double>(dec.sizes[j]),
           static_cast<double>(p.ell),
           "cluster of node " + std::to_string(j) + " has size " + std::to_string(dec.sizes[j]) +
               " > ell=" + std::to_string(p.ell)});
    }
  }
  if (out.violations.empty()) out.decomposition = std::move(dec);
  return out;
}

NodeConfiguration gen_equispaced(std::size_t ell, double delta, double t0) {
  if (ell < 1 || !(delta > 0.0)) fail(ErrorCode::Range, "equispaced needs ell >= 1, Delta > 0");
  std::vector<double> t(ell);
  for (std::size_t j = 0; j < ell; ++j) t[j] = t0 + static_cast<double>(j + 1) * delta;
  return NodeConfiguration(std::move(t));
}

namespace {

// Cluster jDelta (j <= ell) plus s - ell nodes spread over (-pi/2, 0).
std::vector<double> cluster_plus_spread(std::size_t s, std::size_t ell, double delta) {
  std::vector<double> t;
  t.reserve(s);
  for (std::size_t j = 1; j <= ell; ++j) t.push_back(static_cast<double>(j) * delta);
  const std::size_t rest = s - ell;
  const double step = kHalfPi / static_cast<double>(rest + 1);
  for (std::size_t k = 1; k <= rest; ++k) t.push_back(-kHalfPi + static_cast<double>(k) * step);
  return t;
}

}  // namespace

NodeConfiguration gen_c1(std::size_t s, std::size_t ell, double delta) {
  if (ell < 2 || ell > s) fail(ErrorCode::Range, "C1 needs 2 <= ell <= s");
  if (!(delta > 0.0) || !(static_cast<double>(ell) * delta < kHalfPi)) {
    fail(ErrorCode::Range, "C1 needs 0 < ell*Delta < pi/2");
  }
  return NodeConfiguration(cluster_plus_spread(s, ell, delta));
}

NodeConfiguration gen_c2(std::size_t s, std::size_t ell, double delta) {
  if (ell < 2 || s < ell + 1) fail(ErrorCode::Range, "C2 needs ell >= 2 and s >= ell + 1");
  if (!(delta > 0.0) || !(static_cast<double>(ell) * delta < kHalfPi / 2.0)) {
    fail(ErrorCode::Range, "C2 needs 0 < ell*Delta < pi/4");
  }
  const std::size_t s1 = s / 2;
  const std::size_t s2 = s - s1;
  std::vector<double> t;
  t.reserve(s);
  auto group = [&](std::size_t count, double base) {
    const std::size_t c = std::min(ell, count);
    for (std::size_t j = 1; j <= c; ++j) t.push_back(base + static_cast<double>(j) * delta);
    const std::size_t rest = count - c;
    const double a = base + static_cast<double>(c) * delta;
    const double step = (base + kHalfPi - a) / static_cast<double>(rest + 1);
    for (std::size_t k = 1; k <= rest; ++k) t.push_back(a + static_cast<double>(k) * step);
  };
  group(s1, 0.0);
  group(s2, -kHalfPi);
  return NodeConfiguration(std::move(t));
}

XminConfiguration gen_xmin(std::size_t s, std::size_t ell, double delta) {
  if (ell < 1 || ell > s) fail(ErrorCode::Range, "x_min needs 1 <= ell <= s");
  if (!(delta > 0.0)) fail(ErrorCode::Range, "x_min needs Delta > 0");
  if (ell >= 2 && !(delta < kPi / (2.0 * static_cast<double>(ell - 1)))) {
    fail(ErrorCode::Range, "x_min needs Delta < pi/(2(ell-1))");
  }
  XminConfiguration out{NodeConfiguration(cluster_plus_spread(s, ell, delta)),
                        kPi / (2.0 * static_cast<double>(s - ell + 1)),
                        static_cast<double>(ell) - 1.0};
  return out;
}

Grid::Grid(double step) : delta(step) {
  if (!(step > 0.0) || !std::isfinite(step)) fail(ErrorCode::InvalidArgument, "grid step must be positive");
  if (step > kHalfPi) fail(ErrorCode::DeltaTooLarge, "grid step exceeds pi/2");
  index_bound = static_cast<std::int64_t>(std::floor(kHalfPi / step));
}

std::int64_t Grid::nearest_index(double t) const noexcept {
  const auto k = static_cast<std::int64_t>(std::llround(t / delta));
  return std::clamp(k, -index_bound, index_bound);
}

std::vector<std::int64_t> snap_indices(const NodeConfiguration& x, const Grid& g) {
  std::vector<std::int64_t> idx(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) idx[j] = g.nearest_index(x[j]);
  for (std::size_t j = 1; j < idx.size(); ++j) {
    if (idx[j] == idx[j - 1]) {
      fail(ErrorCode::Collision, "nodes " + std::to_string(j - 1) + " and " + std::to_string(j) +
                                     " snap to grid index " + std::to_string(idx[j]));
    }
  }
  return idx;
}

NodeConfiguration snap_to_grid(const NodeConfiguration& x, const Grid& g) {
  const auto idx = snap_indices(x, g);
  std::vector<double> t(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) t[j] = g.point(idx[j]);
  return NodeConfiguration(std::move(t));
}

}  // namespace vandcond
