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

#include "vandcond/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vandcond/clusters.hpp"
#include "vandcond/error.hpp"
#include "extended.hpp"
#include "vandcond/format.hpp"

namespace vandcond {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelPoints = 20;

void require_distinct(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 1; j < sorted.size(); ++j) {
    if (sorted[j] == sorted[j - 1]) {
      fail(ErrorCode::DuplicateNodes, "node " + format_g(sorted[j]) + " repeated");
    }
  }
}

}  // namespace

ComplexMatrix vandermonde_unit(std::span<const double> xi, std::int64_t n_half) {
  if (xi.empty()) fail(ErrorCode::InvalidArgument, "no nodes");
  if (n_half < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  for (double v : xi) {
    if (!std::isfinite(v) || std::abs(v) > kPi * (1.0 + 1e-14)) {
      fail(ErrorCode::Range, "node " + format_g(v) + " outside [-pi, pi]");
    }
  }
  require_distinct(xi);
  const std::size_t s = xi.size();
  const auto n = static_cast<std::size_t>(n_half);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n_half));
  ComplexMatrix v(2 * n + 1, s);
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = 0; j < s; ++j) {
      const Complex z = std::polar(scale, static_cast<double>(k) * xi[j]);
      v(n + k, j) = z;
      v(n - k, j) = std::conj(z);
    }
  }
  return v;
}

namespace {

std::vector<double> scaled_nodes(const NodeConfiguration& x, const BandParams& band) {
  if (!(band.omega > 0.0) || !std::isfinite(band.omega)) {
    fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  }
  if (band.n_half < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  const double n = static_cast<double>(band.n_half);
  std::vector<double> xi(x.size());
  double peak = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    xi[j] = x[j] * band.omega / n;
    peak = std::max(peak, std::abs(x[j]));
  }
  if (band.omega / n * peak > kPi * (1.0 + 1e-14)) {
    fail(ErrorCode::Range, "Omega/N * max|t| exceeds pi");
  }
  return xi;
}

}  // namespace

ComplexMatrix vandermonde_scaled(const NodeConfiguration& x, const BandParams& band) {
  return vandermonde_unit(scaled_nodes(x, band), band.n_half);
}

ComplexMatrix gram_finite(const NodeConfiguration& x, const BandParams& band) {
  scaled_nodes(x, band);
  const std::size_t s = x.size();
  const double n = static_cast<double>(band.n_half);
  const double norm = 1.0 / (2.0 * n);
  ComplexMatrix g(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    g(i, i) = (2.0 * n + 1.0) * norm;
    for (std::size_t j = i + 1; j < s; ++j) {
      const double t = band.omega * (x[i] - x[j]) / n;
      const double value = dirichlet_eval(band.n_half, t) * norm;
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  return g;
}

ComplexMatrix gram_sinc(const NodeConfiguration& x, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  }
  const std::size_t s = x.size();
  ComplexMatrix g(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < s; ++j) {
      const double value = sinc_eval(omega * (x[i] - x[j]));
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  return g;
}

ComplexMatrix prolate_matrix(const ProlateSpec& spec) {
  if (spec.s < 1) fail(ErrorCode::InvalidArgument, "prolate size must be >= 1");
  if (!(spec.w > 0.0 && spec.w < 0.5)) fail(ErrorCode::InvalidArgument, "W must lie in (0, 1/2)");
  ComplexMatrix q(spec.s, spec.s);
  for (std::size_t i = 0; i < spec.s; ++i) {
    q(i, i) = 2.0 * spec.w;
    for (std::size_t j = i + 1; j < spec.s; ++j) {
      const double d = static_cast<double>(j - i);
      const double value = std::sin(2.0 * kPi * spec.w * d) / (kPi * d);
      q(i, j) = value;
      q(j, i) = value;
    }
  }
  return q;
}

ComplexMatrix square_vandermonde(std::span<const double> theta, double r) {
  if (theta.empty()) fail(ErrorCode::InvalidArgument, "no nodes");
  require_distinct(theta);
  const std::size_t s = theta.size();
  ComplexMatrix v(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      v(i, j) = std::polar(1.0, (r + static_cast<double>(i)) * theta[j]);
  return v;
}

ComplexMatrix square_vandermonde(std::span<const Complex> z, double r) {
  std::vector<double> theta(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (std::abs(std::abs(z[j]) - 1.0) > 1e-12) {
      fail(ErrorCode::InvalidArgument, "node is not unit modulus");
    }
    theta[j] = std::arg(z[j]);
  }
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (z[i] == z[j]) fail(ErrorCode::DuplicateNodes, "complex node repeated");
  return square_vandermonde(std::span<const double>(theta), r);
}

ComplexMatrix sinc_gram_factor(const NodeConfiguration& x, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
  }
  const auto t = x.nodes();
  const double lo = t.front(), hi = t.back();
  const double center = 0.5 * (lo + hi);
  const double span = omega * (hi - lo);
  // A phase swing of at most 4 rad per 20-point panel keeps the rule exact to
  // rounding for every column pair.
  std::size_t panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / 2.0)));
  panels = std::max(panels, (x.size() + kPanelPoints - 1) / kPanelPoints);
  const QuadratureRule rule = gauss_legendre(kPanelPoints);
  const double width = 2.0 / static_cast<double>(panels);
  ComplexMatrix a(panels * kPanelPoints, x.size());
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = -1.0 + width * static_cast<double>(p);
    for (int g = 0; g < kPanelPoints; ++g) {
      const auto gi = static_cast<std::size_t>(g);
      const double u = left + 0.5 * width * (rule.nodes[gi] + 1.0);
      // weights integrate over [-1, 1] with total mass 2; sinc is half of that
      const double amp = std::sqrt(0.25 * width * rule.weights[gi]);
      const std::size_t row = p * kPanelPoints + gi;
      for (std::size_t j = 0; j < x.size(); ++j) {
        a(row, j) = std::polar(amp, -u * omega * (t[j] - center));
      }
    }
  }
  return a;
}

double lambda_min_sinc(const NodeConfiguration& x, double omega, SincRoute route) {
  if (route == SincRoute::eigen) return hermitian_eigen(gram_sinc(x, omega)).lambda_min();
  if (route == SincRoute::extended) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
      fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
    }
    const auto spectrum =
        extended::symmetric_eigen(extended::sinc_gram(x.nodes(), omega), x.size());
    return static_cast<double>(spectrum.eigenvalues.front());
  }
  const double sigma = sigma_min(sinc_gram_factor(x, omega), SigmaMode::bidiagonal);
  return sigma * sigma;
}

double lambda_min_prolate(const ProlateSpec& spec, SincRoute route) {
  if (route == SincRoute::eigen) return hermitian_eigen(prolate_matrix(spec)).lambda_min();
  if (!(spec.w > 0.0 && spec.w < 0.5)) fail(ErrorCode::InvalidArgument, "W must lie in (0, 1/2)");
  if (spec.s < 1) fail(ErrorCode::InvalidArgument, "prolate size must be >= 1");
  // power-of-two step keeps node differences and Omega*h exact
  double h = 1.0;
  while (static_cast<double>(spec.s) * h >= 1.0) h *= 0.5;
  std::vector<double> t(spec.s);
  for (std::size_t j = 0; j < spec.s; ++j) t[j] = static_cast<double>(j) * h;
  const double omega = 2.0 * kPi * spec.w / h;
  return 2.0 * spec.w * lambda_min_sinc(NodeConfiguration(std::move(t)), omega, route);
}

}  // namespace vandcond
