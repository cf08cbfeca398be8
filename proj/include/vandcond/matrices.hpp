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

// Builders for the rectangular Fourier/Vandermonde matrices, their Gramians,
// the prolate matrix and square shifted Vandermonde blocks.

#pragma once

#include <cstdint>
#include <span>

#include "vandcond/numkernel.hpp"

namespace vandcond {

class NodeConfiguration;

struct BandParams {
  double omega = 1.0;      // bandwidth, > 0
  std::int64_t n_half = 1;  // N, rows are k = -N..N
};

struct ProlateSpec {
  std::size_t s = 1;
  double w = 0.25;  // 0 < w < 1/2
};

/// (2N+1) x s matrix with entry (k, j) = e^{i k xi_j} / sqrt(2N), k = -N..N.
ComplexMatrix vandermonde_unit(std::span<const double> xi, std::int64_t n_half);

/// vandermonde_unit at xi_j = t_j * omega / N.
ComplexMatrix vandermonde_scaled(const NodeConfiguration& x, const BandParams& band);

/// (1/2N) D_N(omega (t_i - t_j) / N), assembled in O(s^2).
ComplexMatrix gram_finite(const NodeConfiguration& x, const BandParams& band);

/// sinc(omega (t_i - t_j)).
ComplexMatrix gram_sinc(const NodeConfiguration& x, double omega);

/// sin(2 pi W (i - j)) / (pi (i - j)), diagonal 2W.
ComplexMatrix prolate_matrix(const ProlateSpec& spec);

/// s x s matrix with entry (i, j) = e^{i (r + i) theta_j}, i = 0..s-1.
ComplexMatrix square_vandermonde(std::span<const double> theta, double r);
/// Same with unit-modulus complex nodes; real powers use the principal argument.
ComplexMatrix square_vandermonde(std::span<const Complex> z, double r);

/// How lambda_min(G) is evaluated.
enum class SincRoute {
  eigen,       // Jacobi on G; relative floor near 1e-13 * ||G||
  quadrature,  // sigma_min^2 of a square-root factor, no squaring of G
  extended,    // Jacobi on G assembled in binary128
};

/// Tall factor A with A^H A = G up to quadrature error: rows are Gauss-Legendre
/// samples of the band [-1, 1], columns the (centered) nodes.
ComplexMatrix sinc_gram_factor(const NodeConfiguration& x, double omega);

double lambda_min_sinc(const NodeConfiguration& x, double omega,
                       SincRoute route = SincRoute::eigen);

/// lambda_min(Q(s, W)); non-eigen routes use Q = 2W G(equispaced, 2 pi W / h).
double lambda_min_prolate(const ProlateSpec& spec, SincRoute route = SincRoute::eigen);

}  // namespace vandcond
