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

#include "extended.hpp"

#include <quadmath.h>

#include <algorithm>
#include <numeric>

#include "vandcond/error.hpp"

namespace vandcond::extended {

quad sinc(quad t) {
  if (t == 0) return 1;
  return sinq(t) / t;
}

quad sqrt(quad x) { return sqrtq(x); }

std::vector<quad> sinc_gram(std::span<const double> nodes, double omega) {
  const std::size_t n = nodes.size();
  std::vector<quad> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i * n + i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      const quad d = static_cast<quad>(nodes[i]) - static_cast<quad>(nodes[j]);
      const quad v = sinc(static_cast<quad>(omega) * d);
      g[i * n + j] = v;
      g[j * n + i] = v;
    }
  }
  return g;
}

SymmetricSpectrum symmetric_eigen(std::vector<quad> a, std::size_t n) {
  if (a.size() != n * n || n == 0) fail(ErrorCode::DimensionMismatch, "extended eigen shape");
  std::vector<quad> v(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1;
  const quad eps = scalbnq(1, -112);  // binary128 machine epsilon
  auto at = [&](std::size_t i, std::size_t j) -> quad& { return a[i * n + j]; };
  bool converged = n == 1;
  for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const quad apq = at(p, q);
        const quad app = at(p, p), aqq = at(q, q);
        if (apq == 0 || fabsq(apq) <= eps * n * sqrtq(fabsq(app * aqq))) continue;
        rotated = true;
        const quad zeta = (aqq - app) / (2 * apq);
        const quad t = (zeta >= 0 ? 1 : -1) / (fabsq(zeta) + sqrtq(1 + zeta * zeta));
        const quad c = 1 / sqrtq(1 + t * t);
        const quad s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const quad akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const quad apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0;
        at(q, p) = 0;
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        for (std::size_t k = 0; k < n; ++k) {
          const quad vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) converged = true;
  }
  if (!converged) fail(ErrorCode::NonConvergence, "extended Jacobi did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return at(x, x) < at(y, y); });
  SymmetricSpectrum out;
  out.n = n;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = at(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

quad quadratic_form(const std::vector<quad>& g, std::span<const quad> c) {
  const std::size_t n = c.size();
  quad acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    quad row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g[i * n + j] * c[j];
    acc += c[i] * row;
  }
  return acc;
}

}  // namespace vandcond::extended
