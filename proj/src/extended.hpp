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

// Quad-precision (binary128) helpers for sinc Gramians whose smallest
// eigenvalue sits below double-precision resolution. Internal to the library.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vandcond::extended {

using quad = __float128;

struct SymmetricSpectrum {
  std::vector<quad> eigenvalues;   // ascending
  std::vector<quad> eigenvectors;  // n x n row-major, column k pairs with eigenvalues[k]
  std::size_t n = 0;

  quad vector_entry(std::size_t i, std::size_t k) const { return eigenvectors[i * n + k]; }
};

/// sin(t)/t with the removable point at 0.
quad sinc(quad t);

/// Row-major sinc(omega (t_i - t_j)); differences are formed exactly in quad.
std::vector<quad> sinc_gram(std::span<const double> nodes, double omega);

/// Cyclic Jacobi on a real symmetric n x n matrix (row-major).
SymmetricSpectrum symmetric_eigen(std::vector<quad> a, std::size_t n);

/// c^T G c for a real symmetric G.
quad quadratic_form(const std::vector<quad>& g, std::span<const quad> c);

quad sqrt(quad x);

}  // namespace vandcond::extended
