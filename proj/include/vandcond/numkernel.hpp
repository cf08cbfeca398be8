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

// Scalar kernels, compensated accumulation and small dense eigen/SVD
// routines. Matrices here are tiny in one dimension (s <= ~16 columns) and
// possibly tall in the other.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vandcond {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<const Complex> row(std::size_t i) const {
    return std::span<const Complex>(data_).subspan(i * cols_, cols_);
  }
  std::vector<Complex> column(std::size_t j) const;

  bool all_finite() const noexcept;
  double frobenius_norm() const noexcept;
  /// Max absolute row sum.
  double inf_norm() const noexcept;
  ComplexMatrix adjoint() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Plain triple-loop product. Kept free of compensation so that tests can use
/// it as an independent route.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Neumaier (improved Kahan) accumulator, real and imaginary parts tracked
/// separately.
class CompensatedAccumulator {
 public:
  void add(Complex v) noexcept;
  Complex value() const noexcept { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

 private:
  double sum_re_ = 0.0, c_re_ = 0.0;
  double sum_im_ = 0.0, c_im_ = 0.0;
};

Complex compensated_sum(std::span<const Complex> values) noexcept;
double compensated_sum(std::span<const double> values) noexcept;
/// sum_k conj(a_k) b_k with compensated accumulation.
Complex compensated_dot(std::span<const Complex> a, std::span<const Complex> b);

/// sin(t)/t; Taylor branch below |t| = 1e-4.
double sinc_eval(double t) noexcept;
inline constexpr double kSincTaylorSwitch = 1e-4;

/// Dirichlet kernel D_N(t) = sum_{k=-N}^{N} e^{ikt}. Falls back to the direct
/// sum when |sin(t/2)| < 1e-8.
double dirichlet_eval(std::int64_t n, double t);
inline constexpr double kDirichletDirectSwitch = 1e-8;

struct HermitianSpectrum {
  std::vector<double> eigenvalues;            // ascending
  std::optional<ComplexMatrix> eigenvectors;  // column k pairs with eigenvalues[k]
  std::size_t sweeps = 0;

  double lambda_min() const { return eigenvalues.front(); }
  double lambda_max() const { return eigenvalues.back(); }
};

inline constexpr int kJacobiSweepCap = 64;

/// Cyclic two-sided unitary Jacobi. Throws NotHermitian when the input is more
/// than 1e-12 * ||H||_F away from Hermitian, NonConvergence after the sweep cap.
HermitianSpectrum hermitian_eigen(const ComplexMatrix& h, bool want_vectors = false);

/// V^H V with every entry accumulated by compensated summation.
ComplexMatrix gram_of(const ComplexMatrix& v);

enum class SigmaMode {
  gram,        // eigenvalues of the compensated V^H V
  bidiagonal,  // Householder bidiagonalization + one-sided Jacobi, no squaring
};

/// Singular values in ascending order. Requires rows >= cols.
std::vector<double> singular_values(const ComplexMatrix& v, SigmaMode mode = SigmaMode::gram);
double sigma_min(const ComplexMatrix& v, SigmaMode mode = SigmaMode::gram);
double sigma_max(const ComplexMatrix& v, SigmaMode mode = SigmaMode::gram);

/// ||M^{-1}||_inf from the explicit inverse (Gauss-Jordan, partial pivoting).
double inverse_inf_norm(const ComplexMatrix& m);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

}  // namespace vandcond
