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

#include "vandcond/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "vandcond/error.hpp"

namespace vandcond {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DuplicateNodes: return "duplicate nodes";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::NotHermitian: return "matrix is not Hermitian";
    case ErrorCode::Singular: return "singular matrix";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::AmbiguousMembership: return "ambiguous cluster membership";
    case ErrorCode::InvalidCluster: return "invalid cluster configuration";
    case ErrorCode::Collision: return "grid collision";
    case ErrorCode::NoAdmissibleLambda: return "no admissible decimation";
    case ErrorCode::DeltaTooLarge: return "grid step too large";
    case ErrorCode::NoFreeInterval: return "no free interval";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::Io: return "i/o failure";
    case ErrorCode::Range: return "parameter out of range";
  }
  return "unknown error";
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    fail(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0 || data_.size() != rows * cols) {
    fail(ErrorCode::DimensionMismatch, "entry count does not match " + std::to_string(rows) +
                                           "x" + std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
  std::vector<Complex> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::frobenius_norm() const noexcept {
  // scaled to survive entries near the overflow threshold
  double scale = 0.0;
  for (const auto& z : data_) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z / scale);
  return scale * std::sqrt(acc);
}

double ComplexMatrix::inf_norm() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) row_sum += std::abs((*this)(i, j));
    best = std::max(best, row_sum);
  }
  return best;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Compensated accumulation

namespace {

inline void neumaier(double& sum, double& comp, double x) noexcept {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

}  // namespace

void CompensatedAccumulator::add(Complex v) noexcept {
  neumaier(sum_re_, c_re_, v.real());
  neumaier(sum_im_, c_im_, v.imag());
}

Complex compensated_sum(std::span<const Complex> values) noexcept {
  CompensatedAccumulator acc;
  for (const auto& v : values) acc.add(v);
  return acc.value();
}

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0, comp = 0.0;
  for (double v : values) neumaier(sum, comp, v);
  return sum + comp;
}

Complex compensated_dot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product length mismatch");
  CompensatedAccumulator acc;
  for (std::size_t k = 0; k < a.size(); ++k) acc.add(std::conj(a[k]) * b[k]);
  return acc.value();
}

// ---------------------------------------------------------------------------
// Scalar kernels

double sinc_eval(double t) noexcept {
  if (std::abs(t) < kSincTaylorSwitch) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

double dirichlet_eval(std::int64_t n, double t) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "Dirichlet order must be nonnegative");
  const double half = std::sin(0.5 * t);
  if (std::abs(half) < kDirichletDirectSwitch) {
    double sum = 1.0, comp = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      neumaier(sum, comp, 2.0 * std::cos(static_cast<double>(k) * t));
    }
    return sum + comp;
  }
  const double value = std::sin((static_cast<double>(n) + 0.5) * t) / half;
  const double cap = 2.0 * static_cast<double>(n) + 1.0;
  return std::clamp(value, -cap, cap);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

HermitianSpectrum hermitian_eigen(const ComplexMatrix& h, bool want_vectors) {
  if (!h.is_square()) fail(ErrorCode::DimensionMismatch, "eigenproblem needs a square matrix");
  if (!h.all_finite()) fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  const std::size_t n = h.rows();
  const double fro = h.frobenius_norm();

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) asym = std::max(asym, std::abs(h(i, j) - std::conj(h(j, i))));
  if (asym > 1e-12 * fro) {
    fail(ErrorCode::NotHermitian, "asymmetry " + std::to_string(asym) + " exceeds 1e-12*||H||_F");
  }

  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  std::optional<ComplexMatrix> v;
  if (want_vectors) v = ComplexMatrix::identity(n);

  // Rotate (p, q) only while |a_pq| exceeds n*eps relative to the geometric
  // mean of the two diagonal entries; this is what keeps tiny eigenvalues
  // accurate relative to themselves rather than to ||H||.
  const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  const double floor = std::numeric_limits<double>::min() * std::max(fro, 1.0);

  HermitianSpectrum out;
  bool converged = (n == 1);
  std::size_t sweep = 0;
  for (; sweep < static_cast<std::size_t>(kJacobiSweepCap) && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex hpq = a(p, q);
        const double g = std::abs(hpq);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (g <= floor || g <= tol * std::sqrt(std::abs(app * aqq))) continue;
        rotated = true;

        const Complex phase = hpq / g;
        const double zeta = (aqq - app) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double sn = t * c;
        // U restricted to (p, q): [[c, sn], [-sn*conj(phase), c*conj(phase)]]
        const Complex upp = c, upq = sn;
        const Complex uqp = -sn * std::conj(phase), uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        if (v) {
          auto& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vm(k, p), vkq = vm(k, q);
            vm(k, p) = vkp * upp + vkq * uqp;
            vm(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
    if (!rotated) converged = true;
  }
  if (!converged) {
    fail(ErrorCode::NonConvergence,
         "Jacobi did not converge within " + std::to_string(kJacobiSweepCap) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = a(order[k], order[k]).real();
  if (v) {
    ComplexMatrix sorted(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) sorted(i, k) = (*v)(i, order[k]);
    out.eigenvectors = std::move(sorted);
  }
  out.sweeps = sweep;
  return out;
}

// ---------------------------------------------------------------------------
// Singular values

ComplexMatrix gram_of(const ComplexMatrix& v) {
  const std::size_t s = v.cols();
  std::vector<std::vector<Complex>> cols(s);
  for (std::size_t j = 0; j < s; ++j) cols[j] = v.column(j);
  ComplexMatrix g(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      g(i, j) = compensated_dot(cols[i], cols[j]);
      g(j, i) = std::conj(g(i, j));
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

namespace {

// LAPACK zlarfg convention: returns (beta, tau) and overwrites x[1:] with v[1:]
// (v[0] = 1) such that (I - tau v v^H)^H x = beta e1, beta real.
std::pair<double, Complex> householder(std::vector<Complex>& x) {
  const Complex alpha = x[0];
  double xnorm = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) xnorm = std::hypot(xnorm, std::abs(x[i]));
  if (xnorm == 0.0 && alpha.imag() == 0.0) {
    return {alpha.real(), 0.0};
  }
  const double mag = std::hypot(std::abs(alpha), xnorm);
  const double beta = alpha.real() >= 0.0 ? -mag : mag;
  const Complex tau = (beta - alpha) / beta;
  const Complex scale = 1.0 / (alpha - beta);
  for (std::size_t i = 1; i < x.size(); ++i) x[i] *= scale;
  x[0] = 1.0;
  return {beta, tau};
}

// Hestenes one-sided Jacobi on a small dense real matrix (columns rotated in
// place). Returns the column norms.
std::vector<double> one_sided_jacobi(std::vector<std::vector<double>>& cols) {
  const std::size_t n = cols.size();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 4 * kJacobiSweepCap; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto& bp = cols[p];
        auto& bq = cols[q];
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < bp.size(); ++k) {
          alpha += bp[k] * bp[k];
          beta += bq[k] * bq[k];
          gamma += bp[k] * bq[k];
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t k = 0; k < bp.size(); ++k) {
          const double x = bp[k], y = bq[k];
          bp[k] = c * x - s * y;
          bq[k] = s * x + c * y;
        }
      }
    }
    if (!rotated) {
      std::vector<double> norms(n);
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (double x : cols[j]) acc = std::hypot(acc, x);
        norms[j] = acc;
      }
      return norms;
    }
  }
  fail(ErrorCode::NonConvergence, "one-sided Jacobi SVD did not converge");
}

std::vector<double> bidiagonal_singular_values(const ComplexMatrix& v) {
  const std::size_t m = v.rows(), n = v.cols();
  ComplexMatrix a = v;
  std::vector<double> diag(n), super(n > 0 ? n - 1 : 0);
  std::vector<Complex> x;
  for (std::size_t k = 0; k < n; ++k) {
    // left reflector: zero a(k+1:, k)
    x.assign(m - k, 0.0);
    for (std::size_t i = k; i < m; ++i) x[i - k] = a(i, k);
    auto [beta, tau] = householder(x);
    diag[k] = beta;
    if (tau != Complex(0.0)) {
      const Complex ctau = std::conj(tau);
      for (std::size_t j = k + 1; j < n; ++j) {
        Complex w = 0.0;
        for (std::size_t i = k; i < m; ++i) w += std::conj(x[i - k]) * a(i, j);
        w *= ctau;
        for (std::size_t i = k; i < m; ++i) a(i, j) -= x[i - k] * w;
      }
    }
    if (k + 1 >= n) continue;
    // right reflector: zero a(k, k+2:)
    x.assign(n - k - 1, 0.0);
    for (std::size_t j = k + 1; j < n; ++j) x[j - k - 1] = std::conj(a(k, j));
    auto [beta_r, tau_r] = householder(x);
    super[k] = beta_r;
    if (tau_r != Complex(0.0)) {
      for (std::size_t i = k + 1; i < m; ++i) {
        Complex w = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) w += a(i, j) * x[j - k - 1];
        w *= tau_r;
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= w * std::conj(x[j - k - 1]);
      }
    }
  }
  std::vector<std::vector<double>> cols(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    cols[k][k] = diag[k];
    if (k + 1 < n) cols[k + 1][k] = super[k];
  }
  auto sv = one_sided_jacobi(cols);
  std::sort(sv.begin(), sv.end());
  return sv;
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& v, SigmaMode mode) {
  if (v.rows() < v.cols()) {
    fail(ErrorCode::DimensionMismatch, "singular values need rows >= cols");
  }
  if (!v.all_finite()) fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  if (mode == SigmaMode::bidiagonal) return bidiagonal_singular_values(v);
  auto spectrum = hermitian_eigen(gram_of(v));
  std::vector<double> out(spectrum.eigenvalues.size());
  std::transform(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), out.begin(),
                 [](double lam) { return std::sqrt(std::max(lam, 0.0)); });
  return out;
}

double sigma_min(const ComplexMatrix& v, SigmaMode mode) {
  return singular_values(v, mode).front();
}

double sigma_max(const ComplexMatrix& v, SigmaMode mode) {
  return singular_values(v, mode).back();
}

double inverse_inf_norm(const ComplexMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "inverse needs a square matrix");
  const std::size_t n = m.rows();
  const double threshold = 1e-30 * m.inf_norm();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) <= threshold) {
      fail(ErrorCode::Singular, "pivot below 1e-30*||M||_inf in column " + std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Complex d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv.inf_norm();
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace vandcond
