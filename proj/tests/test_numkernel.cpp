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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vandcond/error.hpp"
#include "vandcond/lab.hpp"
#include "vandcond/numkernel.hpp"

namespace vandcond {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

ComplexMatrix random_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return m;
}

ComplexMatrix random_hermitian(CounterRng& rng, std::size_t n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

TEST(CompensatedSum, PreservesCancellation) {
  const std::vector<Complex> v = {1.0, -1.0, 1e-16};
  EXPECT_EQ(compensated_sum(v), Complex(1e-16));
}

TEST(CompensatedSum, EmptyIsZero) {
  EXPECT_EQ(compensated_sum(std::span<const Complex>{}), Complex(0.0));
}

TEST(CompensatedSum, MillionTenths) {
  // exact sum of 1e6 copies of double(0.1) is 1e5 + 5.55e-12
  const std::vector<double> v(1000000, 0.1);
  EXPECT_NEAR(compensated_sum(v), 1e5, 1e-9);
}

TEST(CompensatedSum, WithinTwoEpsOfMagnitudeSum) {
  CounterRng rng(7, 0);
  std::vector<Complex> v;
  double mass = 0.0;
  long double exact_re = 0.0L;
  for (int k = 0; k < 5000; ++k) {
    const double x = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-8, 8));
    v.emplace_back(x, 0.0);
    mass += std::abs(x);
    exact_re += x;
  }
  const double got = compensated_sum(v).real();
  EXPECT_LE(std::abs(got - static_cast<double>(exact_re)),
            2.0 * 2.220446049250313e-16 * mass);
}

TEST(CompensatedDot, ConjugatesFirstArgument) {
  const std::vector<Complex> a = {kI, 1.0};
  const std::vector<Complex> b = {kI, 2.0};
  EXPECT_EQ(compensated_dot(a, b), Complex(3.0));
}

TEST(Sinc, Values) {
  EXPECT_EQ(sinc_eval(0.0), 1.0);
  EXPECT_NEAR(sinc_eval(kPi), 0.0, 1e-16);
  EXPECT_NEAR(sinc_eval(kPi / 2), 2.0 / kPi, 1e-16);
}

TEST(Sinc, EvenAndBounded) {
  CounterRng rng(1, 1);
  for (int k = 0; k < 10000; ++k) {
    const double t = rng.uniform(-50, 50);
    EXPECT_EQ(sinc_eval(t), sinc_eval(-t));
    EXPECT_LE(std::abs(sinc_eval(t)), 1.0);
  }
}

TEST(Sinc, NoDiscontinuityAtTaylorSwitch) {
  const double t = kSincTaylorSwitch;
  for (double u : {std::nextafter(t, 0.0), t, std::nextafter(t, 1.0)}) {
    EXPECT_NEAR(sinc_eval(u), std::sin(u) / u, 1e-15);
  }
}

TEST(Dirichlet, Values) {
  for (std::int64_t n : {0, 1, 5, 1000}) {
    EXPECT_EQ(dirichlet_eval(n, 0.0), static_cast<double>(2 * n + 1));
    EXPECT_NEAR(dirichlet_eval(n, 2 * kPi), static_cast<double>(2 * n + 1), 1e-9);
  }
  EXPECT_NEAR(dirichlet_eval(1, kPi), -1.0, 1e-15);
}

TEST(Dirichlet, MatchesDirectSum) {
  CounterRng rng(2, 0);
  for (int k = 0; k < 200; ++k) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform01() * 40);
    const double t = rng.uniform(-7, 7);
    double direct = 1.0;
    for (std::int64_t j = 1; j <= n; ++j) direct += 2.0 * std::cos(static_cast<double>(j) * t);
    EXPECT_NEAR(dirichlet_eval(n, t), direct, 1e-11 * static_cast<double>(2 * n + 1));
  }
}

TEST(Dirichlet, EvenAndBounded) {
  CounterRng rng(3, 0);
  for (int k = 0; k < 10000; ++k) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform01() * 1000);
    const double t = rng.uniform(-10, 10);
    EXPECT_EQ(dirichlet_eval(n, t), dirichlet_eval(n, -t));
    EXPECT_LE(std::abs(dirichlet_eval(n, t)), static_cast<double>(2 * n + 1));
  }
}

TEST(HermitianEigen, SmallCases) {
  EXPECT_EQ(hermitian_eigen(ComplexMatrix::identity(2)).eigenvalues, (std::vector<double>{1, 1}));
  ComplexMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto spec = hermitian_eigen(d);
  EXPECT_EQ(spec.eigenvalues, (std::vector<double>{1, 3}));
}

TEST(HermitianEigen, TwoByTwoSinc) {
  for (double x : {0.3, 1e-3, 2.5}) {
    ComplexMatrix g(2, 2);
    g(0, 0) = g(1, 1) = 1.0;
    g(0, 1) = g(1, 0) = sinc_eval(x);
    const auto spec = hermitian_eigen(g);
    EXPECT_NEAR(spec.eigenvalues[0], 1.0 - sinc_eval(x), 1e-15);
    EXPECT_NEAR(spec.eigenvalues[1], 1.0 + sinc_eval(x), 1e-15);
  }
}

TEST(HermitianEigen, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a(0, 1) = 1.0;
  try {
    hermitian_eigen(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(HermitianEigen, ResidualTraceAndShift) {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 10);
    const ComplexMatrix h = random_hermitian(rng, n);
    const double fro = h.frobenius_norm();
    const auto spec = hermitian_eigen(h, true);
    ASSERT_TRUE(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));
    const ComplexMatrix& v = *spec.eigenvectors;
    for (std::size_t k = 0; k < n; ++k) {
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex hv = 0.0;
        for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * v(j, k);
        res += std::norm(hv - spec.eigenvalues[k] * v(i, k));
      }
      EXPECT_LE(std::sqrt(res), 1e-12 * fro);
    }
    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += h(i, i).real();
    for (double l : spec.eigenvalues) sum += l;
    EXPECT_NEAR(sum, trace, 1e-12 * fro);
    const double c = rng.uniform(-3, 3);
    ComplexMatrix shifted = h;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
    const auto s2 = hermitian_eigen(shifted);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(s2.eigenvalues[k], spec.eigenvalues[k] + c, 1e-12 * (fro + std::abs(c)));
    }
  }
}

TEST(SigmaMin, Examples) {
  ComplexMatrix h(2, 2);
  h(0, 0) = h(0, 1) = h(1, 0) = 1.0;
  h(1, 1) = -1.0;
  EXPECT_NEAR(sigma_min(h), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sigma_min(h, SigmaMode::bidiagonal), std::sqrt(2.0), 1e-15);

  const std::int64_t n = 8;
  ComplexMatrix col(2 * n + 1, 1);
  for (std::int64_t k = -n; k <= n; ++k) {
    col(static_cast<std::size_t>(k + n), 0) =
        std::polar(1.0 / std::sqrt(2.0 * n), 0.7 * static_cast<double>(k));
  }
  const double expect = std::sqrt((2.0 * n + 1) / (2.0 * n));
  EXPECT_NEAR(sigma_min(col), expect, 1e-15);
  EXPECT_NEAR(sigma_min(col, SigmaMode::bidiagonal), expect, 1e-15);
}

TEST(SigmaMin, RepeatedColumnIsZero) {
  CounterRng rng(5, 0);
  ComplexMatrix m = random_matrix(rng, 10, 3);
  for (std::size_t i = 0; i < 10; ++i) m(i, 2) = m(i, 0);
  // the gram route squares: its zero is resolved only to sqrt(eps) * ||V||
  EXPECT_LE(sigma_min(m), 1e-7 * m.frobenius_norm());
  EXPECT_LE(sigma_min(m, SigmaMode::bidiagonal), 1e-14 * m.frobenius_norm());
}

TEST(SigmaMin, GramMatchesExplicitProduct) {
  CounterRng rng(6, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix v = random_matrix(rng, 64, 4);
    const double lam = hermitian_eigen(multiply(v.adjoint(), v)).lambda_min();
    const double s = sigma_min(v);
    const double norm2 = sigma_max(v) * sigma_max(v);
    EXPECT_NEAR(s * s, lam, 1e-10 * norm2);
  }
}

TEST(SigmaMin, ModesAgreeOnWellConditioned) {
  CounterRng rng(8, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix v = random_matrix(rng, 40, 5);
    const double a = sigma_min(v, SigmaMode::gram);
    const double b = sigma_min(v, SigmaMode::bidiagonal);
    EXPECT_LE(std::abs(a - b), std::max(1e-8, 1e-6 * b));
  }
}

TEST(SigmaMin, RejectsWideMatrix) {
  try {
    sigma_min(ComplexMatrix(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(InverseInfNorm, Examples) {
  EXPECT_NEAR(inverse_inf_norm(ComplexMatrix::identity(3)), 1.0, 1e-15);
  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  EXPECT_NEAR(inverse_inf_norm(d), 0.5, 1e-15);
  ComplexMatrix h(2, 2);
  h(0, 0) = h(0, 1) = h(1, 0) = 1.0;
  h(1, 1) = -1.0;
  EXPECT_NEAR(inverse_inf_norm(h), 1.0, 1e-15);
}

TEST(InverseInfNorm, SingularThrows) {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0;
  try {
    inverse_inf_norm(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre(20);
  for (int p = 0; p <= 39; ++p) {
    double q = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * std::pow(rule.nodes[i], p);
    const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
    EXPECT_NEAR(q, exact, 1e-14);
  }
}

}  // namespace
}  // namespace vandcond
