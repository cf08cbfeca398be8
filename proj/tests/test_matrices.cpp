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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "random_configs.hpp"
#include "vandcond/error.hpp"
#include "vandcond/matrices.hpp"

namespace vandcond {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

NodeConfiguration random_nodes(CounterRng& rng, std::size_t s) {
  std::vector<double> t(s);
  for (auto& v : t) v = rng.uniform(-kPi / 2 + 1e-9, kPi / 2);
  return NodeConfiguration(t);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

TEST(VandermondeUnit, Examples) {
  const std::vector<double> zero = {0.0};
  const auto v = vandermonde_unit(zero, 5);
  for (std::size_t k = 0; k < v.rows(); ++k) EXPECT_NEAR(std::abs(v(k, 0) - 1.0 / std::sqrt(10.0)), 0.0, 1e-16);

  const std::vector<double> q = {kPi / 2};
  const auto w = vandermonde_unit(q, 1);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(w(0, 0) - (-kI) * r), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(w(1, 0) - r), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(w(2, 0) - kI * r), 0.0, 1e-16);
}

TEST(VandermondeUnit, StructuralRows) {
  CounterRng rng(31, 0);
  const std::vector<double> xi = {-2.0, 0.3, 1.1, 3.0};
  const std::int64_t n = 17;
  const auto v = vandermonde_unit(xi, n);
  const double scale = 1.0 / std::sqrt(2.0 * n);
  for (std::size_t j = 0; j < xi.size(); ++j) {
    EXPECT_EQ(v(static_cast<std::size_t>(n), j), Complex(scale));
    EXPECT_EQ(v(0, j), std::conj(v(static_cast<std::size_t>(2 * n), j)));
  }
}

TEST(VandermondeUnit, Errors) {
  const std::vector<double> dup = {0.5, 0.5};
  try {
    vandermonde_unit(dup, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateNodes);
  }
}

TEST(VandermondeScaled, EqualsUnitAtScaledNodes) {
  CounterRng rng(32, 0);
  const auto x = random_nodes(rng, 5);
  const BandParams band{37.0, 64};
  std::vector<double> xi;
  for (double t : x.nodes()) xi.push_back(t * band.omega / static_cast<double>(band.n_half));
  const auto a = vandermonde_scaled(x, band);
  const auto b = vandermonde_unit(xi, band.n_half);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) EXPECT_EQ(a(i, j), b(i, j));
}

TEST(VandermondeScaled, Examples) {
  const auto v = vandermonde_scaled(NodeConfiguration({0.0}), {3.0, 4});
  for (std::size_t k = 0; k < v.rows(); ++k) EXPECT_NEAR(v(k, 0).real(), 1.0 / std::sqrt(8.0), 1e-16);
  const auto w = vandermonde_scaled(NodeConfiguration({1.0}), {kPi, 2});
  for (std::int64_t k = -2; k <= 2; ++k) {
    const Complex expect = std::polar(0.5, static_cast<double>(k) * kPi / 2);
    EXPECT_NEAR(std::abs(w(static_cast<std::size_t>(k + 2), 0) - expect), 0.0, 1e-16);
  }
}

TEST(GramFinite, DiagonalAndProductOracle) {
  CounterRng rng(33, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t s = 1 + static_cast<std::size_t>(rng.uniform01() * 6);
    const auto x = random_nodes(rng, s);
    const auto n = static_cast<std::int64_t>(1 + rng.uniform01() * 2047);
    const double max_omega = kPi * static_cast<double>(n) / (kPi / 2);
    const BandParams band{rng.uniform(0.1, max_omega), n};
    const auto g = gram_finite(x, band);
    for (std::size_t i = 0; i < s; ++i) {
      EXPECT_NEAR(g(i, i).real(), (2.0 * n + 1) / (2.0 * n), 1e-15);
    }
    const auto v = vandermonde_scaled(x, band);
    EXPECT_LE(max_abs_diff(g, multiply(v.adjoint(), v)), 1e-12);
  }
}

TEST(GramFinite, ConvergesToSinc) {
  const NodeConfiguration x({-0.4, 0.1, 0.13});
  const double omega = 20.0;
  const auto g = gram_finite(x, {omega, 100000});
  const auto s = gram_sinc(x, omega);
  EXPECT_LE(max_abs_diff(g, s), 1e-3);
}

TEST(GramSinc, Examples) {
  const double omega = 7.0;
  const auto g = gram_sinc(NodeConfiguration({0.0, kPi / omega}), omega);
  EXPECT_EQ(g(0, 0), Complex(1.0));
  EXPECT_NEAR(std::abs(g(0, 1)), 0.0, 1e-16);
  EXPECT_NEAR(hermitian_eigen(g).lambda_min(), 1.0, 1e-15);
  for (double d : {0.01, 0.1, 0.3}) {
    const auto h = gram_sinc(NodeConfiguration({0.0, d}), omega);
    EXPECT_NEAR(hermitian_eigen(h).lambda_min(), 1.0 - std::abs(sinc_eval(omega * d)), 1e-15);
  }
}

TEST(GramSinc, PositiveDefiniteOnRandomDraws) {
  CounterRng rng(34, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t s = 2 + static_cast<std::size_t>(rng.uniform01() * 5);
    const auto x = random_nodes(rng, s);
    const double omega = rng.log_uniform(0.5, 500.0);
    EXPECT_GT(lambda_min_sinc(x, omega, SincRoute::extended), 0.0);
  }
}

TEST(GramSinc, PermutationLeavesSpectrumUnchanged) {
  CounterRng rng(35, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_nodes(rng, 5);
    const double omega = rng.uniform(1, 50);
    const auto g = gram_sinc(x, omega);
    // reverse order: P G P^T
    ComplexMatrix p(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) p(i, j) = g(4 - i, 4 - j);
    const auto a = hermitian_eigen(g).eigenvalues;
    const auto b = hermitian_eigen(p).eigenvalues;
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(a[k], b[k], 1e-13);
  }
}

TEST(LambdaMinSinc, MatchesHighPrecisionOracle) {
  // values from a 60-digit evaluation of the same double nodes
  const auto x = gen_c1(3, 2, 1e-3);
  EXPECT_NEAR(lambda_min_sinc(x, 1.0, SincRoute::extended), 6.9594511737352057e-9, 1e-9 * 6.96e-9);
  EXPECT_NEAR(lambda_min_sinc(x, 0.1, SincRoute::extended), 6.8808943000109578e-13, 1e-9 * 6.88e-13);
  EXPECT_NEAR(lambda_min_sinc(x, 100.0, SincRoute::extended), 0.0016650464502513172, 1e-14);
  EXPECT_NEAR(lambda_min_sinc(x, 100.0, SincRoute::eigen), 0.0016650464502513172, 1e-13);
  EXPECT_NEAR(lambda_min_sinc(x, 100.0, SincRoute::quadrature), 0.0016650464502513172, 1e-12);
  const auto c1 = gen_c1(8, 4, 1e-3);
  const double omega = kPi / (1e-3 * 100.0);
  EXPECT_NEAR(lambda_min_sinc(c1, omega, SincRoute::extended), 1.0801335496490663e-12,
              1e-8 * 1.08e-12);
}

TEST(LambdaMinSinc, RoutesAgreeWhenWellConditioned) {
  CounterRng rng(36, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_nodes(rng, 4);
    const double omega = rng.log_uniform(5.0, 200.0);
    const double e = lambda_min_sinc(x, omega, SincRoute::extended);
    if (e < 1e-6) continue;
    EXPECT_NEAR(lambda_min_sinc(x, omega, SincRoute::eigen), e, 1e-12);
    EXPECT_NEAR(lambda_min_sinc(x, omega, SincRoute::quadrature), e, 1e-10);
  }
}

TEST(Prolate, Examples) {
  const auto q1 = prolate_matrix({1, 0.2});
  EXPECT_EQ(q1(0, 0), Complex(0.4));
  const auto q2 = prolate_matrix({2, 0.25});
  EXPECT_NEAR(q2(0, 1).real(), 1.0 / kPi, 1e-16);
  try {
    prolate_matrix({3, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Prolate, ScalingIdentityAgainstSincGramian) {
  for (double d : {1e-3, 0.01, 0.05}) {
    for (double omega : {1.0, 10.0, 30.0}) {
      const std::size_t s = 6;
      const double w = omega * d / (2 * kPi);
      if (w >= 0.5) continue;
      const auto q = prolate_matrix({s, w});
      const auto g = gram_sinc(gen_equispaced(s, d), omega);
      double m = 0.0;
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
          m = std::max(m, std::abs(kPi / (omega * d) * q(i, j) - g(i, j)));
      EXPECT_LE(m, 1e-14);
    }
  }
}

TEST(Prolate, LambdaMinRoutesMatchOracle) {
  // 60-digit eigenvalues of Q(s, W)
  EXPECT_NEAR(lambda_min_prolate({2, 1e-3}, SincRoute::extended), 1.3159446559052619e-8, 1e-18);
  EXPECT_NEAR(lambda_min_prolate({3, 1e-3}, SincRoute::extended) / 4.6179269326244388e-14, 1.0,
              1e-9);
  EXPECT_NEAR(lambda_min_prolate({4, 1e-3}, SincRoute::extended) / 1.4063823900690154e-19, 1.0,
              1e-6);
  EXPECT_NEAR(lambda_min_prolate({4, 1e-2}, SincRoute::extended) / 1.4071092727915032e-12, 1.0,
              1e-9);
}

TEST(SquareVandermonde, Examples) {
  const std::vector<double> theta = {0.0, kPi};
  const auto v = square_vandermonde(theta, 0.0);
  EXPECT_NEAR(std::abs(v(0, 0) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(v(0, 1) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(v(1, 0) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(v(1, 1) + 1.0), 0.0, 1e-15);
  const double t = 0.7;
  const std::vector<double> th2 = {0.0, t};
  const auto w = square_vandermonde(th2, 3.0);
  EXPECT_NEAR(std::abs(w(0, 1) - std::polar(1.0, 3 * t)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w(1, 1) - std::polar(1.0, 4 * t)), 0.0, 1e-15);
}

TEST(SquareVandermonde, UnitModulusAndFactorization) {
  CounterRng rng(37, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = testing::random_angles(rng, 5, 1e-3);
    const double r = rng.uniform(-10, 10);
    const auto v = square_vandermonde(theta, r);
    const auto v0 = square_vandermonde(theta, 0.0);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_NEAR(std::abs(v(i, j)), 1.0, 1e-14);
        EXPECT_NEAR(std::abs(v(i, j) - v0(i, j) * std::polar(1.0, r * theta[j])), 0.0, 1e-13);
      }
    std::vector<Complex> z;
    for (double a : theta) z.push_back(std::polar(1.0, a));
    const auto vz = square_vandermonde(z, r);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(vz(i, j) - v(i, j)), 0.0, 1e-12);
  }
}

TEST(SquareVandermonde, RejectsDuplicates) {
  const std::vector<double> dup = {0.2, 0.2};
  try {
    square_vandermonde(dup, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateNodes);
  }
}

TEST(Convergence, FiniteGramApproachesSinc) {
  CounterRng rng(38, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_clustered(rng, {2, 4, 3, 1e-2, 5e-2});
    const double omega = rng.log_uniform(2.0, 60.0);
    const double lam = lambda_min_sinc(inst.nodes, omega, SincRoute::extended);
    const double g10 = hermitian_eigen(gram_finite(inst.nodes, {omega, 1 << 10})).lambda_min();
    const double g14 = hermitian_eigen(gram_finite(inst.nodes, {omega, 1 << 14})).lambda_min();
    EXPECT_LT(std::abs(g14 - lam), std::abs(g10 - lam)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace vandcond
