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
#include <limits>
#include <numbers>
#include <sstream>

#include "random_configs.hpp"
#include "vandcond/bounds.hpp"
#include "vandcond/error.hpp"
#include "vandcond/matrices.hpp"

namespace vandcond {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Srf, Examples) {
  EXPECT_DOUBLE_EQ(srf(1.0, kPi), 1.0);
  EXPECT_NEAR(srf(1e-3, kPi * 1e2), 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(srf(0.01, 40.0), 2.0 * srf(0.01, 80.0));
  EXPECT_THROW(srf(0.0, 1.0), Error);
}

TEST(Aubel, BoundaryAndLimit) {
  // 2N+1 = 2 pi / Delta_N
  const std::int64_t n = 50;
  const auto edge = aubel_bound(n, 2 * kPi / 101.0);
  EXPECT_NEAR(edge.value, 0.0, 1e-7);
  EXPECT_FALSE(edge.valid);

  for (double dw : {1.5 * kPi, 4.0, 10.0}) {
    const std::int64_t big = 100000000;
    const auto r = aubel_bound(big, dw / static_cast<double>(big));
    EXPECT_TRUE(r.valid);
    EXPECT_NEAR(r.value, std::sqrt(1.0 - kPi / dw), 1e-7);
  }
  const std::int64_t big = 100000000;
  EXPECT_NEAR(aubel_bound(big, kPi / static_cast<double>(big)).value, 0.0, 1e-3);
}

TEST(Slepian, Constants) {
  EXPECT_DOUBLE_EQ(slepian_constant(1), 1.0);
  EXPECT_DOUBLE_EQ(slepian_constant(2), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(slepian_constant(3), 2.0 / 135.0);
  EXPECT_GT(slepian_constant(30), 0.0);
  EXPECT_THROW(slepian_constant(31), Error);
}

TEST(Slepian, AsymptoticExamples) {
  for (double w : {1e-3, 0.01, 0.2}) {
    EXPECT_NEAR(slepian_lambda_asymptotic(1, w).value, 2 * w, 1e-15);
  }
  const double two_pi_w = 2 * kPi * 1e-3;
  EXPECT_NEAR(slepian_lambda_asymptotic(2, 1e-3).value / (std::pow(two_pi_w, 3) / (6 * kPi)), 1.0,
              1e-14);
  EXPECT_NEAR(slepian_lambda_asymptotic(2, 1e-3).value, 1.316e-8, 1e-11);
  // closed form for two nodes
  const double exact = 2e-3 - std::sin(two_pi_w) / kPi;
  EXPECT_NEAR(slepian_lambda_asymptotic(2, 1e-3).value / exact, 1.0, 1e-5);
}

TEST(Slepian, ConsistencyWithProlateMatrix) {
  for (std::size_t s : {2u, 3u, 4u}) {
    for (double w : {1e-2, 3e-3, 1e-3}) {
      const double lam = lambda_min_prolate({s, w}, SincRoute::extended);
      const double r = lam / slepian_lambda_asymptotic(s, w).value;
      EXPECT_GE(r, 0.9) << s << " " << w;
      EXPECT_LE(r, 1.1) << s << " " << w;
    }
  }
}

TEST(Slepian, RatioTendsToOne) {
  for (std::size_t s : {2u, 3u}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double w : {0.05, 0.01, 1e-3}) {
      const double r = lambda_min_prolate({s, w}, SincRoute::extended) /
                       slepian_lambda_asymptotic(s, w).value;
      const double gap = std::abs(r - 1.0);
      EXPECT_LT(gap, prev);
      prev = gap;
    }
    EXPECT_LT(prev, 1e-2);
  }
}

TEST(MainConstant, Examples) {
  EXPECT_DOUBLE_EQ(main_constant(1), 0.5);
  EXPECT_NEAR(main_constant(2), 1.0 / (32 * kPi), 1e-18);
  EXPECT_NEAR(main_constant(2), 9.947e-3, 1e-6);
  for (std::size_t s = 1; s < 40; ++s) EXPECT_LE(main_constant(s + 1), main_constant(s));
  bool flag = false;
  main_constant(12, &flag);
  EXPECT_FALSE(flag);
  EXPECT_EQ(main_constant(200, &flag), std::numeric_limits<double>::min());
  EXPECT_TRUE(flag);
}

TEST(OmegaWindow, Examples) {
  ClusterParams p{1e-3, 4 * 2 * 1e-3, 3, 2, 2.0};
  const auto w = omega_window(p);
  EXPECT_NEAR(w.lo, w.hi, 1e-9 * w.hi);
  EXPECT_NEAR(w.lo, kPi * 3 / (2.0 * 1e-3), 1e-9 * w.hi);

  p.rho = 0.5;
  const auto wide = omega_window(p);
  EXPECT_LT(wide.lo, wide.hi);
  EXPECT_FALSE(wide.empty());
  p.rho = 1.0;
  const auto wider = omega_window(p);
  EXPECT_DOUBLE_EQ(wider.lo, wide.lo / 2);
  EXPECT_DOUBLE_EQ(wider.hi, wide.hi);
}

TEST(NThreshold, Examples) {
  EXPECT_EQ(n_threshold(2, 8.0), 16);
  for (double omega : {0.1, 3.0, 12.0}) EXPECT_EQ(n_threshold(3, omega), 54);
  std::int64_t prev = 0;
  for (double omega = 0.5; omega < 500; omega *= 1.3) {
    EXPECT_GE(n_threshold(4, omega), prev);
    prev = n_threshold(4, omega);
  }
}

TEST(MainLowerBound, Examples) {
  const ClusterParams p{1e-3, 0.5, 3, 2, 1.0};
  const double omega = kPi / 10 / 1e-3;
  const auto s = main_lower_bound(p, omega, BoundTarget::sigma);
  EXPECT_NEAR(s.value, main_constant(3) * kPi / 10, 1e-18);
  EXPECT_TRUE(s.valid);
  const auto l = main_lower_bound(p, omega, BoundTarget::lambda);
  EXPECT_EQ(l.value, s.value * s.value);
  EXPECT_FALSE(main_lower_bound(p, 1.0, BoundTarget::sigma).valid);
  EXPECT_EQ(s.ell, 2u);
  ASSERT_TRUE(s.omega.has_value());
  EXPECT_EQ(*s.omega, omega);
}

TEST(CorFiniteN, Examples) {
  const ClusterParams p{1e-4, 1.0, 2, 2, 1.0};
  const auto r = cor_finite_n_bound(p, 1000);
  EXPECT_NEAR(r.value, main_constant(2) * 0.1, 1e-17);
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(cor_finite_n_bound(p, 31).valid);  // 4 s^3 = 32
  EXPECT_TRUE(within_shrunk_interval({0.1, -0.2}, 2));
  EXPECT_FALSE(within_shrunk_interval({0.5}, 2));
}

TEST(Optimality, TwoNodeClosedForm) {
  for (double d : {1e-3, 1e-2}) {
    for (double omega : {10.0, 50.0, 90.0}) {
      const auto r = optimality_upper_bound(2, 2, d, omega);
      EXPECT_NEAR(r.value, 1.0 - sinc_eval(d * omega), 1e-12) << d << " " << omega;
      EXPECT_EQ(r.valid, d * omega < 1.0);
    }
  }
  EXPECT_THROW(optimality_upper_bound(3, 3, 1.0, 1.0), Error);
}

TEST(Optimality, UpperBoundsXminByInterlacing) {
  CounterRng rng(41, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t ell = 2 + trial % 2;
    const std::size_t s = ell + 1 + trial % 3;
    const double d = rng.log_uniform(1e-3, 1e-2);
    const double omega = rng.log_uniform(0.05, 0.9) / d;
    const auto xm = gen_xmin(s, ell, d);
    const double lam = lambda_min_sinc(xm.nodes, omega, SincRoute::extended);
    const double up = optimality_upper_bound(s, ell, d, omega).value;
    EXPECT_LE(lam, up * (1 + 1e-9) + 1e-18) << trial;
  }
}

TEST(Optimality, RatioBoundedAsProductShrinks) {
  for (std::size_t ell : {2u, 3u}) {
    double worst = 0.0, first = 0.0;
    for (double dw = 0.5; dw > 0.005; dw /= 2) {
      const double r = optimality_upper_bound(ell, ell, 1e-3, dw / 1e-3).value /
                       std::pow(dw, 2.0 * static_cast<double>(ell - 1));
      if (first == 0.0) first = r;
      worst = std::max(worst, r);
    }
    EXPECT_LE(worst, 2.0 * first);
  }
}

TEST(SigmaMaxEnvelope, Examples) {
  const auto e1 = sigma_max_envelope(1, 20);
  const auto v = vandermonde_scaled(NodeConfiguration({0.3}), {5.0, 20});
  EXPECT_NEAR(sigma_max(v), e1.upper, 1e-14);
  for (std::size_t s = 1; s < 8; ++s)
    for (std::int64_t n : {1, 5, 100}) EXPECT_LE(sigma_max_envelope(s, n).upper, std::sqrt(2.0 * s) * (1 + 1e-15));

  CounterRng rng(42, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_clustered(rng, {2, 5, 3, 1e-3, 1e-2});
    const double omega = testing::random_window_omega(rng, inst.params);
    const std::int64_t n = 2 * static_cast<std::int64_t>(std::ceil(omega)) + 1;
    const auto env = sigma_max_envelope(inst.params.s, n);
    const double smax = sigma_max(vandermonde_scaled(inst.nodes, {omega, n}));
    EXPECT_GT(smax, env.lower);
    EXPECT_LE(smax, env.upper * (1 + 1e-12));
  }
}

TEST(Soundness, SincGramianAboveMainBound) {
  CounterRng rng(43, 0);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = testing::random_clustered(rng);
    const double omega = testing::random_window_omega(rng, inst.params);
    const auto b = main_lower_bound(inst.params, omega, BoundTarget::lambda);
    ASSERT_TRUE(b.valid);
    const double lam = lambda_min_sinc(inst.nodes, omega, SincRoute::extended);
    if (lam < b.value * (1 - 1e-8)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Soundness, FiniteVandermondeAboveMainBound) {
  CounterRng rng(44, 0);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_clustered(rng, {2, 4, 3, 1e-3, 1e-2});
    const double omega = testing::random_window_omega(rng, inst.params);
    const std::int64_t n = n_threshold(inst.params.s, omega) + 1;
    const double sig = sigma_min(vandermonde_scaled(inst.nodes, {omega, n}), SigmaMode::bidiagonal);
    const auto b = main_lower_bound(inst.params, omega, BoundTarget::lambda);
    if (sig * sig < b.value * (1 - 1e-8)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Soundness, AubelOnSeparatedConfigs) {
  CounterRng rng(45, 0);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 2 + trial % 5;
    const double d = rng.log_uniform(0.05, 2.8 / (1.5 * static_cast<double>(s - 1)));
    std::vector<double> t;
    double pos = rng.uniform(-kPi / 2, -kPi / 2 + 0.1);
    for (std::size_t j = 0; j < s; ++j) {
      t.push_back(pos);
      pos += d * rng.uniform(1.0, 1.5);
    }
    const NodeConfiguration x(t);
    const double delta = min_separation(x);
    const double omega = rng.uniform(1.1, 3.0) * kPi / delta;
    const std::int64_t n = static_cast<std::int64_t>(std::ceil(omega * rng.uniform(0.5, 4.0))) + 1;
    const double scale = omega / static_cast<double>(n);
    if (scale * kPi / 2 > kPi) continue;
    double delta_n = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        delta_n = std::min(delta_n, wrap_distance(scale * (x[j] - x[i])));
    const auto r = aubel_bound(n, delta_n);
    if (!r.valid) continue;
    ++checked;
    EXPECT_GE(sigma_min(vandermonde_scaled(x, {omega, n}), SigmaMode::bidiagonal),
              r.value * (1 - 1e-12))
        << trial;
  }
  EXPECT_GT(checked, 100);
}

TEST(ConditionNumber, ScalesWithSrfPower) {
  for (std::size_t ell : {2u, 3u}) {
    const double delta = 1e-3;
    const auto x = gen_c1(4, ell, delta);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double r = 10.0; r <= 100.0; r *= 1.25) {
      const double omega = kPi / (delta * r);
      const std::int64_t n = n_threshold(4, omega) + 1;
      const auto v = vandermonde_scaled(x, {omega, n});
      const auto sv = singular_values(v, SigmaMode::bidiagonal);
      const double kappa = sv.back() / sv.front();
      const double q = kappa / std::pow(r, static_cast<double>(ell - 1));
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    EXPECT_LT(hi / lo, 2.0) << "ell " << ell;
  }
}

TEST(BoundCsv, RoundTrip) {
  const NodeConfiguration x = gen_c1(3, 2, 1e-3);
  const ClusterParams p = infer_cluster_params(x);
  const auto rows = bound_table(x, p, 100.0, 20000);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].name, "main_sigma");
  EXPECT_EQ(rows[1].name, "main_lambda");
  EXPECT_EQ(rows[2].name, "optimality_upper");
  EXPECT_EQ(rows[3].name, "cor_finite_n");
  EXPECT_EQ(rows[4].name, "aubel");
  EXPECT_EQ(rows[5].name, "sigma_max_upper");
  std::ostringstream os;
  write_bounds_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, bound_csv_header());
  for (const auto& r : rows) {
    std::getline(is, line);
    const auto back = parse_bound_csv_row(line);
    EXPECT_EQ(back.name, r.name);
    EXPECT_EQ(back.value, r.value);
    EXPECT_EQ(back.valid, r.valid);
    EXPECT_EQ(back.s, r.s);
    EXPECT_EQ(back.ell, r.ell);
    EXPECT_EQ(back.delta, r.delta);
    EXPECT_EQ(back.omega, r.omega);
    EXPECT_EQ(back.n, r.n);
  }
  EXPECT_EQ(bound_table(x, p, 100.0, std::nullopt).size(), 3u);
  EXPECT_THROW(parse_bound_csv_row("a,1,2"), Error);
}

}  // namespace
}  // namespace vandcond
