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

// Exercises the library strictly through its C interface.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "vandcond/vandcond.h"

namespace {

const double kPi = 3.14159265358979323846;

struct NodesGuard {
  vc_nodes* p = nullptr;
  ~NodesGuard() { vc_nodes_free(p); }
};

std::string temp_path(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "vandcond_capi_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(vc_version(), "0.1.0");
  EXPECT_STRNE(vc_status_string(VC_OK), "");
  EXPECT_STRNE(vc_status_string(VC_ERR_NULL_POINTER), vc_status_string(VC_ERR_RANGE));
}

TEST(CApi, NodesLifecycle) {
  const double t[] = {0.2, -0.1, 0.05};
  NodesGuard n;
  ASSERT_EQ(vc_nodes_create(t, 3, &n.p), VC_OK);
  EXPECT_EQ(vc_nodes_count(n.p), 3u);
  double got[3];
  ASSERT_EQ(vc_nodes_get(n.p, got, 3), VC_OK);
  EXPECT_EQ(got[0], -0.1);
  EXPECT_EQ(got[2], 0.2);
  double head[2];
  ASSERT_EQ(vc_nodes_get(n.p, head, 2), VC_OK);  // partial copy
  EXPECT_EQ(head[1], 0.05);
  double sep = 0;
  ASSERT_EQ(vc_nodes_min_separation(n.p, &sep), VC_OK);
  EXPECT_NEAR(sep, 0.15, 1e-15);

  const auto path = temp_path("nodes.txt");
  ASSERT_EQ(vc_nodes_save(n.p, path.c_str()), VC_OK);
  NodesGuard back;
  ASSERT_EQ(vc_nodes_load(path.c_str(), &back.p), VC_OK);
  double b[3];
  ASSERT_EQ(vc_nodes_get(back.p, b, 3), VC_OK);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(b[i], got[i]);
  vc_nodes_free(nullptr);
}

TEST(CApi, ErrorsCarryCodesAndMessages) {
  const double dup[] = {0.1, 0.1};
  vc_nodes* n = nullptr;
  EXPECT_EQ(vc_nodes_create(dup, 2, &n), VC_ERR_DUPLICATE_NODES);
  EXPECT_EQ(n, nullptr);
  EXPECT_NE(std::strlen(vc_last_error_message()), 0u);
  const double far[] = {3.0};
  EXPECT_EQ(vc_nodes_create(far, 1, &n), VC_ERR_RANGE);
  EXPECT_EQ(vc_nodes_create(nullptr, 2, &n), VC_ERR_NULL_POINTER);
  const double one[] = {0.1};
  EXPECT_EQ(vc_nodes_create(one, 1, nullptr), VC_ERR_NULL_POINTER);
  EXPECT_EQ(vc_nodes_load("/nonexistent/nodes.txt", &n), VC_ERR_IO);
  EXPECT_EQ(vc_nodes_gen_c1(3, 4, 1e-3, &n), VC_ERR_RANGE);
  double out = 0;
  EXPECT_EQ(vc_nodes_min_separation(nullptr, &out), VC_ERR_NULL_POINTER);
}

TEST(CApi, ClusterInferenceAndValidation) {
  NodesGuard n;
  ASSERT_EQ(vc_nodes_gen_c1(3, 2, 1e-3, &n.p), VC_OK);
  vc_cluster_params p{};
  ASSERT_EQ(vc_infer_cluster_params(n.p, 0, 0.0, &p), VC_OK);
  EXPECT_EQ(p.s, 3u);
  EXPECT_EQ(p.ell, 2u);
  EXPECT_NEAR(p.delta, 1e-3, 1e-15);
  int ok = 0;
  size_t needed = 0;
  ASSERT_EQ(vc_validate_cluster(n.p, &p, &ok, nullptr, 0, &needed), VC_OK);
  EXPECT_EQ(ok, 1);
  p.rho = 2.0;  // the far node is closer than rho
  ASSERT_EQ(vc_validate_cluster(n.p, &p, &ok, nullptr, 0, &needed), VC_OK);
  EXPECT_EQ(ok, 0);
  std::vector<char> buf(needed);
  ASSERT_EQ(vc_validate_cluster(n.p, &p, &ok, buf.data(), buf.size(), &needed), VC_OK);
  EXPECT_EQ(std::strlen(buf.data()) + 1, needed);

  double rho = 0, tau = 0;
  NodesGuard xm;
  ASSERT_EQ(vc_nodes_gen_xmin(6, 2, 1e-3, &xm.p, &rho, &tau), VC_OK);
  EXPECT_NEAR(rho, kPi / 10, 1e-15);
  EXPECT_EQ(tau, 1.0);
}

TEST(CApi, MatricesAndEigenvalues) {
  NodesGuard n;
  ASSERT_EQ(vc_nodes_gen_c1(3, 2, 1e-3, &n.p), VC_OK);
  vc_matrix* g = nullptr;
  ASSERT_EQ(vc_gram_sinc(n.p, 100.0, &g), VC_OK);
  EXPECT_EQ(vc_matrix_rows(g), 3u);
  double re = 0, im = 0;
  ASSERT_EQ(vc_matrix_get(g, 1, 1, &re, &im), VC_OK);
  EXPECT_EQ(re, 1.0);
  EXPECT_EQ(vc_matrix_get(g, 3, 0, &re, &im), VC_ERR_RANGE);
  double ev[3];
  ASSERT_EQ(vc_matrix_eigenvalues(g, ev, 3), VC_OK);
  EXPECT_NEAR(ev[0], 0.0016650464502513172, 1e-13);
  vc_matrix_free(g);

  double lam = 0;
  ASSERT_EQ(vc_lambda_min_sinc(n.p, 100.0, VC_SINC_EXTENDED, &lam), VC_OK);
  EXPECT_NEAR(lam, 0.0016650464502513172, 1e-15);

  vc_matrix* v = nullptr;
  ASSERT_EQ(vc_vandermonde(n.p, 100.0, 20000, &v), VC_OK);
  EXPECT_EQ(vc_matrix_rows(v), 40001u);
  double sig = 0;
  ASSERT_EQ(vc_matrix_sigma_min(v, VC_SIGMA_BIDIAGONAL, &sig), VC_OK);
  EXPECT_NEAR(sig, 0.040806517109669718, 1e-12);
  vc_matrix_free(v);

  ASSERT_EQ(vc_prolate_lambda_min(3, 1e-3, VC_SINC_EXTENDED, &lam), VC_OK);
  EXPECT_NEAR(lam / 4.6179269326244388e-14, 1.0, 1e-9);
  EXPECT_EQ(vc_prolate_matrix(2, 0.7, &g), VC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, BoundsFunctions) {
  EXPECT_NEAR(vc_srf(1e-3, kPi * 100), 10.0, 1e-12);
  double c = 0;
  ASSERT_EQ(vc_main_constant(2, &c), VC_OK);
  EXPECT_NEAR(c, 1 / (32 * kPi), 1e-18);
  ASSERT_EQ(vc_slepian_constant(3, &c), VC_OK);
  EXPECT_DOUBLE_EQ(c, 2.0 / 135);
  int valid = 0;
  ASSERT_EQ(vc_slepian_lambda(1, 0.01, &c, &valid), VC_OK);
  EXPECT_NEAR(c, 0.02, 1e-17);
  EXPECT_EQ(valid, 1);
  int64_t nt = 0;
  ASSERT_EQ(vc_n_threshold(2, 8.0, &nt), VC_OK);
  EXPECT_EQ(nt, 16);
  vc_cluster_params p{1e-3, 0.5, 3, 2, 1.0};
  double lo = 0, hi = 0;
  ASSERT_EQ(vc_omega_window(&p, &lo, &hi), VC_OK);
  EXPECT_NEAR(lo, 24 * kPi, 1e-12);
  EXPECT_NEAR(hi, 3000 * kPi, 1e-9);

  NodesGuard n;
  ASSERT_EQ(vc_nodes_gen_c1(3, 2, 1e-3, &n.p), VC_OK);
  ASSERT_EQ(vc_infer_cluster_params(n.p, 0, 0.0, &p), VC_OK);
  size_t needed = 0;
  ASSERT_EQ(vc_bounds_csv(n.p, &p, 100.0, 20000, nullptr, 0, &needed), VC_OK);
  std::vector<char> small(needed - 1);
  EXPECT_EQ(vc_bounds_csv(n.p, &p, 100.0, 20000, small.data(), small.size(), &needed),
            VC_ERR_BUFFER_TOO_SMALL);
  std::vector<char> buf(needed);
  ASSERT_EQ(vc_bounds_csv(n.p, &p, 100.0, 20000, buf.data(), buf.size(), &needed), VC_OK);
  const std::string csv(buf.data());
  EXPECT_EQ(csv.rfind("name,value,valid,s,ell,delta,omega,n\n", 0), 0u);
  EXPECT_NE(csv.find("aubel,"), std::string::npos);
  // N = 0 omits the finite-N rows
  ASSERT_EQ(vc_bounds_csv(n.p, &p, 100.0, 0, nullptr, 0, &needed), VC_OK);
  EXPECT_LT(needed, buf.size());
}

TEST(CApi, CertificateRoundTrip) {
  NodesGuard n;
  ASSERT_EQ(vc_nodes_gen_c1(3, 2, 1e-3, &n.p), VC_OK);
  vc_cluster_params p{};
  ASSERT_EQ(vc_infer_cluster_params(n.p, 0, 0.0, &p), VC_OK);
  vc_certificate* cert = nullptr;
  EXPECT_EQ(vc_certify(n.p, &p, 100.0, 2, 0.5, &cert), VC_ERR_NO_ADMISSIBLE_LAMBDA);
  ASSERT_EQ(vc_certify(n.p, &p, 100.0, 20000, 0.5, &cert), VC_OK);
  ASSERT_EQ(vc_certificate_attach_oracle(cert, n.p), VC_OK);
  vc_certificate_summary s{};
  ASSERT_EQ(vc_certificate_summary_get(cert, &s), VC_OK);
  EXPECT_EQ(s.has_oracle, 1);
  EXPECT_LE(s.certified_sigma, s.oracle_sigma);
  EXPECT_GE(s.certified_sigma, s.crude_sigma);
  EXPECT_EQ(s.block_count, static_cast<size_t>(2 * s.m - 1));
  int ok = 0;
  size_t needed = 0;
  ASSERT_EQ(vc_certificate_verify(cert, n.p, &p, &ok, nullptr, 0, &needed), VC_OK);
  EXPECT_EQ(ok, 1);
  ASSERT_EQ(vc_certificate_text(cert, nullptr, 0, &needed), VC_OK);
  std::vector<char> text(needed);
  ASSERT_EQ(vc_certificate_text(cert, text.data(), text.size(), &needed), VC_OK);
  EXPECT_NE(std::string(text.data()).find("certified_sigma: "), std::string::npos);
  vc_certificate_free(cert);
}

TEST(CApi, MeasuresAndMinimax) {
  const int64_t idx[] = {0, 10};
  const double re[] = {1.0, 1.0};
  const double im[] = {0.0, 0.0};
  vc_measure* mu = nullptr;
  ASSERT_EQ(vc_measure_create(1e-2, idx, re, nullptr, 2, &mu), VC_OK);
  double nrm = 0;
  ASSERT_EQ(vc_measure_norm_gram(mu, 10 * kPi, &nrm), VC_OK);
  EXPECT_NEAR(nrm, std::sqrt(2.0), 1e-14);
  ASSERT_EQ(vc_measure_norm_quadrature(mu, 10 * kPi, 100000, &nrm), VC_OK);
  EXPECT_NEAR(nrm, std::sqrt(2.0), 1e-6);
  const auto path = temp_path("mu.txt");
  ASSERT_EQ(vc_measure_save(mu, path.c_str()), VC_OK);
  vc_measure* back = nullptr;
  ASSERT_EQ(vc_measure_load(path.c_str(), &back), VC_OK);
  EXPECT_EQ(vc_measure_size(back), 2u);
  EXPECT_EQ(vc_measure_delta(back), 1e-2);
  int64_t k = 0;
  double a = 0, b = 0;
  ASSERT_EQ(vc_measure_get(back, 1, &k, &a, &b), VC_OK);
  EXPECT_EQ(k, 10);
  EXPECT_EQ(a, 1.0);
  vc_measure_free(back);
  vc_measure_free(mu);
  EXPECT_EQ(vc_measure_create(1e-2, idx, re, im, 0, &mu), VC_OK);
  vc_measure_free(mu);

  vc_minimax_record rec{};
  vc_measure *m = nullptr, *m1 = nullptr, *m2 = nullptr;
  ASSERT_EQ(vc_minimax(2, 2, 1e-3, kPi / 0.1, 1e-6, &rec, &m, &m1, &m2), VC_OK);
  EXPECT_NEAR(rec.muhat_norm, 1e-6, 1e-16);
  EXPECT_EQ(vc_measure_size(m), 4u);

  vc_cluster_params p{1e-3, 0.1, 2, 2, 1.0};
  vc_merge_result w{};
  vc_measure* diff = nullptr;
  EXPECT_EQ(vc_merge_witness(m1, m2, &p, 2.0, &w, &diff), VC_ERR_DELTA_TOO_LARGE);
  vc_measure_free(m);
  vc_measure_free(m1);
  vc_measure_free(m2);
  ASSERT_EQ(vc_minimax(2, 2, 1e-3, 10.0, 1e-6, &rec, nullptr, nullptr, nullptr), VC_OK);
}

TEST(CApi, SweepPipeline) {
  vc_sweep_config* cfg = nullptr;
  vc_preset_info info{};
  ASSERT_EQ(vc_sweep_config_preset("fig4", "C2", &cfg, &info), VC_OK);
  EXPECT_EQ(info.expected_slope, -2.0);
  EXPECT_EQ(info.overlay_count, 2u);
  ASSERT_EQ(vc_sweep_config_set(cfg, "samples", "100"), VC_OK);
  EXPECT_EQ(vc_sweep_config_set(cfg, "bogus", "1"), VC_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(vc_sweep_config_validate(cfg), VC_OK);
  vc_sweep* one = nullptr;
  vc_sweep* many = nullptr;
  ASSERT_EQ(vc_sweep_run(cfg, 1, &one), VC_OK);
  ASSERT_EQ(vc_sweep_run(cfg, 4, &many), VC_OK);
  ASSERT_EQ(vc_sweep_size(one), 100u);
  size_t n1 = 0, n2 = 0;
  ASSERT_EQ(vc_sweep_csv(one, nullptr, 0, &n1), VC_OK);
  ASSERT_EQ(vc_sweep_csv(many, nullptr, 0, &n2), VC_OK);
  ASSERT_EQ(n1, n2);
  std::vector<char> c1(n1), c2(n2);
  ASSERT_EQ(vc_sweep_csv(one, c1.data(), n1, &n1), VC_OK);
  ASSERT_EQ(vc_sweep_csv(many, c2.data(), n2, &n2), VC_OK);
  EXPECT_STREQ(c1.data(), c2.data());

  vc_sweep_record r{};
  ASSERT_EQ(vc_sweep_record_get(one, 0, &r), VC_OK);
  EXPECT_EQ(r.in_window, 1);
  EXPECT_EQ(r.has_sigma_min_vn, 0);
  EXPECT_EQ(vc_sweep_record_get(one, 100, &r), VC_ERR_RANGE);

  vc_line_fit fit{};
  ASSERT_EQ(vc_sweep_fit(one, info.fit_lo, info.fit_hi, &fit), VC_OK);
  EXPECT_LT(fit.slope, -1.5);
  EXPECT_GT(fit.slope, -2.5);

  const auto csv = temp_path("sweep.csv");
  ASSERT_EQ(vc_sweep_write_csv(one, csv.c_str()), VC_OK);
  vc_sweep* loaded = nullptr;
  ASSERT_EQ(vc_sweep_load_csv(csv.c_str(), &loaded), VC_OK);
  vc_sweep_record a{}, b{};
  for (size_t i = 0; i < 100; ++i) {
    ASSERT_EQ(vc_sweep_record_get(one, i, &a), VC_OK);
    ASSERT_EQ(vc_sweep_record_get(loaded, i, &b), VC_OK);
    EXPECT_EQ(a.lambda_min_g, b.lambda_min_g);
    EXPECT_EQ(a.omega, b.omega);
  }
  const double exps[] = {-2.0};
  const char* labels[] = {"SRF^-2"};
  const auto svg = temp_path("sweep.svg");
  ASSERT_EQ(vc_sweep_write_svg(one, svg.c_str(), "srf", "lambda_min_G", exps, labels, 1), VC_OK);
  EXPECT_GT(std::filesystem::file_size(svg), 0u);

  const double xs[] = {1.0, 10.0, 100.0};
  const double ys[] = {1.0, 0.01, 0.0001};
  ASSERT_EQ(vc_fit_loglog(xs, ys, 3, &fit), VC_OK);
  EXPECT_NEAR(fit.slope, -2.0, 1e-12);

  vc_sweep_free(loaded);
  vc_sweep_free(one);
  vc_sweep_free(many);
  vc_sweep_config_free(cfg);
  EXPECT_EQ(vc_sweep_config_preset("fig9", nullptr, &cfg, nullptr), VC_ERR_INVALID_ARGUMENT);
}

}  // namespace
