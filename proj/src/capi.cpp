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

// extern "C" facade over the C++ core. Handles own the C++ objects; every
// entry point converts exceptions into a status plus a thread-local message.

#include "vandcond/vandcond.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "vandcond/bounds.hpp"
#include "vandcond/certify.hpp"
#include "vandcond/clusters.hpp"
#include "vandcond/error.hpp"
#include "vandcond/lab.hpp"
#include "vandcond/matrices.hpp"
#include "vandcond/numkernel.hpp"
#include "vandcond/superres.hpp"

struct vc_nodes {
  vandcond::NodeConfiguration value;
};
struct vc_matrix {
  vandcond::ComplexMatrix value;
};
struct vc_certificate {
  vandcond::DecimationCertificate value;
};
struct vc_measure {
  vandcond::DiscreteMeasure value;
};
struct vc_sweep_config {
  vandcond::SweepConfig value;
};
struct vc_sweep {
  std::vector<vandcond::SweepRecord> records;
};

namespace {

using namespace vandcond;

thread_local std::string g_last_error;

struct NullArgument {
  const char* name;
};

struct BufferTooSmall {};

template <class T>
const T& deref(const T* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
  return *p;
}

template <class T>
T& deref(T* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
  return *p;
}

std::string str(const char* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
  return p;
}

template <class F>
vc_status guarded(F&& body) noexcept {
  try {
    body();
    return VC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<vc_status>(static_cast<int>(e.code()));
  } catch (const NullArgument& e) {
    g_last_error = std::string("null pointer argument: ") + e.name;
    return VC_ERR_NULL_POINTER;
  } catch (const BufferTooSmall&) {
    g_last_error = "output buffer too small";
    return VC_ERR_BUFFER_TOO_SMALL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return VC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return VC_ERR_INTERNAL;
  }
}

// Two-call text output: a null buffer only reports the size.
void put_text(const std::string& text, char* buf, std::size_t cap, std::size_t* needed) {
  const std::size_t size = text.size() + 1;
  if (needed != nullptr) *needed = size;
  if (buf == nullptr) return;
  if (cap < size) throw BufferTooSmall{};
  std::memcpy(buf, text.c_str(), size);
}

ClusterParams to_params(const vc_cluster_params* p) {
  const auto& c = deref(p, "params");
  return ClusterParams{c.delta, c.rho, c.s, c.ell, c.tau};
}

vc_cluster_params from_params(const ClusterParams& p) {
  return vc_cluster_params{p.delta, p.rho, p.s, p.ell, p.tau};
}

SincRoute to_route(vc_sinc_route route) {
  switch (route) {
    case VC_SINC_EIGEN: return SincRoute::eigen;
    case VC_SINC_QUADRATURE: return SincRoute::quadrature;
    case VC_SINC_EXTENDED: return SincRoute::extended;
  }
  fail(ErrorCode::InvalidArgument, "unknown sinc route");
}

template <class Handle, class Value>
void emit(Handle** out, Value&& value) {
  deref(out, "out");
  *out = new Handle{std::forward<Value>(value)};
}

}  // namespace

extern "C" {

const char* vc_status_string(vc_status status) {
  switch (status) {
    case VC_OK: return "ok";
    case VC_ERR_NULL_POINTER: return "null pointer";
    case VC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case VC_ERR_INTERNAL: return "internal error";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(ErrorCode::Range)) {
    static thread_local std::string name;
    name = to_string(static_cast<ErrorCode>(code));
    return name.c_str();
  }
  return "unknown status";
}

const char* vc_last_error_message(void) { return g_last_error.c_str(); }

const char* vc_version(void) { return "0.1.0"; }

// ---- nodes ------------------------------------------------------------------

vc_status vc_nodes_create(const double* t, size_t count, vc_nodes** out) {
  return guarded([&] {
    if (count > 0) deref(t, "t");
    emit(out, NodeConfiguration(std::vector<double>(t, t + count)));
  });
}

vc_status vc_nodes_load(const char* path, vc_nodes** out) {
  return guarded([&] { emit(out, NodeConfiguration::load(str(path, "path"))); });
}

vc_status vc_nodes_save(const vc_nodes* nodes, const char* path) {
  return guarded([&] { deref(nodes, "nodes").value.save(str(path, "path")); });
}

vc_status vc_nodes_gen_c1(size_t s, size_t ell, double delta, vc_nodes** out) {
  return guarded([&] { emit(out, gen_c1(s, ell, delta)); });
}

vc_status vc_nodes_gen_c2(size_t s, size_t ell, double delta, vc_nodes** out) {
  return guarded([&] { emit(out, gen_c2(s, ell, delta)); });
}

vc_status vc_nodes_gen_xmin(size_t s, size_t ell, double delta, vc_nodes** out,
                            double* rho_prime, double* tau_prime) {
  return guarded([&] {
    XminConfiguration xm = gen_xmin(s, ell, delta);
    if (rho_prime != nullptr) *rho_prime = xm.rho_prime;
    if (tau_prime != nullptr) *tau_prime = xm.tau_prime;
    emit(out, std::move(xm.nodes));
  });
}

void vc_nodes_free(vc_nodes* nodes) { delete nodes; }

size_t vc_nodes_count(const vc_nodes* nodes) { return nodes ? nodes->value.size() : 0; }

vc_status vc_nodes_get(const vc_nodes* nodes, double* out, size_t cap) {
  return guarded([&] {
    const auto t = deref(nodes, "nodes").value.nodes();
    const std::size_t n = std::min(cap, t.size());
    if (n > 0) deref(out, "out");
    std::copy_n(t.begin(), n, out);
  });
}

vc_status vc_nodes_min_separation(const vc_nodes* nodes, double* out) {
  return guarded([&] { deref(out, "out") = min_separation(deref(nodes, "nodes").value); });
}

vc_status vc_infer_cluster_params(const vc_nodes* nodes, size_t ell, double tau,
                                  vc_cluster_params* out) {
  return guarded([&] {
    const auto p = infer_cluster_params(
        deref(nodes, "nodes").value, ell == 0 ? std::nullopt : std::optional<std::size_t>(ell),
        tau > 0.0 ? std::optional<double>(tau) : std::nullopt);
    deref(out, "out") = from_params(p);
  });
}

vc_status vc_validate_cluster(const vc_nodes* nodes, const vc_cluster_params* params, int* ok,
                              char* report, size_t cap, size_t* needed) {
  return guarded([&] {
    const ClusterValidation v = validate_cluster(deref(nodes, "nodes").value, to_params(params));
    deref(ok, "ok") = v.ok() ? 1 : 0;
    put_text(v.report(), report, cap, needed);
  });
}

// ---- matrices ---------------------------------------------------------------

vc_status vc_vandermonde(const vc_nodes* nodes, double omega, int64_t n_half, vc_matrix** out) {
  return guarded([&] {
    emit(out, vandermonde_scaled(deref(nodes, "nodes").value, BandParams{omega, n_half}));
  });
}

vc_status vc_gram_finite(const vc_nodes* nodes, double omega, int64_t n_half, vc_matrix** out) {
  return guarded(
      [&] { emit(out, gram_finite(deref(nodes, "nodes").value, BandParams{omega, n_half})); });
}

vc_status vc_gram_sinc(const vc_nodes* nodes, double omega, vc_matrix** out) {
  return guarded([&] { emit(out, gram_sinc(deref(nodes, "nodes").value, omega)); });
}

vc_status vc_prolate_matrix(size_t s, double w, vc_matrix** out) {
  return guarded([&] { emit(out, prolate_matrix(ProlateSpec{s, w})); });
}

void vc_matrix_free(vc_matrix* m) { delete m; }

size_t vc_matrix_rows(const vc_matrix* m) { return m ? m->value.rows() : 0; }

size_t vc_matrix_cols(const vc_matrix* m) { return m ? m->value.cols() : 0; }

vc_status vc_matrix_get(const vc_matrix* m, size_t i, size_t j, double* re, double* im) {
  return guarded([&] {
    const ComplexMatrix& a = deref(m, "m").value;
    if (i >= a.rows() || j >= a.cols()) fail(ErrorCode::Range, "matrix index out of range");
    const Complex z = a(i, j);
    deref(re, "re") = z.real();
    deref(im, "im") = z.imag();
  });
}

vc_status vc_matrix_eigenvalues(const vc_matrix* m, double* out, size_t cap) {
  return guarded([&] {
    const HermitianSpectrum spec = hermitian_eigen(deref(m, "m").value, false);
    const std::size_t n = std::min(cap, spec.eigenvalues.size());
    if (n > 0) deref(out, "out");
    std::copy_n(spec.eigenvalues.begin(), n, out);
  });
}

vc_status vc_matrix_sigma_min(const vc_matrix* m, vc_sigma_mode mode, double* out) {
  return guarded([&] {
    const SigmaMode md = mode == VC_SIGMA_BIDIAGONAL ? SigmaMode::bidiagonal : SigmaMode::gram;
    deref(out, "out") = sigma_min(deref(m, "m").value, md);
  });
}

vc_status vc_lambda_min_sinc(const vc_nodes* nodes, double omega, vc_sinc_route route,
                             double* out) {
  return guarded([&] {
    deref(out, "out") = lambda_min_sinc(deref(nodes, "nodes").value, omega, to_route(route));
  });
}

vc_status vc_prolate_lambda_min(size_t s, double w, vc_sinc_route route, double* out) {
  return guarded(
      [&] { deref(out, "out") = lambda_min_prolate(ProlateSpec{s, w}, to_route(route)); });
}

// ---- bounds -----------------------------------------------------------------

double vc_srf(double delta, double omega) { return srf(delta, omega); }

vc_status vc_main_constant(size_t s, double* out) {
  return guarded([&] { deref(out, "out") = main_constant(s); });
}

vc_status vc_slepian_constant(size_t s, double* out) {
  return guarded([&] { deref(out, "out") = slepian_constant(s); });
}

vc_status vc_slepian_lambda(size_t s, double w, double* out, int* valid) {
  return guarded([&] {
    const BoundReport r = slepian_lambda_asymptotic(s, w);
    deref(out, "out") = r.value;
    if (valid != nullptr) *valid = r.valid ? 1 : 0;
  });
}

vc_status vc_omega_window(const vc_cluster_params* params, double* lo, double* hi) {
  return guarded([&] {
    const OmegaWindow w = omega_window(to_params(params));
    deref(lo, "lo") = w.lo;
    deref(hi, "hi") = w.hi;
  });
}

vc_status vc_n_threshold(size_t s, double omega, int64_t* out) {
  return guarded([&] { deref(out, "out") = n_threshold(s, omega); });
}

vc_status vc_bounds_csv(const vc_nodes* nodes, const vc_cluster_params* params, double omega,
                        int64_t n_half, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    const auto table = bound_table(deref(nodes, "nodes").value, to_params(params), omega,
                                   n_half > 0 ? std::optional<std::int64_t>(n_half) : std::nullopt);
    std::ostringstream os;
    write_bounds_csv(os, table);
    put_text(os.str(), buf, cap, needed);
  });
}

// ---- certificates -----------------------------------------------------------

vc_status vc_certify(const vc_nodes* nodes, const vc_cluster_params* params, double omega,
                     int64_t n_half, double xi_fraction, vc_certificate** out) {
  return guarded([&] {
    emit(out, certify(deref(nodes, "nodes").value, to_params(params), BandParams{omega, n_half},
                      xi_fraction));
  });
}

void vc_certificate_free(vc_certificate* cert) { delete cert; }

vc_status vc_certificate_attach_oracle(vc_certificate* cert, const vc_nodes* nodes) {
  return guarded([&] { attach_oracle(deref(cert, "cert").value, deref(nodes, "nodes").value); });
}

vc_status vc_certificate_summary_get(const vc_certificate* cert, vc_certificate_summary* out) {
  return guarded([&] {
    const DecimationCertificate& c = deref(cert, "cert").value;
    vc_certificate_summary& s = deref(out, "out");
    s.n_half = c.n_half;
    s.omega = c.omega;
    s.m = c.m;
    s.lambda = c.lambda;
    s.cluster_margin = c.cluster_margin;
    s.far_margin = c.far_margin;
    s.block_count = c.blocks.size();
    s.certified_sigma = c.certified_sigma;
    s.crude_sigma = c.crude_sigma;
    s.has_oracle = c.oracle_sigma ? 1 : 0;
    s.oracle_sigma = c.oracle_sigma.value_or(0.0);
  });
}

vc_status vc_certificate_text(const vc_certificate* cert, char* buf, size_t cap, size_t* needed) {
  return guarded([&] { put_text(deref(cert, "cert").value.to_text(), buf, cap, needed); });
}

vc_status vc_certificate_verify(const vc_certificate* cert, const vc_nodes* nodes,
                                const vc_cluster_params* params, int* ok, char* message,
                                size_t cap, size_t* needed) {
  return guarded([&] {
    const std::string msg = verify_certificate(deref(cert, "cert").value,
                                               deref(nodes, "nodes").value, to_params(params));
    deref(ok, "ok") = msg.empty() ? 1 : 0;
    put_text(msg, message, cap, needed);
  });
}

// ---- measures ---------------------------------------------------------------

vc_status vc_measure_create(double delta, const int64_t* indices, const double* re,
                            const double* im, size_t count, vc_measure** out) {
  return guarded([&] {
    if (count > 0) {
      deref(indices, "indices");
      deref(re, "re");
    }
    std::vector<std::int64_t> k(indices, indices + count);
    std::vector<Complex> a(count);
    for (std::size_t j = 0; j < count; ++j) a[j] = Complex(re[j], im ? im[j] : 0.0);
    emit(out, DiscreteMeasure(Grid(delta), std::move(k), std::move(a)));
  });
}

vc_status vc_measure_load(const char* path, vc_measure** out) {
  return guarded([&] { emit(out, DiscreteMeasure::load(str(path, "path"))); });
}

vc_status vc_measure_save(const vc_measure* mu, const char* path) {
  return guarded([&] { deref(mu, "mu").value.save(str(path, "path")); });
}

void vc_measure_free(vc_measure* mu) { delete mu; }

size_t vc_measure_size(const vc_measure* mu) { return mu ? mu->value.size() : 0; }

double vc_measure_delta(const vc_measure* mu) { return mu ? mu->value.grid().delta : 0.0; }

vc_status vc_measure_get(const vc_measure* mu, size_t j, int64_t* index, double* re, double* im) {
  return guarded([&] {
    const DiscreteMeasure& m = deref(mu, "mu").value;
    if (j >= m.size()) fail(ErrorCode::Range, "spike index out of range");
    deref(index, "index") = m.indices()[j];
    deref(re, "re") = m.amplitudes()[j].real();
    deref(im, "im") = m.amplitudes()[j].imag();
  });
}

vc_status vc_measure_norm_gram(const vc_measure* mu, double omega, double* out) {
  return guarded([&] { deref(out, "out") = norm2_omega_gram(deref(mu, "mu").value, omega); });
}

vc_status vc_measure_norm_quadrature(const vc_measure* mu, double omega, size_t q, double* out) {
  return guarded([&] {
    deref(out, "out") = norm2_omega_quadrature(sample_measurement(deref(mu, "mu").value, omega, q));
  });
}

vc_status vc_merge_witness(const vc_measure* mu1, const vc_measure* mu2,
                           const vc_cluster_params* params, double ladder_ratio,
                           vc_merge_result* out, vc_measure** diff) {
  return guarded([&] {
    MergeWitness w = merge_cluster_witness(deref(mu1, "mu1").value, deref(mu2, "mu2").value,
                                           to_params(params), ladder_ratio);
    vc_merge_result& r = deref(out, "out");
    r.rho_prime = w.rho_prime;
    r.tau_prime = w.tau_prime;
    r.ell_prime = w.ell_prime;
    r.s_prime = w.s_prime;
    r.interval_index = w.interval_index;
    r.interval_lo = w.interval_lo;
    r.interval_hi = w.interval_hi;
    if (diff != nullptr) *diff = new vc_measure{std::move(w.diff)};
  });
}

vc_status vc_minimax(size_t s, size_t ell, double delta, double omega, double epsilon,
                     vc_minimax_record* out, vc_measure** mu, vc_measure** mu1,
                     vc_measure** mu2) {
  return guarded([&] {
    vc_minimax_record& r = deref(out, "out");
    MinimaxConstruction c = minimax_construct(s, ell, delta, omega, epsilon);
    const MinimaxRecord& m = c.record;
    r.s = m.s;
    r.ell = m.ell;
    r.delta = m.delta;
    r.omega = m.omega;
    r.epsilon = m.epsilon;
    r.srf = m.srf;
    r.lambda_min = m.lambda_min;
    r.mu_norm = m.mu_norm;
    r.muhat_norm = m.muhat_norm;
    r.implied_lower = m.implied_lower;
    r.ratio = m.ratio;
    r.rho_prime = m.rho_prime;
    r.tau_prime = m.tau_prime;
    if (mu != nullptr) *mu = new vc_measure{std::move(c.mu)};
    if (mu1 != nullptr) *mu1 = new vc_measure{std::move(c.mu1)};
    if (mu2 != nullptr) *mu2 = new vc_measure{std::move(c.mu2)};
  });
}

// ---- sweeps -----------------------------------------------------------------

vc_status vc_fit_loglog(const double* x, const double* y, size_t count, vc_line_fit* out) {
  return guarded([&] {
    if (count > 0) {
      deref(x, "x");
      deref(y, "y");
    }
    const LineFit f = fit_loglog(std::vector<double>(x, x + count), std::vector<double>(y, y + count));
    deref(out, "out") = vc_line_fit{f.slope, f.intercept, f.r_squared, f.count};
  });
}

vc_status vc_sweep_config_create(vc_sweep_config** out) {
  return guarded([&] { emit(out, SweepConfig{}); });
}

vc_status vc_sweep_config_preset(const char* name, const char* variant, vc_sweep_config** out,
                                 vc_preset_info* info) {
  return guarded([&] {
    const std::string n = str(name, "name");
    Preset p;
    if (n == "fig1") p = preset_fig1();
    else if (n == "fig4") p = preset_fig4(variant ? variant : "C1");
    else if (n == "fig5") p = preset_fig5();
    else fail(ErrorCode::InvalidArgument, "unknown preset '" + n + "'");
    if (info != nullptr) {
      *info = vc_preset_info{};
      info->fit_lo = p.fit_lo;
      info->fit_hi = p.fit_hi;
      info->expected_slope = p.expected_slope;
      info->overlay_count = std::min<std::size_t>(p.overlays.size(), VC_MAX_OVERLAYS);
      for (std::size_t k = 0; k < info->overlay_count; ++k) {
        info->overlay_exponent[k] = p.overlays[k].exponent;
        std::strncpy(info->overlay_label[k], p.overlays[k].label.c_str(),
                     sizeof info->overlay_label[k] - 1);
      }
    }
    emit(out, std::move(p.config));
  });
}

void vc_sweep_config_free(vc_sweep_config* cfg) { delete cfg; }

vc_status vc_sweep_config_set(vc_sweep_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    apply_setting(deref(cfg, "cfg").value, str(key, "key"),
                  str(value, "value"));
  });
}

vc_status vc_sweep_config_load(vc_sweep_config* cfg, const char* path) {
  return guarded(
      [&] { load_config_file(deref(cfg, "cfg").value, str(path, "path")); });
}

vc_status vc_sweep_config_validate(const vc_sweep_config* cfg) {
  return guarded([&] { deref(cfg, "cfg").value.validate(); });
}

vc_status vc_sweep_run(const vc_sweep_config* cfg, unsigned threads, vc_sweep** out) {
  return guarded([&] { emit(out, run_sweep(deref(cfg, "cfg").value, threads)); });
}

vc_status vc_sweep_load_csv(const char* path, vc_sweep** out) {
  return guarded([&] { emit(out, parse_csv_file(str(path, "path"))); });
}

void vc_sweep_free(vc_sweep* sweep) { delete sweep; }

size_t vc_sweep_size(const vc_sweep* sweep) { return sweep ? sweep->records.size() : 0; }

vc_status vc_sweep_record_get(const vc_sweep* sweep, size_t i, vc_sweep_record* out) {
  return guarded([&] {
    const auto& rs = deref(sweep, "sweep").records;
    if (i >= rs.size()) fail(ErrorCode::Range, "record index out of range");
    const SweepRecord& r = rs[i];
    vc_sweep_record& o = deref(out, "out");
    o.delta = r.delta;
    o.omega = r.omega;
    o.srf = r.srf;
    o.lambda_min_g = r.lambda_min_g;
    o.has_sigma_min_vn = r.sigma_min_vn ? 1 : 0;
    o.sigma_min_vn = r.sigma_min_vn.value_or(0.0);
    o.has_n_half = r.n_half ? 1 : 0;
    o.n_half = r.n_half.value_or(0);
    o.bound_main_lambda = r.bound_main_lambda;
    o.bound_upper_prolate = r.bound_upper_prolate;
    o.has_certified_sigma = r.certified_sigma ? 1 : 0;
    o.certified_sigma = r.certified_sigma.value_or(0.0);
    o.in_window = r.in_window ? 1 : 0;
  });
}

vc_status vc_sweep_fit(const vc_sweep* sweep, double srf_lo, double srf_hi, vc_line_fit* out) {
  return guarded([&] {
    const LineFit f = fit_loglog_slope(deref(sweep, "sweep").records, srf_lo, srf_hi);
    deref(out, "out") = vc_line_fit{f.slope, f.intercept, f.r_squared, f.count};
  });
}

vc_status vc_sweep_csv(const vc_sweep* sweep, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    std::ostringstream os;
    emit_csv(deref(sweep, "sweep").records, os);
    put_text(os.str(), buf, cap, needed);
  });
}

vc_status vc_sweep_write_csv(const vc_sweep* sweep, const char* path) {
  return guarded(
      [&] { emit_csv(deref(sweep, "sweep").records, str(path, "path")); });
}

vc_status vc_sweep_write_svg(const vc_sweep* sweep, const char* path, const char* x_field,
                             const char* y_field, const double* exponents,
                             const char* const* labels, size_t overlay_count) {
  return guarded([&] {
    std::vector<PowerLawOverlay> overlays;
    if (overlay_count > 0) deref(exponents, "exponents");
    for (std::size_t k = 0; k < overlay_count; ++k) {
      PowerLawOverlay o;
      o.exponent = exponents[k];
      o.label = labels != nullptr && labels[k] != nullptr ? labels[k] : "";
      overlays.push_back(std::move(o));
    }
    emit_svg_scatter(deref(sweep, "sweep").records, str(x_field, "x_field"),
                     str(y_field, "y_field"), overlays,
                     str(path, "path"));
  });
}

}  // extern "C"
