// Copyright 2026 The vistomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vistomo/interferometer.hpp"

#include <cmath>
#include <numbers>

#include "vistomo/errors.hpp"

namespace vistomo {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Hadamard on the path qubit of a (path, pol) signal vector.
CVector beam_splitter(const CVector& signal) {
  CVector out(4);
  for (int pol = 0; pol < 2; ++pol) {
    const cplx a = signal(pol);
    const cplx b = signal(2 + pol);
    out(pol) = kInvSqrt2 * (a + b);
    out(2 + pol) = kInvSqrt2 * (a - b);
  }
  return out;
}

CVector kron(const CVector& x, const CVector& y) {
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

// Idler (path, pol, env) vector with the polarization/environment part `pe` on `path`.
CVector idler_on_path(const CVector& pe, int path) {
  CVector out = CVector::Zero(2 * pe.size());
  out.segment(path * pe.size(), pe.size()) = pe;
  return out;
}

// Signal from the first source after the beam splitter.
CVector signal_q1(const SetupConfig& cfg) {
  CVector s = CVector::Zero(4);
  s.head<2>() = cfg.signal.vector();  // path a
  return beam_splitter(s);
}

// Second-source pair after the beam splitter, on the full joint space.
CVector source_q2(const SetupConfig& cfg) {
  const std::size_t d = cfg.idler.env.dim();
  CVector out = CVector::Zero(static_cast<Eigen::Index>(16 * d));
  for (int pol = 0; pol < 2; ++pol) {
    CVector s = CVector::Zero(4);
    s(2 + pol) = 1.0;  // path b
    CVector pe = CVector::Zero(static_cast<Eigen::Index>(2 * d));
    pe.segment(pol * d, d) = cfg.idler.env.e_psi;
    const cplx phase = pol == 0 ? cplx(1.0) : std::polar(1.0, cfg.theta);
    out += kInvSqrt2 * phase * kron(beam_splitter(s), idler_on_path(pe, 0));
  }
  return out;
}

// Applies |port><port| (x) |k><k| (x) 1 and returns the projected amplitudes.
CVector project(const CVector& psi, const Pol& k, Port port, std::size_t idler_dim) {
  const auto p = static_cast<Eigen::Index>(port);
  const auto n = static_cast<Eigen::Index>(idler_dim);
  const CVector amp = std::conj(k(0)) * psi.segment((2 * p) * n, n) +
                      std::conj(k(1)) * psi.segment((2 * p + 1) * n, n);
  CVector out = CVector::Zero(psi.size());
  out.segment((2 * p) * n, n) = k(0) * amp;
  out.segment((2 * p + 1) * n, n) = k(1) * amp;
  return out;
}

void check_unit(const Pol& k) {
  if (std::abs(k.norm() - 1.0) > kNormTol) throw InvalidArgument("basis state must be unit-norm");
}

}  // namespace

Pol SignalPrep::vector() const { return Pol(delta, epsilon * std::polar(1.0, zeta)); }

void SignalPrep::validate() const {
  if (delta < 0.0 || epsilon < 0.0) throw InvalidArgument("signal amplitudes must be non-negative");
  if (std::abs(delta * delta + epsilon * epsilon - 1.0) > kNormTol) {
    throw InvalidArgument("signal state is not normalized");
  }
  if (!std::isfinite(zeta)) throw InvalidArgument("zeta must be finite");
}

SignalPrep SignalPrep::from_vector(const Pol& psi) {
  const auto s = PolarizationState::from_vector(psi);
  return SignalPrep{s.alpha, s.beta, s.xi};
}

SignalPrep SignalPrep::unbiased_to(const Pol& k) {
  check_unit(k);
  return from_vector(kInvSqrt2 * (k + orthogonal_state(k)));
}

SignalPrep SignalPrep::for_basis(Basis b) {
  const bool diagonal = b == Basis::D || b == Basis::A;
  return SignalPrep{kInvSqrt2, kInvSqrt2, diagonal ? std::numbers::pi / 2.0 : 0.0};
}

void IdlerPrep::validate() const {
  if (alpha < 0.0 || beta < 0.0) throw InvalidArgument("idler amplitudes must be non-negative");
  if (std::abs(alpha * alpha + beta * beta - 1.0) > kNormTol) {
    throw InvalidArgument("idler state is not normalized");
  }
  if (!std::isfinite(xi)) throw InvalidArgument("xi must be finite");
  env.validate();
}

StateVector IdlerPrep::state() const {
  const std::size_t d = env.dim();
  CVector pe(static_cast<Eigen::Index>(2 * d));
  pe.head(d) = alpha * env.e_h;
  pe.tail(d) = beta * std::polar(1.0, xi) * env.e_v;
  return StateVector(std::move(pe), {2, d}, {"pol", "env"});
}

void SetupConfig::validate() const {
  if (!(pump_ratio >= 0.0) || !std::isfinite(pump_ratio)) {
    throw InvalidArgument("pump ratio P must be a finite non-negative number");
  }
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw InvalidArgument("transmission T must lie in [0, 1]");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("theta must be finite");
  signal.validate();
  idler.validate();
}

double SetupConfig::normalization() const { return 1.0 / std::sqrt(1.0 + pump_ratio * pump_ratio); }

Dims SetupConfig::dims() const { return {2, 2, 2, 2, idler.env.dim()}; }

StateVector build_state(const SetupConfig& cfg, double phi) {
  cfg.validate();
  const double t = cfg.transmission;
  const cplx sweep = std::polar(1.0, phi);
  const CVector s1 = signal_q1(cfg);
  const CVector pe = cfg.idler.state().amplitudes();
  CVector psi = t * sweep * kron(s1, idler_on_path(pe, 0)) +
                std::sqrt(1.0 - t * t) * sweep * kron(s1, idler_on_path(pe, 1)) +
                cfg.pump_ratio * source_q2(cfg);
  psi *= cfg.normalization();
  return StateVector(std::move(psi), cfg.dims(),
                     {"signal_path", "signal_pol", "idler_path", "idler_pol", "env"});
}

double detection_probability(const SetupConfig& cfg, const Pol& k, double phi, Port port) {
  check_unit(k);
  const StateVector psi = build_state(cfg, phi);
  return project(psi.amplitudes(), k, port, 4 * cfg.idler.env.dim()).squaredNorm();
}

OperatorMatrix detection_projector(const SetupConfig& cfg, const Pol& k, Port port) {
  check_unit(k);
  const Dims dims = cfg.dims();
  const auto n = static_cast<Eigen::Index>(product(dims));
  const auto idler = static_cast<std::size_t>(4 * cfg.idler.env.dim());
  CMatrix m(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    CVector e = CVector::Zero(n);
    e(col) = 1.0;
    m.col(col) = project(e, k, port, idler);
  }
  return OperatorMatrix(std::move(m), dims);
}

InterferenceCoefficients coefficients(const SetupConfig& cfg, const Pol& k, Port port) {
  cfg.validate();
  check_unit(k);
  const std::size_t idler = 4 * cfg.idler.env.dim();
  const CVector s1 = signal_q1(cfg);
  const CVector first = kron(s1, idler_on_path(cfg.idler.state().amplitudes(), 0));
  const CVector second = source_q2(cfg);
  const CVector second_projected = project(second, k, port, idler);

  // <psi'_S|Pi|psi'_S> on the signal alone; the idler factor has unit norm.
  const CVector s_projected = project(s1, k, port, 1);
  const double p = cfg.pump_ratio;
  InterferenceCoefficients out;
  out.c = s_projected.squaredNorm() + p * p * second.dot(second_projected).real();
  out.z = first.dot(second_projected);
  return out;
}

std::optional<double> visibility(const InterferenceCoefficients& coeffs, double pump_ratio,
                                 double transmission) {
  if (coeffs.c < kDarkPortThreshold) return std::nullopt;
  return 2.0 * pump_ratio * transmission * std::abs(coeffs.z) / coeffs.c;
}

OptionalVisibilities analytic_visibilities(const SetupConfig& cfg) {
  cfg.validate();
  const CoherenceTriple env = cfg.idler.env.triple();
  if (std::abs(env.m_h - 1.0) > 1e-9 || std::abs(env.m_v - 1.0) > 1e-9) {
    throw InvalidArgument("analytic_visibilities needs a fully coherent environment");
  }
  const double p = cfg.pump_ratio;
  const double t = cfg.transmission;
  const double de = cfg.signal.delta;
  const double ep = cfg.signal.epsilon;
  const double ze = cfg.signal.zeta;
  const double al = cfg.idler.alpha;
  const double be = cfg.idler.beta;
  const double rel = cfg.idler.xi - cfg.theta;

  // Each visibility is numerator / (4 c) with c the mean detection weight.
  auto ratio = [&](double numerator, double four_c) -> std::optional<double> {
    if (four_c / 4.0 < kDarkPortThreshold) return std::nullopt;
    return numerator / four_c;
  };
  auto root = [](double x) { return std::sqrt(std::max(x, 0.0)); };

  OptionalVisibilities v;
  const double sq8 = 2.0 * std::numbers::sqrt2;
  v[0] = ratio(sq8 * de * p * t * al, p * p + 2.0 * de * de);
  v[1] = ratio(sq8 * ep * p * t * be, p * p + 2.0 * ep * ep);
  const double dc = 2.0 * de * ep * std::cos(ze);
  const double ds = 2.0 * de * ep * std::sin(ze);
  const double ic = 2.0 * al * be * std::cos(rel);
  const double is = 2.0 * al * be * std::sin(rel);
  v[2] = ratio(2.0 * p * t * root(1.0 + dc) * root((1.0 + ic) / 2.0), 1.0 + p * p + dc);
  v[3] = ratio(2.0 * p * t * root(1.0 - dc) * root((1.0 - ic) / 2.0), 1.0 + p * p - dc);
  v[4] = ratio(2.0 * p * t * root(1.0 - ds) * root((1.0 + is) / 2.0), 1.0 + p * p - ds);
  v[5] = ratio(2.0 * p * t * root(1.0 + ds) * root((1.0 - is) / 2.0), 1.0 + p * p + ds);
  return v;
}

Visibilities analytic_visibilities_mixed(const SetupConfig& cfg) {
  cfg.validate();
  const double p = cfg.pump_ratio;
  const double scale = 2.0 * p * cfg.transmission / (1.0 + p * p);
  const cplx g_h = cfg.idler.env.g_h();
  const cplx g_v = cfg.idler.env.g_v();
  const cplx v_phase = std::polar(1.0, cfg.theta - cfg.idler.xi);
  Visibilities v;
  for (auto b : kAllBases) {
    const Pol kc = basis_state(b).conjugate();
    const cplx overlap = cfg.idler.alpha * kc(0) * g_h + cfg.idler.beta * v_phase * kc(1) * g_v;
    v[b] = scale * std::abs(overlap);
  }
  return v;
}

OperatorMatrix post_measurement_state(const SetupConfig& cfg) {
  const std::vector<std::size_t> keep = {2, 3};  // idler path, idler pol
  const OperatorMatrix rho = partial_trace(outer(build_state(cfg, 0.0)), keep);
  const OperatorMatrix check = partial_trace(outer(build_state(cfg, 1.0)), keep);
  if ((rho.entries() - check.entries()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::logic_error("post-measurement idler state depends on phi");
  }
  return rho;
}

}  // namespace vistomo
