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

#include "vistomo/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vistomo/environment.hpp"
#include "vistomo/errors.hpp"
#include "vistomo/interferometer.hpp"

namespace vistomo {

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::PureCoherent: return "pure-coherent";
    case Scenario::HvAsymmetric: return "hv-asymmetric";
    case Scenario::SymmetricCoupling: return "symmetric-coupling";
    case Scenario::UnknownEnvironment: return "unknown-environment";
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (auto s : {Scenario::PureCoherent, Scenario::HvAsymmetric, Scenario::SymmetricCoupling,
                 Scenario::UnknownEnvironment}) {
    if (scenario_name(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

constexpr double kBlochTol = 1e-9;

void require_finite(const VisibilityStokes& vs) {
  if (!std::isfinite(vs.s0) || !std::isfinite(vs.sx) || !std::isfinite(vs.sy) ||
      !std::isfinite(vs.sz)) {
    throw InvalidArgument("visibility Stokes parameters must be finite");
  }
}

// Bloch vectors slightly outside the unit ball (rounding, noise) are pulled
// back onto the sphere; anything further out is infeasible.
BlochVector clamp_to_ball(const Eigen::Vector3d& r) {
  const double n = r.norm();
  if (n > 1.0 + kBlochTol) {
    std::ostringstream msg;
    msg << "reconstructed Bloch vector has length " << n << " > 1";
    throw InfeasibleData(msg.str());
  }
  return BlochVector::from(n > 1.0 ? Eigen::Vector3d(r / n) : r);
}

Reconstruction make(Scenario s, const BlochVector& b) {
  return {s, density_from_bloch(b), b, std::nullopt, false, {}};
}

}  // namespace

Reconstruction reconstruct_pure(const VisibilityStokes& vs, double tol) {
  require_finite(vs);
  if (std::abs(vs.s0 - 1.0) > tol) {
    std::ostringstream msg;
    msg << "pure-coherent scenario needs s0 = 1, got " << vs.s0;
    throw ScenarioMismatch(msg.str());
  }
  const double n = vs.vec().norm();
  if (n == 0.0) throw ScenarioMismatch("pure-coherent scenario needs a nonzero Stokes vector");
  Reconstruction out = make(Scenario::PureCoherent, BlochVector::from(vs.vec() / n));
  out.q = 1.0;
  out.diagnostics = {{"s0", vs.s0}, {"stokes_norm", n}, {"norm_defect", vs.norm_defect()}};
  return out;
}

Reconstruction reconstruct_hv_asymmetric(const VisibilityStokes& vs, CoherentMode which,
                                         double tol) {
  require_finite(vs);
  if (vs.s0 < -tol || vs.s0 > 1.0 + tol) {
    std::ostringstream msg;
    msg << "s0 = " << vs.s0 << " outside [0, 1]";
    throw ScenarioMismatch(msg.str());
  }
  const bool h = which == CoherentMode::H;
  // The coherent mode keeps its full weight in s0; the other one is damped by q^2.
  const double z = h ? vs.sz + vs.s0 - 1.0 : vs.sz - vs.s0 + 1.0;
  const BlochVector b = clamp_to_ball({vs.sx, vs.sy, z});
  const double z_c = std::clamp(b.z, -1.0, 1.0);
  const double coherent_w = h ? (1.0 + z_c) / 2.0 : (1.0 - z_c) / 2.0;  // alpha^2 or beta^2
  const double damped_w = 1.0 - coherent_w;
  const double excess = vs.s0 - coherent_w;
  if (excess < -tol) {
    std::ostringstream msg;
    msg << "s0 smaller than the coherent-mode weight by " << -excess;
    throw ScenarioMismatch(msg.str());
  }
  Reconstruction out = make(Scenario::HvAsymmetric, b);
  out.diagnostics = {{"z", b.z}, {"coherent_weight", coherent_w}, {"norm_defect", vs.norm_defect()}};
  if (damped_w <= tol * tol) {
    out.q_indeterminate = true;
    return out;
  }
  const double q = std::sqrt(std::max(0.0, excess)) / std::sqrt(damped_w);
  if (q > 1.0 + tol) {
    std::ostringstream msg;
    msg << "recovered q = " << q << " exceeds 1";
    throw ScenarioMismatch(msg.str());
  }
  out.q = std::min(q, 1.0);
  // Transverse part predicted by (alpha, beta, q) against the measured one.
  const double transverse = 2.0 * std::sqrt(coherent_w * damped_w) * *out.q;
  out.diagnostics.emplace_back("transverse_residual", std::hypot(vs.sx, vs.sy) - transverse);
  return out;
}

Reconstruction reconstruct_symmetric(const VisibilityStokes& vs, double tol) {
  require_finite(vs);
  if (vs.s0 < 0.5 - tol || vs.s0 > 1.0 + tol) {
    std::ostringstream msg;
    msg << "symmetric-coupling scenario needs 1/2 <= s0 <= 1, got " << vs.s0;
    throw ScenarioMismatch(msg.str());
  }
  const double q = std::clamp(2.0 * vs.s0 - 1.0, 0.0, 1.0);
  const BlochVector b = clamp_to_ball(vs.vec() * (q / vs.s0));
  Reconstruction out = make(Scenario::SymmetricCoupling, b);
  out.q = q;
  const double z_unrescaled = vs.sz / vs.s0;
  out.diagnostics = {{"z_unrescaled", z_unrescaled},
                     {"z_rescaling_residual", b.z - z_unrescaled},
                     {"norm_defect", vs.norm_defect()}};
  return out;
}

namespace {

Eigen::Vector2cd random_unit_c2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector2cd u;
  do {
    u << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
  } while (u.norm() < 1e-12);
  return u.normalized();
}

CVector mode_vector(double m, const Eigen::Vector2cd& u) {
  CVector e(3);
  e << m, std::sqrt(std::max(0.0, 1.0 - m * m)) * u(0), std::sqrt(std::max(0.0, 1.0 - m * m)) * u(1);
  return e;
}

}  // namespace

std::vector<DensityMatrix2> enumerate_consistent_states(const VisibilityStokes& vs,
                                                        std::size_t samples, std::uint64_t seed,
                                                        double tol) {
  require_finite(vs);
  std::vector<DensityMatrix2> out;
  if (vs.s0 < -tol || vs.s0 > 1.0 + tol) return out;
  // With m_H = a / alpha and m_V = b / beta the forward model reproduces
  // s0 and sz; the phase of sx + i sy fixes xi + dphi.
  const double a = std::sqrt(std::max(0.0, (vs.s0 + vs.sz) / 2.0));
  const double b = std::sqrt(std::max(0.0, (vs.s0 - vs.sz) / 2.0));
  const double alpha_lo = std::min(a, 1.0);
  const double alpha_hi = std::sqrt(std::max(0.0, 1.0 - b * b));
  if (alpha_lo > alpha_hi + tol) return out;
  const double xi_bar = std::atan2(vs.sy, vs.sx);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double alpha = alpha_lo + (std::max(alpha_hi, alpha_lo) - alpha_lo) * unit(rng);
    const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    const double m_h = alpha > 0.0 ? std::min(1.0, a / alpha) : unit(rng);
    const double m_v = beta > 0.0 ? std::min(1.0, b / beta) : unit(rng);

    EnvironmentVectors env;
    env.e_psi = CVector::Zero(3);
    env.e_psi(0) = 1.0;
    env.e_h = mode_vector(m_h, random_unit_c2(rng));
    env.e_v = mode_vector(m_v, random_unit_c2(rng));
    const cplx overlap = env.e_h.dot(env.e_v);  // <e_H|e_V>
    if (std::abs(overlap) > 0.0) env.e_v *= std::conj(overlap) / std::abs(overlap);
    const CoherenceTriple t = env.triple();

    SetupConfig cfg;
    cfg.idler.alpha = alpha;
    cfg.idler.beta = beta;
    cfg.idler.xi = wrap_angle(xi_bar - t.delta_phi);
    try {
      cfg.idler.env = embed(t, 3);
    } catch (const InfeasibleEnvironment&) {
      continue;
    }
    const Visibilities v = analytic_visibilities_mixed(cfg);
    VisibilityStokes sim;
    try {
      StokesOptions opts;
      opts.sum_rule_tolerance = std::max(tol, 1e-6);
      sim = visibility_stokes(v, opts).stokes;
    } catch (const Error&) {
      continue;
    }
    const double err = std::max({std::abs(sim.s0 - vs.s0), std::abs(sim.sx - vs.sx),
                                 std::abs(sim.sy - vs.sy), std::abs(sim.sz - vs.sz)});
    if (err > tol) continue;
    out.push_back(DensityMatrix2::from_parameters(alpha, beta, std::clamp(t.q, 0.0, 1.0),
                                                  cfg.idler.xi));
  }
  return out;
}

}  // namespace vistomo
