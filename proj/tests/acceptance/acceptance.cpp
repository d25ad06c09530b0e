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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vistomo/environment.hpp"
#include "vistomo/errors.hpp"
#include "vistomo/fringes.hpp"
#include "vistomo/interferometer.hpp"
#include "vistomo/operators.hpp"
#include "vistomo/reconstruct.hpp"
#include "vistomo/stokes.hpp"

using namespace vistomo;
namespace o = vistomo::oracle;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

SetupConfig pure_config(const o::PureParams& p) {
  SetupConfig cfg;
  cfg.idler.alpha = p.alpha;
  cfg.idler.beta = p.beta;
  cfg.idler.xi = p.xi;
  return cfg;
}

CoherenceTriple to_triple(const o::Triple& t) { return {t.q, t.m_h, t.m_v, t.dphi}; }

// Visibility sets produced in criteria 1, 3 and 6, reused by 4 and 5.
std::vector<Visibilities> g_simulated;

Outcome pure_oracle() {
  o::Rng rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = o::random_pure(rng);
    const auto v = measure(pure_config(p)).visibilities;
    g_simulated.push_back(v);
    const auto expect = o::pure_visibilities(p.alpha, p.beta, p.xi);
    for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(v.values[j] - expect[j]));
  }
  return {worst < 1e-9, fmt("100 states, max |V_fit - V_closed| = %.3g (tol 1e-9)", worst)};
}

Outcome general_oracle() {
  o::Rng rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    SetupConfig cfg = pure_config(o::random_pure(rng));
    cfg.pump_ratio = rng.uniform(0.1, 3.0);
    cfg.transmission = rng.uniform(0.05, 1.0);
    cfg.theta = rng.angle();
    const double d = std::sqrt(rng.uniform());
    cfg.signal = {d, std::sqrt(1 - d * d), rng.angle()};
    const auto expect = o::general_visibilities(cfg.pump_ratio, cfg.transmission, cfg.theta, d,
                                                cfg.signal.epsilon, cfg.signal.zeta,
                                                cfg.idler.alpha, cfg.idler.beta, cfg.idler.xi);
    for (auto b : kAllBases) {
      const double v = dense_scan_visibility(cfg, basis_state(b));
      worst = std::max(worst, std::abs(v - expect[static_cast<std::size_t>(b)]));
    }
  }
  return {worst < 1e-8, fmt("100 configs, max |V_scan - V_formula| = %.3g (tol 1e-8)", worst)};
}

Outcome mixed_oracle() {
  o::Rng rng(1003);
  double worst = 0.0, worst_sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    SetupConfig cfg = pure_config(o::random_pure(rng));
    cfg.transmission = rng.uniform(0.05, 1.0);
    cfg.idler.env = embed(to_triple(o::random_feasible(rng)));
    const auto& e = cfg.idler.env;
    const auto psi = o::idler_state(cfg.idler.alpha, cfg.idler.beta, cfg.idler.xi, e.e_h, e.e_v);
    const auto v = measure(cfg).visibilities;
    g_simulated.push_back(v);
    for (auto b : kAllBases) {
      worst = std::max(worst, std::abs(v[b] - o::overlap_visibility(psi, basis_state(b), e.e_psi,
                                                                    cfg.transmission)));
    }
  }
  for (int i = 0; i < 100; ++i) {
    SetupConfig cfg = pure_config(o::random_pure(rng));
    cfg.transmission = rng.uniform(0.05, 1.0);
    cfg.idler.env = embed(to_triple(o::random_feasible(rng)));
    const auto vh = measure(cfg).visibilities;
    const double s0 = vh[Basis::H] * vh[Basis::H] + vh[Basis::V] * vh[Basis::V];
    const Pol k = rng.unit(2);
    double sum = 0.0;
    for (const Pol& b : {k, orthogonal_state(k)}) {
      SetupConfig c = cfg;
      c.signal = SignalPrep::unbiased_to(b);
      const double vb = fit(sweep(c, b)).visibility;
      sum += vb * vb;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - s0));
  }
  return {worst < 1e-9 && worst_sum < 1e-10,
          fmt("max |V - T|<psi|k*,e_psi>|| = %.3g (tol 1e-9); random-basis sum rule %.3g (tol 1e-10)",
              worst, worst_sum)};
}

Outcome identities() {
  double worst = 0.0;
  for (const auto& v : g_simulated) worst = std::max(worst, identities_check(v).max_abs());
  return {worst < 1e-10, fmt("%.0f visibility sets, max residual %.3g (tol 1e-10)",
                             static_cast<double>(g_simulated.size()), worst)};
}

Outcome norm_identity() {
  double worst = 0.0;
  for (const auto& v : g_simulated) {
    worst = std::max(worst, std::abs(visibility_stokes(v).stokes.norm_defect()));
  }
  return {worst < 1e-10, fmt("%.0f visibility sets, max |S|^2 - S0^2 = %.3g (tol 1e-10)",
                             static_cast<double>(g_simulated.size()), worst)};
}

Outcome geometry() {
  o::Rng rng(1006);
  struct Fixed {
    double alpha, xi, q;
  };
  const std::vector<Fixed> states = {
      {0.6, 0.0, 1.0},           {0.6, 0.0, 0.5},  {std::sqrt(0.5), 0.0, 0.0},
      {0.9, 1.2, 0.8},           {0.3, 2.5, 0.2},  {0.5, 4.0, 0.95},
      {std::sqrt(0.5), 3.0, 0.7}, {0.99, 5.0, 0.4}, {0.1, 0.7, 0.6},
      {0.75, 1.9, 0.05}};
  int violations = 0;
  const double tol = 1e-10;
  for (const auto& s : states) {
    SetupConfig cfg = pure_config({s.alpha, std::sqrt(1 - s.alpha * s.alpha), s.xi});
    const Eigen::Vector3d r =
        o::bloch_of(o::idler_density(cfg.idler.alpha, cfg.idler.beta, s.q, s.xi));
    const BlochVector rb = BlochVector::from(r);
    for (int i = 0; i < 1000; ++i) {
      o::Triple t;
      if (s.q == 1.0) {
        const double m = rng.uniform();
        t = {1.0, m, m, 0.0};
      } else {
        t = o::random_feasible_with_q(rng, s.q);
      }
      cfg.idler.env = embed(to_triple(t));
      const auto v = measure(cfg).visibilities;
      g_simulated.push_back(v);
      const auto vs = visibility_stokes(v).stokes;
      const auto rep = bounds_check(rb, vs, tol);
      // Oracle versions of the same five statements.
      const double purity = 0.5 * (1 + r.squaredNorm());
      const bool ok_ball = (vs.vec() - r).norm() <= 1 - vs.s0 + tol;
      const bool ok_ell = o::focal_sum_inside(vs.vec(), r, tol);
      const bool ok_up = purity <= r.dot(vs.vec()) + 1 - vs.s0 + tol;
      const bool ok_low = vs.s0 < 0.5 || purity >= 1 - 2 * vs.s0 * (1 - vs.s0) - tol;
      const bool ok_s0 = vs.s0 <= (1 + r.norm()) / 2 + tol;
      if (!(rep.all_ok() && ok_ball && ok_ell && ok_up && ok_low && ok_s0)) ++violations;
    }
  }
  return {violations == 0, fmt("10 states x 1000 environments, %.0f violations",
                               static_cast<double>(violations))};
}

Outcome feasibility() {
  o::Rng rng(1007);
  int disagreements = 0, feasible = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto raw = o::random_triple(rng);
    const bool psd = o::gram_min_eigenvalue(raw) >= -1e-12;
    const bool flag = check_feasible(to_triple(raw)).feasible;
    bool embedded = true;
    try {
      embed(to_triple(raw));
    } catch (const InfeasibleEnvironment&) {
      embedded = false;
    }
    feasible += psd;
    if (psd != flag || flag != embedded) ++disagreements;
  }
  double worst_slack = 0.0, worst_lower = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double mh = rng.uniform(), mv = rng.uniform();
    for (double q : solve_q_2d(mh, mv).accepted) {
      worst_slack = std::max(worst_slack, std::abs(o::slack({q, mh, mv, 0.0})));
    }
    const double m = rng.uniform(1 / std::sqrt(2.0), 1.0);
    worst_lower = std::max(worst_lower, std::abs(solve_q_2d(m, m).q_minus - (2 * m * m - 1)));
  }
  return {disagreements == 0 && worst_slack < 1e-10 && worst_lower < 1e-10,
          fmt("10^4 triples (%.0f feasible), %.0f disagreements; root slack %.3g",
              feasible, disagreements, worst_slack) +
              fmt("; q- vs 2m^2-1 %.3g", worst_lower)};
}

Outcome reconstruction() {
  o::Rng rng(1008);
  double worst_f = 0.0, worst_h = 0.0, worst_q = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = o::random_pure(rng);
    const auto vs = visibility_stokes(measure(pure_config(p)).visibilities).stokes;
    const auto r = reconstruct_pure(vs);
    const auto input = DensityMatrix2::pure(PolarizationState{p.alpha, p.beta, p.xi}.vector());
    worst_f = std::max(worst_f, 1 - fidelity(r.rho, input));
  }
  for (int i = 0; i < 100; ++i) {
    const double a2 = rng.uniform(0.05, 0.95);
    const double a = std::sqrt(a2), b = std::sqrt(1 - a2), xi = rng.angle();
    const double q = rng.uniform(0.1, 1.0);
    SetupConfig cfg = pure_config({a, b, xi});
    cfg.idler.env = embed({q, 1.0, q, 0.0});
    const auto r = reconstruct_hv_asymmetric(visibility_stokes(measure(cfg).visibilities).stokes,
                                             CoherentMode::H);
    const Eigen::Vector3d expect(2 * a * b * q * std::cos(xi), 2 * a * b * q * std::sin(xi), a2 - b * b);
    worst_h = std::max({worst_h, (r.bloch.vec() - expect).cwiseAbs().maxCoeff(), std::abs(*r.q - q)});
  }
  for (int i = 0; i < 100; ++i) {
    const auto p = o::random_pure(rng);
    const double q = rng.uniform(), m = std::sqrt((1 + q) / 2);
    SetupConfig cfg = pure_config(p);
    cfg.idler.env = embed({q, m, m, 0.0});
    const auto r = reconstruct_symmetric(visibility_stokes(measure(cfg).visibilities).stokes);
    worst_q = std::max(worst_q, std::abs(*r.q - q));
  }
  return {worst_f <= 1e-9 && worst_h < 1e-9 && worst_q < 1e-9,
          fmt("pure 1-F %.3g; m_H=1 (x,y,z,q) err %.3g; symmetric q err %.3g (tol 1e-9)",
              worst_f, worst_h, worst_q)};
}

Outcome operators() {
  o::Rng rng(1009);
  double worst_exp = 0.0, worst_sum = 0.0, worst_proj = 0.0;
  for (int i = 0; i < 100; ++i) {
    SetupConfig cfg = pure_config(o::random_pure(rng));
    cfg.transmission = rng.uniform(0.05, 1.0);
    cfg.idler.env = embed(to_triple(o::random_feasible(rng)));
    const auto vs = visibility_stokes(measure(cfg).visibilities).stokes;
    const auto ops = stokes_operators(cfg.idler.env, cfg.transmission);
    const auto psi = cfg.idler.state();
    worst_exp = std::max({worst_exp, std::abs(expectation(ops.s0, psi) - vs.s0),
                          std::abs(expectation(ops.sx, psi) - vs.sx),
                          std::abs(expectation(ops.sy, psi) - vs.sy),
                          std::abs(expectation(ops.sz, psi) - vs.sz)});
    const Pol k = rng.unit(2);
    const auto vk = visibility_operator(k, cfg.idler.env, cfg.transmission).matrix.entries();
    const auto vkp =
        visibility_operator(orthogonal_state(k), cfg.idler.env, cfg.transmission).matrix.entries();
    worst_sum = std::max(worst_sum, (vk + vkp - ops.s0.entries()).cwiseAbs().maxCoeff());
    const auto v1 = visibility_operator(k, cfg.idler.env, 1.0).matrix.entries();
    const auto inc = stokes_operators(cfg.idler.env, 1.0).incoherent().entries();
    worst_proj = std::max({worst_proj, (v1 * v1 - v1).cwiseAbs().maxCoeff(),
                           (inc * inc - inc).cwiseAbs().maxCoeff()});
  }
  return {worst_exp < 1e-9 && worst_sum < 1e-12 && worst_proj < 1e-12,
          fmt("<S_a> vs fringes %.3g (tol 1e-9); V_k+V_k' - S0 %.3g; V^2 - V %.3g (tol 1e-12)",
              worst_exp, worst_sum, worst_proj)};
}

Outcome post_measurement() {
  const auto rho = post_measurement_state(pure_config({1.0, 0.0, 0.0})).entries();
  Eigen::Matrix2cd expect = Eigen::Matrix2cd::Zero();
  expect(0, 0) = 0.75;
  expect(1, 1) = 0.25;
  const double ref = (rho.topLeftCorner(2, 2) - expect).cwiseAbs().maxCoeff();
  o::Rng rng(1010);
  double worst = 0.0, worst_phase = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = o::random_pure(rng);
    SetupConfig cfg = pure_config(p);
    cfg.pump_ratio = rng.uniform(0.0, 3.0);
    cfg.transmission = rng.uniform(0.0, 1.0);
    const auto got = post_measurement_state(cfg).entries();
    const auto closed =
        o::post_state(cfg.pump_ratio, cfg.transmission, o::idler_density(p.alpha, p.beta, 1.0, p.xi));
    worst = std::max(worst, (got - closed).cwiseAbs().maxCoeff());
    for (int j = 0; j < 3; ++j) {
      const auto at = partial_trace(outer(build_state(cfg, rng.angle())), {2, 3}).entries();
      worst_phase = std::max(worst_phase, (at - got).cwiseAbs().maxCoeff());
    }
  }
  return {ref < 1e-12 && worst < 1e-12 && worst_phase < 1e-12,
          fmt("reference block %.3g; closed form %.3g; phase dependence %.3g (tol 1e-12)", ref,
              worst, worst_phase)};
}

Outcome noise() {
  o::Rng rng(1011);
  int good = 0;
  double worst = 0.0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    SetupConfig cfg = pure_config(o::random_pure(rng));
    cfg.idler.env = embed(to_triple(o::random_feasible(rng)));
    const auto round = measure(cfg, {}, NoiseSpec{1000000, static_cast<std::uint64_t>(i)});
    const auto expect = analytic_visibilities_mixed(cfg);
    double dev = 0.0;
    for (auto b : kAllBases) dev = std::max(dev, std::abs(round.visibilities[b] - expect[b]));
    worst = std::max(worst, dev);
    if (dev < 5e-3) ++good;
  }
  return {good >= trials * 99 / 100,
          fmt("%.0f/1000 trials with all six |V_fit - V| < 5e-3 (need 990); worst %.3g", good,
              worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pure-state visibility oracle", pure_oracle},
      {"general visibility formulas", general_oracle},
      {"mixed-state visibility oracle", mixed_oracle},
      {"six-visibility identities", identities},
      {"norm identity", norm_identity},
      {"ball / ellipsoid / purity geometry", geometry},
      {"feasibility and embeddability", feasibility},
      {"reconstruction round trips", reconstruction},
      {"visibility operators", operators},
      {"post-measurement state", post_measurement},
      {"shot-noise robustness", noise},
  };
  // Criteria 4 and 5 read the sets simulated in 1, 3 and 6; run those first.
  const std::vector<std::size_t> order = {0, 1, 2, 5, 3, 4, 6, 7, 8, 9, 10};
  std::vector<Outcome> results(criteria.size());
  std::vector<double> seconds(criteria.size());
  for (std::size_t idx : order) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results[idx] = criteria[idx].second();
    } catch (const std::exception& e) {
      results[idx] = {false, std::string("exception: ") + e.what()};
    }
    seconds[idx] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::printf("%s %2zu %s: %s [%.1fs]\n", results[i].pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), results[i].detail.c_str(), seconds[i]);
    failed += !results[i].pass;
  }
  std::printf("%s: %zu/%zu criteria passed\n", failed ? "FAILED" : "OK", criteria.size() - failed,
              criteria.size());
  return failed ? 1 : 0;
}
