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

#include "vistomo/environment.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "vistomo/errors.hpp"
#include "vistomo/polarization.hpp"

namespace vistomo {

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value >= -kFeasibilityTol && value <= 1.0 + kFeasibilityTol)) {
    std::ostringstream msg;
    msg << name << " = " << value << " is outside [0, 1]";
    throw InvalidArgument(msg.str());
  }
}

Eigen::Matrix3cd gram_matrix(const CoherenceTriple& t) {
  // Phase convention: <e_V|e_psi> real positive, <e_H|e_psi> = m_H e^{i dphi}.
  const cplx g_h = std::polar(t.m_h, t.delta_phi);
  const cplx g_v = t.m_v;
  Eigen::Matrix3cd g;
  g << 1.0, t.q, g_h,
       t.q, 1.0, g_v,
       std::conj(g_h), std::conj(g_v), 1.0;
  return g;
}

// Lower-triangular L with L L^dagger = G. Returns false if a pivot goes
// negative; exactly-zero pivots drop their column.
bool cholesky(const Eigen::Matrix3cd& g, Eigen::Matrix3cd& l) {
  l.setZero();
  for (int j = 0; j < 3; ++j) {
    double pivot = g(j, j).real();
    for (int k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (pivot < 0.0) return false;
    if (pivot == 0.0) continue;
    l(j, j) = std::sqrt(pivot);
    for (int i = j + 1; i < 3; ++i) {
      cplx s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j).real();
    }
  }
  return true;
}

// Factor of the nearest PSD matrix: negative eigenvalues clamped to zero.
Eigen::Matrix3cd clamped_factor(const Eigen::Matrix3cd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(g);
  const Eigen::Vector3d lambda = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * lambda.asDiagonal();
}

}  // namespace

Feasibility check_feasible(const CoherenceTriple& t) {
  check_unit_interval(t.q, "q");
  check_unit_interval(t.m_h, "m_H");
  check_unit_interval(t.m_v, "m_V");
  if (!std::isfinite(t.delta_phi)) throw InvalidArgument("delta_phi must be finite");
  const double slack = 1.0 - (t.q * t.q + t.m_h * t.m_h + t.m_v * t.m_v) +
                       2.0 * t.q * t.m_h * t.m_v * std::cos(t.delta_phi);
  return {slack, slack >= -kFeasibilityTol};
}

CoherenceTriple EnvironmentVectors::triple() const {
  const cplx q = e_h.dot(e_v);
  const cplx gh = g_h();
  const cplx gv = g_v();
  CoherenceTriple t;
  t.q = q.real();
  t.m_h = std::abs(gh);
  t.m_v = std::abs(gv);
  t.delta_phi = (t.m_h > 0.0 && t.m_v > 0.0) ? wrap_angle(std::arg(gh) - std::arg(gv)) : 0.0;
  return t;
}

void EnvironmentVectors::validate(double tol) const {
  if (e_h.size() < 2 || e_v.size() != e_h.size() || e_psi.size() != e_h.size()) {
    throw InvalidArgument("environment vectors must share one dimension >= 2");
  }
  for (const CVector* v : {&e_h, &e_v, &e_psi}) {
    if (std::abs(v->norm() - 1.0) > tol) throw InvalidArgument("environment vector is not unit-norm");
  }
  const cplx q = e_h.dot(e_v);
  if (std::abs(q.imag()) > tol || q.real() < -tol) {
    throw InvalidArgument("<e_H|e_V> must be real and non-negative");
  }
}

EnvironmentVectors embed(const CoherenceTriple& t, std::size_t dim) {
  if (dim < 3) throw InvalidArgument("environment dimension must be at least 3");
  const Feasibility f = check_feasible(t);
  if (!f.feasible) {
    std::ostringstream msg;
    msg << "infeasible coherence triple (slack " << f.slack << ")";
    throw InfeasibleEnvironment(msg.str(), f.slack);
  }
  CoherenceTriple clamped = t;
  clamped.q = std::clamp(t.q, 0.0, 1.0);
  clamped.m_h = std::clamp(t.m_h, 0.0, 1.0);
  clamped.m_v = std::clamp(t.m_v, 0.0, 1.0);
  const Eigen::Matrix3cd g = gram_matrix(clamped);

  Eigen::Matrix3cd l;
  if (f.slack < 0.0 || !cholesky(g, l)) {
    // Boundary triple: factor the PSD projection, then rotate so that e_H and
    // e_V keep the canonical Cholesky shape.
    Eigen::Matrix3cd factor = clamped_factor(g);
    Eigen::Matrix3cd projected = factor * factor.adjoint();
    for (int i = 0; i < 3; ++i) {
      const double d = std::sqrt(std::max(projected(i, i).real(), 1e-300));
      projected.row(i) /= d;
      projected.col(i) /= d;
    }
    if (!cholesky(projected, l)) l = clamped_factor(projected);
  }

  EnvironmentVectors env;
  env.e_h = CVector::Zero(static_cast<Eigen::Index>(dim));
  env.e_v = env.e_h;
  env.e_psi = env.e_h;
  // e_i = conj(row i of L) so that <e_i|e_j> = (L L^dagger)_ij.
  env.e_h.head<3>() = l.row(0).conjugate().transpose();
  env.e_v.head<3>() = l.row(1).conjugate().transpose();
  env.e_psi.head<3>() = l.row(2).conjugate().transpose();
  for (CVector* v : {&env.e_h, &env.e_v, &env.e_psi}) v->normalize();
  return env;
}

EnvironmentVectors coherent_environment(std::size_t dim) {
  return embed(CoherenceTriple{1.0, 1.0, 1.0, 0.0}, dim);
}

QRoots solve_q_2d(double m_h, double m_v) {
  check_unit_interval(m_h, "m_H");
  check_unit_interval(m_v, "m_V");
  // 1 + m_H^2 m_V^2 - m_H^2 - m_V^2 factors as (1 - m_H^2)(1 - m_V^2) >= 0.
  const double disc = (1.0 - m_h * m_h) * (1.0 - m_v * m_v);
  assert(disc >= -kFeasibilityTol);
  const double root = std::sqrt(std::max(disc, 0.0));
  QRoots r;
  r.q_plus = m_h * m_v + root;
  r.q_minus = m_h * m_v - root;
  for (double q : {r.q_plus, r.q_minus}) {
    if (q >= -kFeasibilityTol && q <= 1.0 + kFeasibilityTol) {
      const double c = std::clamp(q, 0.0, 1.0);
      if (r.accepted.empty() || std::abs(r.accepted.front() - c) > kFeasibilityTol) {
        r.accepted.push_back(c);
      }
    } else {
      r.rejected.push_back(q);
    }
  }
  return r;
}

}  // namespace vistomo
