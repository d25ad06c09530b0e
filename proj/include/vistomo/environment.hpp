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

#ifndef VISTOMO_ENVIRONMENT_HPP
#define VISTOMO_ENVIRONMENT_HPP

// Environment model of the idler photon and of the second source.
//
// e_H and e_V are the environment states attached to the H and V idler
// modes, e_psi the one shared by both terms of the second source. Their
// overlaps form the coherence triple:
//   q      = <e_H|e_V>            (real, >= 0 by phase convention)
//   m_H    = |<e_H|e_psi>|
//   m_V    = |<e_V|e_psi>|
//   dphi   = arg<e_H|e_psi> - arg<e_V|e_psi>
// Only these overlaps are physical; the vectors are one representative.

#include <cstddef>
#include <vector>

#include "vistomo/quantumcore.hpp"

namespace vistomo {

inline constexpr double kFeasibilityTol = 1e-12;

struct CoherenceTriple {
  double q = 1.0;
  double m_h = 1.0;
  double m_v = 1.0;
  double delta_phi = 0.0;
};

struct Feasibility {
  double slack = 0.0;
  bool feasible = false;
};

/// Slack of 1 - (q^2 + m_H^2 + m_V^2) + 2 q m_H m_V cos(dphi) >= 0.
/// Throws InvalidArgument when a component is out of range.
Feasibility check_feasible(const CoherenceTriple& t);

struct EnvironmentVectors {
  CVector e_h;
  CVector e_v;
  CVector e_psi;

  std::size_t dim() const { return static_cast<std::size_t>(e_h.size()); }
  cplx g_h() const { return e_h.dot(e_psi); }  // <e_H|e_psi>
  cplx g_v() const { return e_v.dot(e_psi); }  // <e_V|e_psi>

  /// Overlap triple realized by the vectors.
  CoherenceTriple triple() const;

  /// Throws InvalidArgument unless the vectors are unit-norm with real q >= 0.
  void validate(double tol = kHermitianTol) const;
};

/// Explicit vectors reproducing `t` (Cholesky factor of the 3x3 Gram matrix,
/// zero-padded to `dim`). Throws InfeasibleEnvironment carrying the slack.
EnvironmentVectors embed(const CoherenceTriple& t, std::size_t dim = 3);

/// e_H = e_V = e_psi.
EnvironmentVectors coherent_environment(std::size_t dim = 3);

/// Roots q of the feasibility boundary at dphi = 0 (two-dimensional environment).
struct QRoots {
  double q_plus = 0.0;
  double q_minus = 0.0;
  std::vector<double> accepted;  // roots inside [0, 1], deduplicated
  std::vector<double> rejected;
};

QRoots solve_q_2d(double m_h, double m_v);

}  // namespace vistomo

#endif  // VISTOMO_ENVIRONMENT_HPP
