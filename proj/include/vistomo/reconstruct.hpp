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

#ifndef VISTOMO_RECONSTRUCT_HPP
#define VISTOMO_RECONSTRUCT_HPP

// Idler state reconstruction from visibility Stokes parameters. The data
// cannot tell the coherence scenarios apart, so the caller always names one.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vistomo/quantumcore.hpp"
#include "vistomo/stokes.hpp"

namespace vistomo {

enum class Scenario { PureCoherent, HvAsymmetric, SymmetricCoupling, UnknownEnvironment };

std::string_view scenario_name(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);

/// Which polarization mode is untouched by the environment (m = 1).
enum class CoherentMode { H, V };

inline constexpr double kScenarioTol = 1e-6;
inline constexpr double kBallTol = 1e-9;

struct Reconstruction {
  Scenario scenario;
  DensityMatrix2 rho;
  BlochVector bloch;
  std::optional<double> q;    // absent when not part of the scenario or indeterminate
  bool q_indeterminate = false;
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// Bloch vector (sx, sy, sz) / |S|. Requires |s0 - 1| <= tol.
Reconstruction reconstruct_pure(const VisibilityStokes& vs, double tol = kScenarioTol);

/// One mode coherent with the second source (m_H = 1 or m_V = 1), which forces
/// q = m_V (resp. m_H) and dphi = 0. For H: z = sz + s0 - 1 and
/// q = sqrt(s0 - alpha^2) / beta.
Reconstruction reconstruct_hv_asymmetric(const VisibilityStokes& vs, CoherentMode which,
                                         double tol = kScenarioTol);

/// e_psi proportional to e_H + e_V: q = 2 s0 - 1 and r = (q / s0) S.
Reconstruction reconstruct_symmetric(const VisibilityStokes& vs, double tol = kScenarioTol);

/// Samples states compatible with `vs` under an unknown environment.
/// Each candidate's environment is re-embedded and forward-simulated; only
/// candidates reproducing vs within `tol` are returned.
std::vector<DensityMatrix2> enumerate_consistent_states(const VisibilityStokes& vs,
                                                        std::size_t samples, std::uint64_t seed,
                                                        double tol = 1e-9);

}  // namespace vistomo

#endif  // VISTOMO_RECONSTRUCT_HPP
