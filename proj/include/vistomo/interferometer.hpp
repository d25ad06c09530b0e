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

#ifndef VISTOMO_INTERFEROMETER_HPP
#define VISTOMO_INTERFEROMETER_HPP

// State-vector model of the imbalanced two-source induced-coherence
// interferometer.
//
// Joint space: signal (path, pol) x idler (path, pol, env), dims
// {2, 2, 2, 2, d}. Signal path index 0/1 is a/b before the beam splitter and
// the lower/upper output port after it; the beam splitter is a Hadamard on the
// path qubit. Idler path index 0 is c (both sources), 1 is the loss path w.
//
//   |psi> = N [ T e^{i phi} BS|psi_S,a> |psi_I,c>
//             + sqrt(1-T^2) e^{i phi} BS|psi_S,a> |psi_I,w>
//             + P BS (|H_b H_c> + e^{i theta}|V_b V_c>)/sqrt2 |e_psi> ],
//   N = 1/sqrt(1+P^2).

#include <optional>

#include "vistomo/environment.hpp"
#include "vistomo/polarization.hpp"
#include "vistomo/quantumcore.hpp"

namespace vistomo {

/// Signal photon state delta|H> + epsilon e^{i zeta}|V>.
struct SignalPrep {
  double delta = 1.0 / 1.4142135623730951;
  double epsilon = 1.0 / 1.4142135623730951;
  double zeta = 0.0;

  Pol vector() const;
  void validate() const;

  static SignalPrep from_vector(const Pol& psi);
  /// State unbiased with respect to both k and its orthogonal partner.
  static SignalPrep unbiased_to(const Pol& k);
  /// Per-basis preparation: zeta = 0 for H/V and L/R, zeta = pi/2 for D/A.
  static SignalPrep for_basis(Basis b);
};

struct IdlerPrep {
  double alpha = 1.0;
  double beta = 0.0;
  double xi = 0.0;
  EnvironmentVectors env = coherent_environment();

  void validate() const;
  /// alpha|H>|e_H> + beta e^{i xi}|V>|e_V> on (pol, env).
  StateVector state() const;
};

struct SetupConfig {
  double pump_ratio = 1.0;    // P
  double transmission = 1.0;  // T
  double theta = 0.0;         // relative phase of the second source's crystals
  SignalPrep signal;
  IdlerPrep idler;

  void validate() const;
  double normalization() const;  // N
  Dims dims() const;
};

enum class Port { Lower = 0, Upper = 1 };

StateVector build_state(const SetupConfig& cfg, double phi);

/// <psi|Pi_k|psi> with Pi_k = |port><port| (x) |k><k| on the signal.
double detection_probability(const SetupConfig& cfg, const Pol& k, double phi,
                             Port port = Port::Upper);

/// Detection projector on the full joint space.
OperatorMatrix detection_projector(const SetupConfig& cfg, const Pol& k, Port port = Port::Upper);

struct InterferenceCoefficients {
  double c = 0.0;
  cplx z{0.0, 0.0};
};

/// c_k and z_k from inner products on the component states, so that
/// P(phi) = N^2 (c + 2 P T Re(e^{-i phi} z)).
InterferenceCoefficients coefficients(const SetupConfig& cfg, const Pol& k,
                                      Port port = Port::Upper);

inline constexpr double kDarkPortThreshold = 1e-14;

/// 2 P T |z| / c, or nullopt for a dark port.
std::optional<double> visibility(const InterferenceCoefficients& coeffs, double pump_ratio,
                                 double transmission);

/// Closed forms for a pure idler with arbitrary P, T, theta and signal state.
/// Throws InvalidArgument if the configured environment is not fully coherent.
OptionalVisibilities analytic_visibilities(const SetupConfig& cfg);

/// Closed forms for an arbitrary environment, each basis measured with an
/// unbiased signal state: V_k = 2 P T |<psi_I|k*>|e_psi>| / (1 + P^2).
/// cfg.signal is ignored.
Visibilities analytic_visibilities_mixed(const SetupConfig& cfg);

/// Reduced idler state on (path c/w, pol) after the signal is detected,
/// obtained by tracing signal and environment out of build_state.
OperatorMatrix post_measurement_state(const SetupConfig& cfg);

}  // namespace vistomo

#endif  // VISTOMO_INTERFEROMETER_HPP
