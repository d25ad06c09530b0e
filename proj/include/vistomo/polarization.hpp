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

#ifndef VISTOMO_POLARIZATION_HPP
#define VISTOMO_POLARIZATION_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace vistomo {

/// Polarization qubit in (H, V) components.
using Pol = Eigen::Vector2cd;

/// The six Pauli eigenstates, in the order used by every six-tuple here.
enum class Basis { H = 0, V = 1, D = 2, A = 3, L = 4, R = 5 };

inline constexpr std::array<Basis, 6> kAllBases = {Basis::H, Basis::V, Basis::D,
                                                   Basis::A, Basis::L, Basis::R};

// Handedness: L = (H - iV)/sqrt2, R = (H + iV)/sqrt2. With the standard
// sigma_y this makes the measured L/R visibilities and the Bloch y
// coordinate agree in sign, since a signal measurement of |k> reads out the
// idler along |k*>.
Pol basis_state(Basis b);
Basis orthogonal(Basis b);
std::string_view basis_name(Basis b);
std::optional<Basis> parse_basis(std::string_view name);

/// Orthonormal partner of a unit vector (second column of a unitary with k first).
Pol orthogonal_state(const Pol& k);

/// Pure qubit alpha|H> + beta e^{i xi}|V> with alpha, beta >= 0.
struct PolarizationState {
  double alpha = 1.0;
  double beta = 0.0;
  double xi = 0.0;

  Pol vector() const;
  static PolarizationState from_vector(const Pol& psi);
};

/// One visibility per basis state, indexed by `Basis`.
struct Visibilities {
  std::array<double, 6> values{};

  double& operator[](Basis b) { return values[static_cast<std::size_t>(b)]; }
  double operator[](Basis b) const { return values[static_cast<std::size_t>(b)]; }
};

/// Analytic visibilities: nullopt marks a dark port.
using OptionalVisibilities = std::array<std::optional<double>, 6>;

/// Wrap an angle into [0, 2*pi).
double wrap_angle(double angle);

}  // namespace vistomo

#endif  // VISTOMO_POLARIZATION_HPP
