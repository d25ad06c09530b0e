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

#ifndef VISTOMO_OPERATORS_HPP
#define VISTOMO_OPERATORS_HPP

// Visibility operators on idler (pol) x environment. Squared visibilities
// and visibility Stokes parameters are their expectation values in the idler
// state alpha|H>|e_H> + beta e^{i xi}|V>|e_V>.

#include "vistomo/environment.hpp"
#include "vistomo/polarization.hpp"
#include "vistomo/quantumcore.hpp"

namespace vistomo {

/// If k = U|H>, returns U*|H>: the componentwise complex conjugate.
Pol conjugate_basis_state(const Pol& k);

struct VisibilityOperator {
  OperatorMatrix matrix;
  Pol label;
  double transmission;
};

/// T^2 |k*><k*| (x) |e_psi><e_psi|.
VisibilityOperator visibility_operator(const Pol& k, const EnvironmentVectors& env, double transmission);

struct StokesOperators {
  OperatorMatrix s0;
  OperatorMatrix sx;
  OperatorMatrix sy;
  OperatorMatrix sz;

  /// 1 - S0: completes {V_k, V_k_perp} to a resolution of the identity.
  OperatorMatrix incoherent() const;
};

StokesOperators stokes_operators(const EnvironmentVectors& env, double transmission);

}  // namespace vistomo

#endif  // VISTOMO_OPERATORS_HPP
