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

#include "vistomo/operators.hpp"

#include <cmath>

#include "vistomo/errors.hpp"

namespace vistomo {

Pol conjugate_basis_state(const Pol& k) {
  if (std::abs(k.norm() - 1.0) > 1e-12) throw InvalidArgument("basis state must be normalized");
  return k.conjugate();
}

VisibilityOperator visibility_operator(const Pol& k, const EnvironmentVectors& env,
                                       double transmission) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw InvalidArgument("transmission must lie in [0, 1]");
  }
  env.validate();
  const Pol kc = conjugate_basis_state(k);
  const OperatorMatrix pol(kc * kc.adjoint(), {2});
  const OperatorMatrix psi(env.e_psi * env.e_psi.adjoint(), {env.dim()});
  const OperatorMatrix joint = tensor(pol, psi);
  return {OperatorMatrix(transmission * transmission * joint.entries(), joint.dims()), k,
          transmission};
}

OperatorMatrix StokesOperators::incoherent() const {
  const auto n = static_cast<Eigen::Index>(s0.size());
  return OperatorMatrix(CMatrix::Identity(n, n) - s0.entries(), s0.dims());
}

StokesOperators stokes_operators(const EnvironmentVectors& env, double transmission) {
  auto op = [&](Basis b) { return visibility_operator(basis_state(b), env, transmission).matrix.entries(); };
  const Dims dims{2, env.dim()};
  return {OperatorMatrix(op(Basis::H) + op(Basis::V), dims),
          OperatorMatrix(op(Basis::D) - op(Basis::A), dims),
          OperatorMatrix(op(Basis::L) - op(Basis::R), dims),
          OperatorMatrix(op(Basis::H) - op(Basis::V), dims)};
}

}  // namespace vistomo
