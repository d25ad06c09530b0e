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

#ifndef VISTOMO_SERIALIZE_HPP
#define VISTOMO_SERIALIZE_HPP

// JSON encodings of the result types. Doubles are written by nlohmann::json,
// which emits the shortest representation that parses back to the same value.
//
//   visibilities   {"H": .., "V": .., "D": .., "A": .., "L": .., "R": ..}
//   stokes         {"s0": .., "sx": .., "sy": .., "sz": ..}
//   ball           {"center": [x, y, z], "radius": .., "touch": {"alpha", "beta", "xi"} | null,
//                   "degenerate": bool}
//   ellipsoid      {"center": [..], "axis": [..], "semiaxes": [major, minor]}
//   density matrix [re00, im00, re01, im01, re10, im10, re11, im11]
//   reconstruction {"scenario", "density_matrix", "bloch", "q" (number | null),
//                   "q_indeterminate", "purity", "diagnostics": {name: value}}

#include <json.hpp>

#include "vistomo/environment.hpp"
#include "vistomo/fringes.hpp"
#include "vistomo/polarization.hpp"
#include "vistomo/reconstruct.hpp"
#include "vistomo/stokes.hpp"

namespace vistomo {

nlohmann::json encode(const Visibilities& v);
nlohmann::json encode(const VisibilityStokes& s);
nlohmann::json encode(const BlochVector& b);
nlohmann::json encode(const PolarizationState& p);
nlohmann::json encode(const ConsistencyBall& ball);
nlohmann::json encode(const VisibilityEllipsoid& e);
nlohmann::json encode(const BoundsReport& r);
nlohmann::json encode(const IdentityResiduals& r);
nlohmann::json encode(const DensityMatrix2& rho);
nlohmann::json encode(const Reconstruction& r);
nlohmann::json encode(const FringeFit& f);
nlohmann::json encode(const CoherenceTriple& t);

/// Accepts the bare six-key object or any object with a "visibilities" member
/// holding one. Throws InvalidArgument when a basis is missing.
Visibilities decode_visibilities(const nlohmann::json& j);
VisibilityStokes decode_stokes(const nlohmann::json& j);
DensityMatrix2 decode_density(const nlohmann::json& j);

}  // namespace vistomo

#endif  // VISTOMO_SERIALIZE_HPP
