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

#include "vistomo/serialize.hpp"

#include <string>

#include "vistomo/errors.hpp"

namespace vistomo {

using nlohmann::json;

namespace {

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

double get_number(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw InvalidArgument(std::string("expected a number at key '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

json encode(const Visibilities& v) {
  json out = json::object();
  for (auto b : kAllBases) out[std::string(basis_name(b))] = v[b];
  return out;
}

json encode(const VisibilityStokes& s) {
  return {{"s0", s.s0}, {"sx", s.sx}, {"sy", s.sy}, {"sz", s.sz}};
}

json encode(const BlochVector& b) { return vec3(b.vec()); }

json encode(const PolarizationState& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"xi", p.xi}};
}

json encode(const ConsistencyBall& ball) {
  json out = {{"center", encode(ball.center)},
              {"radius", ball.radius},
              {"degenerate", ball.degenerate}};
  out["touch"] = ball.touch ? encode(*ball.touch) : json(nullptr);
  return out;
}

json encode(const VisibilityEllipsoid& e) {
  return {{"center", vec3(e.center)},
          {"axis", vec3(e.axis)},
          {"semiaxes", json::array({e.major_semiaxis, e.minor_semiaxis})}};
}

json encode(const BoundsReport& r) {
  json out = {{"purity", r.purity},
              {"purity_upper", r.purity_upper},
              {"s0_upper", r.s0_upper},
              {"ball_distance", r.ball_distance},
              {"ball_radius", r.ball_radius},
              {"purity_upper_ok", r.purity_upper_ok},
              {"purity_lower_ok", r.purity_lower_ok},
              {"s0_upper_ok", r.s0_upper_ok},
              {"ball_ok", r.ball_ok},
              {"ellipsoid_ok", r.ellipsoid_ok}};
  out["purity_lower"] = r.purity_lower ? json(*r.purity_lower) : json(nullptr);
  return out;
}

json encode(const IdentityResiduals& r) {
  return {{"s0", r.s0},
          {"sum_squares", r.sum_squares},
          {"sum_fourth_powers", r.sum_fourth_powers},
          {"cross_products", r.cross_products},
          {"max_abs", r.max_abs()}};
}

json encode(const DensityMatrix2& rho) {
  json out = json::array();
  const auto& m = rho.entries();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.push_back(m(i, j).real());
      out.push_back(m(i, j).imag());
    }
  }
  return out;
}

json encode(const Reconstruction& r) {
  json diag = json::object();
  for (const auto& [name, value] : r.diagnostics) diag[name] = value;
  json out = {{"scenario", std::string(scenario_name(r.scenario))},
              {"density_matrix", encode(r.rho)},
              {"bloch", encode(r.bloch)},
              {"q_indeterminate", r.q_indeterminate},
              {"purity", r.rho.purity()},
              {"diagnostics", diag}};
  out["q"] = r.q ? json(*r.q) : json(nullptr);
  return out;
}

json encode(const FringeFit& f) {
  return {{"a", f.a},
          {"b", f.b},
          {"c", f.c},
          {"visibility", f.visibility},
          {"visibility_raw", f.visibility_raw},
          {"clamped", f.clamped},
          {"phase_offset", f.phase_offset},
          {"residual_rms", f.residual_rms}};
}

json encode(const CoherenceTriple& t) {
  return {{"q", t.q}, {"m_h", t.m_h}, {"m_v", t.m_v}, {"delta_phi", t.delta_phi}};
}

Visibilities decode_visibilities(const json& j) {
  const json& src = (j.is_object() && j.contains("visibilities")) ? j.at("visibilities") : j;
  Visibilities v;
  for (auto b : kAllBases) {
    const std::string key(basis_name(b));
    v[b] = get_number(src, key.c_str());
  }
  return v;
}

VisibilityStokes decode_stokes(const json& j) {
  const json& src = (j.is_object() && j.contains("stokes")) ? j.at("stokes") : j;
  return {get_number(src, "s0"), get_number(src, "sx"), get_number(src, "sy"),
          get_number(src, "sz")};
}

DensityMatrix2 decode_density(const json& j) {
  if (!j.is_array() || j.size() != 8) throw InvalidArgument("density matrix needs 8 reals");
  Eigen::Matrix2cd m;
  for (int k = 0; k < 4; ++k) {
    if (!j[2 * k].is_number() || !j[2 * k + 1].is_number()) {
      throw InvalidArgument("density matrix entries must be numbers");
    }
    m(k / 2, k % 2) = cplx(j[2 * k].get<double>(), j[2 * k + 1].get<double>());
  }
  return DensityMatrix2(m);
}

}  // namespace vistomo
