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

#include "vistomo/polarization.hpp"

#include <cmath>
#include <numbers>

#include "vistomo/errors.hpp"

namespace vistomo {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

Pol basis_state(Basis b) {
  using c = std::complex<double>;
  switch (b) {
    case Basis::H: return Pol(1.0, 0.0);
    case Basis::V: return Pol(0.0, 1.0);
    case Basis::D: return Pol(kInvSqrt2, kInvSqrt2);
    case Basis::A: return Pol(kInvSqrt2, -kInvSqrt2);
    case Basis::L: return Pol(kInvSqrt2, c(0.0, -kInvSqrt2));
    case Basis::R: return Pol(kInvSqrt2, c(0.0, kInvSqrt2));
  }
  throw InvalidArgument("unknown basis");
}

Basis orthogonal(Basis b) {
  switch (b) {
    case Basis::H: return Basis::V;
    case Basis::V: return Basis::H;
    case Basis::D: return Basis::A;
    case Basis::A: return Basis::D;
    case Basis::L: return Basis::R;
    case Basis::R: return Basis::L;
  }
  throw InvalidArgument("unknown basis");
}

std::string_view basis_name(Basis b) {
  static constexpr std::array<std::string_view, 6> names = {"H", "V", "D", "A", "L", "R"};
  return names[static_cast<std::size_t>(b)];
}

std::optional<Basis> parse_basis(std::string_view name) {
  for (auto b : kAllBases) {
    if (basis_name(b) == name) return b;
  }
  return std::nullopt;
}

Pol orthogonal_state(const Pol& k) {
  // (a, b) -> (-b*, a*) is orthogonal to (a, b) and has the same norm.
  return Pol(-std::conj(k(1)), std::conj(k(0)));
}

Pol PolarizationState::vector() const {
  return Pol(alpha, beta * std::polar(1.0, xi));
}

PolarizationState PolarizationState::from_vector(const Pol& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidArgument("zero polarization vector");
  const Pol u = psi / n;
  PolarizationState s;
  s.alpha = std::abs(u(0));
  s.beta = std::abs(u(1));
  s.xi = (s.alpha > 0.0 && s.beta > 0.0) ? wrap_angle(std::arg(u(1)) - std::arg(u(0))) : 0.0;
  return s;
}

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(angle, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace vistomo
