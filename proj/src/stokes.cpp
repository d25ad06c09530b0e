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

#include "vistomo/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vistomo/errors.hpp"

namespace vistomo {

BlochVector standard_stokes(const DensityMatrix2& rho) {
  const auto& m = rho.entries();
  return {(pauli::x() * m).trace().real(), (pauli::y() * m).trace().real(),
          (pauli::z() * m).trace().real()};
}

DensityMatrix2 density_from_bloch(const BlochVector& r) {
  return DensityMatrix2::from_bloch(r.x, r.y, r.z);
}

namespace {

VisibilityStokes stokes_from(const Visibilities& v, double s0) {
  auto sq = [&](Basis b) { return v[b] * v[b]; };
  return {s0, sq(Basis::D) - sq(Basis::A), sq(Basis::L) - sq(Basis::R),
          sq(Basis::H) - sq(Basis::V)};
}

}  // namespace

StokesEstimate visibility_stokes(const Visibilities& v, const StokesOptions& options) {
  for (double x : v.values) {
    if (!(x >= 0.0 && x <= 1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "visibility " << x << " outside [0, 1]";
      throw InvalidArgument(msg.str());
    }
  }
  auto sq = [&](Basis b) { return v[b] * v[b]; };
  StokesEstimate out;
  out.basis_sums = {sq(Basis::H) + sq(Basis::V), sq(Basis::D) + sq(Basis::A),
                    sq(Basis::L) + sq(Basis::R)};
  const auto [lo, hi] = std::minmax_element(out.basis_sums.begin(), out.basis_sums.end());
  out.sum_rule_spread = *hi - *lo;
  if (out.sum_rule_spread > options.sum_rule_tolerance) {
    std::ostringstream msg;
    msg << "sum rule spread " << out.sum_rule_spread << " exceeds tolerance "
        << options.sum_rule_tolerance;
    throw InconsistentData(msg.str(), out.sum_rule_spread);
  }
  const double s0 = (out.basis_sums[0] + out.basis_sums[1] + out.basis_sums[2]) / 3.0;
  out.raw = stokes_from(v, s0);
  out.stokes = out.raw;
  if (options.transmission) {
    const double t = *options.transmission;
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("transmission must lie in (0, 1]");
    const double t2 = t * t;
    out.stokes = {out.raw.s0 / t2, out.raw.sx / t2, out.raw.sy / t2, out.raw.sz / t2};
  }
  return out;
}

double IdentityResiduals::max_abs() const {
  return std::max({std::abs(sum_squares), std::abs(sum_fourth_powers), std::abs(cross_products)});
}

IdentityResiduals identities_check(const Visibilities& v) {
  auto sq = [&](Basis b) { return v[b] * v[b]; };
  IdentityResiduals r;
  r.s0 = sq(Basis::H) + sq(Basis::V);
  double squares = 0.0;
  double fourth = 0.0;
  for (double x : v.values) {
    squares += x * x;
    fourth += x * x * x * x;
  }
  const double cross = sq(Basis::D) * sq(Basis::A) + sq(Basis::L) * sq(Basis::R) +
                       sq(Basis::H) * sq(Basis::V);
  r.sum_squares = squares - 3.0 * r.s0;
  r.sum_fourth_powers = fourth - 2.0 * r.s0 * r.s0;
  r.cross_products = cross - 0.5 * r.s0 * r.s0;
  return r;
}

bool ConsistencyBall::contains(const BlochVector& r, double tol) const {
  return (r.vec() - center.vec()).norm() <= radius + tol;
}

ConsistencyBall consistency_ball(const VisibilityStokes& vs) {
  ConsistencyBall ball;
  ball.center = BlochVector::from(vs.vec());
  ball.radius = 1.0 - vs.s0;
  if (vs.s0 <= 0.0) {
    ball.degenerate = true;
    ball.radius = 1.0;
    return ball;
  }
  ball.touch = normalized_stokes(vs);
  return ball;
}

double VisibilityEllipsoid::quadratic_form(const Eigen::Vector3d& s) const {
  const Eigen::Vector3d d = s - center;
  const double u = d.dot(axis);
  const double w = (d - u * axis).norm();
  const double axial = (u * u) / (major_semiaxis * major_semiaxis);
  if (minor_semiaxis == 0.0) {
    return w == 0.0 ? axial : std::numeric_limits<double>::infinity();
  }
  return axial + (w * w) / (minor_semiaxis * minor_semiaxis);
}

bool VisibilityEllipsoid::contains(const Eigen::Vector3d& s, double tol) const {
  if (minor_semiaxis <= tol) {
    // Degenerate ellipsoid: the segment from the origin to r.
    const Eigen::Vector3d d = s - center;
    const double u = d.dot(axis);
    const double w = (d - u * axis).norm();
    return w <= tol && (u * u) / (major_semiaxis * major_semiaxis) <= 1.0 + tol;
  }
  return quadratic_form(s) <= 1.0 + tol;
}

VisibilityEllipsoid visibility_ellipsoid(const BlochVector& r) {
  const Eigen::Vector3d v = r.vec();
  const double n = v.norm();
  if (n > 1.0 + kGeometryTol) throw InvalidArgument("Bloch vector outside the unit ball");
  VisibilityEllipsoid e;
  e.center = v / 2.0;
  if (n > 0.0) e.axis = v / n;
  e.major_semiaxis = 0.5;
  e.minor_semiaxis = std::sqrt(std::max(0.0, 1.0 - n * n)) / 2.0;
  return e;
}

BoundsReport bounds_check(const BlochVector& r, const VisibilityStokes& vs, double tol) {
  const Eigen::Vector3d rv = r.vec();
  const Eigen::Vector3d sv = vs.vec();
  BoundsReport rep;
  rep.purity = r.purity();
  rep.purity_upper = rv.dot(sv) + 1.0 - vs.s0;
  rep.purity_upper_ok = rep.purity <= rep.purity_upper + tol;
  if (vs.s0 >= 0.5) {
    rep.purity_lower = 1.0 - 2.0 * vs.s0 * (1.0 - vs.s0);
    rep.purity_lower_ok = rep.purity >= *rep.purity_lower - tol;
  } else {
    rep.purity_lower_ok = true;
  }
  rep.s0_upper = (1.0 + rv.norm()) / 2.0;
  rep.s0_upper_ok = vs.s0 <= rep.s0_upper + tol;
  rep.ball_distance = (sv - rv).norm();
  rep.ball_radius = 1.0 - vs.s0;
  rep.ball_ok = rep.ball_distance <= rep.ball_radius + tol;
  rep.ellipsoid_ok = visibility_ellipsoid(r).contains(sv, tol);
  return rep;
}

PolarizationState normalized_stokes(const VisibilityStokes& vs) {
  if (!(vs.s0 > 0.0)) throw InvalidArgument("normalized Stokes parameters need s0 > 0");
  PolarizationState s;
  s.alpha = std::sqrt(std::clamp((1.0 + vs.sz / vs.s0) / 2.0, 0.0, 1.0));
  s.beta = std::sqrt(std::max(0.0, 1.0 - s.alpha * s.alpha));
  s.xi = wrap_angle(std::atan2(vs.sy, vs.sx));
  return s;
}

}  // namespace vistomo
