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

#ifndef VISTOMO_STOKES_HPP
#define VISTOMO_STOKES_HPP

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "vistomo/polarization.hpp"
#include "vistomo/quantumcore.hpp"

namespace vistomo {

inline constexpr double kGeometryTol = 1e-10;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  double norm() const { return vec().norm(); }
  double purity() const { return 0.5 * (1.0 + vec().squaredNorm()); }
  static BlochVector from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Visibility Stokes parameters (S0, Sx, Sy, Sz).
struct VisibilityStokes {
  double s0 = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  Eigen::Vector3d vec() const { return {sx, sy, sz}; }
  /// sx^2 + sy^2 + sz^2 - s0^2; zero for data from one physical experiment.
  double norm_defect() const { return vec().squaredNorm() - s0 * s0; }
};

BlochVector standard_stokes(const DensityMatrix2& rho);
DensityMatrix2 density_from_bloch(const BlochVector& r);

struct StokesOptions {
  /// Largest allowed spread of the three per-basis sums V_k^2 + V_k'^2.
  double sum_rule_tolerance = 1e-6;
  /// Independently measured transmission; divided out of the visibilities.
  std::optional<double> transmission;
};

struct StokesEstimate {
  VisibilityStokes stokes;  // T-corrected when a transmission was supplied
  VisibilityStokes raw;
  std::array<double, 3> basis_sums{};  // H/V, D/A, L/R
  double sum_rule_spread = 0.0;        // max - min of basis_sums (raw)
};

/// Throws InvalidArgument for visibilities outside [0, 1 + 1e-9] and
/// InconsistentData when the sum-rule spread exceeds the tolerance.
StokesEstimate visibility_stokes(const Visibilities& v, const StokesOptions& options = {});

/// Residuals of the six-visibility identities, with S0 = V_H^2 + V_V^2:
///   sum V^2 - 3 S0,  sum V^4 - 2 S0^2,  V_D^2 V_A^2 + V_L^2 V_R^2 + V_H^2 V_V^2 - S0^2/2.
struct IdentityResiduals {
  double s0 = 0.0;
  double sum_squares = 0.0;
  double sum_fourth_powers = 0.0;
  double cross_products = 0.0;

  double max_abs() const;
};

IdentityResiduals identities_check(const Visibilities& v);

/// Bloch vectors consistent with a visibility Stokes vector.
struct ConsistencyBall {
  BlochVector center;
  double radius = 1.0;
  /// Pure state where the ball touches the Bloch sphere; absent when degenerate.
  std::optional<PolarizationState> touch;
  bool degenerate = false;  // s0 == 0: the whole Bloch ball

  bool contains(const BlochVector& r, double tol = kGeometryTol) const;
};

ConsistencyBall consistency_ball(const VisibilityStokes& vs);

/// Visibility vectors consistent with one Bloch vector r: rotational ellipsoid
/// with foci 0 and r, major semiaxis 1/2 along r, minor sqrt(1 - r^2)/2.
struct VisibilityEllipsoid {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // arbitrary when r = 0
  double major_semiaxis = 0.5;
  double minor_semiaxis = 0.5;

  /// (u/a)^2 + (w/b)^2 for the axial/transverse offsets from the center.
  double quadratic_form(const Eigen::Vector3d& s) const;
  bool contains(const Eigen::Vector3d& s, double tol = kGeometryTol) const;
  bool degenerate() const { return minor_semiaxis == 0.0; }
};

VisibilityEllipsoid visibility_ellipsoid(const BlochVector& r);

struct BoundsReport {
  double purity = 0.0;
  double purity_upper = 0.0;                // (r . S) + 1 - S0
  std::optional<double> purity_lower;       // 1 - 2 S0 (1 - S0), S0 >= 1/2 only
  double s0_upper = 0.0;                    // (1 + r) / 2
  double ball_distance = 0.0;               // |S - r|
  double ball_radius = 0.0;                 // 1 - S0
  bool purity_upper_ok = false;
  bool purity_lower_ok = false;
  bool s0_upper_ok = false;
  bool ball_ok = false;
  bool ellipsoid_ok = false;

  bool all_ok() const {
    return purity_upper_ok && purity_lower_ok && s0_upper_ok && ball_ok && ellipsoid_ok;
  }
};

BoundsReport bounds_check(const BlochVector& r, const VisibilityStokes& vs,
                          double tol = kGeometryTol);

/// Pure state whose ordinary Stokes parameters equal vs / s0. xi in [0, 2 pi).
PolarizationState normalized_stokes(const VisibilityStokes& vs);

}  // namespace vistomo

#endif  // VISTOMO_STOKES_HPP
