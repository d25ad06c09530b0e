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

#ifndef VISTOMO_FRINGES_HPP
#define VISTOMO_FRINGES_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vistomo/interferometer.hpp"

namespace vistomo {

/// `points` uniform phases on [0, 2*pi).
struct PhaseGrid {
  std::size_t points = 64;

  std::vector<double> phases() const;
};

/// Poisson shot noise: each value becomes Poisson(counts * p) / counts.
struct NoiseSpec {
  std::uint64_t counts = 1000000;
  std::uint64_t seed = 0;
};

struct FringeRecord {
  std::vector<double> phases;
  std::vector<double> values;
  std::optional<std::uint64_t> counts_per_point;
  std::string basis_label;
  std::string port_label = "upper";

  void validate() const;
};

struct FringeFit {
  double a = 0.0;  // cos coefficient
  double b = 0.0;  // sin coefficient
  double c = 0.0;  // offset
  double visibility = 0.0;
  double visibility_raw = 0.0;  // sqrt(a^2 + b^2) / c before clamping
  bool clamped = false;          // raw value left [0, 1 + 1e-9]
  double phase_offset = 0.0;     // omega with a = D sin(omega), b = D cos(omega)
  double residual_rms = 0.0;
};

inline constexpr std::size_t kMinFringePoints = 5;

FringeRecord sweep(const SetupConfig& cfg, const Pol& k, const PhaseGrid& grid = {},
                   const std::optional<NoiseSpec>& noise = std::nullopt,
                   std::string basis_label = {}, Port port = Port::Upper);

/// Linear least squares of values ~ a cos(phi) + b sin(phi) + c.
FringeFit fit(const FringeRecord& rec);

/// First-order standard error of fit.visibility on a uniform grid of `points`,
/// using the residual scatter as the noise estimate:
///   sigma_V^2 = s^2 (2 + V^2) / (n c^2),  s^2 = n rms^2 / (n - 3).
/// Assumes equal scatter at every phase. For shot noise the scatter follows
/// the fringe and the true error is smaller by sqrt((2 - V^2) / (2 + V^2)),
/// so this errs on the wide side.
double visibility_sigma(const FringeFit& fit, std::size_t points);

/// (max - min) / (max + min) of the recorded values. Meant for noiseless data.
double visibility_minmax(const FringeRecord& rec);

/// Max/min of the detection probability located on a `points` grid and then
/// refined by golden-section search; returns (max - min) / (max + min).
double dense_scan_visibility(const SetupConfig& cfg, const Pol& k, std::size_t points = 4096,
                             Port port = Port::Upper);

/// One six-basis measurement round: per basis, the unbiased signal prep
/// (SignalPrep::for_basis) is swapped into `cfg`, swept and fitted.
struct MeasurementRound {
  std::array<FringeRecord, 6> records;
  std::array<FringeFit, 6> fits;
  Visibilities visibilities;
};

/// Noise seeds are derived per basis from `noise->seed`.
MeasurementRound measure(const SetupConfig& cfg, const PhaseGrid& grid = {},
                         const std::optional<NoiseSpec>& noise = std::nullopt);

// CSV with header `phase,value,basis,port`, LF line endings, 17 significant digits.
void write_csv(std::ostream& out, const FringeRecord& rec);
/// Records grouped by (basis, port) in order of first appearance.
std::vector<FringeRecord> read_csv(std::istream& in);

}  // namespace vistomo

#endif  // VISTOMO_FRINGES_HPP
