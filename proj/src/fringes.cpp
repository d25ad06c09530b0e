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

#include "vistomo/fringes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "vistomo/errors.hpp"

namespace vistomo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kVisibilityCeiling = 1.0 + 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Golden-section search for the maximum of f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InvalidArgument("fringe CSV line " + std::to_string(line) + ": bad number '" +
                          std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> PhaseGrid::phases() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
  }
  return out;
}

void FringeRecord::validate() const {
  if (phases.size() != values.size()) throw InvalidArgument("fringe phases/values length mismatch");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("fringe values must be finite and >= 0");
  }
  for (double p : phases) {
    if (!std::isfinite(p)) throw InvalidArgument("fringe phases must be finite");
  }
}

FringeRecord sweep(const SetupConfig& cfg, const Pol& k, const PhaseGrid& grid,
                   const std::optional<NoiseSpec>& noise, std::string basis_label, Port port) {
  if (grid.points < kMinFringePoints) {
    throw InvalidArgument("phase grid needs at least 5 points");
  }
  FringeRecord rec;
  rec.phases = grid.phases();
  rec.values.reserve(grid.points);
  for (double phi : rec.phases) rec.values.push_back(detection_probability(cfg, k, phi, port));
  rec.basis_label = std::move(basis_label);
  rec.port_label = port == Port::Upper ? "upper" : "lower";
  if (noise) {
    if (noise->counts == 0) throw InvalidArgument("noise counts must be positive");
    std::mt19937_64 rng(noise->seed);
    const double n = static_cast<double>(noise->counts);
    for (double& v : rec.values) {
      const double mean = n * v;
      if (mean <= 0.0) {
        v = 0.0;
        continue;
      }
      std::poisson_distribution<std::uint64_t> poisson(mean);
      v = static_cast<double>(poisson(rng)) / n;
    }
    rec.counts_per_point = noise->counts;
  }
  return rec;
}

FringeFit fit(const FringeRecord& rec) {
  rec.validate();
  const std::size_t n = rec.values.size();
  if (n < kMinFringePoints) throw InvalidArgument("fit needs at least 5 points");

  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d row(std::cos(rec.phases[i]), std::sin(rec.phases[i]), 1.0);
    normal += row * row.transpose();
    rhs += rec.values[i] * row;
  }
  const double scale = static_cast<double>(n);
  if (std::abs(normal.determinant()) / (scale * scale * scale) < 1e-10) {
    throw SingularFit("degenerate phase grid: cos, sin and offset are not independent");
  }
  const Eigen::Vector3d coef = normal.ldlt().solve(rhs);

  FringeFit out;
  out.a = coef(0);
  out.b = coef(1);
  out.c = coef(2);
  if (out.c <= 1e-14) throw DarkPort("fringe offset is zero (dark port)");
  const double amplitude = std::hypot(out.a, out.b);
  out.visibility_raw = amplitude / out.c;
  out.clamped = out.visibility_raw > kVisibilityCeiling;
  out.visibility = std::clamp(out.visibility_raw, 0.0, kVisibilityCeiling);
  out.phase_offset = std::atan2(out.a, out.b);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double model =
        out.a * std::cos(rec.phases[i]) + out.b * std::sin(rec.phases[i]) + out.c;
    sq += (rec.values[i] - model) * (rec.values[i] - model);
  }
  out.residual_rms = std::sqrt(sq / scale);
  return out;
}

double visibility_sigma(const FringeFit& f, std::size_t points) {
  if (points <= 3) throw InvalidArgument("need more than 3 points for a noise estimate");
  const double n = static_cast<double>(points);
  const double s2 = n * f.residual_rms * f.residual_rms / (n - 3.0);
  return std::sqrt(s2 * (2.0 + f.visibility * f.visibility) / n) / f.c;
}

double visibility_minmax(const FringeRecord& rec) {
  rec.validate();
  if (rec.values.empty()) throw InvalidArgument("empty fringe record");
  const auto [lo, hi] = std::minmax_element(rec.values.begin(), rec.values.end());
  if (*hi + *lo <= 0.0) throw DarkPort("fringe is identically zero (dark port)");
  return (*hi - *lo) / (*hi + *lo);
}

double dense_scan_visibility(const SetupConfig& cfg, const Pol& k, std::size_t points, Port port) {
  if (points < kMinFringePoints) throw InvalidArgument("dense scan needs at least 5 points");
  const PhaseGrid grid{points};
  const auto phases = grid.phases();
  std::vector<double> values;
  values.reserve(points);
  for (double phi : phases) values.push_back(detection_probability(cfg, k, phi, port));
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double h = kTwoPi / static_cast<double>(points);

  const double phi_max = phases[static_cast<std::size_t>(hi_it - values.begin())];
  const double phi_min = phases[static_cast<std::size_t>(lo_it - values.begin())];
  const double max = std::max(
      *hi_it, golden_max([&](double x) { return detection_probability(cfg, k, x, port); },
                         phi_max - h, phi_max + h));
  const double min = std::min(
      *lo_it, -golden_max([&](double x) { return -detection_probability(cfg, k, x, port); },
                          phi_min - h, phi_min + h));
  if (max + min <= 0.0) throw DarkPort("detection probability is identically zero");
  return (max - min) / (max + min);
}

MeasurementRound measure(const SetupConfig& cfg, const PhaseGrid& grid,
                         const std::optional<NoiseSpec>& noise) {
  MeasurementRound round;
  for (auto b : kAllBases) {
    const auto i = static_cast<std::size_t>(b);
    SetupConfig c = cfg;
    c.signal = SignalPrep::for_basis(b);
    std::optional<NoiseSpec> basis_noise;
    if (noise) basis_noise = NoiseSpec{noise->counts, splitmix64(noise->seed * 8 + i)};
    round.records[i] = sweep(c, basis_state(b), grid, basis_noise, std::string(basis_name(b)));
    round.fits[i] = fit(round.records[i]);
    round.visibilities[b] = round.fits[i].visibility;
  }
  return round;
}

void write_csv(std::ostream& out, const FringeRecord& rec) {
  rec.validate();
  out << "phase,value,basis,port\n";
  for (std::size_t i = 0; i < rec.values.size(); ++i) {
    out << format_double(rec.phases[i]) << ',' << format_double(rec.values[i]) << ','
        << rec.basis_label << ',' << rec.port_label << '\n';
  }
}

std::vector<FringeRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("fringe CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "phase,value,basis,port") {
    throw InvalidArgument("fringe CSV header must be 'phase,value,basis,port'");
  }
  std::vector<FringeRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 4) {
      throw InvalidArgument("fringe CSV line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const double phase = parse_double(fields[0], line_no);
    const double value = parse_double(fields[1], line_no);
    auto it = std::find_if(records.begin(), records.end(), [&](const FringeRecord& r) {
      return r.basis_label == fields[2] && r.port_label == fields[3];
    });
    if (it == records.end()) {
      FringeRecord r;
      r.basis_label = std::string(fields[2]);
      r.port_label = std::string(fields[3]);
      records.push_back(std::move(r));
      it = std::prev(records.end());
    }
    it->phases.push_back(phase);
    it->values.push_back(value);
  }
  for (const auto& r : records) r.validate();
  return records;
}

}  // namespace vistomo
