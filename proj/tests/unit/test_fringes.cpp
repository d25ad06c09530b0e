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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "vistomo/environment.hpp"
#include "vistomo/errors.hpp"
#include "vistomo/fringes.hpp"

namespace vistomo {
namespace {

constexpr double kPi = std::numbers::pi;

SetupConfig reference(double alpha, double xi = 0.0) {
  SetupConfig cfg;
  cfg.idler.alpha = alpha;
  cfg.idler.beta = std::sqrt(1.0 - alpha * alpha);
  cfg.idler.xi = xi;
  return cfg;
}

FringeRecord synthetic(double a, double b, double c, std::size_t n = 64) {
  FringeRecord rec;
  rec.phases = PhaseGrid{n}.phases();
  for (double phi : rec.phases) rec.values.push_back(a * std::cos(phi) + b * std::sin(phi) + c);
  rec.basis_label = "H";
  return rec;
}

TEST(Grid, UniformOnCircle) {
  const auto ph = PhaseGrid{8}.phases();
  ASSERT_EQ(ph.size(), 8u);
  EXPECT_EQ(ph[0], 0.0);
  EXPECT_NEAR(ph[7], 7 * kPi / 4, 1e-15);
}

TEST(Sweep, NoiselessExtremes) {
  const auto rec = sweep(reference(1.0), basis_state(Basis::H));
  ASSERT_EQ(rec.values.size(), 64u);
  EXPECT_NEAR(*std::max_element(rec.values.begin(), rec.values.end()), 0.5, 1e-12);
  EXPECT_NEAR(*std::min_element(rec.values.begin(), rec.values.end()), 0.0, 1e-12);
  EXPECT_FALSE(rec.counts_per_point.has_value());
}

TEST(Sweep, ShotNoiseWithinFiveSigma) {
  const auto cfg = reference(0.6, 0.3);
  const auto clean = sweep(cfg, basis_state(Basis::D));
  const auto noisy = sweep(cfg, basis_state(Basis::D), {}, NoiseSpec{1000000, 42});
  ASSERT_EQ(noisy.counts_per_point, std::optional<std::uint64_t>(1000000));
  for (std::size_t i = 0; i < clean.values.size(); ++i) {
    const double sigma = std::sqrt(clean.values[i] / 1e6);
    EXPECT_LE(std::abs(noisy.values[i] - clean.values[i]), 5 * sigma + 1e-15);
  }
}

TEST(Sweep, DeterministicForSeed) {
  const auto cfg = reference(0.6, 0.3);
  const auto a = sweep(cfg, basis_state(Basis::L), {}, NoiseSpec{1000, 7});
  const auto b = sweep(cfg, basis_state(Basis::L), {}, NoiseSpec{1000, 7});
  const auto c = sweep(cfg, basis_state(Basis::L), {}, NoiseSpec{1000, 8});
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
}

TEST(Sweep, ZeroTransmissionConstant) {
  SetupConfig cfg = reference(0.6);
  cfg.transmission = 0.0;
  const auto rec = sweep(cfg, basis_state(Basis::H));
  for (double v : rec.values) EXPECT_NEAR(v, rec.values[0], 1e-15);
  EXPECT_NEAR(fit(rec).visibility, 0.0, 1e-12);
}

TEST(Sweep, RejectsShortGrid) {
  EXPECT_THROW(sweep(reference(0.6), basis_state(Basis::H), PhaseGrid{4}), InvalidArgument);
}

TEST(Fit, ExactModel) {
  const auto f = fit(synthetic(0.25, 0.0, 0.25));
  EXPECT_NEAR(f.a, 0.25, 1e-15);
  EXPECT_NEAR(f.b, 0.0, 1e-15);
  EXPECT_NEAR(f.c, 0.25, 1e-15);
  EXPECT_NEAR(f.visibility, 1.0, 1e-12);
  EXPECT_NEAR(f.residual_rms, 0.0, 1e-15);
  // a = D sin(omega), b = D cos(omega)
  EXPECT_NEAR(f.phase_offset, kPi / 2, 1e-12);
}

TEST(Fit, ConstantHasZeroVisibility) {
  EXPECT_NEAR(fit(synthetic(0, 0, 0.3)).visibility, 0.0, 1e-15);
}

TEST(Fit, VisibilityIsAmplitudeOverOffset) {
  oracle::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-0.2, 0.2), b = rng.uniform(-0.2, 0.2), c = rng.uniform(0.3, 1.0);
    const auto f = fit(synthetic(a, b, c, 37));  // non power of two grid
    EXPECT_NEAR(f.visibility, std::hypot(f.a, f.b) / f.c, 1e-12);
    EXPECT_NEAR(f.visibility, std::hypot(a, b) / c, 1e-12);
  }
}

TEST(Fit, ReferenceVerticalVisibility) {
  EXPECT_NEAR(fit(sweep(reference(0.6), basis_state(Basis::V))).visibility, 0.8, 1e-9);
}

TEST(Fit, Errors) {
  FringeRecord same;
  same.phases.assign(8, 0.3);
  same.values.assign(8, 0.2);
  EXPECT_THROW(fit(same), SingularFit);
  EXPECT_THROW(fit(synthetic(0, 0, 0)), DarkPort);
  EXPECT_THROW(fit(synthetic(0.1, 0, 0.2, 4)), InvalidArgument);
  FringeRecord neg = synthetic(0, 0, 0.2);
  neg.values[3] = -0.1;
  EXPECT_THROW(fit(neg), InvalidArgument);
}

TEST(Fit, ClampsAndReports) {
  // Half-wave rectified cosine: first harmonic 1/2 over offset 1/pi.
  FringeRecord rec = synthetic(0, 0, 0);
  for (std::size_t i = 0; i < rec.phases.size(); ++i) rec.values[i] = std::max(0.0, std::cos(rec.phases[i]));
  const auto f = fit(rec);
  EXPECT_NEAR(f.visibility_raw, kPi / 2, 1e-2);
  EXPECT_TRUE(f.clamped);
  EXPECT_GT(f.visibility_raw, 1.0);
  EXPECT_LE(f.visibility, 1.0 + 1e-9);
}

TEST(Fit, CyclicGridRotationInvariant) {
  oracle::Rng rng(2);
  SetupConfig cfg = reference(0.7, 1.1);
  cfg.idler.env = embed({0.4, 0.8, 0.6, 0.5});
  const auto rec = sweep(cfg, basis_state(Basis::D), {}, NoiseSpec{100000, 3});
  const auto base = fit(rec);
  for (std::size_t shift : {1u, 5u, 31u}) {
    FringeRecord rot = rec;
    std::rotate(rot.phases.begin(), rot.phases.begin() + shift, rot.phases.end());
    std::rotate(rot.values.begin(), rot.values.begin() + shift, rot.values.end());
    const auto f = fit(rot);
    EXPECT_NEAR(f.a, base.a, 1e-12);
    EXPECT_NEAR(f.b, base.b, 1e-12);
    EXPECT_NEAR(f.c, base.c, 1e-12);
    EXPECT_NEAR(f.visibility, base.visibility, 1e-12);
  }
}

TEST(Fit, ExactOnNoiselessRandomConfigs) {
  oracle::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    SetupConfig cfg;
    const auto p = oracle::random_pure(rng);
    cfg.idler.alpha = p.alpha;
    cfg.idler.beta = p.beta;
    cfg.idler.xi = p.xi;
    const auto t = oracle::random_feasible(rng);
    cfg.idler.env = embed({t.q, t.m_h, t.m_v, t.dphi});
    cfg.transmission = rng.uniform(0.2, 1.0);
    const auto round = measure(cfg);
    const auto expect = analytic_visibilities_mixed(cfg);
    for (auto b : kAllBases) EXPECT_NEAR(round.visibilities[b], expect[b], 1e-9);
  }
}

TEST(Fit, NoisyEstimatorConsistency) {
  oracle::Rng rng(4);
  int good = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    SetupConfig cfg;
    const auto p = oracle::random_pure(rng);
    cfg.idler.alpha = p.alpha;
    cfg.idler.beta = p.beta;
    cfg.idler.xi = p.xi;
    const Basis b = kAllBases[static_cast<std::size_t>(i % 6)];
    cfg.signal = SignalPrep::for_basis(b);
    const auto f = fit(sweep(cfg, basis_state(b), {}, NoiseSpec{1000000, 1000u + i}));
    const double expect = analytic_visibilities_mixed(cfg)[b];
    if (std::abs(f.visibility - expect) < 5e-3) ++good;
  }
  EXPECT_GE(good, trials * 99 / 100);
}

TEST(Fit, SigmaEstimateTracksScatter) {
  SetupConfig cfg = reference(0.6, 0.3);
  cfg.signal = SignalPrep::for_basis(Basis::D);
  const double truth = analytic_visibilities_mixed(cfg)[Basis::D];
  double sum_sq = 0.0, sum_sigma = 0.0;
  const int trials = 400;
  for (int i = 0; i < trials; ++i) {
    const auto f = fit(sweep(cfg, basis_state(Basis::D), {}, NoiseSpec{100000, 50u + i}));
    sum_sq += (f.visibility - truth) * (f.visibility - truth);
    sum_sigma += visibility_sigma(f, 64);
  }
  const double empirical = std::sqrt(sum_sq / trials);
  const double predicted = sum_sigma / trials;
  // Homoscedastic model; Poisson scatter shrinks the true error by
  // sqrt((2 - V^2) / (2 + V^2)), about 0.6 here.
  const double v2 = truth * truth;
  EXPECT_NEAR(empirical / predicted, std::sqrt((2 - v2) / (2 + v2)), 0.1);
  EXPECT_LT(empirical, predicted);
}

TEST(MinMax, Examples) {
  EXPECT_NEAR(visibility_minmax(synthetic(0.25, 0, 0.25, 360)), 1.0, 1e-4);
  EXPECT_NEAR(visibility_minmax(synthetic(0, 0, 0.4)), 0.0, 1e-15);
  SetupConfig cfg = reference(1 / std::sqrt(2.0));
  cfg.signal = SignalPrep::for_basis(Basis::D);
  EXPECT_NEAR(cfg.signal.zeta, kPi / 2, 1e-15);
  EXPECT_NEAR(visibility_minmax(sweep(cfg, basis_state(Basis::D), PhaseGrid{4096})), 1.0, 1e-6);
  EXPECT_THROW(visibility_minmax(synthetic(0, 0, 0)), DarkPort);
}

TEST(MinMax, AgreesWithFitWithinGridError) {
  oracle::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    SetupConfig cfg;
    const auto p = oracle::random_pure(rng);
    cfg.idler.alpha = p.alpha;
    cfg.idler.beta = p.beta;
    cfg.idler.xi = p.xi;
    const PhaseGrid grid{256};
    const auto rec = sweep(cfg, rng.unit(2), grid);
    const double h = 2 * kPi / 256;
    EXPECT_NEAR(visibility_minmax(rec), fit(rec).visibility, 2 * h * h);
  }
}

TEST(DenseScan, MatchesFit) {
  const auto cfg = reference(0.6, 2.0);
  for (auto b : kAllBases) {
    const auto rec = sweep(cfg, basis_state(b));
    EXPECT_NEAR(dense_scan_visibility(cfg, basis_state(b)), fit(rec).visibility, 1e-9);
  }
}

TEST(Measure, UsesUnbiasedPrepPerBasis) {
  const auto round = measure(reference(0.6, kPi / 2));
  const auto o = oracle::pure_visibilities(0.6, 0.8, kPi / 2);
  for (auto b : kAllBases) {
    const auto i = static_cast<std::size_t>(b);
    EXPECT_NEAR(round.visibilities[b], o[i], 1e-9);
    EXPECT_EQ(round.records[i].basis_label, basis_name(b));
  }
}

TEST(Csv, RoundTripExact) {
  const auto cfg = reference(0.6, 0.7);
  const auto round = measure(cfg, {}, NoiseSpec{1000, 3});
  std::stringstream single;
  write_csv(single, round.records[0]);
  const std::string text = single.str();
  EXPECT_EQ(text.rfind("phase,value,basis,port\n", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto back = read_csv(single);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].phases, round.records[0].phases);
  EXPECT_EQ(back[0].values, round.records[0].values);
  EXPECT_EQ(back[0].basis_label, "H");
  EXPECT_EQ(back[0].port_label, "upper");
}

TEST(Csv, RejectsMalformed) {
  std::stringstream no_header("0,0.5,H,upper\n");
  EXPECT_THROW(read_csv(no_header), InvalidArgument);
  std::stringstream bad_num("phase,value,basis,port\n0,abc,H,upper\n");
  EXPECT_THROW(read_csv(bad_num), InvalidArgument);
  std::stringstream short_row("phase,value,basis,port\n0,0.5,H\n");
  EXPECT_THROW(read_csv(short_row), InvalidArgument);
  std::stringstream empty("");
  EXPECT_THROW(read_csv(empty), InvalidArgument);
}

}  // namespace
}  // namespace vistomo
