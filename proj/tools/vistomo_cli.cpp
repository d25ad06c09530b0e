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

// vistomo command-line driver.
//
//   vistomo simulate    --config run.jsonc [--seed N] [--out-dir DIR]
//   vistomo extract     fringes_*.csv      [--out-dir DIR]
//   vistomo reconstruct visibilities.json  --scenario NAME [--mode H|V]
//                       [--config run.jsonc] [--samples N] [--seed N] [--tolerance X]
//                       [--out-dir DIR]
//   vistomo check       --config run.jsonc [--samples N] [--seed N] [--out-dir DIR]
//
// JSON reports go to stdout and, with --out-dir, also to a file there.
// Exit codes: 0 ok, 1 usage, 2 infeasible environment, 3 fit failure,
// 4 scenario mismatch.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vistomo/config.hpp"
#include "vistomo/environment.hpp"
#include "vistomo/errors.hpp"
#include "vistomo/fringes.hpp"
#include "vistomo/interferometer.hpp"
#include "vistomo/reconstruct.hpp"
#include "vistomo/serialize.hpp"
#include "vistomo/stokes.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vistomo;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kFitFailure = 3, kMismatch = 4 };

// Carries an exit code out of a subcommand.
struct CliFailure {
  int code;
  std::string message;
};

void emit(const json& report, const std::optional<std::string>& out_dir, const std::string& name) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_dir) return;
  fs::create_directories(*out_dir);
  std::ofstream out(fs::path(*out_dir) / name, std::ios::binary);
  out << text;
  if (!out) throw CliFailure{kUsage, "cannot write " + (fs::path(*out_dir) / name).string()};
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kUsage, "cannot open " + path};
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw CliFailure{kUsage, path + ": " + e.what()};
  }
}

// ------------------------------------------------------------- simulate --

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

int run_simulate(const SimulateArgs& args) {
  RunConfig cfg = load_config(args.config);
  if (args.seed) {
    if (!cfg.noise) cfg.noise = NoiseSpec{};
    cfg.noise->seed = *args.seed;
  }
  const fs::path dir = args.out_dir.value_or(cfg.out_dir);
  fs::create_directories(dir);
  const auto round = measure(cfg.setup, cfg.grid, cfg.noise);
  for (std::size_t i = 0; i < round.records.size(); ++i) {
    const fs::path file = dir / ("fringes_" + std::string(basis_name(kAllBases[i])) + ".csv");
    std::ofstream out(file, std::ios::binary);
    write_csv(out, round.records[i]);
    if (!out) throw CliFailure{kUsage, "cannot write " + file.string()};
    std::cout << file.string() << "\n";
  }
  return kOk;
}

// -------------------------------------------------------------- extract --

struct ExtractArgs {
  std::vector<std::string> inputs;
  std::optional<std::string> out_dir;
};

int run_extract(const ExtractArgs& args) {
  std::map<std::string, FringeRecord> by_basis;
  for (const auto& path : args.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{kUsage, "cannot open " + path};
    for (auto& rec : read_csv(in)) {
      if (rec.port_label != "upper") continue;
      if (!parse_basis(rec.basis_label)) {
        throw CliFailure{kUsage, path + ": unknown basis '" + rec.basis_label + "'"};
      }
      if (!by_basis.emplace(rec.basis_label, std::move(rec)).second) {
        throw CliFailure{kUsage, "basis " + rec.basis_label + " given twice"};
      }
    }
  }
  for (auto b : kAllBases) {
    if (!by_basis.count(std::string(basis_name(b)))) {
      throw CliFailure{kUsage, "missing fringe for basis " + std::string(basis_name(b))};
    }
  }

  json report;
  json fits = json::object();
  json errors = json::object();
  Visibilities v;
  std::array<double, 6> sigma{};
  for (std::size_t i = 0; i < kAllBases.size(); ++i) {
    const std::string name(basis_name(kAllBases[i]));
    const auto& rec = by_basis.at(name);
    try {
      const FringeFit f = fit(rec);
      v.values[i] = f.visibility;
      sigma[i] = visibility_sigma(f, rec.phases.size());
      json entry = encode(f);
      entry["sigma"] = sigma[i];
      entry["points"] = rec.phases.size();
      fits[name] = entry;
      if (f.clamped) {
        std::cerr << "warning: basis " << name << " raw visibility " << f.visibility_raw
                  << " clamped\n";
      }
    } catch (const DarkPort& e) {
      errors[name] = {{"kind", "dark-port"}, {"message", e.what()}};
    } catch (const SingularFit& e) {
      errors[name] = {{"kind", "singular-fit"}, {"message", e.what()}};
    }
  }
  report["fits"] = fits;
  report["errors"] = errors;
  if (!errors.empty()) {
    report["visibilities"] = nullptr;
    emit(report, args.out_dir, "visibilities.json");
    return kFitFailure;
  }
  report["visibilities"] = encode(v);

  // Sum-rule tolerance: 3 sigma of a difference of two basis sums, with each
  // sum V_k^2 + V_k'^2 carrying 2 sqrt(V_k^2 s_k^2 + V_k'^2 s_k'^2).
  double worst_sum_sigma = 0.0;
  for (std::size_t p = 0; p < 3; ++p) {
    const double a = v.values[2 * p], b = v.values[2 * p + 1];
    worst_sum_sigma = std::max(
        worst_sum_sigma, 2.0 * std::hypot(a * sigma[2 * p], b * sigma[2 * p + 1]));
  }
  StokesOptions opts;
  opts.sum_rule_tolerance = std::max(1e-9, 3.0 * std::sqrt(2.0) * worst_sum_sigma);
  json rule = {{"tolerance", opts.sum_rule_tolerance}};
  int code = kOk;
  try {
    const auto est = visibility_stokes(v, opts);
    rule["basis_sums"] = est.basis_sums;
    rule["spread"] = est.sum_rule_spread;
    rule["consistent"] = true;
    report["stokes"] = encode(est.stokes);
  } catch (const InconsistentData& e) {
    rule["spread"] = e.spread();
    rule["consistent"] = false;
    report["stokes"] = nullptr;
    std::cerr << "error: " << e.what() << "\n";
    code = kFitFailure;
  }
  report["sum_rule"] = rule;
  emit(report, args.out_dir, "visibilities.json");
  return code;
}

// ---------------------------------------------------------- reconstruct --

struct ReconstructArgs {
  std::string input;
  std::optional<std::string> scenario;
  std::optional<std::string> mode;
  std::optional<std::string> config;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<std::string> out_dir;
};

json summarize_candidates(const std::vector<DensityMatrix2>& states) {
  json list = json::array();
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(INFINITY), hi = -lo;
  for (const auto& rho : states) {
    list.push_back(encode(rho));
    const auto r = standard_stokes(rho).vec();
    lo = lo.cwiseMin(r);
    hi = hi.cwiseMax(r);
  }
  json out = {{"count", states.size()}, {"density_matrices", list}};
  if (!states.empty()) {
    out["bloch_min"] = {lo.x(), lo.y(), lo.z()};
    out["bloch_max"] = {hi.x(), hi.y(), hi.z()};
  }
  return out;
}

int run_reconstruct(const ReconstructArgs& args) {
  std::optional<RunConfig> cfg;
  if (args.config) cfg = load_config(*args.config);

  Scenario scenario;
  if (args.scenario) {
    const auto s = parse_scenario(*args.scenario);
    if (!s) throw CliFailure{kUsage, "unknown scenario '" + *args.scenario + "'"};
    scenario = *s;
  } else if (cfg) {
    scenario = cfg->scenario;
  } else {
    throw CliFailure{kUsage, "--scenario or --config is required"};
  }
  CoherentMode mode = cfg ? cfg->coherent_mode : CoherentMode::H;
  if (args.mode) {
    if (*args.mode == "H") mode = CoherentMode::H;
    else if (*args.mode == "V") mode = CoherentMode::V;
    else throw CliFailure{kUsage, "--mode must be H or V"};
  }

  const json input = read_json(args.input);
  VisibilityStokes vs;
  double data_tol = 1e-9;
  try {
    const bool has_stokes =
        input.is_object() && ((input.contains("stokes") && !input.at("stokes").is_null()) ||
                              input.contains("s0"));
    if (has_stokes) {
      vs = decode_stokes(input);
      if (input.contains("sum_rule")) {
        data_tol = std::max(data_tol, input.at("sum_rule").at("tolerance").get<double>());
      }
    } else {
      StokesOptions opts;
      if (input.is_object() && input.contains("sum_rule")) {
        opts.sum_rule_tolerance = input.at("sum_rule").at("tolerance").get<double>();
        data_tol = std::max(data_tol, opts.sum_rule_tolerance);
      }
      vs = visibility_stokes(decode_visibilities(input), opts).stokes;
    }
  } catch (const json::exception& e) {
    throw CliFailure{kUsage, args.input + ": " + e.what()};
  }

  json report;
  switch (scenario) {
    case Scenario::PureCoherent:
      report = encode(reconstruct_pure(vs));
      break;
    case Scenario::HvAsymmetric:
      report = encode(reconstruct_hv_asymmetric(vs, mode));
      report["coherent_mode"] = mode == CoherentMode::H ? "H" : "V";
      break;
    case Scenario::SymmetricCoupling:
      report = encode(reconstruct_symmetric(vs));
      break;
    case Scenario::UnknownEnvironment: {
      const std::size_t samples = args.samples.value_or(cfg ? cfg->check.samples : 1000);
      const std::uint64_t seed = args.seed.value_or(cfg ? cfg->check.seed : 1);
      // Noisy input: accept candidates within the extraction's sum-rule tolerance.
      const double tol = args.tolerance.value_or(data_tol);
      report = {{"scenario", scenario_name(scenario)},
                {"samples", samples},
                {"seed", seed},
                {"tolerance", tol},
                {"candidates",
                 summarize_candidates(enumerate_consistent_states(vs, samples, seed, tol))}};
      break;
    }
  }
  report["stokes"] = encode(vs);
  emit(report, args.out_dir, "state.json");
  return kOk;
}

// ---------------------------------------------------------------- check --

struct CheckArgs {
  std::string config;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

BlochVector idler_bloch(const IdlerPrep& idler) {
  const Eigen::Matrix2cd rho = partial_trace(outer(idler.state()), {0}).entries();
  return standard_stokes(DensityMatrix2(rho));
}

Eigen::VectorXcd random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v.normalized();
}

int run_check(const CheckArgs& args) {
  RunConfig cfg = load_config(args.config);
  const std::size_t samples = args.samples.value_or(cfg.check.samples);
  const std::uint64_t seed = args.seed.value_or(cfg.check.seed);

  json report;
  report["config"] = config_to_json(cfg);

  // The configured experiment, noiseless.
  const auto v = measure(cfg.setup, cfg.grid).visibilities;
  const auto vs = visibility_stokes(v).stokes;
  const BlochVector r = idler_bloch(cfg.setup.idler);
  const double t = cfg.setup.transmission;
  const VisibilityStokes vs_t =
      t > 0 ? visibility_stokes(v, {1e-6, t}).stokes : VisibilityStokes{};
  report["visibilities"] = encode(v);
  report["identities"] = encode(identities_check(v));
  report["stokes"] = encode(vs);
  report["norm_defect"] = vs.norm_defect();
  report["bloch"] = encode(r);
  report["bounds"] = encode(bounds_check(r, vs_t));
  report["ball"] = encode(consistency_ball(vs_t));
  report["ellipsoid"] = encode(visibility_ellipsoid(r));

  // Same idler amplitudes, random environments in C^3.
  std::mt19937_64 rng(seed);
  std::map<std::string, std::size_t> violations = {
      {"ball", 0}, {"ellipsoid", 0}, {"purity_upper", 0}, {"purity_lower", 0}, {"s0_upper", 0}, {"any", 0}};
  double worst_identity = 0.0, worst_norm = 0.0;
  SetupConfig probe = cfg.setup;
  probe.transmission = 1.0;
  for (std::size_t i = 0; i < samples; ++i) {
    EnvironmentVectors env{random_unit(rng, 3), random_unit(rng, 3), random_unit(rng, 3)};
    // Rephase e_V so that <e_H|e_V> is real and non-negative.
    const cplx hv = env.e_h.dot(env.e_v);
    if (std::abs(hv) > 0) env.e_v *= std::conj(hv) / std::abs(hv);
    probe.idler.env = env;
    const auto sv = analytic_visibilities_mixed(probe);
    const auto s = visibility_stokes(sv).stokes;
    const auto rep = bounds_check(idler_bloch(probe.idler), s);
    violations["ball"] += !rep.ball_ok;
    violations["ellipsoid"] += !rep.ellipsoid_ok;
    violations["purity_upper"] += !rep.purity_upper_ok;
    violations["purity_lower"] += !rep.purity_lower_ok;
    violations["s0_upper"] += !rep.s0_upper_ok;
    violations["any"] += !rep.all_ok();
    worst_identity = std::max(worst_identity, identities_check(sv).max_abs());
    worst_norm = std::max(worst_norm, std::abs(s.norm_defect()));
  }
  report["geometry"] = {{"samples", samples},
                        {"seed", seed},
                        {"violations", violations},
                        {"max_identity_residual", worst_identity},
                        {"max_norm_defect", worst_norm}};
  emit(report, args.out_dir, "check.json");
  return kOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const InfeasibleEnvironment& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ScenarioMismatch& e) {
    std::cerr << "error: scenario mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const InfeasibleData& e) {
    std::cerr << "error: no physical state fits: " << e.what() << "\n";
    return kMismatch;
  } catch (const InconsistentData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFitFailure;
  } catch (const DarkPort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFitFailure;
  } catch (const SingularFit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFitFailure;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visibility-based polarization tomography of undetected photons"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Write the six fringe CSVs for a configuration");
  simulate->add_option("--config", sim.config, "Run configuration")->required()->check(CLI::ExistingFile);
  simulate->add_option("--seed", sim.seed, "Override the noise seed (enables default noise if absent)");
  simulate->add_option("--out-dir", sim.out_dir, "Output directory (default: outputs.dir)");

  ExtractArgs ext;
  auto* extract = app.add_subcommand("extract", "Fit fringes and report visibilities");
  extract->add_option("inputs", ext.inputs, "Fringe CSV files")->required()->check(CLI::ExistingFile);
  extract->add_option("--out-dir", ext.out_dir, "Also write visibilities.json here");

  ReconstructArgs rec;
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct the idler state");
  reconstruct->add_option("input", rec.input, "Visibilities or Stokes JSON")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--scenario", rec.scenario,
                          "pure-coherent | hv-asymmetric | symmetric-coupling | unknown-environment");
  reconstruct->add_option("--mode", rec.mode, "Coherent mode for hv-asymmetric: H or V");
  reconstruct->add_option("--config", rec.config, "Take scenario, mode and sampling from a config")
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--samples", rec.samples, "Candidates for unknown-environment");
  reconstruct->add_option("--seed", rec.seed, "Sampling seed for unknown-environment");
  reconstruct->add_option("--tolerance", rec.tolerance,
                          "Match tolerance for unknown-environment (default: from the input)");
  reconstruct->add_option("--out-dir", rec.out_dir, "Also write state.json here");

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "Identity and geometry report");
  check->add_option("--config", chk.config, "Run configuration")->required()->check(CLI::ExistingFile);
  check->add_option("--samples", chk.samples, "Sampled environments (default: check.samples)");
  check->add_option("--seed", chk.seed, "Sampling seed (default: check.seed)");
  check->add_option("--out-dir", chk.out_dir, "Also write check.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::cout.precision(17);
  if (*simulate) return guarded([&] { return run_simulate(sim); });
  if (*extract) return guarded([&] { return run_extract(ext); });
  if (*reconstruct) return guarded([&] { return run_reconstruct(rec); });
  return guarded([&] { return run_check(chk); });
}
