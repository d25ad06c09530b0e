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

#ifndef VISTOMO_CONFIG_HPP
#define VISTOMO_CONFIG_HPP

// Run configuration: JSON with // and /* */ comments allowed. Unknown keys
// are rejected at every level. Current schema_version is 1.
//
// {
//   "schema_version": 1,
//   "setup": {"pump_ratio": 1, "transmission": 1, "theta": 0,
//             "signal": {"delta": 0.7071, "epsilon": 0.7071, "zeta": 0}},
//   "idler": {"alpha": 0.6, "beta": 0.8, "xi": 0},
//   "environment": {"triple": {"q": 1, "m_h": 1, "m_v": 1, "delta_phi": 0}, "dim": 3}
//             or   {"vectors": {"e_h": [[re, im], ...], "e_v": [...], "e_psi": [...]}},
//   "scenario": "pure-coherent",
//   "coherent_mode": "H",
//   "grid": {"points": 64},
//   "noise": {"counts": 1000000, "seed": 7},
//   "check": {"samples": 10000, "seed": 1},
//   "outputs": {"dir": "out"}
// }
//
// Everything except schema_version and idler.alpha has a default. A missing
// environment means a fully coherent one; a missing noise block means
// noiseless fringes; a missing idler.beta means sqrt(1 - alpha^2).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vistomo/environment.hpp"
#include "vistomo/errors.hpp"
#include "vistomo/fringes.hpp"
#include "vistomo/interferometer.hpp"
#include "vistomo/reconstruct.hpp"

namespace vistomo {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct CheckSpec {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

struct RunConfig {
  SetupConfig setup;  // idler and its environment included
  std::optional<CoherenceTriple> triple;  // set when the environment was given as a triple
  std::size_t env_dim = 3;
  Scenario scenario = Scenario::PureCoherent;
  CoherentMode coherent_mode = CoherentMode::H;
  PhaseGrid grid;
  std::optional<NoiseSpec> noise;
  CheckSpec check;
  std::string out_dir = ".";
};

/// Throws ConfigError for malformed input and InfeasibleEnvironment when the
/// configured triple admits no environment vectors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace vistomo

#endif  // VISTOMO_CONFIG_HPP
