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

#include "vistomo/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace vistomo {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail(where, "unknown key '" + key + "'");
  }
}

double number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + "." + key, "must be finite");
  return d;
}

std::uint64_t count(const json& obj, const std::string& where, const char* key,
                    std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  }
  fail(where + "." + key, "expected a non-negative integer");
}

CVector complex_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of [re, im] pairs");
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& c = v[i];
    if (c.is_number()) {
      out(static_cast<Eigen::Index>(i)) = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      out(static_cast<Eigen::Index>(i)) = cplx(c[0].get<double>(), c[1].get<double>());
    } else {
      fail(where, "entries must be numbers or [re, im] pairs");
    }
  }
  return out;
}

json complex_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

void read_environment(const json& env, RunConfig& cfg) {
  only_keys(env, "environment", {"triple", "vectors", "dim"});
  if (env.contains("triple") == env.contains("vectors")) {
    fail("environment", "give exactly one of 'triple' or 'vectors'");
  }
  if (env.contains("dim")) {
    const auto d = count(env, "environment", "dim", 3);
    if (d < 3) fail("environment.dim", "must be at least 3");
    cfg.env_dim = d;
  }
  if (env.contains("triple")) {
    const json& t = env.at("triple");
    only_keys(t, "environment.triple", {"q", "m_h", "m_v", "delta_phi"});
    CoherenceTriple tr;
    tr.q = number(t, "environment.triple", "q", 1.0);
    tr.m_h = number(t, "environment.triple", "m_h", 1.0);
    tr.m_v = number(t, "environment.triple", "m_v", 1.0);
    tr.delta_phi = number(t, "environment.triple", "delta_phi", 0.0);
    try {
      check_feasible(tr);
    } catch (const InvalidArgument& e) {
      fail("environment.triple", e.what());
    }
    cfg.triple = tr;
    cfg.setup.idler.env = embed(tr, cfg.env_dim);
  } else {
    if (env.contains("dim")) fail("environment", "'dim' only applies to a triple");
    const json& v = env.at("vectors");
    only_keys(v, "environment.vectors", {"e_h", "e_v", "e_psi"});
    for (const char* k : {"e_h", "e_v", "e_psi"}) {
      if (!v.contains(k)) fail("environment.vectors", std::string("missing '") + k + "'");
    }
    EnvironmentVectors e;
    e.e_h = complex_vector(v.at("e_h"), "environment.vectors.e_h");
    e.e_v = complex_vector(v.at("e_v"), "environment.vectors.e_v");
    e.e_psi = complex_vector(v.at("e_psi"), "environment.vectors.e_psi");
    try {
      e.validate(1e-9);
    } catch (const InvalidArgument& ex) {
      fail("environment.vectors", ex.what());
    }
    cfg.env_dim = e.dim();
    cfg.setup.idler.env = std::move(e);
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(root, "config", {"schema_version", "setup", "idler", "environment", "scenario",
                             "coherent_mode", "grid", "noise", "check", "outputs"});
  if (!root.contains("schema_version")) fail("config", "missing 'schema_version'");
  if (!root.at("schema_version").is_number_integer() ||
      root.at("schema_version").get<long long>() != kSchemaVersion) {
    fail("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }

  RunConfig cfg;
  if (root.contains("setup")) {
    const json& s = root.at("setup");
    only_keys(s, "setup", {"pump_ratio", "transmission", "theta", "signal"});
    cfg.setup.pump_ratio = number(s, "setup", "pump_ratio", 1.0);
    cfg.setup.transmission = number(s, "setup", "transmission", 1.0);
    cfg.setup.theta = number(s, "setup", "theta", 0.0);
    if (s.contains("signal")) {
      const json& g = s.at("signal");
      only_keys(g, "setup.signal", {"delta", "epsilon", "zeta"});
      cfg.setup.signal.delta = number(g, "setup.signal", "delta", cfg.setup.signal.delta);
      cfg.setup.signal.epsilon = number(g, "setup.signal", "epsilon", cfg.setup.signal.epsilon);
      cfg.setup.signal.zeta = number(g, "setup.signal", "zeta", 0.0);
    }
  }

  if (!root.contains("idler")) fail("config", "missing 'idler'");
  const json& idler = root.at("idler");
  only_keys(idler, "idler", {"alpha", "beta", "xi"});
  if (!idler.contains("alpha")) fail("idler", "missing 'alpha'");
  cfg.setup.idler.alpha = number(idler, "idler", "alpha", 1.0);
  if (cfg.setup.idler.alpha < 0.0 || cfg.setup.idler.alpha > 1.0) {
    fail("idler.alpha", "must lie in [0, 1]");
  }
  cfg.setup.idler.beta = number(idler, "idler", "beta",
                                std::sqrt(1.0 - cfg.setup.idler.alpha * cfg.setup.idler.alpha));
  cfg.setup.idler.xi = number(idler, "idler", "xi", 0.0);

  if (root.contains("environment")) read_environment(root.at("environment"), cfg);

  if (root.contains("scenario")) {
    const json& s = root.at("scenario");
    if (!s.is_string()) fail("scenario", "expected a string");
    const auto parsed = parse_scenario(s.get<std::string>());
    if (!parsed) fail("scenario", "unknown scenario '" + s.get<std::string>() + "'");
    cfg.scenario = *parsed;
  }
  if (root.contains("coherent_mode")) {
    const json& m = root.at("coherent_mode");
    if (m == "H") {
      cfg.coherent_mode = CoherentMode::H;
    } else if (m == "V") {
      cfg.coherent_mode = CoherentMode::V;
    } else {
      fail("coherent_mode", "expected \"H\" or \"V\"");
    }
  }
  if (root.contains("grid")) {
    only_keys(root.at("grid"), "grid", {"points"});
    cfg.grid.points = count(root.at("grid"), "grid", "points", cfg.grid.points);
    if (cfg.grid.points < kMinFringePoints) {
      fail("grid.points", "need at least " + std::to_string(kMinFringePoints));
    }
  }
  if (root.contains("noise") && !root.at("noise").is_null()) {
    only_keys(root.at("noise"), "noise", {"counts", "seed"});
    NoiseSpec n;
    n.counts = count(root.at("noise"), "noise", "counts", n.counts);
    n.seed = count(root.at("noise"), "noise", "seed", n.seed);
    if (n.counts == 0) fail("noise.counts", "must be positive");
    cfg.noise = n;
  }
  if (root.contains("check")) {
    only_keys(root.at("check"), "check", {"samples", "seed"});
    cfg.check.samples = count(root.at("check"), "check", "samples", cfg.check.samples);
    cfg.check.seed = count(root.at("check"), "check", "seed", cfg.check.seed);
  }
  if (root.contains("outputs")) {
    only_keys(root.at("outputs"), "outputs", {"dir"});
    const json& d = root.at("outputs").value("dir", json("."));
    if (!d.is_string()) fail("outputs.dir", "expected a string");
    cfg.out_dir = d.get<std::string>();
  }

  try {
    cfg.setup.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("setup: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json config_to_json(const RunConfig& cfg) {
  const auto& s = cfg.setup;
  json out;
  out["schema_version"] = kSchemaVersion;
  out["setup"] = {{"pump_ratio", s.pump_ratio},
                  {"transmission", s.transmission},
                  {"theta", s.theta},
                  {"signal", {{"delta", s.signal.delta},
                              {"epsilon", s.signal.epsilon},
                              {"zeta", s.signal.zeta}}}};
  out["idler"] = {{"alpha", s.idler.alpha}, {"beta", s.idler.beta}, {"xi", s.idler.xi}};
  if (cfg.triple) {
    out["environment"] = {{"triple", {{"q", cfg.triple->q},
                                      {"m_h", cfg.triple->m_h},
                                      {"m_v", cfg.triple->m_v},
                                      {"delta_phi", cfg.triple->delta_phi}}},
                          {"dim", cfg.env_dim}};
  } else {
    out["environment"] = {{"vectors", {{"e_h", complex_json(s.idler.env.e_h)},
                                       {"e_v", complex_json(s.idler.env.e_v)},
                                       {"e_psi", complex_json(s.idler.env.e_psi)}}}};
  }
  out["scenario"] = std::string(scenario_name(cfg.scenario));
  out["coherent_mode"] = cfg.coherent_mode == CoherentMode::H ? "H" : "V";
  out["grid"] = {{"points", cfg.grid.points}};
  if (cfg.noise) out["noise"] = {{"counts", cfg.noise->counts}, {"seed", cfg.noise->seed}};
  out["check"] = {{"samples", cfg.check.samples}, {"seed", cfg.check.seed}};
  out["outputs"] = {{"dir", cfg.out_dir}};
  return out;
}

}  // namespace vistomo
