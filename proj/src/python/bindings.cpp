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

// Python module vistomo._core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "vistomo/config.hpp"
#include "vistomo/environment.hpp"
#include "vistomo/errors.hpp"
#include "vistomo/fringes.hpp"
#include "vistomo/interferometer.hpp"
#include "vistomo/operators.hpp"
#include "vistomo/reconstruct.hpp"
#include "vistomo/serialize.hpp"
#include "vistomo/stokes.hpp"

namespace py = pybind11;
using namespace vistomo;

namespace {

// nlohmann -> Python through the json module keeps key order and exact doubles.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Visibilities visibilities_from(const py::object& obj) {
  Visibilities v;
  if (py::isinstance<py::dict>(obj)) {
    const auto d = obj.cast<py::dict>();
    for (auto b : kAllBases) v[b] = d[py::str(std::string(basis_name(b)))].cast<double>();
    return v;
  }
  const auto seq = obj.cast<std::vector<double>>();
  if (seq.size() != 6) throw InvalidArgument("need six visibilities ordered H, V, D, A, L, R");
  std::copy(seq.begin(), seq.end(), v.values.begin());
  return v;
}

py::dict visibilities_to(const Visibilities& v) {
  py::dict d;
  for (auto b : kAllBases) d[py::str(std::string(basis_name(b)))] = v[b];
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Visibility-based polarization tomography of undetected photons";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<InfeasibleEnvironment>(m, "InfeasibleEnvironment", base.ptr());
  py::register_exception<DarkPort>(m, "DarkPort", base.ptr());
  py::register_exception<SingularFit>(m, "SingularFit", base.ptr());
  py::register_exception<InconsistentData>(m, "InconsistentData", base.ptr());
  py::register_exception<ScenarioMismatch>(m, "ScenarioMismatch", base.ptr());
  py::register_exception<InfeasibleData>(m, "InfeasibleData", base.ptr());

  m.attr("BASES") = py::make_tuple("H", "V", "D", "A", "L", "R");
  m.def("basis_state", [](const std::string& name) {
    const auto b = parse_basis(name);
    if (!b) throw InvalidArgument("unknown basis " + name);
    return Eigen::Vector2cd(basis_state(*b));
  });

  // ------------------------------------------------------------ environment
  py::class_<CoherenceTriple>(m, "CoherenceTriple")
      .def(py::init([](double q, double m_h, double m_v, double dphi) {
             return CoherenceTriple{q, m_h, m_v, dphi};
           }),
           py::arg("q") = 1.0, py::arg("m_h") = 1.0, py::arg("m_v") = 1.0,
           py::arg("delta_phi") = 0.0)
      .def_readwrite("q", &CoherenceTriple::q)
      .def_readwrite("m_h", &CoherenceTriple::m_h)
      .def_readwrite("m_v", &CoherenceTriple::m_v)
      .def_readwrite("delta_phi", &CoherenceTriple::delta_phi)
      .def("__repr__", [](const CoherenceTriple& t) {
        return "CoherenceTriple(q=" + std::to_string(t.q) + ", m_h=" + std::to_string(t.m_h) +
               ", m_v=" + std::to_string(t.m_v) + ", delta_phi=" + std::to_string(t.delta_phi) + ")";
      });

  m.def("feasibility_slack", [](const CoherenceTriple& t) { return check_feasible(t).slack; });
  m.def("is_feasible", [](const CoherenceTriple& t) { return check_feasible(t).feasible; });

  py::class_<EnvironmentVectors>(m, "EnvironmentVectors")
      .def(py::init([](Eigen::VectorXcd e_h, Eigen::VectorXcd e_v, Eigen::VectorXcd e_psi) {
             EnvironmentVectors env{std::move(e_h), std::move(e_v), std::move(e_psi)};
             env.validate();
             return env;
           }),
           py::arg("e_h"), py::arg("e_v"), py::arg("e_psi"))
      .def_readonly("e_h", &EnvironmentVectors::e_h)
      .def_readonly("e_v", &EnvironmentVectors::e_v)
      .def_readonly("e_psi", &EnvironmentVectors::e_psi)
      .def("triple", &EnvironmentVectors::triple);
  m.def("embed", &embed, py::arg("triple"), py::arg("dim") = 3);
  m.def("solve_q_2d", [](double m_h, double m_v) {
    const auto r = solve_q_2d(m_h, m_v);
    py::dict d;
    d["q_plus"] = r.q_plus;
    d["q_minus"] = r.q_minus;
    d["accepted"] = r.accepted;
    d["rejected"] = r.rejected;
    return d;
  });

  // ---------------------------------------------------------------- setup
  py::class_<SetupConfig>(m, "Setup")
      .def(py::init([](double alpha, std::optional<double> beta, double xi, double pump_ratio,
                       double transmission, double theta, std::optional<CoherenceTriple> triple,
                       std::optional<EnvironmentVectors> env) {
             SetupConfig cfg;
             cfg.idler.alpha = alpha;
             cfg.idler.beta = beta.value_or(std::sqrt(std::max(0.0, 1.0 - alpha * alpha)));
             cfg.idler.xi = xi;
             cfg.pump_ratio = pump_ratio;
             cfg.transmission = transmission;
             cfg.theta = theta;
             if (triple && env) throw InvalidArgument("give either triple or env, not both");
             if (triple) cfg.idler.env = embed(*triple);
             if (env) cfg.idler.env = *env;
             cfg.validate();
             return cfg;
           }),
           py::arg("alpha"), py::arg("beta") = py::none(), py::arg("xi") = 0.0,
           py::arg("pump_ratio") = 1.0, py::arg("transmission") = 1.0, py::arg("theta") = 0.0,
           py::arg("triple") = py::none(), py::arg("env") = py::none())
      .def_property_readonly("alpha", [](const SetupConfig& c) { return c.idler.alpha; })
      .def_property_readonly("beta", [](const SetupConfig& c) { return c.idler.beta; })
      .def_property_readonly("xi", [](const SetupConfig& c) { return c.idler.xi; })
      .def_readwrite("pump_ratio", &SetupConfig::pump_ratio)
      .def_readwrite("transmission", &SetupConfig::transmission)
      .def_readwrite("theta", &SetupConfig::theta)
      .def_property_readonly("env", [](const SetupConfig& c) { return c.idler.env; })
      .def("set_signal", [](SetupConfig& c, double delta, double epsilon, double zeta) {
             c.signal = {delta, epsilon, zeta};
             c.signal.validate();
           },
           py::arg("delta"), py::arg("epsilon"), py::arg("zeta") = 0.0);

  m.def("detection_probability",
        [](const SetupConfig& cfg, const Eigen::Vector2cd& k, double phi) {
          return detection_probability(cfg, k, phi);
        },
        py::arg("setup"), py::arg("k"), py::arg("phi"));
  m.def("analytic_visibilities_mixed",
        [](const SetupConfig& cfg) { return visibilities_to(analytic_visibilities_mixed(cfg)); });
  m.def("post_measurement_state",
        [](const SetupConfig& cfg) { return CMatrix(post_measurement_state(cfg).entries()); });

  // -------------------------------------------------------------- fringes
  m.def("simulate",
        [](const SetupConfig& cfg, std::size_t points, std::optional<std::uint64_t> counts,
           std::uint64_t seed) {
          std::optional<NoiseSpec> noise;
          if (counts) noise = NoiseSpec{*counts, seed};
          const auto round = measure(cfg, PhaseGrid{points}, noise);
          py::dict fringes, fits;
          for (std::size_t i = 0; i < 6; ++i) {
            const std::string name(basis_name(kAllBases[i]));
            fringes[py::str(name)] = py::make_tuple(round.records[i].phases, round.records[i].values);
            fits[py::str(name)] = to_python(encode(round.fits[i]));
          }
          py::dict out;
          out["visibilities"] = visibilities_to(round.visibilities);
          out["fringes"] = fringes;
          out["fits"] = fits;
          return out;
        },
        py::arg("setup"), py::arg("points") = 64, py::arg("counts") = py::none(),
        py::arg("seed") = 0);

  m.def("fit",
        [](std::vector<double> phases, std::vector<double> values) {
          FringeRecord rec;
          const std::size_t n = phases.size();
          rec.phases = std::move(phases);
          rec.values = std::move(values);
          const FringeFit f = fit(rec);
          auto d = to_python(encode(f));
          d["sigma"] = visibility_sigma(f, n);
          return d;
        },
        py::arg("phases"), py::arg("values"));

  // --------------------------------------------------------------- stokes
  m.def("visibility_stokes",
        [](const py::object& v, std::optional<double> transmission, double tol) {
          StokesOptions opts;
          opts.sum_rule_tolerance = tol;
          opts.transmission = transmission;
          const auto est = visibility_stokes(visibilities_from(v), opts);
          auto d = to_python(encode(est.stokes));
          d["basis_sums"] = est.basis_sums;
          d["sum_rule_spread"] = est.sum_rule_spread;
          return d;
        },
        py::arg("visibilities"), py::arg("transmission") = py::none(), py::arg("tol") = 1e-6);
  m.def("identities_check",
        [](const py::object& v) { return to_python(encode(identities_check(visibilities_from(v)))); });

  auto stokes_from = [](const py::dict& d) {
    return VisibilityStokes{d["s0"].cast<double>(), d["sx"].cast<double>(),
                            d["sy"].cast<double>(), d["sz"].cast<double>()};
  };
  m.def("consistency_ball",
        [stokes_from](const py::dict& s) { return to_python(encode(consistency_ball(stokes_from(s)))); });
  m.def("visibility_ellipsoid", [](const Eigen::Vector3d& r) {
    return to_python(encode(visibility_ellipsoid(BlochVector::from(r))));
  });
  m.def("bounds_check",
        [stokes_from](const Eigen::Vector3d& r, const py::dict& s, double tol) {
          return to_python(encode(bounds_check(BlochVector::from(r), stokes_from(s), tol)));
        },
        py::arg("bloch"), py::arg("stokes"), py::arg("tol") = kGeometryTol);

  // ---------------------------------------------------------- reconstruct
  m.def("reconstruct",
        [stokes_from](const py::dict& s, const std::string& scenario, const std::string& mode) {
          const auto vs = stokes_from(s);
          const auto kind = parse_scenario(scenario);
          if (!kind || *kind == Scenario::UnknownEnvironment) {
            throw InvalidArgument("scenario must be pure-coherent, hv-asymmetric or symmetric-coupling");
          }
          if (mode != "H" && mode != "V") throw InvalidArgument("mode must be H or V");
          switch (*kind) {
            case Scenario::PureCoherent:
              return to_python(encode(reconstruct_pure(vs)));
            case Scenario::HvAsymmetric:
              return to_python(encode(
                  reconstruct_hv_asymmetric(vs, mode == "H" ? CoherentMode::H : CoherentMode::V)));
            default:
              return to_python(encode(reconstruct_symmetric(vs)));
          }
        },
        py::arg("stokes"), py::arg("scenario"), py::arg("mode") = "H");
  m.def("enumerate_consistent_states",
        [stokes_from](const py::dict& s, std::size_t samples, std::uint64_t seed, double tol) {
          std::vector<Eigen::Matrix2cd> out;
          for (const auto& rho : enumerate_consistent_states(stokes_from(s), samples, seed, tol)) {
            out.push_back(rho.entries());
          }
          return out;
        },
        py::arg("stokes"), py::arg("samples") = 1000, py::arg("seed") = 1, py::arg("tol") = 1e-9);

  // ------------------------------------------------------------ operators
  m.def("stokes_operators",
        [](const EnvironmentVectors& env, double transmission) {
          const auto ops = stokes_operators(env, transmission);
          py::dict d;
          d["s0"] = CMatrix(ops.s0.entries());
          d["sx"] = CMatrix(ops.sx.entries());
          d["sy"] = CMatrix(ops.sy.entries());
          d["sz"] = CMatrix(ops.sz.entries());
          return d;
        },
        py::arg("env"), py::arg("transmission") = 1.0);

  // --------------------------------------------------------------- config
  m.def("parse_config",
        [](const std::string& text) { return to_python(config_to_json(parse_config(text))); });
}
