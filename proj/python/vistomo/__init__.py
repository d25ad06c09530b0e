# Copyright 2026 The vistomo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Visibility-based polarization tomography of undetected photons."""

from ._core import (
    BASES,
    CoherenceTriple,
    DarkPort,
    DimensionMismatch,
    EnvironmentVectors,
    Error,
    InconsistentData,
    InfeasibleData,
    InfeasibleEnvironment,
    InvalidArgument,
    ScenarioMismatch,
    Setup,
    SingularFit,
    analytic_visibilities_mixed,
    basis_state,
    bounds_check,
    consistency_ball,
    detection_probability,
    embed,
    enumerate_consistent_states,
    feasibility_slack,
    fit,
    identities_check,
    is_feasible,
    parse_config,
    post_measurement_state,
    reconstruct,
    simulate,
    solve_q_2d,
    stokes_operators,
    visibility_ellipsoid,
    visibility_stokes,
)

__version__ = "0.1.0"
