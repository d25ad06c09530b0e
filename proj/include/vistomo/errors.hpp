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

#ifndef VISTOMO_ERRORS_HPP
#define VISTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vistomo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Coherence triple violates the Gram feasibility inequality.
class InfeasibleEnvironment : public Error {
 public:
  InfeasibleEnvironment(const std::string& what, double slack) : Error(what), slack_(slack) {}
  double slack() const noexcept { return slack_; }

 private:
  double slack_;
};

/// Fringe with (numerically) zero mean intensity.
class DarkPort : public Error {
 public:
  using Error::Error;
};

class SingularFit : public Error {
 public:
  using Error::Error;
};

/// Visibilities whose per-basis sum rule disagrees beyond tolerance.
class InconsistentData : public Error {
 public:
  InconsistentData(const std::string& what, double spread) : Error(what), spread_(spread) {}
  double spread() const noexcept { return spread_; }

 private:
  double spread_;
};

class ScenarioMismatch : public Error {
 public:
  using Error::Error;
};

/// Reconstructed Bloch vector leaves the unit ball.
class InfeasibleData : public Error {
 public:
  using Error::Error;
};

}  // namespace vistomo

#endif  // VISTOMO_ERRORS_HPP
