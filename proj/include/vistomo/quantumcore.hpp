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

#ifndef VISTOMO_QUANTUMCORE_HPP
#define VISTOMO_QUANTUMCORE_HPP

// Small dense complex linear algebra for the interferometer model.
//
// Composite spaces are ordered row-major over their subsystems, first
// subsystem slowest. Every composite built in this library lists subsystems
// as (path, polarization, environment) within each photon and signal before
// idler.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vistomo {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

inline constexpr double kHermitianTol = 1e-12;

std::size_t product(const Dims& dims);

class StateVector {
 public:
  /// `labels` names each subsystem; when empty, labels "s0", "s1", ... are used.
  StateVector(CVector amplitudes, Dims dims, std::vector<std::string> labels = {});

  const CVector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

  /// Label of every basis element, e.g. "path=1,pol=0,env=2".
  std::string basis_label(std::size_t index) const;

 private:
  CVector amplitudes_;
  Dims dims_;
  std::vector<std::string> labels_;
};

class OperatorMatrix {
 public:
  OperatorMatrix(CMatrix entries, Dims dims);

  const CMatrix& entries() const { return entries_; }
  const Dims& dims() const { return dims_; }
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }

  // Checked numerically on every call; nothing is cached or assumed.
  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_unitary(double tol = kHermitianTol) const;
  bool is_projector(double tol = kHermitianTol) const;
  bool is_psd(double tol = kHermitianTol) const;
  cplx trace() const { return entries_.trace(); }

 private:
  CMatrix entries_;
  Dims dims_;
};

/// Valid single-qubit density matrix (Hermitian, unit trace, PSD within 1e-12).
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(const Eigen::Matrix2cd& entries);

  /// Mixed state with populations alpha^2, beta^2 and coherence alpha*beta*q*e^{-i xi}.
  static DensityMatrix2 from_parameters(double alpha, double beta, double q, double xi);
  static DensityMatrix2 from_bloch(double x, double y, double z);
  static DensityMatrix2 pure(const Eigen::Vector2cd& psi);

  const Eigen::Matrix2cd& entries() const { return entries_; }
  double purity() const { return (entries_ * entries_).trace().real(); }

 private:
  Eigen::Matrix2cd entries_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

/// |psi><psi| with the dims of `psi`.
OperatorMatrix outer(const StateVector& psi);

OperatorMatrix identity(const Dims& dims);

/// Reduced operator on the subsystems listed in `keep` (kept in ascending order).
OperatorMatrix partial_trace(const OperatorMatrix& rho, const std::vector<std::size_t>& keep);

/// <psi|op|psi>; op must be Hermitian.
double expectation(const OperatorMatrix& op, const StateVector& psi);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix2& rho, const DensityMatrix2& sigma);

namespace pauli {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
}  // namespace pauli

}  // namespace vistomo

#endif  // VISTOMO_QUANTUMCORE_HPP
