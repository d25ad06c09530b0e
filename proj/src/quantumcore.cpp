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

#include "vistomo/quantumcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vistomo/errors.hpp"

namespace vistomo {

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  return labels;
}

// Multi-index of `index` over `dims`, first subsystem slowest.
std::vector<std::size_t> unravel(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    digits[s] = index % dims[s];
    index /= dims[s];
  }
  return digits;
}

}  // namespace

StateVector::StateVector(CVector amplitudes, Dims dims, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) dims_ = {static_cast<std::size_t>(amplitudes_.size())};
  if (product(dims_) != static_cast<std::size_t>(amplitudes_.size())) {
    throw DimensionMismatch("state vector length does not match subsystem dims");
  }
  if (labels_.empty()) labels_ = default_labels(dims_.size());
  if (labels_.size() != dims_.size()) {
    throw DimensionMismatch("one label per subsystem required");
  }
  if (amplitudes_.norm() > 1.0 + 1e-12) {
    throw InvalidArgument("state vector norm exceeds 1");
  }
}

std::string StateVector::basis_label(std::size_t index) const {
  if (index >= size()) throw InvalidArgument("basis index out of range");
  const auto digits = unravel(index, dims_);
  std::ostringstream out;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (s) out << ',';
    out << labels_[s] << '=' << digits[s];
  }
  return out.str();
}

OperatorMatrix::OperatorMatrix(CMatrix entries, Dims dims)
    : entries_(std::move(entries)), dims_(std::move(dims)) {
  if (entries_.rows() != entries_.cols()) throw DimensionMismatch("operator must be square");
  if (dims_.empty()) dims_ = {static_cast<std::size_t>(entries_.rows())};
  if (product(dims_) != static_cast<std::size_t>(entries_.rows())) {
    throw DimensionMismatch("operator size does not match subsystem dims");
  }
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool OperatorMatrix::is_unitary(double tol) const {
  const auto n = entries_.rows();
  return (entries_.adjoint() * entries_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < tol;
}

bool OperatorMatrix::is_projector(double tol) const {
  return is_hermitian(tol) && (entries_ * entries_ - entries_).cwiseAbs().maxCoeff() < tol;
}

bool OperatorMatrix::is_psd(double tol) const {
  if (!is_hermitian(tol)) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

namespace {

void validate_density(const Eigen::Matrix2cd& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() >= kHermitianTol) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kHermitianTol) throw InvalidArgument("density matrix trace is not 1");
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m(0, 1)));
  if (0.5 * (tr - disc) < -kHermitianTol) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
}

}  // namespace

DensityMatrix2::DensityMatrix2(const Eigen::Matrix2cd& entries) : entries_(entries) {
  validate_density(entries_);
}

DensityMatrix2 DensityMatrix2::from_parameters(double alpha, double beta, double q, double xi) {
  Eigen::Matrix2cd m;
  const cplx coh = alpha * beta * q * std::polar(1.0, -xi);
  m << alpha * alpha, coh, std::conj(coh), beta * beta;
  return DensityMatrix2(m);
}

DensityMatrix2 DensityMatrix2::from_bloch(double x, double y, double z) {
  const Eigen::Matrix2cd m =
      0.5 * (pauli::identity() + x * pauli::x() + y * pauli::y() + z * pauli::z());
  return DensityMatrix2(m);
}

DensityMatrix2 DensityMatrix2::pure(const Eigen::Vector2cd& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidArgument("zero state vector");
  const Eigen::Vector2cd u = psi / n;
  return DensityMatrix2(u * u.adjoint());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  auto labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return StateVector(std::move(out), std::move(dims), std::move(labels));
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  const auto n = y.rows();
  CMatrix out(x.rows() * n, x.cols() * n);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * n, j * n, n, n) = x(i, j) * y;
  }
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return OperatorMatrix(std::move(out), std::move(dims));
}

OperatorMatrix outer(const StateVector& psi) {
  return OperatorMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

OperatorMatrix identity(const Dims& dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return OperatorMatrix(CMatrix::Identity(n, n), dims);
}

OperatorMatrix partial_trace(const OperatorMatrix& rho, const std::vector<std::size_t>& keep) {
  const Dims& dims = rho.dims();
  std::vector<bool> kept(dims.size(), false);
  for (auto s : keep) {
    if (s >= dims.size()) throw InvalidArgument("partial_trace: subsystem index out of range");
    if (kept[s]) throw InvalidArgument("partial_trace: duplicate subsystem index");
    kept[s] = true;
  }
  Dims out_dims;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (kept[s]) out_dims.push_back(dims[s]);
  }
  if (out_dims.empty()) out_dims = {1};

  // Split every full index into (kept index, traced index) once.
  const std::size_t n = rho.size();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto digits = unravel(i, dims);
    std::size_t k = 0, t = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s]) {
        k = k * dims[s] + digits[s];
      } else {
        t = t * dims[s] + digits[s];
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  const auto m = static_cast<Eigen::Index>(product(out_dims));
  CMatrix out = CMatrix::Zero(m, m);
  const CMatrix& r = rho.entries();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (traced_index[i] == traced_index[j]) {
        out(kept_index[i], kept_index[j]) += r(i, j);
      }
    }
  }
  return OperatorMatrix(std::move(out), std::move(out_dims));
}

double expectation(const OperatorMatrix& op, const StateVector& psi) {
  if (op.size() != psi.size()) throw DimensionMismatch("expectation: dimension mismatch");
  if (!op.is_hermitian()) throw InvalidArgument("expectation: operator is not Hermitian");
  const cplx value = psi.amplitudes().dot(op.entries() * psi.amplitudes());
  if (std::abs(value.imag()) >= 1e-12) {
    throw std::logic_error("expectation: imaginary residue of a Hermitian form");
  }
  return value.real();
}

double fidelity(const DensityMatrix2& rho, const DensityMatrix2& sigma) {
  // For qubits: F = Tr(rho sigma) + 2 sqrt(det rho det sigma).
  const double overlap = (rho.entries() * sigma.entries()).trace().real();
  const double det_r = std::max(0.0, rho.entries().determinant().real());
  const double det_s = std::max(0.0, sigma.entries().determinant().real());
  return std::clamp(overlap + 2.0 * std::sqrt(det_r * det_s), 0.0, 1.0);
}

namespace pauli {

Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }

Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

}  // namespace vistomo
