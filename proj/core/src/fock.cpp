// Copyright 2026 The photocount Authors
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

#include "photocount/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace photocount {
namespace {

void require_same_dim(int lhs, int rhs, const char* what) {
  if (lhs != rhs) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(lhs) + " vs " +
                                std::to_string(rhs) + ")");
  }
}

// Extends `basis` (orthonormal columns) by Gram-Schmidt over e_0, e_1, ...
// and returns only the new columns, `count` of them.
Matrix complete_in_fock_order(const Matrix& basis, Eigen::Index dim,
                              Eigen::Index count) {
  Matrix span = basis;
  Matrix added(dim, count);
  Eigen::Index found = 0;
  for (Eigen::Index k = 0; k < dim && found < count; ++k) {
    Vector v = Vector::Unit(dim, k);
    for (int pass = 0; pass < 2; ++pass) {
      if (span.cols() > 0) v -= span * (span.adjoint() * v);
    }
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    v /= norm;
    span.conservativeResize(Eigen::NoChange, span.cols() + 1);
    span.col(span.cols() - 1) = v;
    added.col(found++) = v;
  }
  if (found != count) {
    throw std::logic_error("complete_in_fock_order: basis completion failed");
  }
  return added;
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw std::invalid_argument("StateVector: dim must be >= 1");
  }
}

StateVector StateVector::fock(int n, int dim) {
  if (dim < 1 || n < 0 || n >= dim) {
    throw std::invalid_argument("StateVector::fock: need 0 <= n < dim");
  }
  return StateVector(Vector::Unit(dim, n));
}

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(norm_squared() - 1.0) <= tolerance;
}

StateVector StateVector::normalized() const {
  const double norm = amplitudes_.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("StateVector::normalized: zero vector");
  }
  return StateVector(amplitudes_ / norm);
}

Complex StateVector::inner(const StateVector& other) const {
  require_same_dim(dim(), other.dim(), "StateVector::inner");
  return amplitudes_.dot(other.amplitudes_);
}

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("Operator: need a non-empty square matrix");
  }
}

Operator Operator::identity(int dim) {
  if (dim < 1) throw std::invalid_argument("Operator::identity: dim must be >= 1");
  return Operator(Matrix::Identity(dim, dim));
}

Operator Operator::zero(int dim) {
  if (dim < 1) throw std::invalid_argument("Operator::zero: dim must be >= 1");
  return Operator(Matrix::Zero(dim, dim));
}

Operator Operator::diagonal(const Eigen::VectorXd& entries) {
  return Operator(entries.cast<Complex>().asDiagonal());
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint()); }

bool Operator::is_hermitian(double tolerance) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs.dim(), rhs.dim(), "Operator product");
  return Operator(lhs.entries_ * rhs.entries_);
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs.dim(), rhs.dim(), "Operator sum");
  return Operator(lhs.entries_ + rhs.entries_);
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs.dim(), rhs.dim(), "Operator difference");
  return Operator(lhs.entries_ - rhs.entries_);
}

Operator operator*(Complex scale, const Operator& op) {
  return Operator(scale * op.entries_);
}

StateVector operator*(const Operator& op, const StateVector& state) {
  require_same_dim(op.dim(), state.dim(), "Operator application");
  return StateVector(op.entries_ * state.amplitudes());
}

Operator ladder(LadderKind kind, int dim) {
  if (dim < 1) throw std::invalid_argument("ladder: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  switch (kind) {
    case LadderKind::annihilation:
      for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
      break;
    case LadderKind::creation:
      for (int n = 1; n < dim; ++n) m(n, n - 1) = std::sqrt(static_cast<double>(n));
      break;
    case LadderKind::number:
      for (int n = 0; n < dim; ++n) m(n, n) = n;
      break;
    case LadderKind::antinormal_number:
      for (int n = 0; n < dim; ++n) m(n, n) = n + 1;
      break;
  }
  return Operator(std::move(m));
}

Operator fock_projector(int support_dim, int dim) {
  if (dim < 1 || support_dim < 0 || support_dim > dim) {
    throw std::invalid_argument("fock_projector: need 0 <= support_dim <= dim");
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  diag.head(support_dim).setOnes();
  return Operator::diagonal(diag);
}

int top_fock_level(const Operator& projector) {
  for (int n = projector.dim() - 1; n >= 0; --n) {
    if (std::abs(projector(n, n)) > 1e-12) return n;
  }
  return -1;
}

Matrix support_basis(const Operator& projector) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(projector.matrix());
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > 0.5) kept.push_back(i);
  }
  Matrix basis(projector.dim(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(kept[j]);
  }
  return basis;
}

double min_eigenvalue(const Operator& op, const Operator& support) {
  require_same_dim(op.dim(), support.dim(), "min_eigenvalue");
  const Matrix basis = support_basis(support);
  if (basis.cols() == 0) {
    throw std::invalid_argument("min_eigenvalue: support has rank zero");
  }
  Matrix compressed = basis.adjoint() * op.matrix() * basis;
  compressed = 0.5 * (compressed + compressed.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(compressed, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double spectral_norm(const Operator& op) { return spectral_norm(op.matrix()); }

double spectral_norm_on(const Operator& op, const Operator& support) {
  require_same_dim(op.dim(), support.dim(), "spectral_norm_on");
  return spectral_norm(Matrix(op.matrix() * support_basis(support)));
}

Operator hermitian_sqrt(const Operator& op) {
  Matrix symmetric = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = solver.eigenvectors();
  return Operator(v * roots.cast<Complex>().asDiagonal() * v.adjoint());
}

PolarFactors polar_decompose(const Operator& op) {
  const Eigen::Index dim = op.dim();
  Matrix gram = op.matrix().adjoint() * op.matrix();
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  const Eigen::VectorXd singular = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = solver.eigenvectors();

  const double threshold = 1e-10 * std::max(1.0, singular.maxCoeff());
  std::vector<Eigen::Index> range;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (singular(i) > threshold) range.push_back(i);
  }
  const auto rank = static_cast<Eigen::Index>(range.size());

  Matrix v_range(dim, rank);
  Matrix w_range(dim, rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    const Eigen::Index i = range[static_cast<std::size_t>(j)];
    v_range.col(j) = v.col(i);
    w_range.col(j) = op.matrix() * v.col(i) / singular(i);
  }

  Matrix unitary = w_range * v_range.adjoint();
  if (rank < dim) {
    const Matrix kernel = complete_in_fock_order(v_range, dim, dim - rank);
    const Matrix cokernel = complete_in_fock_order(w_range, dim, dim - rank);
    unitary += cokernel * kernel.adjoint();
  }

  Matrix positive = v * singular.cast<Complex>().asDiagonal() * v.adjoint();
  return PolarFactors{Operator(std::move(unitary)), Operator(std::move(positive))};
}

Operator matrix_exponential(const Operator& op, Complex scale) {
  const Eigen::Index dim = op.dim();
  Matrix a = scale * op.matrix();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  a /= std::ldexp(1.0, squarings);

  Matrix result = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int k = 1; k <= 40; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return Operator(std::move(result));
}

Operator kron(const Operator& lhs, const Operator& rhs) {
  const Eigen::Index n = lhs.dim();
  const Eigen::Index m = rhs.dim();
  Matrix out(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.block(i * m, j * m, m, m) = lhs(static_cast<int>(i), static_cast<int>(j)) * rhs.matrix();
    }
  }
  return Operator(std::move(out));
}

}  // namespace photocount
