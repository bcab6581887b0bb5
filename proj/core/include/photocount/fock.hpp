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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace photocount {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Amplitudes c_n of a field state over the truncated Fock basis |0>..|dim-1>.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  /// The number state |n> in a space of dimension `dim`.
  static StateVector fock(int n, int dim);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_(n); }

  double norm_squared() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(double tolerance = 1e-12) const;
  StateVector normalized() const;

  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  Vector amplitudes_;
};

/// Square complex matrix acting on a truncated Fock space. Rows and columns
/// are indexed by photon number.
class Operator {
 public:
  explicit Operator(Matrix entries);

  static Operator identity(int dim);
  static Operator zero(int dim);
  /// Diagonal operator with the given real entries.
  static Operator diagonal(const Eigen::VectorXd& entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  Operator adjoint() const;
  bool is_hermitian(double tolerance = 1e-12) const;

  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator+(const Operator& lhs, const Operator& rhs);
  friend Operator operator-(const Operator& lhs, const Operator& rhs);
  friend Operator operator*(Complex scale, const Operator& op);
  friend StateVector operator*(const Operator& op, const StateVector& state);

 private:
  Matrix entries_;
};

enum class LadderKind { annihilation, creation, number, antinormal_number };

/// Ladder operators on a dim-level truncation. `creation` is the adjoint of
/// the truncated annihilation operator, so it maps |dim-1> to zero.
/// `antinormal_number` is a a^dagger defined exactly as diag(1, 2, ..., dim)
/// rather than through the truncated product, which would be wrong on the top
/// level.
Operator ladder(LadderKind kind, int dim);

/// Projector onto span{|0>, ..., |support_dim - 1>}.
Operator fock_projector(int support_dim, int dim);

/// Highest Fock level with non-negligible weight on the projector's diagonal,
/// or -1 for the zero projector.
int top_fock_level(const Operator& projector);

/// Orthonormal basis (as columns) of the range of an orthogonal projector.
Matrix support_basis(const Operator& projector);

/// Smallest eigenvalue of the compression of a Hermitian `op` to the range of
/// `support`; equals the infimum of <psi|op|psi> over unit states in that range.
/// Throws std::invalid_argument for a zero-rank support.
double min_eigenvalue(const Operator& op, const Operator& support);

/// Largest singular value.
double spectral_norm(const Matrix& m);
double spectral_norm(const Operator& op);

/// Spectral norm of op restricted to the range of `support`, i.e. ||op P||.
double spectral_norm_on(const Operator& op, const Operator& support);

/// Non-negative square root of a Hermitian positive semidefinite operator.
/// Eigenvalues below zero (rounding) are clamped.
Operator hermitian_sqrt(const Operator& op);

struct PolarFactors {
  Operator unitary;
  Operator positive;
};

/// op = unitary * positive with positive = sqrt(op^dagger op). On the kernel of
/// `positive` the unitary maps an orthonormal kernel basis onto an orthonormal
/// basis of the orthogonal complement of range(op); both bases are produced
/// by Gram-Schmidt over number states in ascending order.
PolarFactors polar_decompose(const Operator& op);

/// exp(scale * op) by scaling and squaring of a Taylor series.
Operator matrix_exponential(const Operator& op, Complex scale);

/// Tensor product with `lhs` as the slow (outer) index.
Operator kron(const Operator& lhs, const Operator& rhs);

}  // namespace photocount
