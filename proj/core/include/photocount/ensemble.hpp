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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "photocount/fock.hpp"

namespace photocount {

enum class EnsembleKind { bloch_two_state, haar };
enum class MeasureKind { quadrature, monte_carlo };

struct BlochCoords {
  double theta = 0.0;  ///< radians, [0, pi]
  double phi = 0.0;    ///< radians
};

struct EnsembleSample {
  StateVector state;
  double weight = 0.0;  ///< discretised p(a) da
  std::optional<BlochCoords> coords;
};

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on the three-term Legendre recurrence.
QuadratureRule gauss_legendre(int order);

/// Weighted family of pure states supported on |0>..|support_dim - 1>.
/// States are stored as the columns of a dim x size matrix.
class Ensemble {
 public:
  Ensemble(EnsembleKind kind, MeasureKind measure, int support_dim, Matrix states,
           std::vector<double> weights, std::vector<BlochCoords> coords,
           std::optional<std::uint64_t> seed);

  EnsembleKind kind() const { return kind_; }
  MeasureKind measure() const { return measure_; }
  int support_dim() const { return support_dim_; }
  int dim() const { return static_cast<int>(states_.rows()); }
  std::size_t size() const { return weights_.size(); }
  std::optional<std::uint64_t> seed() const { return seed_; }

  const Matrix& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }
  /// Empty unless kind() == bloch_two_state.
  const std::vector<BlochCoords>& coords() const { return coords_; }

  EnsembleSample sample(std::size_t index) const;

 private:
  EnsembleKind kind_;
  MeasureKind measure_;
  int support_dim_;
  Matrix states_;
  std::vector<double> weights_;
  std::vector<BlochCoords> coords_;
  std::optional<std::uint64_t> seed_;
};

/// Two-state family cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> under the
/// uniform sphere measure sin(theta) dtheta dphi / 4pi. All two-state
/// integrands depend on theta only, so phi is fixed at 0 and theta is
/// integrated with Gauss-Legendre nodes on [0, pi] weighted by sin(theta)/2.
/// Requires nodes >= 8 and dim >= 4.
Ensemble bloch_two_state_ensemble(int nodes, int dim);

/// Haar-uniform pure states on span{|0>..|d-1>}: complex Gaussian vectors
/// normalised, each sample drawn from CounterRng(seed, index). Uniform
/// weights. Requires 2 <= d <= dim - 2 and n_samples >= 10^4.
Ensemble haar_ensemble(int d, int n_samples, std::uint64_t seed, int dim, int threads = 1);

/// sum_a w_a f(a), reduced in a fixed pairwise order. Throws
/// std::domain_error if f returns a non-finite value.
double expectation(const Ensemble& ensemble,
                   const std::function<double(const EnsembleSample&)>& f);

/// Projector onto the ensemble's support.
Operator support_projector(const Ensemble& ensemble);

}  // namespace photocount
