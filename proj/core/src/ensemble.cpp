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

#include "photocount/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "photocount/parallel.hpp"
#include "photocount/rng.hpp"

namespace photocount {

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) + 1.0) * z * p2 - static_cast<double>(j) * p3) /
             (static_cast<double>(j) + 1.0);
      }
      derivative = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= 1e-15) break;
    }
    const double weight = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = weight;
    rule.weights[n - 1 - i] = weight;
  }
  return rule;
}

Ensemble::Ensemble(EnsembleKind kind, MeasureKind measure, int support_dim, Matrix states,
                   std::vector<double> weights, std::vector<BlochCoords> coords,
                   std::optional<std::uint64_t> seed)
    : kind_(kind),
      measure_(measure),
      support_dim_(support_dim),
      states_(std::move(states)),
      weights_(std::move(weights)),
      coords_(std::move(coords)),
      seed_(seed) {
  if (states_.cols() != static_cast<Eigen::Index>(weights_.size())) {
    throw std::invalid_argument("Ensemble: one weight per state required");
  }
  if (!coords_.empty() && coords_.size() != weights_.size()) {
    throw std::invalid_argument("Ensemble: coordinate count mismatch");
  }
  if (support_dim_ < 1 || support_dim_ > states_.rows()) {
    throw std::invalid_argument("Ensemble: support_dim out of range");
  }
}

EnsembleSample Ensemble::sample(std::size_t index) const {
  std::optional<BlochCoords> c;
  if (!coords_.empty()) c = coords_[index];
  return EnsembleSample{StateVector(states_.col(static_cast<Eigen::Index>(index))),
                        weights_[index], c};
}

Ensemble bloch_two_state_ensemble(int nodes, int dim) {
  if (nodes < 8) throw std::invalid_argument("bloch_two_state_ensemble: nodes must be >= 8");
  if (dim < 4) throw std::invalid_argument("bloch_two_state_ensemble: dim must be >= 4");

  const QuadratureRule rule = gauss_legendre(nodes);
  const auto n = static_cast<std::size_t>(nodes);
  Matrix states = Matrix::Zero(dim, nodes);
  std::vector<double> weights(n);
  std::vector<BlochCoords> coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
    weights[i] = rule.weights[i] * 0.5 * std::numbers::pi * 0.5 * std::sin(theta);
    coords[i] = BlochCoords{theta, 0.0};
    states(0, static_cast<Eigen::Index>(i)) = std::cos(0.5 * theta);
    states(1, static_cast<Eigen::Index>(i)) = std::sin(0.5 * theta);
  }
  const double total = pairwise_sum(weights);
  for (double& w : weights) w /= total;
  return Ensemble(EnsembleKind::bloch_two_state, MeasureKind::quadrature, 2, std::move(states),
                  std::move(weights), std::move(coords), std::nullopt);
}

Ensemble haar_ensemble(int d, int n_samples, std::uint64_t seed, int dim, int threads) {
  if (d < 2 || d > dim - 2) {
    throw std::invalid_argument("haar_ensemble: need 2 <= d <= dim - 2");
  }
  if (n_samples < 10000) throw std::invalid_argument("haar_ensemble: n_samples must be >= 10^4");

  Matrix states = Matrix::Zero(dim, n_samples);
  parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t index) {
    CounterRng rng(seed, index);
    const auto col = static_cast<Eigen::Index>(index);
    for (int k = 0; k < d; ++k) {
      const auto [re, im] = rng.normal_pair();
      states(k, col) = Complex(re, im);
    }
    states.col(col).normalize();
  });
  std::vector<double> weights(static_cast<std::size_t>(n_samples), 1.0 / n_samples);
  return Ensemble(EnsembleKind::haar, MeasureKind::monte_carlo, d, std::move(states),
                  std::move(weights), {}, seed);
}

double expectation(const Ensemble& ensemble,
                   const std::function<double(const EnsembleSample&)>& f) {
  std::vector<double> terms(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const EnsembleSample s = ensemble.sample(i);
    const double value = f(s);
    if (!std::isfinite(value)) {
      throw std::domain_error("expectation: non-finite integrand at sample " + std::to_string(i));
    }
    terms[i] = s.weight * value;
  }
  return pairwise_sum(terms);
}

Operator support_projector(const Ensemble& ensemble) {
  return fock_projector(ensemble.support_dim(), ensemble.dim());
}

}  // namespace photocount
