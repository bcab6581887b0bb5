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

#include "photocount/reversal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "photocount/errors.hpp"
#include "photocount/metrics.hpp"
#include "photocount/parallel.hpp"
#include "photocount/rng.hpp"

namespace photocount {
namespace {

constexpr std::int64_t kTrialBlock = 4096;

struct BlockTally {
  std::int64_t one_counts = 0;
  std::int64_t successes = 0;
  double fidelity_sum = 0.0;
  double fidelity_min = std::numeric_limits<double>::infinity();
};

}  // namespace

ReversingMeasurement build_reversing(const Operator& op, const Operator& support,
                                     double eta_fraction, std::string target_outcome) {
  if (!(eta_fraction > 0.0 && eta_fraction <= 1.0)) {
    throw std::invalid_argument("build_reversing: eta_fraction must lie in (0, 1]");
  }
  const double b = min_eigenvalue(op.adjoint() * op, support);
  if (b <= 1e-12) {
    throw NonReversible("background = " + std::to_string(std::max(b, 0.0)) +
                        ": measurement operator has no bounded left inverse on the support");
  }
  const Matrix basis = support_basis(support);
  const Matrix restricted = op.matrix() * basis;
  const Matrix gram = restricted.adjoint() * restricted;
  const Matrix left_inverse = gram.ldlt().solve(restricted.adjoint());

  const double eta_sq = eta_fraction * b;
  const Operator success(std::sqrt(eta_sq) * basis * left_inverse);
  const Operator fail =
      hermitian_sqrt(Operator::identity(op.dim()) - success.adjoint() * success);
  return ReversingMeasurement{std::move(target_outcome), success, fail, eta_sq, b};
}

RecoveryResult verify_recovery(const StateVector& state, const Operator& op,
                               const ReversingMeasurement& rev) {
  const StateVector measured = post_measurement_state(op, state);
  const StateVector restored = rev.success_op * measured;
  const double success_prob = restored.norm_squared();
  if (success_prob <= 0.0) return RecoveryResult{0.0, 0.0};
  const double fidelity = std::abs(state.inner(restored)) / std::sqrt(success_prob);
  return RecoveryResult{success_prob, fidelity};
}

std::vector<double> erasure_posterior(const Operator& op, const ReversingMeasurement& rev,
                                      const Ensemble& ensemble) {
  std::vector<double> joint(ensemble.size());
  for (std::size_t a = 0; a < ensemble.size(); ++a) {
    const StateVector state(ensemble.states().col(static_cast<Eigen::Index>(a)));
    const double p_first = outcome_probability(op, state);
    const double p_success = verify_recovery(state, op, rev).success_prob;
    joint[a] = ensemble.weights()[a] * p_first * p_success;
  }
  const double total = pairwise_sum(joint);
  for (double& x : joint) x /= total;
  return joint;
}

TrajectoryStats trajectory_sim(CounterKind kind, double gamma, const Ensemble& ensemble,
                               std::int64_t trials, std::uint64_t seed, int threads) {
  if (trials < 10000) throw std::invalid_argument("trajectory_sim: trials must be >= 10^4");
  const MeasurementModel model = build_counter(kind, gamma, ensemble.dim());
  const Operator& one = model.op("1");
  const ReversingMeasurement rev = build_reversing(one, support_projector(ensemble));

  // Per-state quantities are fixed; only the draws vary between trials.
  const std::size_t n = ensemble.size();
  std::vector<double> p_count(n), p_success(n), fidelity(n), cumulative(n);
  double running = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const StateVector state(ensemble.states().col(static_cast<Eigen::Index>(a)));
    p_count[a] = outcome_probability(one, state);
    const RecoveryResult r = verify_recovery(state, one, rev);
    p_success[a] = r.success_prob;
    fidelity[a] = r.recovery_fidelity;
    running += ensemble.weights()[a];
    cumulative[a] = running;
  }
  for (double& c : cumulative) c /= running;

  const std::int64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockTally> tallies(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), threads, [&](std::size_t block) {
    BlockTally tally;
    const std::int64_t begin = static_cast<std::int64_t>(block) * kTrialBlock;
    const std::int64_t end = std::min(trials, begin + kTrialBlock);
    for (std::int64_t t = begin; t < end; ++t) {
      CounterRng rng(seed, static_cast<std::uint64_t>(t));
      const double pick = rng.uniform();
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
      const std::size_t a =
          std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), n - 1);
      if (rng.uniform() >= p_count[a]) continue;
      ++tally.one_counts;
      if (rng.uniform() >= p_success[a]) continue;
      ++tally.successes;
      tally.fidelity_sum += fidelity[a];
      tally.fidelity_min = std::min(tally.fidelity_min, fidelity[a]);
    }
    tallies[block] = tally;
  });

  TrajectoryStats stats;
  stats.trials = trials;
  stats.seed = seed;
  std::vector<double> fidelity_sums;
  double fidelity_min = std::numeric_limits<double>::infinity();
  for (const BlockTally& t : tallies) {
    stats.one_counts += t.one_counts;
    stats.successes += t.successes;
    fidelity_sums.push_back(t.fidelity_sum);
    fidelity_min = std::min(fidelity_min, t.fidelity_min);
  }
  if (stats.successes > 0) {
    stats.mean_recovery_fidelity = pairwise_sum(fidelity_sums) / static_cast<double>(stats.successes);
    stats.min_recovery_fidelity = fidelity_min;
  }
  if (stats.one_counts > 0) {
    stats.empirical_success_rate =
        static_cast<double>(stats.successes) / static_cast<double>(stats.one_counts);
  }
  return stats;
}

}  // namespace photocount
