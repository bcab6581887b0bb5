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
#include <string>
#include <vector>

#include "photocount/counters.hpp"
#include "photocount/ensemble.hpp"
#include "photocount/fock.hpp"

namespace photocount {

/// Two-outcome reversing measurement {success, fail} for one outcome m of a
/// first measurement. success_op = eta * M^{-1} on the support (pseudo-inverse,
/// zero on the orthogonal complement of M's range) and
/// fail_op = sqrt(I - success^dagger success).
struct ReversingMeasurement {
  std::string target_outcome;
  Operator success_op;
  Operator fail_op;
  double eta_sq = 0.0;      ///< |eta|^2
  double background = 0.0;  ///< b_m of the reversed operator
};

/// Builds the reversing measurement with |eta|^2 = eta_fraction * b_m.
/// Throws NonReversible if b_m <= 1e-12 (no bounded left inverse on the
/// support) and std::invalid_argument if eta_fraction is outside (0, 1].
ReversingMeasurement build_reversing(const Operator& op, const Operator& support,
                                     double eta_fraction = 1.0,
                                     std::string target_outcome = "1");

struct RecoveryResult {
  double success_prob = 0.0;       ///< <psi_m|R^dagger R|psi_m>
  double recovery_fidelity = 0.0;  ///< |<psi|psi_{m,success}>|
};

/// Measures `state` with `op`, then applies the success branch of `rev`.
/// Throws ZeroProbability if `op` cannot fire on `state`.
RecoveryResult verify_recovery(const StateVector& state, const Operator& op,
                               const ReversingMeasurement& rev);

/// p(a | m, success) over the ensemble: proportional to
/// w_a p(m|a) p(success|m,a), which is w_a |eta|^2 for an exact reversal.
std::vector<double> erasure_posterior(const Operator& op, const ReversingMeasurement& rev,
                                      const Ensemble& ensemble);

struct TrajectoryStats {
  std::int64_t trials = 0;
  std::int64_t one_counts = 0;
  std::int64_t successes = 0;
  double mean_recovery_fidelity = 0.0;  ///< over successful trajectories
  double min_recovery_fidelity = 0.0;   ///< over successful trajectories
  double empirical_success_rate = 0.0;  ///< successes / one_counts
  std::uint64_t seed = 0;

  friend bool operator==(const TrajectoryStats&, const TrajectoryStats&) = default;
};

/// Seeded measure-then-reverse Monte Carlo. Each trial draws a state from the
/// ensemble weights, a one-count with probability p(1|a), and on a one-count
/// the success branch of the maximal reversing measurement. Trial t uses
/// CounterRng(seed, t), so the result does not depend on `threads`.
/// Throws NonReversible for PC and QPC; requires trials >= 10^4.
TrajectoryStats trajectory_sim(CounterKind kind, double gamma, const Ensemble& ensemble,
                               std::int64_t trials, std::uint64_t seed, int threads = 1);

}  // namespace photocount
