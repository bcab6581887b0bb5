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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "photocount/errors.hpp"
#include "photocount/metrics.hpp"

using namespace photocount;

namespace {

constexpr int kDim = 5;
constexpr double kGamma = 0.3;

const Ensemble& bloch() {
  static const Ensemble e = bloch_two_state_ensemble(64, kDim);
  return e;
}

const Operator& support() {
  static const Operator p = support_projector(bloch());
  return p;
}

StateVector random_two_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v = Vector::Zero(kDim);
  v(0) = Complex(normal(rng), normal(rng));
  v(1) = Complex(normal(rng), normal(rng));
  return StateVector(v).normalized();
}

ReversingMeasurement reverse_one_count(CounterKind kind, double eta_fraction = 1.0) {
  return build_reversing(build_counter(kind, kGamma, kDim).op("1"), support(), eta_fraction);
}

}  // namespace

TEST(reversal, quantum_counter_strength) {
  const ReversingMeasurement rev = reverse_one_count(CounterKind::QC);
  EXPECT_NEAR(rev.eta_sq, kGamma * kGamma, 1e-14);
  EXPECT_NEAR(rev.background, kGamma * kGamma, 1e-14);
  EXPECT_EQ(rev.target_outcome, "1");
}

TEST(reversal, photon_counters_are_not_reversible) {
  EXPECT_THROW(reverse_one_count(CounterKind::PC), NonReversible);
  EXPECT_THROW(reverse_one_count(CounterKind::QPC), NonReversible);
  try {
    reverse_one_count(CounterKind::PC);
  } catch (const NonReversible& e) {
    EXPECT_EQ(std::string(e.what()).rfind("background = ", 0), 0u) << e.what();
  }
}

TEST(reversal, eta_fraction_validation) {
  EXPECT_THROW(reverse_one_count(CounterKind::QC, 0.0), std::invalid_argument);
  EXPECT_THROW(reverse_one_count(CounterKind::QC, 1.5), std::invalid_argument);
}

TEST(reversal, superposition_recovery) {
  const Operator op = build_counter(CounterKind::QC, kGamma, kDim).op("1");
  Vector v = Vector::Zero(kDim);
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  const RecoveryResult r = verify_recovery(StateVector(v), op, reverse_one_count(CounterKind::QC));
  EXPECT_NEAR(r.success_prob, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.recovery_fidelity, 1.0, 1e-12);
}

TEST(reversal, quadratic_counter_on_vacuum_always_succeeds) {
  const Operator op = build_counter(CounterKind::QQC, kGamma, kDim).op("1");
  const RecoveryResult r =
      verify_recovery(StateVector::fock(0, kDim), op, reverse_one_count(CounterKind::QQC));
  EXPECT_NEAR(r.success_prob, 1.0, 1e-12);
  EXPECT_NEAR(r.recovery_fidelity, 1.0, 1e-12);
}

TEST(reversal, success_probability_is_inverse_mean_photon_number_plus_one) {
  const Operator op = build_counter(CounterKind::QC, kGamma, kDim).op("1");
  const ReversingMeasurement rev = reverse_one_count(CounterKind::QC);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const StateVector psi = random_two_state(rng);
    EXPECT_NEAR(verify_recovery(psi, op, rev).success_prob, 1.0 / (moments(psi).n1 + 1.0),
                1e-12);
  }
}

TEST(reversal, reduced_strength_scales_success) {
  const Operator op = build_counter(CounterKind::QC, kGamma, kDim).op("1");
  const StateVector psi = StateVector::fock(1, kDim);
  const double full = verify_recovery(psi, op, reverse_one_count(CounterKind::QC)).success_prob;
  const RecoveryResult half = verify_recovery(psi, op, reverse_one_count(CounterKind::QC, 0.5));
  EXPECT_NEAR(half.success_prob, 0.5 * full, 1e-12);
  EXPECT_NEAR(half.recovery_fidelity, 1.0, 1e-12);
}

TEST(reversal, reversing_pair_is_complete) {
  for (CounterKind kind : {CounterKind::QC, CounterKind::QQC}) {
    for (double fraction : {1.0, 0.3}) {
      const ReversingMeasurement rev = reverse_one_count(kind, fraction);
      const Operator sum =
          rev.success_op.adjoint() * rev.success_op + rev.fail_op.adjoint() * rev.fail_op;
      EXPECT_LT(spectral_norm(sum - Operator::identity(kDim)), 1e-12);
      EXPECT_TRUE(rev.fail_op.is_hermitian());
    }
  }
}

TEST(reversal, success_times_count_probability_is_constant) {
  std::mt19937_64 rng(5);
  for (CounterKind kind : {CounterKind::QC, CounterKind::QQC}) {
    const Operator op = build_counter(kind, kGamma, kDim).op("1");
    const ReversingMeasurement rev = reverse_one_count(kind);
    for (int i = 0; i < 1000; ++i) {
      const StateVector psi = random_two_state(rng);
      const RecoveryResult r = verify_recovery(psi, op, rev);
      EXPECT_NEAR(r.success_prob * outcome_probability(op, psi), rev.eta_sq, 1e-12);
      EXPECT_NEAR(r.recovery_fidelity, 1.0, 1e-12);
    }
  }
}

TEST(reversal, posterior_averaged_success_equals_reversibility) {
  for (CounterKind kind : {CounterKind::QC, CounterKind::QQC}) {
    const MeasurementModel model = build_counter(kind, kGamma, kDim);
    const ReversingMeasurement rev = reverse_one_count(kind);
    const auto stats = outcome_statistics(model, bloch());
    double averaged = 0.0;
    for (std::size_t a = 0; a < bloch().size(); ++a) {
      averaged += stats[1].posterior[a] *
                  verify_recovery(bloch().sample(a).state, model.op("1"), rev).success_prob;
    }
    EXPECT_NEAR(averaged, reversibility(model, bloch(), "1"), 1e-12);
  }
  const MeasurementModel qc = build_counter(CounterKind::QC, kGamma, kDim);
  EXPECT_NEAR(reversibility(qc, bloch(), "1"), 2.0 / 3.0, 1e-12);
}

TEST(reversal, successful_reversal_erases_information) {
  for (CounterKind kind : {CounterKind::QC, CounterKind::QQC}) {
    const Operator op = build_counter(kind, kGamma, kDim).op("1");
    const std::vector<double> post = erasure_posterior(op, reverse_one_count(kind), bloch());
    ASSERT_EQ(post.size(), bloch().size());
    for (std::size_t a = 0; a < post.size(); ++a) {
      EXPECT_NEAR(post[a], bloch().weights()[a], 1e-10);
    }
  }
}

TEST(reversal, trajectory_success_rates) {
  const TrajectoryStats qc =
      trajectory_sim(CounterKind::QC, kGamma, bloch(), 1'000'000, 42, 1);
  const double sigma_qc =
      std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / static_cast<double>(qc.one_counts));
  EXPECT_NEAR(qc.empirical_success_rate, 2.0 / 3.0, 4.0 * sigma_qc);
  EXPECT_NEAR(static_cast<double>(qc.one_counts) / 1e6, 0.135, 4.0 * std::sqrt(0.135 * 0.865 / 1e6));
  EXPECT_NEAR(qc.mean_recovery_fidelity, 1.0, 1e-12);
  EXPECT_GE(qc.min_recovery_fidelity, 1.0 - 1e-12);
  EXPECT_EQ(qc.trials, 1'000'000);
  EXPECT_EQ(qc.seed, 42u);

  const TrajectoryStats qqc =
      trajectory_sim(CounterKind::QQC, kGamma, bloch(), 1'000'000, 42, 1);
  const double sigma_qqc = std::sqrt(0.4 * 0.6 / static_cast<double>(qqc.one_counts));
  EXPECT_NEAR(qqc.empirical_success_rate, 0.4, 4.0 * sigma_qqc);
}

TEST(reversal, trajectory_is_seeded_and_thread_independent) {
  const TrajectoryStats a = trajectory_sim(CounterKind::QC, kGamma, bloch(), 50'000, 9, 1);
  const TrajectoryStats b = trajectory_sim(CounterKind::QC, kGamma, bloch(), 50'000, 9, 1);
  const TrajectoryStats c = trajectory_sim(CounterKind::QC, kGamma, bloch(), 50'000, 9, 3);
  const TrajectoryStats d = trajectory_sim(CounterKind::QC, kGamma, bloch(), 50'000, 10, 1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a.successes, d.successes);
}

TEST(reversal, trajectory_validation) {
  EXPECT_THROW(trajectory_sim(CounterKind::PC, kGamma, bloch(), 10'000, 1), NonReversible);
  EXPECT_THROW(trajectory_sim(CounterKind::QPC, kGamma, bloch(), 10'000, 1), NonReversible);
  EXPECT_THROW(trajectory_sim(CounterKind::QC, kGamma, bloch(), 9'999, 1),
               std::invalid_argument);
}
