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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "photocount/counters.hpp"
#include "photocount/ensemble.hpp"
#include "photocount/fock.hpp"

namespace photocount {

/// n1 = sum n |c_n|^2, n2 = sum n^2 |c_n|^2, n3 = sum (n+1)^2 |c_n|^2.
struct Moments {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;
};

Moments moments(const StateVector& state);

/// <psi|op^dagger op|psi>. Throws std::invalid_argument if the state is not
/// normalised (tolerance 1e-10).
double outcome_probability(const Operator& op, const StateVector& state);

/// op|psi> / sqrt(p). Throws ZeroProbability when p <= 1e-15.
StateVector post_measurement_state(const Operator& op, const StateVector& state);

/// Bayesian bookkeeping for one outcome over an ensemble.
struct OutcomeStats {
  std::string outcome;
  std::vector<double> conditional;  ///< p(m|a) per sample
  double total = 0.0;               ///< p(m) = sum_a w_a p(m|a)
  std::vector<double> posterior;    ///< p(a|m) as weights summing to 1
  std::vector<double> prior;        ///< w_a
};

/// One OutcomeStats per model outcome, in model order.
std::vector<OutcomeStats> outcome_statistics(const MeasurementModel& model,
                                             const Ensemble& ensemble, int threads = 1);

/// Relative entropy sum_a p(a|m) log2(p(a|m) / w_a), with 0 log 0 = 0. For a
/// uniform prior over N states this is log2 N - H(m).
double information_gain(const OutcomeStats& stats);

/// sum_{m,a} w_a p(m|a) log2(p(m|a) / p(m)); the mutual information between
/// the ensemble label and the outcome.
double mutual_information(const std::vector<OutcomeStats>& stats);

/// sum_m p(m) I(m). Cross-checked against mutual_information(); throws
/// NumericFailure if they differ by more than 1e-10.
double mean_information(const MeasurementModel& model, const Ensemble& ensemble,
                        int threads = 1);

/// sum_a p(a|m) |<psi(a)|psi(m,a)>|. Samples with p(m|a) <= 1e-15 carry no
/// posterior mass and are skipped. Throws ZeroProbability if p(m) == 0.
double fidelity_after(const MeasurementModel& model, const Ensemble& ensemble,
                      std::string_view outcome, int threads = 1);

double mean_fidelity(const MeasurementModel& model, const Ensemble& ensemble, int threads = 1);

/// b_m = min over unit states in the support of <psi|M_m^dagger M_m|psi>.
double background(const MeasurementModel& model, std::string_view outcome,
                  const Operator& support);

/// sum_a p(a|m) b_m / p(m|a), skipping samples with p(m|a) <= 1e-15.
double reversibility(const MeasurementModel& model, const Ensemble& ensemble,
                     std::string_view outcome, int threads = 1);

/// sum_m p(m) R(m). Cross-checked against sum_m b_m; throws NumericFailure if
/// they differ by more than 1e-10.
double mean_reversibility(const MeasurementModel& model, const Ensemble& ensemble,
                          int threads = 1);

/// I / (1 - F). Throws FidelityOne when F >= 1 - 1e-12.
double efficiency(double information, double fidelity);

struct OutcomeReport {
  std::string outcome;
  double probability = 0.0;
  double background = 0.0;
  // Unset when the outcome has zero total probability.
  std::optional<double> information;
  std::optional<double> fidelity;
  std::optional<double> reversibility;
  // Unset when F(m) is 1 to within 1e-12 as well.
  std::optional<double> efficiency;
};

struct CounterReport {
  std::string label;
  double gamma = 0.0;
  std::vector<OutcomeReport> per_outcome;
  double mean_information = 0.0;
  double mean_fidelity = 0.0;
  double mean_reversibility = 0.0;
  double mutual_information = 0.0;  ///< double-sum route
  double background_sum = 0.0;      ///< sum_m b_m
  double probability_sum = 0.0;     ///< sum_m p(m)
  double completeness_residual = 0.0;

  const OutcomeReport& outcome(std::string_view label) const;
};

/// Every statistic for one model over one ensemble. Asserts the identities
/// mean I = mutual information, mean R = sum b_m (both 1e-10) and
/// |sum p(m) - 1| <= 2 * completeness residual + 1e-12; throws NumericFailure
/// otherwise.
CounterReport full_report(const MeasurementModel& model, const Ensemble& ensemble,
                          int threads = 1);
CounterReport full_report(CounterKind kind, double gamma, const Ensemble& ensemble,
                          int threads = 1);

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Information gain of an outcome from equally weighted samples of p(m|a),
/// with a delta-method standard error.
McEstimate information_gain_mc(std::span<const double> conditional);

/// I_a - I_b from paired samples (same ensemble draws), with a delta-method
/// standard error that accounts for the pairing.
McEstimate information_gain_difference_mc(std::span<const double> conditional_a,
                                          std::span<const double> conditional_b);

}  // namespace photocount
