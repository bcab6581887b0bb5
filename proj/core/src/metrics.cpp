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

#include "photocount/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "photocount/errors.hpp"
#include "photocount/parallel.hpp"

namespace photocount {
namespace {

constexpr double kImpossible = 1e-15;
constexpr double kIdentityTolerance = 1e-10;

double xlog2x_ratio(double p, double q) {
  return p > 0.0 ? p * std::log2(p / q) : 0.0;
}

void check_compatible(const MeasurementModel& model, const Ensemble& ensemble) {
  if (model.dim != ensemble.dim()) {
    throw std::invalid_argument("model and ensemble dimensions differ");
  }
  if (ensemble.support_dim() > model.dim - 2) {
    throw std::invalid_argument("ensemble support needs two levels of headroom below dim");
  }
}

// Probability of every outcome on every sample; row-major [outcome][sample].
std::vector<std::vector<double>> conditional_table(const MeasurementModel& model,
                                                   const Ensemble& ensemble, int threads) {
  check_compatible(model, ensemble);
  std::vector<std::vector<double>> table(model.operators.size(),
                                         std::vector<double>(ensemble.size()));
  const Matrix& states = ensemble.states();
  parallel_for(ensemble.size(), threads, [&](std::size_t a) {
    const auto col = static_cast<Eigen::Index>(a);
    for (std::size_t m = 0; m < model.operators.size(); ++m) {
      table[m][a] = (model.operators[m].matrix() * states.col(col)).squaredNorm();
    }
  });
  return table;
}

OutcomeStats make_stats(std::string outcome, std::vector<double> conditional,
                        const std::vector<double>& prior) {
  OutcomeStats stats;
  stats.outcome = std::move(outcome);
  stats.prior = prior;
  std::vector<double> joint(prior.size());
  for (std::size_t a = 0; a < prior.size(); ++a) joint[a] = prior[a] * conditional[a];
  stats.total = pairwise_sum(joint);
  stats.posterior.assign(prior.size(), 0.0);
  if (stats.total > 0.0) {
    for (std::size_t a = 0; a < prior.size(); ++a) stats.posterior[a] = joint[a] / stats.total;
  }
  stats.conditional = std::move(conditional);
  return stats;
}

double fidelity_from(const Operator& op, const OutcomeStats& stats, const Ensemble& ensemble,
                     int threads) {
  if (!(stats.total > 0.0)) {
    throw ZeroProbability("fidelity_after: outcome " + stats.outcome + " has zero probability");
  }
  std::vector<double> terms(ensemble.size(), 0.0);
  const Matrix& states = ensemble.states();
  parallel_for(ensemble.size(), threads, [&](std::size_t a) {
    const double p = stats.conditional[a];
    if (p <= kImpossible) return;
    const auto col = static_cast<Eigen::Index>(a);
    const Complex overlap = states.col(col).dot(op.matrix() * states.col(col));
    terms[a] = stats.posterior[a] * std::abs(overlap) / std::sqrt(p);
  });
  return pairwise_sum(terms);
}

double reversibility_from(const OutcomeStats& stats, double b) {
  if (!(stats.total > 0.0)) {
    throw ZeroProbability("reversibility: outcome " + stats.outcome + " has zero probability");
  }
  std::vector<double> terms(stats.posterior.size(), 0.0);
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const double p = stats.conditional[a];
    if (p > kImpossible) terms[a] = stats.posterior[a] * b / p;
  }
  return pairwise_sum(terms);
}

}  // namespace

Moments moments(const StateVector& state) {
  Moments m;
  for (int n = 0; n < state.dim(); ++n) {
    const double w = std::norm(state[n]);
    m.n1 += n * w;
    m.n2 += static_cast<double>(n) * n * w;
    m.n3 += static_cast<double>(n + 1) * (n + 1) * w;
  }
  return m;
}

double outcome_probability(const Operator& op, const StateVector& state) {
  if (!state.is_normalized(1e-10)) {
    throw std::invalid_argument("outcome_probability: state is not normalised");
  }
  return (op * state).norm_squared();
}

StateVector post_measurement_state(const Operator& op, const StateVector& state) {
  const double p = outcome_probability(op, state);
  if (p <= kImpossible) {
    throw ZeroProbability("post_measurement_state: outcome has probability " + std::to_string(p));
  }
  return StateVector((op * state).amplitudes() / std::sqrt(p));
}

std::vector<OutcomeStats> outcome_statistics(const MeasurementModel& model,
                                             const Ensemble& ensemble, int threads) {
  auto table = conditional_table(model, ensemble, threads);
  std::vector<OutcomeStats> out;
  out.reserve(table.size());
  for (std::size_t m = 0; m < table.size(); ++m) {
    out.push_back(make_stats(model.outcomes[m], std::move(table[m]), ensemble.weights()));
  }
  return out;
}

double information_gain(const OutcomeStats& stats) {
  std::vector<double> terms(stats.posterior.size());
  for (std::size_t a = 0; a < terms.size(); ++a) {
    terms[a] = xlog2x_ratio(stats.posterior[a], stats.prior[a]);
  }
  return pairwise_sum(terms);
}

double mutual_information(const std::vector<OutcomeStats>& stats) {
  std::vector<double> per_outcome;
  for (const OutcomeStats& s : stats) {
    if (!(s.total > 0.0)) continue;
    std::vector<double> terms(s.prior.size());
    for (std::size_t a = 0; a < terms.size(); ++a) {
      terms[a] = s.prior[a] * xlog2x_ratio(s.conditional[a], s.total);
    }
    per_outcome.push_back(pairwise_sum(terms));
  }
  return pairwise_sum(per_outcome);
}

double mean_information(const MeasurementModel& model, const Ensemble& ensemble, int threads) {
  const auto stats = outcome_statistics(model, ensemble, threads);
  std::vector<double> terms;
  for (const OutcomeStats& s : stats) {
    if (s.total > 0.0) terms.push_back(s.total * information_gain(s));
  }
  const double mean = pairwise_sum(terms);
  const double mutual = mutual_information(stats);
  if (std::abs(mean - mutual) > kIdentityTolerance) {
    throw NumericFailure("mean information " + std::to_string(mean) +
                         " disagrees with mutual information " + std::to_string(mutual));
  }
  return mean;
}

double fidelity_after(const MeasurementModel& model, const Ensemble& ensemble,
                      std::string_view outcome, int threads) {
  const std::size_t m = model.index_of(outcome);
  auto table = conditional_table(model, ensemble, threads);
  const OutcomeStats stats =
      make_stats(model.outcomes[m], std::move(table[m]), ensemble.weights());
  return fidelity_from(model.operators[m], stats, ensemble, threads);
}

double mean_fidelity(const MeasurementModel& model, const Ensemble& ensemble, int threads) {
  const auto stats = outcome_statistics(model, ensemble, threads);
  std::vector<double> terms;
  for (std::size_t m = 0; m < stats.size(); ++m) {
    if (stats[m].total > 0.0) {
      terms.push_back(stats[m].total *
                      fidelity_from(model.operators[m], stats[m], ensemble, threads));
    }
  }
  return pairwise_sum(terms);
}

double background(const MeasurementModel& model, std::string_view outcome,
                  const Operator& support) {
  const Operator& op = model.op(outcome);
  return min_eigenvalue(op.adjoint() * op, support);
}

double reversibility(const MeasurementModel& model, const Ensemble& ensemble,
                     std::string_view outcome, int threads) {
  const std::size_t m = model.index_of(outcome);
  auto table = conditional_table(model, ensemble, threads);
  const OutcomeStats stats =
      make_stats(model.outcomes[m], std::move(table[m]), ensemble.weights());
  return reversibility_from(stats, background(model, outcome, support_projector(ensemble)));
}

double mean_reversibility(const MeasurementModel& model, const Ensemble& ensemble,
                          int threads) {
  const auto stats = outcome_statistics(model, ensemble, threads);
  const Operator support = support_projector(ensemble);
  std::vector<double> terms;
  std::vector<double> backgrounds;
  for (const OutcomeStats& s : stats) {
    const double b = background(model, s.outcome, support);
    backgrounds.push_back(b);
    if (s.total > 0.0) terms.push_back(s.total * reversibility_from(s, b));
  }
  const double mean = pairwise_sum(terms);
  const double sum_b = pairwise_sum(backgrounds);
  if (std::abs(mean - sum_b) > kIdentityTolerance) {
    throw NumericFailure("mean reversibility " + std::to_string(mean) +
                         " disagrees with background sum " + std::to_string(sum_b));
  }
  return mean;
}

double efficiency(double information, double fidelity) {
  if (fidelity >= 1.0 - 1e-12) {
    throw FidelityOne("efficiency: outcome does not change the state (F = 1)");
  }
  return information / (1.0 - fidelity);
}

const OutcomeReport& CounterReport::outcome(std::string_view name) const {
  for (const OutcomeReport& r : per_outcome) {
    if (r.outcome == name) return r;
  }
  throw std::invalid_argument("report " + label + " has no outcome '" + std::string(name) + "'");
}

CounterReport full_report(const MeasurementModel& model, const Ensemble& ensemble,
                          int threads) {
  const auto stats = outcome_statistics(model, ensemble, threads);
  const Operator support = support_projector(ensemble);

  CounterReport report;
  report.label = model.name;
  report.gamma = model.gamma;

  std::vector<double> probabilities, backgrounds, info_terms, fidelity_terms, rev_terms;
  for (std::size_t m = 0; m < stats.size(); ++m) {
    const OutcomeStats& s = stats[m];
    OutcomeReport row;
    row.outcome = s.outcome;
    row.probability = s.total;
    row.background = background(model, s.outcome, support);
    if (s.total > 0.0) {
      row.information = information_gain(s);
      row.fidelity = fidelity_from(model.operators[m], s, ensemble, threads);
      row.reversibility = reversibility_from(s, row.background);
      if (*row.fidelity < 1.0 - 1e-12) row.efficiency = efficiency(*row.information, *row.fidelity);
      info_terms.push_back(s.total * *row.information);
      fidelity_terms.push_back(s.total * *row.fidelity);
      rev_terms.push_back(s.total * *row.reversibility);
    }
    probabilities.push_back(s.total);
    backgrounds.push_back(row.background);
    report.per_outcome.push_back(std::move(row));
  }

  report.mean_information = pairwise_sum(info_terms);
  report.mean_fidelity = pairwise_sum(fidelity_terms);
  report.mean_reversibility = pairwise_sum(rev_terms);
  report.mutual_information = mutual_information(stats);
  report.background_sum = pairwise_sum(backgrounds);
  report.probability_sum = pairwise_sum(probabilities);
  report.completeness_residual = completeness_residual(model, support);

  if (std::abs(report.mean_information - report.mutual_information) > kIdentityTolerance) {
    throw NumericFailure("full_report(" + model.name + "): mean information != mutual information");
  }
  if (std::abs(report.mean_reversibility - report.background_sum) > kIdentityTolerance) {
    throw NumericFailure("full_report(" + model.name + "): mean reversibility != sum of backgrounds");
  }
  if (std::abs(report.probability_sum - 1.0) > 2.0 * report.completeness_residual + 1e-12) {
    throw NumericFailure("full_report(" + model.name + "): outcome probabilities do not sum to 1");
  }
  return report;
}

CounterReport full_report(CounterKind kind, double gamma, const Ensemble& ensemble,
                          int threads) {
  return full_report(build_counter(kind, gamma, ensemble.dim()), ensemble, threads);
}

McEstimate information_gain_mc(std::span<const double> conditional) {
  const std::size_t n = conditional.size();
  if (n < 2) throw std::invalid_argument("information_gain_mc: need at least two samples");
  std::vector<double> xs(conditional.begin(), conditional.end());
  std::vector<double> xlx(n);
  for (std::size_t i = 0; i < n; ++i) xlx[i] = xs[i] > 0.0 ? xs[i] * std::log(xs[i]) : 0.0;
  const double mean_x = pairwise_sum(xs) / static_cast<double>(n);
  const double mean_xlx = pairwise_sum(xlx) / static_cast<double>(n);
  if (!(mean_x > 0.0)) throw ZeroProbability("information_gain_mc: outcome never occurs");

  const double d_xlx = 1.0 / mean_x;
  const double d_x = -mean_xlx / (mean_x * mean_x) - 1.0 / mean_x;
  std::vector<double> influence_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = d_xlx * (xlx[i] - mean_xlx) + d_x * (xs[i] - mean_x);
    influence_sq[i] = l * l;
  }
  const double variance = pairwise_sum(influence_sq) / (static_cast<double>(n) * (n - 1));
  return McEstimate{(mean_xlx / mean_x - std::log(mean_x)) / std::numbers::ln2,
                    std::sqrt(variance) / std::numbers::ln2};
}

McEstimate information_gain_difference_mc(std::span<const double> conditional_a,
                                          std::span<const double> conditional_b) {
  const std::size_t n = conditional_a.size();
  if (n != conditional_b.size() || n < 2) {
    throw std::invalid_argument("information_gain_difference_mc: need paired samples");
  }
  struct Column {
    std::vector<double> x, xlx;
    double mean_x = 0.0, mean_xlx = 0.0;
  };
  auto column = [n](std::span<const double> c) {
    Column col;
    col.x.assign(c.begin(), c.end());
    col.xlx.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      col.xlx[i] = col.x[i] > 0.0 ? col.x[i] * std::log(col.x[i]) : 0.0;
    }
    col.mean_x = pairwise_sum(col.x) / static_cast<double>(n);
    col.mean_xlx = pairwise_sum(col.xlx) / static_cast<double>(n);
    if (!(col.mean_x > 0.0)) throw ZeroProbability("information_gain_difference_mc: outcome never occurs");
    return col;
  };
  const Column a = column(conditional_a);
  const Column b = column(conditional_b);
  const double a_xlx = 1.0 / a.mean_x;
  const double a_x = -a.mean_xlx / (a.mean_x * a.mean_x) - 1.0 / a.mean_x;
  const double b_xlx = 1.0 / b.mean_x;
  const double b_x = -b.mean_xlx / (b.mean_x * b.mean_x) - 1.0 / b.mean_x;

  std::vector<double> influence_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = a_xlx * (a.xlx[i] - a.mean_xlx) + a_x * (a.x[i] - a.mean_x) -
                     b_xlx * (b.xlx[i] - b.mean_xlx) - b_x * (b.x[i] - b.mean_x);
    influence_sq[i] = l * l;
  }
  const double variance = pairwise_sum(influence_sq) / (static_cast<double>(n) * (n - 1));
  const double ia = a.mean_xlx / a.mean_x - std::log(a.mean_x);
  const double ib = b.mean_xlx / b.mean_x - std::log(b.mean_x);
  return McEstimate{(ia - ib) / std::numbers::ln2, std::sqrt(variance) / std::numbers::ln2};
}

}  // namespace photocount
