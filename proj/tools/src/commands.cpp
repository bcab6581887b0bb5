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


#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "photocount/cli.hpp"
#include "photocount/counters.hpp"
#include "photocount/ensemble.hpp"
#include "photocount/errors.hpp"
#include "photocount/metrics.hpp"
#include "photocount/reversal.hpp"

namespace photocount::cli {
namespace {

using nlohmann::ordered_json;

std::string upper(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return text;
}

bool is_joint(const RunConfig& config) { return upper(config.counter) == "JOINT"; }
bool is_all(const RunConfig& config) { return upper(config.counter) == "ALL"; }

// Counter labels a command should iterate over.
std::vector<std::string> selected_counters(const RunConfig& config, bool allow_all) {
  if (is_all(config)) {
    if (!allow_all) throw std::invalid_argument("--counter all is only valid for metrics and sweep");
    std::vector<std::string> labels;
    for (CounterKind kind : kAllCounters) labels.emplace_back(to_string(kind));
    return labels;
  }
  if (is_joint(config)) return {"joint"};
  return {std::string(to_string(parse_counter_kind(config.counter)))};
}

MeasurementModel model_for(const std::string& label, double gamma, int dim) {
  if (label == "joint") {
    return compose_models(build_counter(CounterKind::QC, gamma, dim),
                          build_counter(CounterKind::PC, gamma, dim));
  }
  return build_counter(parse_counter_kind(label), gamma, dim);
}

ordered_json num(double x) { return round_significant(x); }

ordered_json optional_num(const std::optional<double>& x) {
  return x ? num(*x) : ordered_json(nullptr);
}

Cell optional_cell(const std::optional<double>& x) {
  return x ? Cell(*x) : Cell(std::monostate{});
}

ordered_json base_config(const RunConfig& config, const std::string& counter) {
  ordered_json c;
  c["counter"] = counter;
  c["gamma"] = num(config.gamma);
  c["theta_nodes"] = config.theta_nodes;
  c["dim"] = config.dim;
  c["seed"] = config.seed;
  c["samples"] = config.samples;
  return c;
}

std::string config_counter_label(const RunConfig& config) {
  if (is_all(config)) return "all";
  if (is_joint(config)) return "joint";
  return std::string(to_string(parse_counter_kind(config.counter)));
}

}  // namespace

EvenFit fit_even_quartic(std::span<const double> gammas, std::span<const double> values) {
  if (gammas.size() != values.size() || gammas.size() < 3) {
    throw std::invalid_argument("fit_even_quartic: need at least three matching points");
  }
  const auto n = static_cast<Eigen::Index>(gammas.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double g2 = gammas[i] * gammas[i];
    design(i, 0) = g2;
    design(i, 1) = g2 * g2;
    y(i) = values[i];
  }
  const Eigen::Vector2d coeffs = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd residual = design * coeffs - y;
  return {coeffs(0), coeffs(1), std::sqrt(residual.squaredNorm() / static_cast<double>(n))};
}

CommandOutput cmd_posterior(const RunConfig& config, const std::string& outcome) {
  const std::string label = selected_counters(config, false).front();
  const MeasurementModel model = model_for(label, config.gamma, config.dim);
  const std::size_t index = model.index_of(outcome);
  const Ensemble ensemble = bloch_two_state_ensemble(config.theta_nodes, config.dim);
  const double total = outcome_statistics(model, ensemble, config.threads)[index].total;
  if (total <= 0.0) throw ZeroProbability("outcome " + outcome + " has zero probability");

  CommandOutput out;
  out.command = "posterior";
  out.config = base_config(config, label);
  out.config["outcome"] = outcome;
  out.table.header = {"theta_degrees", "prior_density", "posterior_density"};

  const double prior = 1.0 / (4.0 * std::numbers::pi);
  ordered_json rows = ordered_json::array();
  for (int deg = 0; deg <= 180; ++deg) {
    const double theta = deg * std::numbers::pi / 180.0;
    Vector amplitudes = Vector::Zero(config.dim);
    amplitudes(0) = std::cos(theta / 2.0);
    amplitudes(1) = std::sin(theta / 2.0);
    const double p = outcome_probability(model.operators[index], StateVector(amplitudes));
    const double posterior = prior * p / total;
    out.table.rows.push_back({static_cast<std::int64_t>(deg), prior, posterior});
    rows.push_back({{"theta_degrees", deg},
                    {"prior_density", num(prior)},
                    {"posterior_density", num(posterior)}});
  }
  out.results["outcome"] = outcome;
  out.results["total_probability"] = num(total);
  out.results["rows"] = std::move(rows);
  return out;
}

CommandOutput cmd_metrics(const RunConfig& config) {
  const Ensemble ensemble = bloch_two_state_ensemble(config.theta_nodes, config.dim);

  CommandOutput out;
  out.command = "metrics";
  out.config = base_config(config, config_counter_label(config));
  out.table.header = {"counter",     "outcome",  "probability",   "background",
                      "information", "fidelity", "reversibility", "efficiency"};

  ordered_json counters = ordered_json::array();
  for (const std::string& label : selected_counters(config, true)) {
    const CounterReport report =
        full_report(model_for(label, config.gamma, config.dim), ensemble, config.threads);
    ordered_json outcomes = ordered_json::array();
    for (const OutcomeReport& o : report.per_outcome) {
      out.table.rows.push_back({label, o.outcome, o.probability, o.background,
                                optional_cell(o.information), optional_cell(o.fidelity),
                                optional_cell(o.reversibility), optional_cell(o.efficiency)});
      outcomes.push_back({{"outcome", o.outcome},
                          {"probability", num(o.probability)},
                          {"background", num(o.background)},
                          {"information", optional_num(o.information)},
                          {"fidelity", optional_num(o.fidelity)},
                          {"reversibility", optional_num(o.reversibility)},
                          {"efficiency", optional_num(o.efficiency)}});
    }
    std::optional<double> mean_efficiency;
    if (report.mean_fidelity < 1.0 - 1e-12) {
      mean_efficiency = efficiency(report.mean_information, report.mean_fidelity);
    }
    out.table.rows.push_back({label, std::string("mean"), report.probability_sum,
                              report.background_sum, report.mean_information,
                              report.mean_fidelity, report.mean_reversibility,
                              optional_cell(mean_efficiency)});
    counters.push_back({{"counter", label},
                        {"gamma", num(report.gamma)},
                        {"mean_information", num(report.mean_information)},
                        {"mean_fidelity", num(report.mean_fidelity)},
                        {"mean_reversibility", num(report.mean_reversibility)},
                        {"mean_efficiency", optional_num(mean_efficiency)},
                        {"mutual_information", num(report.mutual_information)},
                        {"background_sum", num(report.background_sum)},
                        {"probability_sum", num(report.probability_sum)},
                        {"completeness_residual", num(report.completeness_residual)},
                        {"outcomes", std::move(outcomes)}});
  }
  out.results["counters"] = std::move(counters);
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config, const SweepRange& range) {
  if (!(range.gamma_min > 0.0 && range.gamma_min < range.gamma_max && range.gamma_max <= 0.3)) {
    throw std::invalid_argument("sweep: need 0 < gamma-min < gamma-max <= 0.3");
  }
  if (range.steps < 5) throw std::invalid_argument("sweep: need steps >= 5");
  const Ensemble ensemble = bloch_two_state_ensemble(config.theta_nodes, config.dim);

  CommandOutput out;
  out.command = "sweep";
  out.config = base_config(config, config_counter_label(config));
  out.config.erase("gamma");
  out.config["gamma_min"] = num(range.gamma_min);
  out.config["gamma_max"] = num(range.gamma_max);
  out.config["steps"] = range.steps;
  out.table.header = {"counter", "quantity", "gamma", "value"};

  std::vector<double> gammas(range.steps);
  for (int i = 0; i < range.steps; ++i) {
    gammas[i] = range.gamma_min +
                (range.gamma_max - range.gamma_min) * i / static_cast<double>(range.steps - 1);
  }

  ordered_json counters = ordered_json::array();
  for (const std::string& label : selected_counters(config, true)) {
    std::vector<double> info, infidelity, irreversibility;
    ordered_json points = ordered_json::array();
    for (double g : gammas) {
      const CounterReport r = full_report(model_for(label, g, config.dim), ensemble, config.threads);
      info.push_back(r.mean_information);
      infidelity.push_back(1.0 - r.mean_fidelity);
      irreversibility.push_back(1.0 - r.mean_reversibility);
      for (auto [name, value] : {std::pair{"mean_information", r.mean_information},
                                 std::pair{"mean_fidelity", r.mean_fidelity},
                                 std::pair{"mean_reversibility", r.mean_reversibility}}) {
        out.table.rows.push_back({label, std::string(name), g, value});
      }
      points.push_back({{"gamma", num(g)},
                        {"mean_information", num(r.mean_information)},
                        {"mean_fidelity", num(r.mean_fidelity)},
                        {"mean_reversibility", num(r.mean_reversibility)}});
    }

    ordered_json fits;
    for (auto [name, series] : {std::pair{"information", &info},
                                std::pair{"infidelity", &infidelity},
                                std::pair{"irreversibility", &irreversibility}}) {
      const EvenFit fit = fit_even_quartic(gammas, *series);
      const std::string prefix = std::string("fit_") + name;
      out.table.rows.push_back({label, prefix + "_c2", std::monostate{}, fit.c2});
      out.table.rows.push_back({label, prefix + "_c4", std::monostate{}, fit.c4});
      out.table.rows.push_back({label, prefix + "_rms", std::monostate{}, fit.rms});
      fits[name] = {{"c2", num(fit.c2)}, {"c4", num(fit.c4)}, {"rms", num(fit.rms)}};
    }
    counters.push_back({{"counter", label}, {"points", std::move(points)}, {"fits", std::move(fits)}});
  }
  out.results["counters"] = std::move(counters);
  return out;
}

CommandOutput cmd_haar(const RunConfig& config, int d) {
  if (d < 2 || d > 4) throw std::invalid_argument("haar: --d must be 2, 3 or 4");
  if (config.samples < 100'000 || config.samples > INT_MAX) {
    throw std::invalid_argument("haar: --samples must lie in [1e5, 2^31)");
  }
  const int dim = std::max(config.dim, d + 2);
  const Ensemble ensemble =
      haar_ensemble(d, static_cast<int>(config.samples), config.seed, dim, config.threads);
  const auto pc =
      outcome_statistics(build_counter(CounterKind::PC, config.gamma, dim), ensemble, config.threads);
  const auto qpc = outcome_statistics(build_counter(CounterKind::QPC, config.gamma, dim), ensemble,
                                      config.threads);
  const McEstimate info_pc = information_gain_mc(pc[1].conditional);
  const McEstimate info_qpc = information_gain_mc(qpc[1].conditional);
  const McEstimate diff = information_gain_difference_mc(qpc[1].conditional, pc[1].conditional);
  const double z = diff.standard_error > 0.0 ? diff.value / diff.standard_error : 0.0;
  const std::string sign = z > 3.0 ? "positive" : z < -3.0 ? "negative" : "indistinguishable";

  CommandOutput out;
  out.command = "haar";
  out.config = base_config(config, "PC,QPC");
  out.config.erase("theta_nodes");
  out.config["dim"] = dim;
  out.config["d"] = d;
  out.table.header = {"quantity", "value", "standard_error"};
  out.table.rows = {{std::string("information_pc"), info_pc.value, info_pc.standard_error},
                    {std::string("information_qpc"), info_qpc.value, info_qpc.standard_error},
                    {std::string("difference_qpc_minus_pc"), diff.value, diff.standard_error},
                    {std::string("z_score"), z, std::monostate{}},
                    {std::string("sign"), sign, std::monostate{}}};

  auto estimate = [](const McEstimate& e) {
    return ordered_json{{"value", num(e.value)}, {"standard_error", num(e.standard_error)}};
  };
  out.results["information_pc"] = estimate(info_pc);
  out.results["information_qpc"] = estimate(info_qpc);
  out.results["difference_qpc_minus_pc"] = estimate(diff);
  out.results["z_score"] = num(z);
  out.results["sign"] = sign;
  return out;
}

CommandOutput cmd_reverse(const RunConfig& config) {
  if (is_all(config) || is_joint(config)) {
    throw std::invalid_argument("reverse: --counter must be QC or QQC");
  }
  const CounterKind kind = parse_counter_kind(config.counter);
  const MeasurementModel model = build_counter(kind, config.gamma, config.dim);
  const Ensemble ensemble = bloch_two_state_ensemble(config.theta_nodes, config.dim);
  // Surfaces NonReversible with the background in its message.
  build_reversing(model.op("1"), support_projector(ensemble));
  const double analytic = reversibility(model, ensemble, "1", config.threads);
  const TrajectoryStats t =
      trajectory_sim(kind, config.gamma, ensemble, config.samples, config.seed, config.threads);
  const double sigma =
      t.one_counts > 0 ? std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(t.one_counts))
                       : 0.0;

  CommandOutput out;
  out.command = "reverse";
  out.config = base_config(config, std::string(to_string(kind)));
  out.table.header = {"quantity", "value"};
  out.table.rows = {{std::string("analytic_success"), analytic},
                    {std::string("empirical_success"), t.empirical_success_rate},
                    {std::string("binomial_sigma"), sigma},
                    {std::string("trials"), t.trials},
                    {std::string("one_counts"), t.one_counts},
                    {std::string("successes"), t.successes},
                    {std::string("mean_recovery_fidelity"), t.mean_recovery_fidelity},
                    {std::string("min_recovery_fidelity"), t.min_recovery_fidelity},
                    {std::string("seed"), std::to_string(t.seed)}};
  out.results["analytic_success"] = num(analytic);
  out.results["empirical_success"] = num(t.empirical_success_rate);
  out.results["binomial_sigma"] = num(sigma);
  out.results["trials"] = t.trials;
  out.results["one_counts"] = t.one_counts;
  out.results["successes"] = t.successes;
  out.results["mean_recovery_fidelity"] = num(t.mean_recovery_fidelity);
  out.results["min_recovery_fidelity"] = num(t.min_recovery_fidelity);
  out.results["seed"] = t.seed;
  return out;
}

}  // namespace photocount::cli
