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


#include "photocount/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "photocount/errors.hpp"
#include "photocount/version.hpp"

namespace photocount::cli {

std::string format_number(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, result.ptr);
}

double round_significant(double x) {
  if (!std::isfinite(x)) throw NumericFailure("non-finite value in output");
  const std::string text = format_number(x);
  double rounded = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded == 0.0 ? 0.0 : rounded;  // drops the sign of -0
}

std::string render_json(const CommandOutput& output) {
  nlohmann::ordered_json doc;
  doc["command"] = output.command;
  doc["config"] = output.config;
  doc["results"] = output.results;
  doc["version"] = kVersion;
  return doc.dump(2) + "\n";
}

std::string render_csv(const Table& table) {
  std::string text;
  auto append_row = [&](const auto& cells, auto&& to_text) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) text += ',';
      text += to_text(cells[i]);
    }
    text += '\n';
  };
  append_row(table.header, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) {
    append_row(row, [](const Cell& cell) {
      return std::visit(
          [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              return {};
            } else if constexpr (std::is_same_v<T, double>) {
              return format_number(round_significant(v));
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              return std::to_string(v);
            } else {
              return v;
            }
          },
          cell);
    });
  }
  return text;
}

std::string render(const CommandOutput& output, Format format) {
  return format == Format::json ? render_json(output) : render_csv(output.table);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string output_path;
  std::string outcome = "1";
  SweepRange range;
  int haar_d = 3;

  CLI::App app{"Photodetection measurement statistics on truncated Fock spaces", "photocount"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  app.add_option("--counter", config.counter, "PC, QC, QPC, QQC, joint or all")
      ->envname("PHOTOCOUNT_COUNTER");
  app.add_option("--gamma", config.gamma, "Coupling strength")->envname("PHOTOCOUNT_GAMMA");
  app.add_option("--theta-nodes", config.theta_nodes, "Quadrature nodes over theta")
      ->envname("PHOTOCOUNT_THETA_NODES");
  app.add_option("--dim", config.dim, "Fock-space truncation")->envname("PHOTOCOUNT_DIM");
  app.add_option("--format", config.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->envname("PHOTOCOUNT_FORMAT");
  app.add_option("--seed", config.seed, "Random seed")->envname("PHOTOCOUNT_SEED");
  app.add_option("--samples", config.samples, "Monte Carlo samples or trials")
      ->envname("PHOTOCOUNT_SAMPLES");
  app.add_option("--threads", config.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->envname("PHOTOCOUNT_THREADS");
  app.add_option("--output", output_path, "Write to this file instead of stdout")
      ->envname("PHOTOCOUNT_OUTPUT");

  CLI::App* posterior = app.add_subcommand("posterior", "Prior and posterior densities over theta");
  posterior->add_option("--outcome", outcome, "Outcome label")->envname("PHOTOCOUNT_OUTCOME");
  CLI::App* metrics = app.add_subcommand("metrics", "Information, fidelity, reversibility");
  CLI::App* sweep = app.add_subcommand("sweep", "Mean values over a gamma grid with fits");
  sweep->add_option("--gamma-min", range.gamma_min)->envname("PHOTOCOUNT_GAMMA_MIN");
  sweep->add_option("--gamma-max", range.gamma_max)->envname("PHOTOCOUNT_GAMMA_MAX");
  sweep->add_option("--steps", range.steps)->envname("PHOTOCOUNT_STEPS");
  CLI::App* haar = app.add_subcommand("haar", "Monte Carlo one-count information, Haar states");
  haar->add_option("--d", haar_d, "Number of Fock levels in the superposition")
      ->envname("PHOTOCOUNT_HAAR_D");
  CLI::App* reverse = app.add_subcommand("reverse", "Measure-then-reverse trajectories");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CommandOutput result;
    if (posterior->parsed()) {
      result = cmd_posterior(config, outcome);
    } else if (metrics->parsed()) {
      result = cmd_metrics(config);
    } else if (sweep->parsed()) {
      result = cmd_sweep(config, range);
    } else if (haar->parsed()) {
      result = cmd_haar(config, haar_d);
    } else if (reverse->parsed()) {
      result = cmd_reverse(config);
    }
    const std::string text = render(result, config.format);
    if (output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) {
        err << "photocount: cannot open " << output_path << "\n";
        return kExitUsage;
      }
      file << text;
    }
    return kExitOk;
  } catch (const NonReversible& e) {
    err << "photocount: " << e.what() << "\n";
    return kExitNonReversible;
  } catch (const std::invalid_argument& e) {
    err << "photocount: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "photocount: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace photocount::cli
