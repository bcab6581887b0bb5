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
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace photocount::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonReversible = 3;
inline constexpr int kExitNumeric = 4;

enum class Format { csv, json };

struct RunConfig {
  /// PC, QC, QPC, QQC (any case), "joint" for the QC-then-PC composition, or
  /// "all" for the four single counters (metrics and sweep only).
  std::string counter = "PC";
  double gamma = 0.3;
  int theta_nodes = 64;
  int dim = 5;
  Format format = Format::csv;
  std::uint64_t seed = 42;
  std::int64_t samples = 1'000'000;
  /// Never echoed in output; results do not depend on it.
  int threads = 1;
};

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// What every command produces: a JSON payload and the equivalent CSV table.
struct CommandOutput {
  std::string command;
  nlohmann::ordered_json config;
  nlohmann::ordered_json results;
  Table table;
};

CommandOutput cmd_posterior(const RunConfig& config, const std::string& outcome);
CommandOutput cmd_metrics(const RunConfig& config);

struct SweepRange {
  double gamma_min = 0.05;
  double gamma_max = 0.3;
  int steps = 11;
};
CommandOutput cmd_sweep(const RunConfig& config, const SweepRange& range);

/// `d` in {2, 3, 4}; the working dimension is raised to d + 2 if needed.
CommandOutput cmd_haar(const RunConfig& config, int d);
CommandOutput cmd_reverse(const RunConfig& config);

/// Least-squares fit y = c2 g^2 + c4 g^4 with the rms residual.
struct EvenFit {
  double c2 = 0.0;
  double c4 = 0.0;
  double rms = 0.0;
};
EvenFit fit_even_quartic(std::span<const double> gammas, std::span<const double> values);

/// Shortest text for x at 12 significant digits; locale independent.
std::string format_number(double x);
/// x rounded to 12 significant digits. Throws NumericFailure if not finite.
double round_significant(double x);

std::string render_json(const CommandOutput& output);
std::string render_csv(const Table& table);
std::string render(const CommandOutput& output, Format format);

/// Parses argv-style arguments (without the program name), runs the command
/// and writes to `out` (or the --output file) and diagnostics to `err`.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace photocount::cli
