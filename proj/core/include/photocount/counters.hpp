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

#include <string>
#include <string_view>
#include <vector>

#include "photocount/fock.hpp"

namespace photocount {

/// The four photodetector models.
///   PC  - conventional photon counter (absorption), one-count ~ gamma a
///   QC  - quantum counter (stimulated emission), one-count ~ gamma a^dagger
///   QPC - QND photon counter, one-count ~ gamma a^dagger a
///   QQC - QND quantum counter, one-count ~ gamma a a^dagger
enum class CounterKind { PC, QC, QPC, QQC };

inline constexpr CounterKind kAllCounters[] = {CounterKind::PC, CounterKind::QC,
                                               CounterKind::QPC, CounterKind::QQC};

std::string_view to_string(CounterKind kind);
/// Accepts "PC", "QC", "QPC", "QQC" (case-insensitive).
CounterKind parse_counter_kind(std::string_view text);

/// Labelled measurement operators {M_m} with coupling gamma = g * dt.
struct MeasurementModel {
  std::string name;
  std::vector<std::string> outcomes;
  std::vector<Operator> operators;
  double gamma = 0.0;
  int dim = 0;

  std::size_t index_of(std::string_view outcome) const;
  const Operator& op(std::string_view outcome) const { return operators[index_of(outcome)]; }
};

/// Field (x) probe interaction with hbar*g factored out. Joint basis index is
/// 2 * n + s for field level n and probe level s.
struct ProbeModel {
  CounterKind kind;
  int joint_dim = 0;
  Operator hamiltonian;
  int initial_probe = 0;  ///< probe level the atom is prepared in
  int count_probe = 0;    ///< probe level that signals a one-count
};

ProbeModel probe_model(CounterKind kind, int dim);

/// Closed-form operators, outcomes {"0", "1"}. No-count operators are the
/// second-order forms I - (gamma^2 / 2) K^dagger K verbatim, not the exact
/// square root. Requires 0 < gamma <= 0.5 and dim >= 4.
MeasurementModel build_counter(CounterKind kind, double gamma, int dim);

/// ||P (I - sum_m M_m^dagger M_m) P||. The support must leave two levels of
/// headroom below the truncation.
double completeness_residual(const MeasurementModel& model, const Operator& support);

/// Sequential measurement: `first` then `second`. Outcome labels are
/// "<m2><m1>" with operator M_{m2} * M_{m1}, enumerated with the second
/// measurement's outcome as the outer index.
MeasurementModel compose_models(const MeasurementModel& first,
                                const MeasurementModel& second);

/// Measurement operators <m|exp(-i gamma h)|i> obtained by evolving the
/// field-probe system and projecting the probe. Requires 0 <= gamma <= 0.5.
MeasurementModel probe_model_operators(CounterKind kind, double gamma, int dim);

/// min over phi of ||(a - e^{i phi} b) P||, with phi chosen to maximise
/// |tr((bP)^dagger aP)|.
double phase_aligned_distance(const Operator& a, const Operator& b,
                              const Operator& support);

/// max |A_ij B_kl - A_kl B_ij| over the columns of A P and B P, normalised by
/// max|A| * max|B|. Zero iff the two restrictions are proportional.
double proportionality_deviation(const Operator& a, const Operator& b,
                                 const Operator& support);

/// ||(U - I) P_+|| where op = U * positive and P_+ projects onto the range of
/// the positive factor. Zero means op has no unitary part.
double unitary_part_deviation(const Operator& op);

}  // namespace photocount
