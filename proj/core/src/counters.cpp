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

#include "photocount/counters.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace photocount {
namespace {

// The operator K in the one-count operator gamma * K.
Operator one_count_shape(CounterKind kind, int dim) {
  switch (kind) {
    case CounterKind::PC:
      return ladder(LadderKind::annihilation, dim);
    case CounterKind::QC:
      return ladder(LadderKind::creation, dim);
    case CounterKind::QPC:
      return ladder(LadderKind::number, dim);
    case CounterKind::QQC:
      return ladder(LadderKind::antinormal_number, dim);
  }
  throw std::logic_error("unknown CounterKind");
}

// The operator whose adjoint-square appears in the no-count operator. For QC
// this is a a^dagger exactly, not the truncated product of ladders.
Operator no_count_generator(CounterKind kind, int dim) {
  switch (kind) {
    case CounterKind::PC:
      return ladder(LadderKind::number, dim);
    case CounterKind::QC:
      return ladder(LadderKind::antinormal_number, dim);
    case CounterKind::QPC: {
      const Operator n = ladder(LadderKind::number, dim);
      return n * n;
    }
    case CounterKind::QQC: {
      const Operator q = ladder(LadderKind::antinormal_number, dim);
      return q * q;
    }
  }
  throw std::logic_error("unknown CounterKind");
}

void check_support_headroom(const Operator& support, int dim, int headroom,
                            const char* what) {
  if (support.dim() != dim) {
    throw std::invalid_argument(std::string(what) + ": support dimension mismatch");
  }
  if (top_fock_level(support) > dim - 1 - headroom) {
    throw std::invalid_argument(std::string(what) + ": support must lie within the first " +
                                std::to_string(dim - headroom) + " Fock levels");
  }
}

}  // namespace

std::string_view to_string(CounterKind kind) {
  switch (kind) {
    case CounterKind::PC:
      return "PC";
    case CounterKind::QC:
      return "QC";
    case CounterKind::QPC:
      return "QPC";
    case CounterKind::QQC:
      return "QQC";
  }
  return "?";
}

CounterKind parse_counter_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (CounterKind kind : kAllCounters) {
    if (upper == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown counter kind '" + std::string(text) + "'");
}

std::size_t MeasurementModel::index_of(std::string_view outcome) const {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == outcome) return i;
  }
  throw std::invalid_argument("model " + name + " has no outcome '" +
                              std::string(outcome) + "'");
}

ProbeModel probe_model(CounterKind kind, int dim) {
  if (dim < 1) throw std::invalid_argument("probe_model: dim must be >= 1");
  // Probe basis: for the Jaynes-Cummings atom level 0 = |g>, 1 = |e>; for the
  // QND atom level 0 = |a>, 1 = |b>.
  Matrix lower = Matrix::Zero(2, 2);
  lower(0, 1) = 1.0;  // |0><1|
  const Operator sigma_minus(lower);
  const Operator sigma_plus = sigma_minus.adjoint();
  const Operator sigma_x = sigma_minus + sigma_plus;

  switch (kind) {
    case CounterKind::PC:
    case CounterKind::QC: {
      const Operator a = ladder(LadderKind::annihilation, dim);
      const Operator h = kron(a, sigma_plus) + kron(a.adjoint(), sigma_minus);
      if (kind == CounterKind::PC) return ProbeModel{kind, 2 * dim, h, 0, 1};
      return ProbeModel{kind, 2 * dim, h, 1, 0};
    }
    case CounterKind::QPC:
      return ProbeModel{kind, 2 * dim, kron(ladder(LadderKind::number, dim), sigma_x), 0, 1};
    case CounterKind::QQC:
      return ProbeModel{kind, 2 * dim,
                        kron(ladder(LadderKind::antinormal_number, dim), sigma_x), 0, 1};
  }
  throw std::logic_error("unknown CounterKind");
}

MeasurementModel build_counter(CounterKind kind, double gamma, int dim) {
  if (!(gamma > 0.0 && gamma <= 0.5)) {
    throw std::invalid_argument("build_counter: gamma must lie in (0, 0.5]");
  }
  if (dim < 4) throw std::invalid_argument("build_counter: dim must be >= 4");

  const Operator one = Complex(gamma) * one_count_shape(kind, dim);
  const Operator none =
      Operator::identity(dim) - Complex(0.5 * gamma * gamma) * no_count_generator(kind, dim);
  return MeasurementModel{std::string(to_string(kind)), {"0", "1"}, {none, one}, gamma, dim};
}

double completeness_residual(const MeasurementModel& model, const Operator& support) {
  check_support_headroom(support, model.dim, 2, "completeness_residual");
  Operator sum = Operator::zero(model.dim);
  for (const Operator& m : model.operators) sum = sum + m.adjoint() * m;
  const Matrix basis = support_basis(support);
  const Matrix defect = basis.adjoint() * (Operator::identity(model.dim) - sum).matrix() * basis;
  return spectral_norm(defect);
}

MeasurementModel compose_models(const MeasurementModel& first,
                                const MeasurementModel& second) {
  if (first.dim != second.dim) {
    throw std::invalid_argument("compose_models: dimension mismatch");
  }
  MeasurementModel joint;
  joint.name = first.name + "+" + second.name;
  joint.gamma = first.gamma;
  joint.dim = first.dim;
  for (std::size_t j = 0; j < second.outcomes.size(); ++j) {
    for (std::size_t i = 0; i < first.outcomes.size(); ++i) {
      joint.outcomes.push_back(second.outcomes[j] + first.outcomes[i]);
      joint.operators.push_back(second.operators[j] * first.operators[i]);
    }
  }
  return joint;
}

MeasurementModel probe_model_operators(CounterKind kind, double gamma, int dim) {
  if (!(gamma >= 0.0 && gamma <= 0.5)) {
    throw std::invalid_argument("probe_model_operators: gamma must lie in [0, 0.5]");
  }
  if (dim < 4) throw std::invalid_argument("probe_model_operators: dim must be >= 4");

  const ProbeModel probe = probe_model(kind, dim);
  const Operator evolution = matrix_exponential(probe.hamiltonian, Complex(0.0, -gamma));
  const Matrix& u = evolution.matrix();

  // <s|U|i> as a field operator: rows 2n+s, columns 2n'+i.
  auto project = [&](int probe_out) {
    Matrix m(dim, dim);
    for (int n = 0; n < dim; ++n) {
      for (int k = 0; k < dim; ++k) m(n, k) = u(2 * n + probe_out, 2 * k + probe.initial_probe);
    }
    return Operator(std::move(m));
  };
  const int no_count_probe = 1 - probe.count_probe;
  return MeasurementModel{std::string(to_string(kind)) + "/probe",
                          {"0", "1"},
                          {project(no_count_probe), project(probe.count_probe)},
                          gamma,
                          dim};
}

double phase_aligned_distance(const Operator& a, const Operator& b,
                              const Operator& support) {
  const Matrix basis = support_basis(support);
  const Matrix ap = a.matrix() * basis;
  const Matrix bp = b.matrix() * basis;
  const Complex overlap = (bp.adjoint() * ap).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return spectral_norm(Matrix(ap - phase * bp));
}

double proportionality_deviation(const Operator& a, const Operator& b,
                                 const Operator& support) {
  const Matrix basis = support_basis(support);
  const Matrix ap = a.matrix() * basis;
  const Matrix bp = b.matrix() * basis;
  const double scale = ap.cwiseAbs().maxCoeff() * bp.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw std::invalid_argument("proportionality_deviation: zero operator on support");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ap.size(); ++i) {
    for (Eigen::Index k = 0; k < ap.size(); ++k) {
      const Complex cross = ap(i) * bp(k) - ap(k) * bp(i);
      worst = std::max(worst, std::abs(cross));
    }
  }
  return worst / scale;
}

double unitary_part_deviation(const Operator& op) {
  if (op.matrix().cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("unitary_part_deviation: zero operator");
  }
  const PolarFactors polar = polar_decompose(op);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(polar.positive.matrix());
  const double threshold = 1e-10 * std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  Matrix range(op.dim(), 0);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) > threshold) {
      range.conservativeResize(Eigen::NoChange, range.cols() + 1);
      range.col(range.cols() - 1) = solver.eigenvectors().col(i);
    }
  }
  const Matrix defect =
      (polar.unitary.matrix() - Matrix::Identity(op.dim(), op.dim())) * range;
  return spectral_norm(defect);
}

}  // namespace photocount
