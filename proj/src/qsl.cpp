// Copyright 2026 The sta-open Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sta/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sta {

namespace {

constexpr cplx kI(0.0, 1.0);

cmat normalized(const cmat& rho) {
  const double tr = std::real(rho.trace());
  if (!(std::abs(tr) > 0.0) || !std::isfinite(tr)) {
    throw Error(ErrorCode::InvalidState, "state with zero or non-finite trace");
  }
  return rho / tr;
}

void require_nodes(const PropagationRecord& record, std::size_t n_generators) {
  const auto nodes = static_cast<std::size_t>(record.grid.nodes());
  if (record.states.size() != nodes) {
    throw Error(ErrorCode::GridMismatch, "record holds one state per node");
  }
  if (n_generators != 0 && n_generators != nodes) {
    throw Error(ErrorCode::GridMismatch, "generator count does not match the grid");
  }
}

double hermitian_trace_norm(const cmat& a) {
  const cmat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

double time_average(const TimeGrid& grid, const std::vector<double>& v) {
  if (v.size() != static_cast<std::size_t>(grid.nodes())) {
    throw Error(ErrorCode::GridMismatch, "time_average: sample count does not match the grid");
  }
  double acc = 0.0;
  for (int k = 0; k < grid.steps(); ++k) {
    acc += 0.5 * (grid.node(k + 1) - grid.node(k)) * (v[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(k + 1)]);
  }
  return acc / grid.duration();
}

std::vector<cmat> state_derivatives(const PropagationRecord& record) {
  require_nodes(record, 0);
  const int n = record.grid.nodes();
  if (n < 5) throw Error(ErrorCode::GridMismatch, "trace metric needs at least 5 nodes");
  const double h = record.grid.dt();
  std::vector<cmat> rho;
  rho.reserve(static_cast<std::size_t>(n));
  for (const auto& s : record.states) rho.push_back(normalized(s));
  auto at = [&](int k) -> const cmat& { return rho[static_cast<std::size_t>(k)]; };

  std::vector<cmat> d(static_cast<std::size_t>(n));
  const double c = 1.0 / (12.0 * h);
  for (int k = 2; k < n - 2; ++k) {
    d[static_cast<std::size_t>(k)] = c * (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2));
  }
  d[0] = c * (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4));
  d[1] = c * (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4));
  const auto m = static_cast<std::size_t>(n - 1);
  d[m] = c * (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) + 3.0 * at(n - 5));
  d[m - 1] = c * (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) - at(n - 5));
  return d;
}

void fisher_bound(const PropagationRecord& record, const std::vector<QslNode>& gens, QslReport& report) {
  require_nodes(record, gens.size());
  if (gens.empty()) throw Error(ErrorCode::GridMismatch, "Fisher bound needs one generator per node");
  const auto nodes = static_cast<std::size_t>(record.grid.nodes());
  report.fisher_speed.assign(nodes, 0.0);
  for (std::size_t k = 0; k < nodes; ++k) {
    const cmat rho = normalized(record.states[k]);
    const cmat hh = gens[k].h - kI * gens[k].gamma;
    const double tr = std::real((hh * rho * hh.adjoint()).trace());
    report.fisher_speed[k] = 2.0 * std::sqrt(std::max(tr, 0.0));
  }
  report.fisher_speed_avg = time_average(record.grid, report.fisher_speed);
  const cmat r0 = normalized(record.states.front());
  const cmat rf = normalized(record.states.back());
  const double f = diagnostic_fidelity(r0, rf);
  report.bures_distance_endpoints = std::sqrt(std::max(0.0, 2.0 * (1.0 - f)));
  report.actual_duration = record.grid.duration();
  report.tau_min_fisher = report.fisher_speed_avg > 0.0
                              ? report.bures_distance_endpoints / (2.0 * report.fisher_speed_avg)
                              : 0.0;
}

void trace_metric_bound(const PropagationRecord& record, const std::vector<QslNode>& gens,
                        QslReport& report) {
  require_nodes(record, gens.size());
  const auto d = state_derivatives(record);
  const auto nodes = d.size();
  report.trace_speed.assign(nodes, 0.0);
  for (std::size_t k = 0; k < nodes; ++k) report.trace_speed[k] = hermitian_trace_norm(d[k]);
  report.trace_speed_avg = time_average(record.grid, report.trace_speed);
  report.trace_distance_endpoints =
      0.5 * hermitian_trace_norm(normalized(record.states.back()) - normalized(record.states.front()));
  report.actual_duration = record.grid.duration();
  report.tau_min_trace =
      report.trace_speed_avg > 0.0 ? report.trace_distance_endpoints / report.trace_speed_avg : 0.0;

  report.triangle_bound.clear();
  report.max_triangle_excess = 0.0;
  if (gens.empty()) return;
  report.triangle_bound.assign(nodes, 0.0);
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k) {
    const cmat rho = normalized(record.states[k]);
    const auto& g = gens[k];
    // i[h, rho] is Hermitian and has the trace norm of the commutator.
    const cmat& hs = g.split_h.size() != 0 ? g.split_h : g.h;
    double bound = hermitian_trace_norm(kI * commutator(hs, rho));
    if (g.dissipation.size() != 0) {
      bound += hermitian_trace_norm(g.dissipation);
    } else {
      bound += hermitian_trace_norm(anticommutator(g.gamma, rho));
      // Balancing term 2 Tr[Gamma rho] rho of the normalized equation.
      bound += 2.0 * std::abs(std::real((g.gamma * rho).trace()));
    }
    report.triangle_bound[k] = bound;
    excess = std::max(excess, report.trace_speed[k] - bound);
  }
  report.max_triangle_excess = excess;
}

QslNode qsl_node(GeneratorKind kind, const ControlSet& controls, const cmat& rho) {
  QslNode node{controls.h_cd, controls.gamma, cmat(), cmat()};
  if (kind == GeneratorKind::LindbladLike || kind == GeneratorKind::MarkovLindblad) {
    node.dissipation = apply_dissipator(controls, rho);
  }
  if (kind == GeneratorKind::MarkovLindblad) {
    // Fixed jumps carry no gain/loss operator; use the one that reproduces the
    // populations of D(rho) in the eigenbasis of rho.
    const auto es = spectral_decompose(cmat(0.5 * (rho + rho.adjoint())));
    rvec g = rvec::Zero(es.values.size());
    for (Eigen::Index n = 0; n < g.size(); ++n) {
      const double p = es.values(n);
      if (p > default_tolerances().rank) {
        g(n) = -0.5 * std::real(es.vectors.col(n).dot(node.dissipation * es.vectors.col(n))) / p;
      }
    }
    node.gamma = es.vectors * g.asDiagonal() * es.vectors.adjoint();
  }
  return node;
}

QslReport qsl_report(const PropagationRecord& record, const std::vector<QslNode>& generators) {
  QslReport report;
  if (!generators.empty()) fisher_bound(record, generators, report);
  trace_metric_bound(record, generators, report);
  return report;
}

}  // namespace sta
