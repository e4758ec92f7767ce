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

// Speed-limit estimates for completed runs. See docs/qsl-conventions.md for
// the normalization of the Fisher bound.

#ifndef STA_QSL_HPP
#define STA_QSL_HPP

#include <vector>

#include "sta/propagator.hpp"

namespace sta {

/// Generator data at one node: rho' = -i[h, rho] - {gamma, rho} (+ trace
/// balancing), or -i[h, rho] + D(rho) when `dissipation` holds D(rho_k).
struct QslNode {
  cmat h;
  cmat gamma;
  cmat dissipation;  // empty: use the gain/loss split
  cmat split_h;      // Hamiltonian paired with `dissipation`; empty: h
};

/// Node from a control set. LindbladLike and MarkovLindblad use the
/// dissipator split, the other kinds the gain/loss split.
QslNode qsl_node(GeneratorKind kind, const ControlSet& controls, const cmat& rho);

struct QslReport {
  double bures_distance_endpoints = 0.0;
  double trace_distance_endpoints = 0.0;
  double fisher_speed_avg = 0.0;  // time average of 2 sqrt(Re Tr[H rho H^dagger]), H = h - i gamma
  double trace_speed_avg = 0.0;   // time average of ||d rho/dt||_1
  double tau_min_fisher = 0.0;    // D_B / (2 fisher_speed_avg)
  double tau_min_trace = 0.0;     // trace distance / trace_speed_avg
  double actual_duration = 0.0;

  std::vector<double> fisher_speed;
  std::vector<double> trace_speed;
  std::vector<double> triangle_bound;     // empty unless generators were given
  double max_triangle_excess = 0.0;       // max_k (trace_speed - triangle_bound), <= 0 when it holds
};

/// Fisher-information bound. One generator per node is required; states are
/// normalized by their trace before use.
void fisher_bound(const PropagationRecord& record, const std::vector<QslNode>& generators,
                  QslReport& report);

/// Trace-norm bound from 5-point differences of the stored states (4th order
/// one-sided stencils at the ends). With generators, also fills the
/// triangle-inequality bound per node.
void trace_metric_bound(const PropagationRecord& record, const std::vector<QslNode>& generators,
                        QslReport& report);

QslReport qsl_report(const PropagationRecord& record, const std::vector<QslNode>& generators);

/// 4th-order accurate d/dt of the stored states at every node.
std::vector<cmat> state_derivatives(const PropagationRecord& record);

/// Trapezoid average over the record grid.
double time_average(const TimeGrid& grid, const std::vector<double>& values);

}  // namespace sta

#endif  // STA_QSL_HPP
