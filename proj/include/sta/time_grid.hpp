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

#ifndef STA_TIME_GRID_HPP
#define STA_TIME_GRID_HPP

#include <cmath>
#include <string>

#include "sta/error.hpp"

namespace sta {

/// Uniform grid t0 < t1 < ... < t_steps = tf.
class TimeGrid {
 public:
  TimeGrid(double t0, double tf, int steps) : t0_(t0), tf_(tf), steps_(steps) {
    if (!(tf > t0) || !std::isfinite(t0) || !std::isfinite(tf)) {
      throw Error(ErrorCode::InvalidArgument, "TimeGrid needs finite t0 < tf");
    }
    if (steps < 2) {
      throw Error(ErrorCode::InvalidArgument,
                  "TimeGrid needs at least 2 steps, got " + std::to_string(steps));
    }
  }

  double t0() const { return t0_; }
  double tf() const { return tf_; }
  int steps() const { return steps_; }
  int nodes() const { return steps_ + 1; }
  double dt() const { return (tf_ - t0_) / steps_; }
  double duration() const { return tf_ - t0_; }

  double node(int i) const { return i == steps_ ? tf_ : t0_ + i * dt(); }

  /// Index of the grid node closest to t (clamped to the grid).
  int nearest(double t) const {
    const double x = std::round((t - t0_) / dt());
    if (x <= 0.0) return 0;
    if (x >= steps_) return steps_;
    return static_cast<int>(x);
  }

  bool contains(double t, double slack = 0.0) const {
    return t >= t0_ - slack && t <= tf_ + slack;
  }

  bool operator==(const TimeGrid& o) const {
    return t0_ == o.t0_ && tf_ == o.tf_ && steps_ == o.steps_;
  }

 private:
  double t0_;
  double tf_;
  int steps_;
};

}  // namespace sta

#endif  // STA_TIME_GRID_HPP
