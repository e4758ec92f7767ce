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

#ifndef STA_SCHEDULE_HPP
#define STA_SCHEDULE_HPP

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

namespace sta {

/// Scalar control schedule a(t) with first and second derivatives.
///
/// `polynomial5` is the minimum-jerk ramp
///   a0 + (af - a0) (10 s^3 - 15 s^4 + 6 s^5),  s = t / tf,
/// held constant outside [0, tf]. Tabulated schedules interpolate linearly;
/// callables are differentiated by central differences.
class Schedule {
 public:
  enum class Kind { Constant, Polynomial5, Tabulated, Callable };

  static Schedule constant(double a);
  static Schedule polynomial5(double a0, double af, double tf);
  /// Samples must have strictly increasing times and at least two rows.
  static Schedule tabulated(std::vector<double> times, std::vector<double> values);
  /// Two-column CSV (t, value). A non-numeric first line is treated as a header.
  static Schedule from_csv(const std::filesystem::path& path);
  static Schedule callable(std::function<double(double)> f, double fd_step = 1e-5);

  Kind kind() const { return kind_; }
  double start_value() const;
  double end_value() const;

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

 private:
  Schedule() = default;

  Kind kind_ = Kind::Constant;
  double a0_ = 0.0;
  double af_ = 0.0;
  double tf_ = 1.0;
  double fd_step_ = 1e-5;
  std::shared_ptr<const std::vector<double>> times_;
  std::shared_ptr<const std::vector<double>> values_;
  std::function<double(double)> fn_;
};

}  // namespace sta

#endif  // STA_SCHEDULE_HPP
