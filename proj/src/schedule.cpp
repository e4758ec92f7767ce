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

#include "sta/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "sta/error.hpp"

namespace sta {

namespace {

// Minimum-jerk ramp and its derivatives with respect to s.
double ramp(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
double ramp_d1(double s) { return 30.0 * s * s * (1.0 - s) * (1.0 - s); }
double ramp_d2(double s) { return 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s); }

bool parse_double(const std::string& text, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  return used == text.size();
}

}  // namespace

Schedule Schedule::constant(double a) {
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "constant schedule must be finite");
  Schedule s;
  s.kind_ = Kind::Constant;
  s.a0_ = s.af_ = a;
  return s;
}

Schedule Schedule::polynomial5(double a0, double af, double tf) {
  if (!(tf > 0.0) || !std::isfinite(a0) || !std::isfinite(af)) {
    throw Error(ErrorCode::InvalidArgument, "polynomial5 needs finite endpoints and tf > 0");
  }
  Schedule s;
  s.kind_ = Kind::Polynomial5;
  s.a0_ = a0;
  s.af_ = af;
  s.tf_ = tf;
  return s;
}

Schedule Schedule::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "tabulated schedule needs >= 2 (t, value) pairs");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated schedule has non-finite samples");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated times must be strictly increasing");
    }
  }
  Schedule s;
  s.kind_ = Kind::Tabulated;
  s.a0_ = values.front();
  s.af_ = values.back();
  s.times_ = std::make_shared<const std::vector<double>>(std::move(times));
  s.values_ = std::make_shared<const std::vector<double>>(std::move(values));
  return s;
}

Schedule Schedule::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open schedule file " + path.string());
  std::vector<double> t, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    double a = 0.0, b = 0.0;
    const bool ok = comma != std::string::npos && parse_double(line.substr(0, comma), a) &&
                    parse_double(line.substr(comma + 1), b);
    if (!ok) {
      if (t.empty() && lineno == 1) continue;  // header
      throw Error(ErrorCode::InvalidArgument,
                  path.string() + ":" + std::to_string(lineno) + ": expected 't,value'");
    }
    t.push_back(a);
    v.push_back(b);
  }
  return tabulated(std::move(t), std::move(v));
}

Schedule Schedule::callable(std::function<double(double)> f, double fd_step) {
  if (!f || !(fd_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "callable schedule needs f and h > 0");
  Schedule s;
  s.kind_ = Kind::Callable;
  s.fn_ = std::move(f);
  s.fd_step_ = fd_step;
  s.a0_ = s.fn_(0.0);
  s.af_ = s.a0_;
  return s;
}

double Schedule::start_value() const { return a0_; }
double Schedule::end_value() const { return af_; }

double Schedule::value(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return a0_;
    case Kind::Polynomial5: {
      if (t <= 0.0) return a0_;
      if (t >= tf_) return af_;
      return a0_ + (af_ - a0_) * ramp(t / tf_);
    }
    case Kind::Tabulated: {
      const auto& ts = *times_;
      const auto& vs = *values_;
      if (t <= ts.front()) return vs.front();
      if (t >= ts.back()) return vs.back();
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
      const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
      return vs[i] + w * (vs[i + 1] - vs[i]);
    }
    case Kind::Callable:
      return fn_(t);
  }
  return 0.0;
}

double Schedule::derivative(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Polynomial5:
      if (t <= 0.0 || t >= tf_) return 0.0;
      return (af_ - a0_) * ramp_d1(t / tf_) / tf_;
    case Kind::Tabulated: {
      const auto& ts = *times_;
      const auto& vs = *values_;
      if (t < ts.front() || t > ts.back()) return 0.0;
      auto it = std::upper_bound(ts.begin(), ts.end(), t);
      if (it == ts.end()) --it;
      const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
      return (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
    }
    case Kind::Callable:
      return (fn_(t + fd_step_) - fn_(t - fd_step_)) / (2.0 * fd_step_);
  }
  return 0.0;
}

double Schedule::second_derivative(double t) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Tabulated:
      return 0.0;
    case Kind::Polynomial5:
      if (t <= 0.0 || t >= tf_) return 0.0;
      return (af_ - a0_) * ramp_d2(t / tf_) / (tf_ * tf_);
    case Kind::Callable: {
      // Truncation vs round-off balance for a second difference sits near 1e-4.
      const double h = std::max(fd_step_, 1e-4);
      return (fn_(t + h) - 2.0 * fn_(t) + fn_(t - h)) / (h * h);
    }
  }
  return 0.0;
}

}  // namespace sta
