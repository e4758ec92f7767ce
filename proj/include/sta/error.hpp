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

#ifndef STA_ERROR_HPP
#define STA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sta {

enum class ErrorCode {
  NotHermitian,
  InvalidState,
  ShapeMismatch,
  OutOfRange,
  DegenerateSpectrum,
  AmbiguousMatching,
  UnstableDerivative,
  InvalidProbability,
  VanishingEigenvalue,
  NotTracePreserving,
  GridMismatch,
  GapClosure,
  MissingTarget,
  DegenerateU,
  TruncationTooSmall,
  IdentityViolation,
  InvalidArgument,
};

/// Machine-readable name, used verbatim in run manifests.
constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::AmbiguousMatching: return "AmbiguousMatching";
    case ErrorCode::UnstableDerivative: return "UnstableDerivative";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::VanishingEigenvalue: return "VanishingEigenvalue";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::GapClosure: return "GapClosure";
    case ErrorCode::MissingTarget: return "MissingTarget";
    case ErrorCode::DegenerateU: return "DegenerateU";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view reason() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace sta

#endif  // STA_ERROR_HPP
