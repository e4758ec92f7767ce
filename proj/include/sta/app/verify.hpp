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

#ifndef STA_APP_VERIFY_HPP
#define STA_APP_VERIFY_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sta::app {

enum class VerifyLevel { Fast, Full };

std::optional<VerifyLevel> parse_level(std::string_view s);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Seeded invariant suite. `Full` adds the oscillator Fock/Gaussian
/// cross-check. Progress lines go to `progress` when given.
std::vector<CheckResult> run_checks(VerifyLevel level, std::ostream* progress = nullptr);

/// Prints the pass/fail table; 0 iff every check passes, 1 otherwise.
int cmd_verify(VerifyLevel level, std::ostream& out);

}  // namespace sta::app

#endif  // STA_APP_VERIFY_HPP
