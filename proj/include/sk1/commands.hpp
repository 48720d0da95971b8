// Copyright 2026 The sk1 Authors
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

#ifndef SK1_COMMANDS_HPP
#define SK1_COMMANDS_HPP

#include <optional>
#include <string>

#include "sk1/serialize.hpp"

namespace sk1 {

struct CommandOutput {
  json report;
  std::optional<json> certificate;
  int exit_code = 0;
};

/// command is "factor", "lift", "certify" or "verify"; `input` is the JSON
/// text of a problem file (a certificate file for verify). An empty mode
/// falls back to the file's "mode", then to the command's default.
/// `overrides` holds parameters that take precedence over the file's.
/// Never throws: failures become a report with status "fail".
CommandOutput run_command(const std::string& command, const std::string& input, const std::string& mode = {},
                          const json& overrides = json::object());

struct IndependentCheck {
  double residual = 0.0;
  /// True when every value was exact and the comparison was done in rationals.
  bool exact = false;
  std::optional<std::size_t> worst_point;
  std::size_t factor_count = 0;
};

/// Recomputes A * prod(G_1) * ... * prod(G_p) - B at every grid point with
/// full matrix products (no column operations), in exact arithmetic when all
/// data is exact.
IndependentCheck check_certificate(const Certificate& c);

}  // namespace sk1

#endif  // SK1_COMMANDS_HPP
