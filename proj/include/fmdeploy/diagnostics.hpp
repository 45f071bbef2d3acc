// Copyright 2026 The fmdeploy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMDEPLOY_DIAGNOSTICS_HPP
#define FMDEPLOY_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace fmdeploy {

/// Position inside an input file, 1-based.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }

  bool operator==(const SourceSpan&) const = default;
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  Severity severity = Severity::error;
  std::string message;
  SourceSpan span;

  std::string to_string() const {
    return span.to_string() + ": " + (severity == Severity::error ? "error: " : "warning: ") +
           message;
  }

  bool operator==(const ParseDiagnostic&) const = default;
};

inline bool has_errors(const std::vector<ParseDiagnostic>& diagnostics) {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::error) return true;
  return false;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_DIAGNOSTICS_HPP
