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

#ifndef FMDEPLOY_ONTOLOGY_HPP
#define FMDEPLOY_ONTOLOGY_HPP

#include <map>
#include <string>

namespace fmdeploy {

/// Shared vocabulary of resource types and their units. Application
/// requirements and node capacities must both draw from the same ontology;
/// matching is by resource-type name, case-sensitive.
struct ResourceOntology {
  std::map<std::string, std::string> entries;  // resource type -> unit

  bool contains(const std::string& resource_type) const {
    return entries.find(resource_type) != entries.end();
  }

  /// Comma-separated list of the known resource types, for diagnostics.
  std::string describe() const {
    std::string out;
    for (const auto& [name, unit] : entries) {
      if (!out.empty()) out += ", ";
      out += name;
    }
    return out;
  }

  /// The default vocabulary used by the CLI and the fixtures.
  static ResourceOntology standard() {
    ResourceOntology o;
    o.entries = {{"CPU", "units"},
                 {"RAM", "MB"},
                 {"DISK", "GB"},
                 {"GPU", "units"},
                 {"NET", "Mbps"}};
    return o;
  }

  bool operator==(const ResourceOntology&) const = default;
};

}  // namespace fmdeploy

#endif  // FMDEPLOY_ONTOLOGY_HPP
