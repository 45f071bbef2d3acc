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

#ifndef FMDEPLOY_JSON_IO_HPP
#define FMDEPLOY_JSON_IO_HPP

#include <map>
#include <span>
#include <string>

#include <json.hpp>

#include "fmdeploy/matcher.hpp"
#include "fmdeploy/model.hpp"

namespace fmdeploy {

/// Machine-readable solution set. Keys are sorted (nlohmann objects are
/// ordered maps) and no timing data is included, so identical inputs render
/// byte-identical output. Node features grafted by the matcher are omitted
/// from the selections; they are always present and carry no information.
inline nlohmann::json solution_set_to_json(const SolutionSet& set, const FeatureModel& app,
                                           std::span<const NodeDescriptor> nodes) {
  nlohmann::json out;
  out["count"] = set.count();
  out["truncated"] = set.truncated;
  out["configurations"] = nlohmann::json::array();
  for (std::size_t i = 0; i < set.configurations.size(); ++i) {
    const Configuration& config = set.configurations[i];
    nlohmann::json entry;
    entry["selected"] = nlohmann::json::object();
    for (const auto& [id, count] : config.selection)
      if (app.has(id)) entry["selected"][id] = count;
    entry["hosting"] = nlohmann::json::object();
    for (const auto& [id, node] : config.hosting) entry["hosting"][id] = node;
    if (i < set.usage.size() && !set.usage[i].empty()) {
      nlohmann::json usage = nlohmann::json::object();
      for (const auto& [node, per_type] : set.usage[i]) {
        for (const auto& [type, amount] : per_type) usage[node][type] = amount;
      }
      entry["usage"] = std::move(usage);
    }
    out["configurations"].push_back(std::move(entry));
  }
  nlohmann::json stats;
  stats["application"] = app.name;
  stats["features"] = app.features.size();
  stats["nodes"] = nlohmann::json::array();
  for (const auto& n : nodes) stats["nodes"].push_back(n.id);
  out["stats"] = std::move(stats);
  if (!set.diagnostics.empty()) out["diagnostics"] = set.diagnostics;
  return out;
}

/// Run report for the stats command: input digests, the count per
/// deployment-constraint subset, timing, truncation.
struct RunReport {
  std::map<std::string, std::string> input_digests;  // path -> hash
  std::uint64_t count = 0;
  std::map<std::string, std::uint64_t> subset_counts;
  double elapsed_ms = 0;
  bool truncated = false;
};

inline nlohmann::json run_report_to_json(const RunReport& report) {
  nlohmann::json out;
  out["inputs"] = report.input_digests;
  out["count"] = report.count;
  out["counts"] = report.subset_counts;
  out["elapsed_ms"] = report.elapsed_ms;
  out["truncated"] = report.truncated;
  return out;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_JSON_IO_HPP
