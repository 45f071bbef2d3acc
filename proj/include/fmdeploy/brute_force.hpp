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

#ifndef FMDEPLOY_BRUTE_FORCE_HPP
#define FMDEPLOY_BRUTE_FORCE_HPP

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmdeploy/semantics.hpp"
#include "fmdeploy/solver.hpp"

namespace fmdeploy {

struct BruteForceBoundExceeded : std::runtime_error {
  explicit BruteForceBoundExceeded(double product, double bound)
      : std::runtime_error("brute force refused: domain product " + std::to_string(product) +
                           " exceeds bound " + std::to_string(bound)),
        product(product) {}
  double product;
};

/// Exhaustive oracle: walks every combination of instance counts and hosting
/// assignments and keeps those that is_valid_configuration accepts. Shares
/// only the domain types with the search engine; no encoding, no
/// propagation. Refuses inputs whose domain product exceeds the bound.
inline std::vector<Configuration> brute_force_enumerate(const AugmentedModel& augmented,
                                                        std::span<const NodeDescriptor> nodes,
                                                        double bound = 1e7) {
  const FeatureModel& model = augmented.base;
  const std::vector<std::string> features = model.preorder();
  const std::vector<std::string> attributed = model.attributed_features();

  double product = 1;
  for (const auto& id : features) {
    const Feature& f = model.at(id);
    const int floor = std::max(1, f.cardinality.lower);
    product *= 1 + (f.cardinality.upper - floor + 1);
  }
  for (std::size_t i = 0; i < attributed.size(); ++i) product *= nodes.size();
  if (product > bound) throw BruteForceBoundExceeded(product, bound);

  const DeploymentSpec spec{augmented.constraints};
  std::vector<Configuration> out;
  Configuration scratch;

  // Hosting choices for the selected attributed features, one at a time.
  auto assign_hosts = [&](auto&& self, std::size_t i, const std::vector<std::string>& hosted)
      -> void {
    if (i == hosted.size()) {
      if (is_valid_configuration(model, spec, nodes, scratch)) out.push_back(scratch);
      return;
    }
    for (const auto& node : nodes) {
      scratch.hosting[hosted[i]] = node.id;
      self(self, i + 1, hosted);
    }
    scratch.hosting.erase(hosted[i]);
  };

  auto assign_counts = [&](auto&& self, std::size_t i) -> void {
    if (i == features.size()) {
      std::vector<std::string> hosted;
      for (const auto& id : attributed)
        if (scratch.selected(id)) hosted.push_back(id);
      assign_hosts(assign_hosts, 0, hosted);
      return;
    }
    const std::string& id = features[i];
    const Feature& f = model.at(id);
    self(self, i + 1);  // not selected
    const int floor = std::max(1, f.cardinality.lower);
    for (int count = floor; count <= f.cardinality.upper; ++count) {
      scratch.selection[id] = count;
      self(self, i + 1);
    }
    scratch.selection.erase(id);
  };

  assign_counts(assign_counts, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_BRUTE_FORCE_HPP
