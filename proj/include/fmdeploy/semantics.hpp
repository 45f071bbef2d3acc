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

#ifndef FMDEPLOY_SEMANTICS_HPP
#define FMDEPLOY_SEMANTICS_HPP

#include <map>
#include <span>
#include <string>

#include "fmdeploy/deployment.hpp"
#include "fmdeploy/model.hpp"

namespace fmdeploy {

// Configuration validity, written as a direct statement of the rules. This
// function is the semantic reference the search engine is tested against,
// so it favors clarity over speed and shares nothing with the encoder.
//
// A configuration is valid iff
//   - the root is selected and every selected feature's parent is selected,
//   - mandatory non-group children of selected features are selected,
//   - instance counts lie in [max(1, lower), upper],
//   - exclusive groups with a selected owner select exactly one member,
//   - implies/excludes constraints hold,
//   - exactly the selected attributed features are hosted, each on a node
//     that offers all its resource types (or is pinned to it), respecting
//     hosted-by pins, not-hosted-by exclusions, colocation and separation,
//   - and no embedded node's capacity is exceeded (counts multiply amounts).
//
// Throws std::invalid_argument when the configuration names a feature the
// model does not declare.
inline bool is_valid_configuration(const FeatureModel& model,
                                   const DeploymentSpec& spec,
                                   std::span<const NodeDescriptor> nodes,
                                   const Configuration& config) {
  for (const auto& [id, count] : config.selection) {
    if (!model.has(id))
      throw std::invalid_argument("configuration selects unknown feature '" + id + "'");
    if (count < 1) return false;  // canonical form: absent means count 0
  }
  for (const auto& [id, node] : config.hosting) {
    if (!model.has(id))
      throw std::invalid_argument("configuration hosts unknown feature '" + id + "'");
    (void)node;
  }

  if (!config.selected(model.root)) return false;

  for (const auto& [id, count] : config.selection) {
    const Feature& f = model.at(id);
    if (f.parent && !config.selected(*f.parent)) return false;
    const int floor = f.cardinality.lower > 1 ? f.cardinality.lower : 1;
    if (count < floor || count > f.cardinality.upper) return false;
  }

  for (const auto& [id, count] : config.selection) {
    (void)count;
    for (const auto& child_id : model.at(id).children) {
      const Feature& child = model.at(child_id);
      if (!child.group && child.variability == Variability::mandatory &&
          !config.selected(child_id))
        return false;
    }
  }

  for (const auto& g : model.groups) {
    if (!config.selected(g.owner)) continue;
    if (g.kind == GroupKind::exclusive) {
      int picked = 0;
      for (const auto& m : g.members) picked += config.selected(m) ? 1 : 0;
      if (picked != 1) return false;
    }
    // inclusive-or: none, one or several members; nothing to enforce.
  }

  for (const auto& c : model.cross_constraints) {
    const bool a = config.selected(c.antecedent);
    const bool b = config.selected(c.consequent);
    if (c.kind == CrossConstraintKind::implies && a && !b) return false;
    if (c.kind == CrossConstraintKind::excludes && a && b) return false;
  }

  // Hosting keys are exactly the selected attributed application features.
  std::size_t expected_hosted = 0;
  for (const auto& [id, count] : config.selection) {
    (void)count;
    const Feature& f = model.at(id);
    if (f.is_node_feature || !f.has_attributes()) continue;
    ++expected_hosted;
    if (!config.hosting.count(id)) return false;
  }
  if (config.hosting.size() != expected_hosted) return false;

  for (const auto& [id, node_id] : config.hosting) {
    const Feature& f = model.at(id);
    const NodeDescriptor* node = find_node(nodes, node_id);
    if (!node) return false;

    bool pinned_here = false;
    bool allowed_here = false;
    for (const auto& c : spec.constraints) {
      if (c.a != id) continue;
      if (c.kind == DeploymentConstraintKind::hosted_by) {
        if (c.node == node_id) allowed_here = true;
        if (!c.derived) {
          if (c.node != node_id) return false;  // pinned elsewhere
          pinned_here = true;
        }
      } else if (c.kind == DeploymentConstraintKind::not_hosted_by && c.node == node_id) {
        return false;
      }
    }
    if (!pinned_here && !allowed_here && !find_match(f, *node)) return false;
  }

  for (const auto& c : spec.constraints) {
    if (!c.is_pair()) continue;
    if (!config.selected(c.a) || !config.selected(c.b)) continue;
    auto ha = config.hosting.find(c.a);
    auto hb = config.hosting.find(c.b);
    if (ha == config.hosting.end() || hb == config.hosting.end()) return false;
    if (c.kind == DeploymentConstraintKind::colocated && ha->second != hb->second) return false;
    if (c.kind == DeploymentConstraintKind::separated && ha->second == hb->second) return false;
  }

  // Capacity (embedded nodes only).
  std::map<std::string, std::map<std::string, int>> hosted_by_node;
  for (const auto& [id, node_id] : config.hosting)
    hosted_by_node[node_id][id] = config.count_of(id);
  for (const auto& [node_id, hosted] : hosted_by_node) {
    const NodeDescriptor* node = find_node(nodes, node_id);
    if (!resource_verification(*node, model, hosted)) return false;
  }

  return true;
}

/// Per-node resource consumption of a configuration, for reporting.
inline std::map<std::string, std::map<std::string, long long>> per_node_usage(
    const FeatureModel& model, std::span<const NodeDescriptor> nodes,
    const Configuration& config) {
  std::map<std::string, std::map<std::string, long long>> usage;
  for (const auto& n : nodes) usage[n.id];
  for (const auto& [id, node_id] : config.hosting) {
    const Feature& f = model.at(id);
    for (const auto& a : f.attributes)
      usage[node_id][a.resource_type] += a.amount * config.count_of(id);
  }
  return usage;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_SEMANTICS_HPP
