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

#ifndef FMDEPLOY_MATCHER_HPP
#define FMDEPLOY_MATCHER_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmdeploy/deployment.hpp"
#include "fmdeploy/model.hpp"
#include "fmdeploy/semantics.hpp"
#include "fmdeploy/solver.hpp"
#include "fmdeploy/validate.hpp"

namespace fmdeploy {

struct SolutionStats {
  std::uint64_t total = 0;
  double elapsed_ms = 0;
  std::map<std::string, std::uint64_t> subset_counts;  // filled by stats runs
};

/// All valid deployment configurations of one run, with per-configuration
/// resource usage on the embedded nodes and run metadata. Every member
/// satisfies is_valid_configuration; the list is duplicate-free and in
/// canonical order.
struct SolutionSet {
  std::vector<Configuration> configurations;
  // Parallel to configurations: embedded node id -> resource type -> used.
  std::vector<std::map<std::string, std::map<std::string, long long>>> usage;
  bool truncated = false;
  std::vector<std::string> diagnostics;
  SolutionStats stats;

  std::uint64_t count() const { return configurations.size(); }
};

/// Grafts one mandatory node feature per deployment node onto a copy of the
/// application model (unless a feature with that id already exists), seeds
/// the constraint list with the developer's deployment spec, and derives a
/// hosted-by or not-hosted-by constraint from ontology matching for every
/// (node, attributed feature) pair without a predefined hosted-by.
inline AugmentedModel build_augmented_model(const FeatureModel& app,
                                            std::span<const NodeDescriptor> nodes,
                                            const DeploymentSpec& spec) {
  AugmentedModel augmented;
  augmented.base = app;
  if (!augmented.base.has(augmented.base.root))
    throw std::invalid_argument("application model has no root feature");

  for (const auto& node : nodes) {
    if (augmented.base.has(node.id)) continue;
    Feature nf;
    nf.id = node.id;
    nf.name = node.id;
    nf.parent = augmented.base.root;
    nf.variability = Variability::mandatory;
    nf.is_node_feature = true;
    augmented.base.features.emplace(node.id, std::move(nf));
    augmented.base.features.at(augmented.base.root).children.push_back(node.id);
    augmented.node_features.push_back(node.id);
  }

  augmented.constraints = spec.constraints;

  const auto has_predefined_pin = [&](const std::string& node_id, const std::string& feature) {
    for (const auto& c : spec.constraints)
      if (c.kind == DeploymentConstraintKind::hosted_by && c.node == node_id && c.a == feature)
        return true;
    return false;
  };

  for (const auto& node : nodes) {
    for (const auto& id : augmented.base.attributed_features()) {
      if (has_predefined_pin(node.id, id)) continue;
      const Feature& f = augmented.base.at(id);
      augmented.constraints.push_back(
          find_match(f, node) ? DeploymentConstraint::hosted_by(node.id, id, /*derived=*/true)
                              : DeploymentConstraint::not_hosted_by(node.id, id, /*derived=*/true));
    }
  }

  return augmented;
}

struct MatchOptions {
  std::uint64_t solution_cap = 1000000;
};

/// Runs the full matching pipeline: consistency checks, model augmentation,
/// constraint derivation, and the all-solutions search with the capacity
/// rule enforced per embedded node. The input model is never modified. An
/// inconsistent spec is rejected before search with the report as
/// diagnostics; an application whose always-selected attributed feature has
/// no feasible host yields an empty set and a diagnostic naming the feature.
inline SolutionSet possible_host(const FeatureModel& app, std::span<const NodeDescriptor> nodes,
                                 const DeploymentSpec& spec, const MatchOptions& options = {}) {
  if (nodes.empty()) throw std::invalid_argument("possible_host needs at least one node");
  {
    const ValidationReport report = validate_model(app);
    if (!report.empty())
      throw std::invalid_argument("application model is not well-formed: " + report[0].message);
  }

  const auto start = std::chrono::steady_clock::now();
  SolutionSet result;

  const ValidationReport consistency = check_spec_consistency(spec, app, nodes);
  if (!consistency.empty()) {
    for (const auto& issue : consistency) result.diagnostics.push_back(issue.message);
    return result;
  }

  const AugmentedModel augmented = build_augmented_model(app, nodes, spec);
  const Encoding encoding = encode(augmented, nodes);
  for (const auto& id : encoding.unhostable_features)
    result.diagnostics.push_back("feature '" + id + "' is always selected but no node can host it");

  EnumerationResult enumeration = enumerate(encoding, EnumerateOptions{options.solution_cap});
  result.truncated = enumeration.truncated;
  result.configurations = std::move(enumeration.configurations);

  for (const auto& config : result.configurations) {
    std::map<std::string, std::map<std::string, long long>> usage;
    for (const auto& [feature, node_id] : config.hosting) {
      const NodeDescriptor* node = find_node(nodes, node_id);
      if (!node || node->node_class != NodeClass::embedded) continue;
      for (const auto& a : augmented.base.at(feature).attributes)
        usage[node_id][a.resource_type] += a.amount * config.count_of(feature);
    }
    result.usage.push_back(std::move(usage));
  }

  result.stats.total = result.configurations.size();
  result.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

struct Explanation {
  struct PerNode {
    std::string node;
    std::vector<std::string> missing_types;  // resource types the node lacks
    std::vector<std::string> blocked_by;     // constraints excluding the node
  };
  std::string feature;
  std::vector<PerNode> nodes;
  std::vector<std::string> conflicts;  // cross-constraint contradictions

  bool empty() const {
    for (const auto& n : nodes)
      if (!n.missing_types.empty() || !n.blocked_by.empty()) return false;
    return conflicts.empty();
  }
};

/// Why a feature cannot be hosted: per node, the resource types it lacks or
/// the constraints that exclude it; plus pin/colocation contradictions that
/// no node choice can satisfy. A feasible feature yields an empty
/// explanation.
inline Explanation explain_infeasibility(const FeatureModel& app,
                                         std::span<const NodeDescriptor> nodes,
                                         const DeploymentSpec& spec,
                                         const std::string& feature) {
  const Feature& f = app.at(feature);  // throws for unknown features
  Explanation out;
  out.feature = feature;

  std::map<std::string, std::vector<std::string>> pins;  // feature -> pinned nodes
  for (const auto& c : spec.constraints)
    if (c.kind == DeploymentConstraintKind::hosted_by && !c.derived)
      pins[c.a].push_back(c.node);

  for (const auto& node : nodes) {
    Explanation::PerNode entry;
    entry.node = node.id;
    const bool pinned_here =
        pins.count(feature) && std::find(pins[feature].begin(), pins[feature].end(), node.id) !=
                                   pins[feature].end();
    if (!pinned_here) entry.missing_types = missing_resource_types(f, node);
    for (const auto& c : spec.constraints) {
      if (c.kind == DeploymentConstraintKind::not_hosted_by && c.a == feature &&
          c.node == node.id)
        entry.blocked_by.push_back(c.label());
      if (c.kind == DeploymentConstraintKind::hosted_by && !c.derived && c.a == feature &&
          c.node != node.id)
        entry.blocked_by.push_back("pinned elsewhere by " + c.label());
    }
    out.nodes.push_back(std::move(entry));
  }

  if (pins.count(feature)) {
    auto list = pins[feature];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (list.size() > 1) {
      std::string msg = "feature '" + feature + "' is pinned to several nodes:";
      for (const auto& n : list) msg += " " + n;
      out.conflicts.push_back(msg);
    }
  }

  for (const auto& c : spec.constraints) {
    if (c.kind != DeploymentConstraintKind::colocated) continue;
    if (c.a != feature && c.b != feature) continue;
    const std::string& partner = c.a == feature ? c.b : c.a;
    if (!pins.count(feature) || !pins.count(partner)) continue;
    bool overlap = false;
    for (const auto& mine : pins[feature])
      for (const auto& theirs : pins[partner])
        if (mine == theirs) overlap = true;
    if (!overlap)
      out.conflicts.push_back("colocation " + c.label() + " conflicts with the hosted-by pins of '" +
                              feature + "' and '" + partner + "'");
  }

  return out;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_MATCHER_HPP
