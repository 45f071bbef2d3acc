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

#ifndef FMDEPLOY_DEPLOYMENT_HPP
#define FMDEPLOY_DEPLOYMENT_HPP

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fmdeploy/model.hpp"
#include "fmdeploy/validate.hpp"

namespace fmdeploy {

enum class DeploymentConstraintKind {
  hosted_by,      // feature, when selected, is placed on the given node
  not_hosted_by,  // feature is never placed on the given node
  colocated,      // both features, when both selected, share one node
  separated,      // both features, when both selected, use different nodes
};

/// One deployment constraint. HostedBy/NotHostedBy relate a node and a
/// feature; Colocated/Separated relate two features and are symmetric, so
/// the pair is stored in normalized (sorted) order. Constraints derived by
/// the matcher are flagged; only developer-declared HostedBy constraints pin
/// a feature's placement, derived ones record match candidates.
struct DeploymentConstraint {
  DeploymentConstraintKind kind = DeploymentConstraintKind::hosted_by;
  std::string node;  // hosted_by / not_hosted_by only
  std::string a;     // the feature; first of the pair for colocated/separated
  std::string b;     // second of the pair, empty otherwise
  bool derived = false;

  static DeploymentConstraint hosted_by(std::string node, std::string feature,
                                        bool derived = false) {
    return {DeploymentConstraintKind::hosted_by, std::move(node), std::move(feature), "", derived};
  }
  static DeploymentConstraint not_hosted_by(std::string node, std::string feature,
                                            bool derived = false) {
    return {DeploymentConstraintKind::not_hosted_by, std::move(node), std::move(feature), "",
            derived};
  }
  static DeploymentConstraint colocated(std::string x, std::string y) {
    if (y < x) std::swap(x, y);
    return {DeploymentConstraintKind::colocated, "", std::move(x), std::move(y), false};
  }
  static DeploymentConstraint separated(std::string x, std::string y) {
    if (y < x) std::swap(x, y);
    return {DeploymentConstraintKind::separated, "", std::move(x), std::move(y), false};
  }

  bool is_pair() const {
    return kind == DeploymentConstraintKind::colocated ||
           kind == DeploymentConstraintKind::separated;
  }

  /// Human-readable form, e.g. "colocated(bayesian, live_streaming)".
  std::string label() const {
    switch (kind) {
      case DeploymentConstraintKind::hosted_by:
        return "hostedby(" + node + ", " + a + ")";
      case DeploymentConstraintKind::not_hosted_by:
        return "nothostedby(" + node + ", " + a + ")";
      case DeploymentConstraintKind::colocated:
        return "colocated(" + a + ", " + b + ")";
      case DeploymentConstraintKind::separated:
        return "separated(" + a + ", " + b + ")";
    }
    return "?";
  }

  bool operator==(const DeploymentConstraint&) const = default;
};

/// The developer-declared deployment constraints for one application.
struct DeploymentSpec {
  std::vector<DeploymentConstraint> constraints;

  bool operator==(const DeploymentSpec&) const = default;
};

/// A deployment node as seen by the matcher: its feature model, class, and
/// (for embedded nodes) the finite capacities aggregated from the model's
/// attributes. Elastic nodes keep the offered resource types but their
/// amounts carry no limit semantics.
struct NodeDescriptor {
  std::string id;
  FeatureModel model;
  NodeClass node_class = NodeClass::embedded;
  std::map<std::string, long long> capacities;  // resource type -> total amount

  bool offers(const std::string& resource_type) const {
    return capacities.find(resource_type) != capacities.end();
  }

  /// Builds the descriptor from a deployment-node model. Capacities sum the
  /// attribute amounts over all features; node models are variability-free.
  static NodeDescriptor from_model(const FeatureModel& model) {
    if (model.kind != ModelKind::deployment_node || !model.node_class)
      throw std::invalid_argument("model '" + model.name + "' is not a deployment-node model");
    NodeDescriptor d;
    d.id = model.name;
    d.model = model;
    d.node_class = *model.node_class;
    for (const auto& [id, f] : model.features)
      for (const auto& a : f.attributes) d.capacities[a.resource_type] += a.amount;
    return d;
  }

  bool operator==(const NodeDescriptor&) const = default;
};

inline const NodeDescriptor* find_node(std::span<const NodeDescriptor> nodes,
                                       const std::string& id) {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

/// Ontology match: true iff the node offers every resource type the feature
/// requires. Amount sufficiency is deliberately not checked here; that is
/// the resource check's job, and only for embedded nodes.
inline bool find_match(const Feature& feature, const NodeDescriptor& node) {
  if (!feature.has_attributes())
    throw std::invalid_argument("find_match requires a feature with attributes, got '" +
                                feature.id + "'");
  for (const auto& a : feature.attributes)
    if (!node.offers(a.resource_type)) return false;
  return true;
}

/// Resource types of the feature the node does not offer, for explanations.
inline std::vector<std::string> missing_resource_types(const Feature& feature,
                                                       const NodeDescriptor& node) {
  std::vector<std::string> out;
  for (const auto& a : feature.attributes)
    if (!node.offers(a.resource_type)) out.push_back(a.resource_type);
  return out;
}

/// Capacity check for one node: the summed requirements of the hosted
/// features (instance count times per-instance amount) must not exceed the
/// node's capacity for every resource type. Elastic nodes are unbounded and
/// trivially pass. A hosted feature using a resource type the node does not
/// know rejects the assignment.
inline bool resource_verification(const NodeDescriptor& node,
                                  const FeatureModel& app,
                                  const std::map<std::string, int>& hosted) {
  if (node.node_class == NodeClass::elastic) return true;
  std::map<std::string, long long> load;
  for (const auto& [id, count] : hosted) {
    const Feature& f = app.at(id);
    for (const auto& a : f.attributes) {
      if (!node.offers(a.resource_type)) return false;
      load[a.resource_type] += a.amount * count;
    }
  }
  for (const auto& [type, used] : load)
    if (used > node.capacities.at(type)) return false;
  return true;
}

/// Contradictions detectable without search: colocated and separated over
/// the same pair, hosted-by and not-hosted-by over the same (node, feature),
/// references to unknown nodes or features, constraints over features that
/// carry no attributes (and therefore are never placed).
inline ValidationReport check_spec_consistency(const DeploymentSpec& spec,
                                               const FeatureModel& app,
                                               std::span<const NodeDescriptor> nodes) {
  ValidationReport report;
  const auto note = [&](IssueCode code, const std::string& subject, const std::string& msg) {
    report.push_back(ValidationIssue{code, subject, msg});
  };

  const auto check_feature = [&](const std::string& id, const std::string& where) {
    if (!app.has(id)) {
      note(IssueCode::dangling_reference, id, where + " references unknown feature '" + id + "'");
      return;
    }
    if (!app.at(id).has_attributes())
      note(IssueCode::dangling_reference, id,
           where + " references feature '" + id + "' which has no attributes and is never placed");
  };

  for (const auto& c : spec.constraints) {
    const std::string where = c.label();
    switch (c.kind) {
      case DeploymentConstraintKind::hosted_by:
      case DeploymentConstraintKind::not_hosted_by:
        if (!find_node(nodes, c.node))
          note(IssueCode::dangling_reference, c.node,
               where + " references unknown node '" + c.node + "'");
        check_feature(c.a, where);
        break;
      case DeploymentConstraintKind::colocated:
      case DeploymentConstraintKind::separated:
        check_feature(c.a, where);
        check_feature(c.b, where);
        if (c.a == c.b)
          note(IssueCode::dangling_reference, c.a, where + " relates a feature to itself");
        break;
    }
  }

  for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.constraints.size(); ++j) {
      const auto& x = spec.constraints[i];
      const auto& y = spec.constraints[j];
      if (x == y) {
        note(IssueCode::duplicate_constraint, x.label(), "duplicate constraint " + x.label());
        continue;
      }
      const bool same_pair = x.is_pair() && y.is_pair() && x.a == y.a && x.b == y.b;
      if (same_pair && x.kind != y.kind)
        note(IssueCode::contradiction, x.label(),
             "contradiction: " + x.label() + " and " + y.label());
      const bool same_host_pair =
          !x.is_pair() && !y.is_pair() && x.node == y.node && x.a == y.a && x.kind != y.kind;
      if (same_host_pair)
        note(IssueCode::contradiction, x.label(),
             "contradiction: " + x.label() + " and " + y.label());
    }
  }

  return report;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_DEPLOYMENT_HPP
