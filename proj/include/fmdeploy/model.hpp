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

#ifndef FMDEPLOY_MODEL_HPP
#define FMDEPLOY_MODEL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmdeploy/ontology.hpp"

namespace fmdeploy {

/// Allowed instance-count range [lower, upper] of a feature. A selected
/// feature carries between max(1, lower) and upper instances; count 0 means
/// the feature is not selected. Instances multiply the feature's attribute
/// amounts.
struct Cardinality {
  int lower = 1;
  int upper = 1;

  bool is_default() const { return lower == 1 && upper == 1; }
  bool operator==(const Cardinality&) const = default;
};

/// Quantified requirement (application feature) or offered capacity
/// (deployment-node feature), in the ontology's unit for the resource type.
struct Attribute {
  std::string resource_type;
  long long amount = 0;  // per instance, non-negative

  bool operator==(const Attribute&) const = default;
};

enum class Variability { mandatory, optional };

enum class GroupKind {
  exclusive,     // exactly one member when the owner is selected
  inclusive_or,  // none, one or several members when the owner is selected
};

/// A decomposition group under an owner feature. Members are children of the
/// owner; their own mandatory/optional marker is ignored, the group decides.
struct Group {
  std::string owner;
  GroupKind kind = GroupKind::exclusive;
  std::vector<std::string> members;  // >= 2, in declaration order

  bool operator==(const Group&) const = default;
};

enum class CrossConstraintKind { implies, excludes };

struct CrossTreeConstraint {
  CrossConstraintKind kind = CrossConstraintKind::implies;
  std::string antecedent;
  std::string consequent;

  bool operator==(const CrossTreeConstraint&) const = default;
};

enum class ModelKind { application, deployment_node };
enum class NodeClass { embedded, elastic };

struct Feature {
  std::string id;
  std::string name;  // display name; equals id unless declared otherwise
  std::optional<std::string> parent;
  Variability variability = Variability::mandatory;
  std::optional<int> group;  // index into FeatureModel::groups, if a member
  Cardinality cardinality;
  std::vector<Attribute> attributes;
  bool is_node_feature = false;  // set only on features grafted by the matcher
  std::vector<std::string> children;  // declaration order

  bool has_attributes() const { return !attributes.empty(); }

  /// Per-instance amount of the given resource type, 0 when not declared.
  long long amount_of(const std::string& resource_type) const {
    for (const auto& a : attributes)
      if (a.resource_type == resource_type) return a.amount;
    return 0;
  }

  bool declares(const std::string& resource_type) const {
    for (const auto& a : attributes)
      if (a.resource_type == resource_type) return true;
    return false;
  }

  bool operator==(const Feature&) const = default;
};

/// A rooted feature tree with groups, attributes, cardinalities and
/// cross-tree constraints. Used both for applications and for deployment
/// nodes (where features describe the offered resources). Immutable by
/// convention once built; all analyses take it by const reference.
struct FeatureModel {
  std::string name;
  ModelKind kind = ModelKind::application;
  std::optional<NodeClass> node_class;  // present iff kind == deployment_node
  std::string root;
  std::map<std::string, Feature> features;
  std::vector<Group> groups;
  std::vector<CrossTreeConstraint> cross_constraints;

  bool has(const std::string& id) const { return features.count(id) != 0; }

  const Feature& at(const std::string& id) const {
    auto it = features.find(id);
    if (it == features.end())
      throw std::invalid_argument("unknown feature '" + id + "' in model '" + name + "'");
    return it->second;
  }

  /// Feature ids in depth-first declaration order starting at the root.
  std::vector<std::string> preorder() const {
    std::vector<std::string> out;
    out.reserve(features.size());
    if (!has(root)) return out;
    std::vector<const std::string*> stack{&root};
    while (!stack.empty()) {
      const std::string& id = *stack.back();
      stack.pop_back();
      auto it = features.find(id);
      if (it == features.end()) continue;
      out.push_back(id);
      const auto& kids = it->second.children;
      for (auto rit = kids.rbegin(); rit != kids.rend(); ++rit) stack.push_back(&*rit);
    }
    return out;
  }

  /// Application features carrying at least one attribute, in preorder.
  /// These are the features that need a hosting assignment.
  std::vector<std::string> attributed_features() const {
    std::vector<std::string> out;
    for (const auto& id : preorder()) {
      const Feature& f = at(id);
      if (!f.is_node_feature && f.has_attributes()) out.push_back(id);
    }
    return out;
  }

  /// True when the feature is selected in every valid configuration: it is
  /// the root or a mandatory non-group child of an always-selected feature.
  bool always_selected(const std::string& id) const {
    const Feature* f = &at(id);
    while (f->parent) {
      if (f->group || f->variability != Variability::mandatory) return false;
      f = &at(*f->parent);
    }
    return f->id == root;
  }

  bool operator==(const FeatureModel&) const = default;
};

/// One product: instance counts for the selected features (absent means not
/// selected) plus the node each selected attributed feature is hosted on.
/// Maps keep configurations canonically ordered and comparable as values.
struct Configuration {
  std::map<std::string, int> selection;        // feature id -> count >= 1
  std::map<std::string, std::string> hosting;  // feature id -> node id

  bool selected(const std::string& id) const { return selection.count(id) != 0; }

  int count_of(const std::string& id) const {
    auto it = selection.find(id);
    return it == selection.end() ? 0 : it->second;
  }

  bool operator==(const Configuration&) const = default;
  auto operator<=>(const Configuration&) const = default;
};

}  // namespace fmdeploy

#endif  // FMDEPLOY_MODEL_HPP
