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

#ifndef FMDEPLOY_VALIDATE_HPP
#define FMDEPLOY_VALIDATE_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fmdeploy/model.hpp"
#include "fmdeploy/ontology.hpp"

namespace fmdeploy {

enum class IssueCode {
  missing_root,
  duplicate_id,
  dangling_reference,
  cycle,
  bad_cardinality,
  bad_group,
  bad_node_class,
  unknown_resource_type,
  duplicate_constraint,
  contradiction,
};

struct ValidationIssue {
  IssueCode code;
  std::string subject;  // feature/group/constraint the issue is about
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

using ValidationReport = std::vector<ValidationIssue>;

namespace detail {

inline void add(ValidationReport& r, IssueCode c, std::string subject, std::string msg) {
  r.push_back(ValidationIssue{c, std::move(subject), std::move(msg)});
}

}  // namespace detail

/// Structural well-formedness check. Returns an ordered list of violations;
/// an empty report means the model is well-formed. Problems are report
/// entries, never exceptions.
inline ValidationReport validate_model(const FeatureModel& model,
                                       const ResourceOntology& ontology = ResourceOntology::standard()) {
  using detail::add;
  ValidationReport report;

  if (model.root.empty() || !model.has(model.root)) {
    add(report, IssueCode::missing_root, model.root,
        "root feature '" + model.root + "' is not declared");
    return report;  // nothing else is checkable without a root
  }

  if (model.kind == ModelKind::deployment_node && !model.node_class) {
    add(report, IssueCode::bad_node_class, model.name,
        "deployment-node model '" + model.name + "' declares no node class");
  }
  if (model.kind == ModelKind::application && model.node_class) {
    add(report, IssueCode::bad_node_class, model.name,
        "application model '" + model.name + "' must not declare a node class");
  }

  // Per-feature checks: id consistency, parent linkage, cardinality bounds,
  // attribute vocabulary.
  for (const auto& [id, f] : model.features) {
    if (f.id != id) {
      add(report, IssueCode::duplicate_id, id,
          "feature keyed '" + id + "' carries conflicting id '" + f.id + "'");
    }
    if (id == model.root) {
      if (f.parent)
        add(report, IssueCode::dangling_reference, id, "root feature '" + id + "' has a parent");
    } else if (!f.parent) {
      add(report, IssueCode::missing_root, id,
          "feature '" + id + "' has no parent but is not the root");
    } else if (!model.has(*f.parent)) {
      add(report, IssueCode::dangling_reference, id,
          "feature '" + id + "' references unknown parent '" + *f.parent + "'");
    } else {
      const auto& kids = model.at(*f.parent).children;
      if (std::find(kids.begin(), kids.end(), id) == kids.end())
        add(report, IssueCode::dangling_reference, id,
            "feature '" + id + "' is not listed among the children of '" + *f.parent + "'");
    }
    for (const auto& c : f.children) {
      if (!model.has(c)) {
        add(report, IssueCode::dangling_reference, id,
            "feature '" + id + "' lists unknown child '" + c + "'");
      } else if (!model.at(c).parent || *model.at(c).parent != id) {
        add(report, IssueCode::dangling_reference, id,
            "child '" + c + "' of '" + id + "' does not point back to it");
      }
    }

    const Cardinality& card = f.cardinality;
    if (card.lower < 0 || card.upper < 1 || card.lower > card.upper) {
      add(report, IssueCode::bad_cardinality, id,
          "feature '" + id + "' has cardinality [" + std::to_string(card.lower) + ".." +
              std::to_string(card.upper) + "]");
    } else if (f.variability == Variability::mandatory && !f.group && id != model.root &&
               card.lower < 1) {
      add(report, IssueCode::bad_cardinality, id,
          "mandatory feature '" + id + "' has cardinality lower bound 0");
    }

    for (const auto& a : f.attributes) {
      if (!ontology.contains(a.resource_type))
        add(report, IssueCode::unknown_resource_type, id,
            "feature '" + id + "' uses resource type '" + a.resource_type +
                "' not in the ontology (" + ontology.describe() + ")");
      if (a.amount < 0)
        add(report, IssueCode::unknown_resource_type, id,
            "feature '" + id + "' declares a negative amount for '" + a.resource_type + "'");
    }
  }

  // Parent graph must be a tree: walking up from any feature reaches the
  // root without revisiting a node.
  for (const auto& [id, f] : model.features) {
    std::set<std::string> seen{id};
    const Feature* cur = &f;
    bool cycle = false;
    while (cur->parent && model.has(*cur->parent)) {
      if (!seen.insert(*cur->parent).second) {
        cycle = true;
        break;
      }
      cur = &model.at(*cur->parent);
    }
    if (cycle && id <= *cur->parent) {  // report each cycle once, at its least member
      add(report, IssueCode::cycle, id, "feature '" + id + "' participates in a parent cycle");
    }
  }

  for (std::size_t gi = 0; gi < model.groups.size(); ++gi) {
    const Group& g = model.groups[gi];
    const std::string label = "group #" + std::to_string(gi) + " of '" + g.owner + "'";
    if (!model.has(g.owner)) {
      add(report, IssueCode::bad_group, g.owner, label + ": unknown owner");
      continue;
    }
    if (g.members.size() < 2)
      add(report, IssueCode::bad_group, g.owner, label + ": fewer than two members");
    for (const auto& m : g.members) {
      if (!model.has(m)) {
        add(report, IssueCode::bad_group, g.owner, label + ": unknown member '" + m + "'");
        continue;
      }
      const Feature& mf = model.at(m);
      if (!mf.parent || *mf.parent != g.owner)
        add(report, IssueCode::bad_group, g.owner,
            label + ": member '" + m + "' is not a child of the owner");
      if (!mf.group || *mf.group != static_cast<int>(gi))
        add(report, IssueCode::bad_group, g.owner,
            label + ": member '" + m + "' does not reference the group");
    }
  }

  for (const auto& c : model.cross_constraints) {
    const char* kind = c.kind == CrossConstraintKind::implies ? "implies" : "excludes";
    if (!model.has(c.antecedent))
      add(report, IssueCode::dangling_reference, c.antecedent,
          std::string(kind) + " constraint references unknown feature '" + c.antecedent + "'");
    if (!model.has(c.consequent))
      add(report, IssueCode::dangling_reference, c.consequent,
          std::string(kind) + " constraint references unknown feature '" + c.consequent + "'");
    if (c.antecedent == c.consequent)
      add(report, IssueCode::dangling_reference, c.antecedent,
          std::string(kind) + " constraint relates '" + c.antecedent + "' to itself");
  }

  return report;
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_VALIDATE_HPP
