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

#ifndef FMDEPLOY_SERIALIZER_HPP
#define FMDEPLOY_SERIALIZER_HPP

#include <set>
#include <string>

#include "fmdeploy/model.hpp"

namespace fmdeploy {

namespace detail {

class ModelWriter {
 public:
  explicit ModelWriter(const FeatureModel& model) : model_(model) {}

  std::string write() {
    out_ += "model " + model_.name;
    if (model_.kind == ModelKind::deployment_node && model_.node_class)
      out_ += *model_.node_class == NodeClass::embedded ? " class embedded" : " class elastic";
    out_ += " {\n";
    write_feature(model_.root, 1);
    out_ += "}\n";
    if (!model_.cross_constraints.empty()) {
      out_ += "constraints {\n";
      for (const auto& c : model_.cross_constraints) {
        out_ += "  " + c.antecedent +
                (c.kind == CrossConstraintKind::implies ? " implies " : " excludes ") +
                c.consequent + ";\n";
      }
      out_ += "}\n";
    }
    return std::move(out_);
  }

 private:
  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void write_feature(const std::string& id, int depth) {
    const Feature& f = model_.at(id);
    indent(depth);
    out_ += head(f);
    write_body(f, depth);
  }

  std::string head(const Feature& f) const {
    std::string s = f.variability == Variability::mandatory ? "mandatory " : "optional ";
    s += f.id;
    if (f.name != f.id) s += " as \"" + f.name + "\"";
    if (!f.cardinality.is_default())
      s += " [" + std::to_string(f.cardinality.lower) + ".." +
           std::to_string(f.cardinality.upper) + "]";
    if (!f.attributes.empty()) {
      s += " (";
      for (std::size_t i = 0; i < f.attributes.size(); ++i) {
        if (i) s += ", ";
        s += f.attributes[i].resource_type + "=" + std::to_string(f.attributes[i].amount);
      }
      s += ")";
    }
    return s;
  }

  // Children print in declaration order; a group prints as one block when
  // its first member is reached (members are consecutive by construction).
  void write_body(const Feature& f, int depth) {
    if (f.children.empty()) {
      out_ += "\n";
      return;
    }
    out_ += " {\n";
    std::set<int> groups_done;
    for (const auto& child_id : f.children) {
      const Feature& child = model_.at(child_id);
      if (!child.group) {
        write_feature(child_id, depth + 1);
        continue;
      }
      if (groups_done.count(*child.group)) continue;
      groups_done.insert(*child.group);
      const Group& g = model_.groups[static_cast<std::size_t>(*child.group)];
      indent(depth + 1);
      out_ += g.kind == GroupKind::exclusive ? "xor {\n" : "or {\n";
      for (const auto& member : g.members) write_feature(member, depth + 2);
      indent(depth + 1);
      out_ += "}\n";
    }
    indent(depth);
    out_ += "}\n";
  }

  const FeatureModel& model_;
  std::string out_;
};

}  // namespace detail

/// Canonical text form. Round-trips: parse_model(serialize_model(m)) is
/// structurally identical to m for every model that passes validate_model.
inline std::string serialize_model(const FeatureModel& model) {
  return detail::ModelWriter(model).write();
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_SERIALIZER_HPP
