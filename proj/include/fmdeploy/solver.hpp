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

#ifndef FMDEPLOY_SOLVER_HPP
#define FMDEPLOY_SOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fmdeploy/deployment.hpp"
#include "fmdeploy/model.hpp"

namespace fmdeploy {

/// The matcher's working copy of the application: node features grafted
/// under the root, plus the constraint list seeded with the developer's
/// deployment spec and extended with the derived hosted-by/not-hosted-by
/// facts from ontology matching.
struct AugmentedModel {
  FeatureModel base;
  std::vector<std::string> node_features;        // injected feature ids
  std::vector<DeploymentConstraint> constraints;  // predefined + derived
};

enum class EncodedConstraintKind {
  tree_link,         // child selected -> parent selected
  mandatory_link,    // parent selected -> mandatory child selected
  xor_exactly_one,   // owner selected -> exactly one member selected
  implies,
  excludes,
  hosting_link,      // feature selected <-> hosting assigned
  hosted_pin,        // hosting fixed by a predefined hosted-by
  colocated_eq,
  separated_neq,
  resource_sum_leq,  // one embedded node, one resource type
};

/// One constraint over the variable space. Count variables encode selection
/// (value 0 = not selected) and instance count at once; hosting variables
/// range over node indices with -1 meaning "not placed".
struct EncodedConstraint {
  EncodedConstraintKind kind;
  int x = -1;                    // first variable
  int y = -1;                    // second variable
  std::vector<int> members;      // xor member count variables
  int pin = -1;                  // hosted_pin target node index
  struct Term {
    int count_var;
    int host_var;
    long long amount;  // per instance
  };
  std::vector<Term> terms;       // resource_sum_leq
  int node = -1;                 // resource_sum_leq node index
  long long bound = 0;           // resource_sum_leq capacity
  std::string label;             // for diagnostics and traces
};

struct VariableSpace {
  struct Variable {
    std::string feature;          // owning feature id
    bool is_hosting = false;
    std::vector<int> domain;      // ascending
  };
  std::vector<Variable> variables;            // counts in preorder, then hosting
  std::map<std::string, int> count_index;     // feature id -> variable
  std::map<std::string, int> host_index;      // feature id -> variable
  std::vector<std::string> node_ids;          // hosting value -> node id
};

struct Encoding {
  VariableSpace space;
  std::vector<EncodedConstraint> constraints;
  // Attributed features that are selected in every configuration but have
  // no candidate host; any model containing one has no solutions.
  std::vector<std::string> unhostable_features;
};

/// Translates an augmented model into variables and constraints. Hosting
/// domains come from the augmented constraint list: nodes with a hosted-by
/// entry, minus not-hosted-by entries, narrowed to the pinned node when a
/// predefined hosted-by exists. A pin onto an embedded node that does not
/// offer one of the feature's resource types is dropped (the capacity rule
/// can never hold for it).
inline Encoding encode(const AugmentedModel& augmented, std::span<const NodeDescriptor> nodes) {
  const FeatureModel& model = augmented.base;
  Encoding enc;
  VariableSpace& space = enc.space;
  for (const auto& n : nodes) space.node_ids.push_back(n.id);

  const auto node_index = [&](const std::string& id) {
    for (std::size_t i = 0; i < space.node_ids.size(); ++i)
      if (space.node_ids[i] == id) return static_cast<int>(i);
    return -1;
  };

  const std::vector<std::string> order = model.preorder();

  for (const auto& id : order) {
    const Feature& f = model.at(id);
    VariableSpace::Variable v;
    v.feature = id;
    const int floor = std::max(1, f.cardinality.lower);
    if (id != model.root) v.domain.push_back(0);
    for (int c = floor; c <= f.cardinality.upper; ++c) v.domain.push_back(c);
    space.count_index[id] = static_cast<int>(space.variables.size());
    space.variables.push_back(std::move(v));
  }

  for (const auto& id : order) {
    const Feature& f = model.at(id);
    if (f.is_node_feature || !f.has_attributes()) continue;

    std::vector<char> candidate(nodes.size(), 0);
    std::vector<int> pins;
    for (const auto& c : augmented.constraints) {
      if (c.is_pair() || c.a != id) continue;
      const int n = node_index(c.node);
      if (n < 0) continue;
      if (c.kind == DeploymentConstraintKind::hosted_by) {
        candidate[static_cast<std::size_t>(n)] = 1;
        if (!c.derived) pins.push_back(n);
      }
    }
    for (const auto& c : augmented.constraints) {
      if (c.is_pair() || c.a != id) continue;
      const int n = node_index(c.node);
      if (n >= 0 && c.kind == DeploymentConstraintKind::not_hosted_by)
        candidate[static_cast<std::size_t>(n)] = 0;
    }
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (!pins.empty()) {
      for (std::size_t n = 0; n < candidate.size(); ++n)
        if (std::find(pins.begin(), pins.end(), static_cast<int>(n)) == pins.end())
          candidate[n] = 0;
      if (pins.size() > 1) std::fill(candidate.begin(), candidate.end(), 0);
    }
    for (std::size_t n = 0; n < candidate.size(); ++n) {
      if (!candidate[n]) continue;
      const NodeDescriptor& nd = nodes[n];
      if (nd.node_class == NodeClass::embedded)
        for (const auto& a : f.attributes)
          if (!nd.offers(a.resource_type)) candidate[n] = 0;
    }

    VariableSpace::Variable v;
    v.feature = id;
    v.is_hosting = true;
    v.domain.push_back(-1);
    for (std::size_t n = 0; n < candidate.size(); ++n)
      if (candidate[n]) v.domain.push_back(static_cast<int>(n));
    if (v.domain.size() == 1 && model.always_selected(id))
      enc.unhostable_features.push_back(id);
    space.host_index[id] = static_cast<int>(space.variables.size());
    space.variables.push_back(std::move(v));
  }

  auto& out = enc.constraints;
  const auto cvar = [&](const std::string& id) { return space.count_index.at(id); };

  for (const auto& id : order) {
    const Feature& f = model.at(id);
    if (f.parent) {
      out.push_back({EncodedConstraintKind::tree_link, cvar(id), cvar(*f.parent), {}, -1, {}, -1,
                     0, "tree(" + id + ")"});
      if (!f.group && f.variability == Variability::mandatory)
        out.push_back({EncodedConstraintKind::mandatory_link, cvar(*f.parent), cvar(id), {}, -1,
                       {}, -1, 0, "mandatory(" + id + ")"});
    }
  }

  for (const auto& g : model.groups) {
    if (g.kind != GroupKind::exclusive) continue;  // or-groups add no constraint
    EncodedConstraint c;
    c.kind = EncodedConstraintKind::xor_exactly_one;
    c.x = cvar(g.owner);
    for (const auto& m : g.members) c.members.push_back(cvar(m));
    c.label = "xor(" + g.owner + ")";
    out.push_back(std::move(c));
  }

  for (const auto& cc : model.cross_constraints) {
    out.push_back({cc.kind == CrossConstraintKind::implies ? EncodedConstraintKind::implies
                                                           : EncodedConstraintKind::excludes,
                   cvar(cc.antecedent), cvar(cc.consequent), {}, -1, {}, -1, 0,
                   (cc.kind == CrossConstraintKind::implies ? "implies(" : "excludes(") +
                       cc.antecedent + "," + cc.consequent + ")"});
  }

  for (const auto& [id, hv] : space.host_index) {
    out.push_back({EncodedConstraintKind::hosting_link, cvar(id), hv, {}, -1, {}, -1, 0,
                   "hosting(" + id + ")"});
  }

  for (const auto& c : augmented.constraints) {
    if (c.kind == DeploymentConstraintKind::hosted_by && !c.derived) {
      auto it = space.host_index.find(c.a);
      const int n = node_index(c.node);
      if (it != space.host_index.end() && n >= 0)
        out.push_back({EncodedConstraintKind::hosted_pin, it->second, -1, {}, n, {}, -1, 0,
                       "pin(" + c.a + "->" + c.node + ")"});
    } else if (c.is_pair()) {
      auto ia = space.host_index.find(c.a);
      auto ib = space.host_index.find(c.b);
      if (ia == space.host_index.end() || ib == space.host_index.end()) continue;
      out.push_back({c.kind == DeploymentConstraintKind::colocated
                         ? EncodedConstraintKind::colocated_eq
                         : EncodedConstraintKind::separated_neq,
                     ia->second, ib->second, {}, -1, {}, -1, 0, c.label()});
    }
  }

  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const NodeDescriptor& nd = nodes[n];
    if (nd.node_class != NodeClass::embedded) continue;
    std::map<std::string, std::vector<EncodedConstraint::Term>> per_type;
    for (const auto& [id, hv] : space.host_index) {
      const auto& dom = space.variables[static_cast<std::size_t>(hv)].domain;
      if (std::find(dom.begin(), dom.end(), static_cast<int>(n)) == dom.end()) continue;
      for (const auto& a : model.at(id).attributes)
        if (a.amount > 0)
          per_type[a.resource_type].push_back({cvar(id), hv, a.amount});
    }
    for (auto& [type, terms] : per_type) {
      EncodedConstraint c;
      c.kind = EncodedConstraintKind::resource_sum_leq;
      c.node = static_cast<int>(n);
      c.bound = nd.capacities.count(type) ? nd.capacities.at(type) : 0;
      c.terms = std::move(terms);
      c.label = "resource(" + nd.id + "," + type + ")";
      out.push_back(std::move(c));
    }
  }

  return enc;
}

struct EnumerateOptions {
  std::uint64_t solution_cap = 1000000;
};

struct EnumerationResult {
  std::vector<Configuration> configurations;  // canonical order, no duplicates
  bool truncated = false;
};

namespace detail {

// Depth-first search over the variable space in static order (counts in
// tree preorder, then hosting variables), with forward checking on binary
// constraints and a running lower bound on each resource sum. Every leaf is
// re-checked against the full constraint set before it is emitted, so
// propagation is purely a pruning aid and can never add or lose solutions.
class SearchEngine {
 public:
  SearchEngine(const Encoding& enc, const EnumerateOptions& options)
      : enc_(enc), options_(options) {
    const auto& vars = enc_.space.variables;
    alive_.resize(vars.size());
    assigned_.resize(vars.size(), false);
    value_.resize(vars.size(), 0);
    for (std::size_t v = 0; v < vars.size(); ++v)
      alive_[v].assign(vars[v].domain.size(), 1);
    watchers_.resize(vars.size());
    for (std::size_t c = 0; c < enc_.constraints.size(); ++c)
      for (int v : constraint_vars(enc_.constraints[c]))
        watchers_[static_cast<std::size_t>(v)].push_back(c);
  }

  EnumerationResult run() {
    EnumerationResult result;
    search(0, result);
    std::sort(result.configurations.begin(), result.configurations.end());
    return result;
  }

 private:
  static std::vector<int> constraint_vars(const EncodedConstraint& c) {
    std::vector<int> vs;
    if (c.x >= 0) vs.push_back(c.x);
    if (c.y >= 0) vs.push_back(c.y);
    for (int m : c.members) vs.push_back(m);
    for (const auto& t : c.terms) {
      vs.push_back(t.count_var);
      vs.push_back(t.host_var);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  bool sel(int var) const { return value_[static_cast<std::size_t>(var)] >= 1; }
  bool hosted(int var) const { return value_[static_cast<std::size_t>(var)] >= 0; }
  bool done(int var) const { return assigned_[static_cast<std::size_t>(var)]; }
  int val(int var) const { return value_[static_cast<std::size_t>(var)]; }

  // Full evaluation; only meaningful when every variable of c is assigned.
  bool satisfied(const EncodedConstraint& c) const {
    switch (c.kind) {
      case EncodedConstraintKind::tree_link:
        return !(sel(c.x) && !sel(c.y));
      case EncodedConstraintKind::mandatory_link:
        return !(sel(c.x) && !sel(c.y));
      case EncodedConstraintKind::implies:
        return !(sel(c.x) && !sel(c.y));
      case EncodedConstraintKind::excludes:
        return !(sel(c.x) && sel(c.y));
      case EncodedConstraintKind::xor_exactly_one: {
        if (!sel(c.x)) return true;
        int picked = 0;
        for (int m : c.members) picked += sel(m) ? 1 : 0;
        return picked == 1;
      }
      case EncodedConstraintKind::hosting_link:
        return sel(c.x) == hosted(c.y);
      case EncodedConstraintKind::hosted_pin:
        return !hosted(c.x) || val(c.x) == c.pin;
      case EncodedConstraintKind::colocated_eq:
        return !(hosted(c.x) && hosted(c.y)) || val(c.x) == val(c.y);
      case EncodedConstraintKind::separated_neq:
        return !(hosted(c.x) && hosted(c.y)) || val(c.x) != val(c.y);
      case EncodedConstraintKind::resource_sum_leq: {
        long long sum = 0;
        for (const auto& t : c.terms)
          if (val(t.host_var) == c.node) sum += t.amount * val(t.count_var);
        return sum <= c.bound;
      }
    }
    return true;
  }

  // Pair consistency used by forward checking: can (xv for c.x, yv for c.y)
  // appear together in a solution as far as this constraint is concerned?
  static bool pair_ok(const EncodedConstraint& c, int xv, int yv) {
    switch (c.kind) {
      case EncodedConstraintKind::tree_link:
      case EncodedConstraintKind::mandatory_link:
      case EncodedConstraintKind::implies:
        return !(xv >= 1 && yv == 0);
      case EncodedConstraintKind::excludes:
        return !(xv >= 1 && yv >= 1);
      case EncodedConstraintKind::hosting_link:
        return (xv >= 1) == (yv >= 0);
      case EncodedConstraintKind::colocated_eq:
        return !(xv >= 0 && yv >= 0) || xv == yv;
      case EncodedConstraintKind::separated_neq:
        return !(xv >= 0 && yv >= 0) || xv != yv;
      default:
        return true;
    }
  }

  void prune(int var, std::size_t value_index) {
    alive_[static_cast<std::size_t>(var)][value_index] = 0;
    trail_.emplace_back(var, value_index);
  }

  bool restrict_other(const EncodedConstraint& c, int assigned_var) {
    const bool assigned_is_x = c.x == assigned_var;
    const int other = assigned_is_x ? c.y : c.x;
    if (other < 0 || done(other)) {
      // both assigned (or unary): check outright
      if (c.y < 0) return satisfied(c);
      return done(c.x) && done(c.y) ? satisfied(c) : true;
    }
    const auto& domain = enc_.space.variables[static_cast<std::size_t>(other)].domain;
    auto& alive = alive_[static_cast<std::size_t>(other)];
    bool any = false;
    for (std::size_t k = 0; k < domain.size(); ++k) {
      if (!alive[k]) continue;
      const int xv = assigned_is_x ? val(assigned_var) : domain[k];
      const int yv = assigned_is_x ? domain[k] : val(assigned_var);
      if (pair_ok(c, xv, yv))
        any = true;
      else
        prune(other, k);
    }
    return any;
  }

  bool propagate_xor(const EncodedConstraint& c) {
    if (done(c.x) && !sel(c.x)) return true;  // tree links keep members at 0
    int picked = 0, open = 0;
    for (int m : c.members) {
      if (done(m))
        picked += sel(m) ? 1 : 0;
      else
        ++open;
    }
    if (done(c.x) && sel(c.x)) {
      if (picked > 1) return false;
      if (picked + open < 1) return false;
      if (picked == 1) {
        for (int m : c.members) {
          if (done(m)) continue;
          const auto& domain = enc_.space.variables[static_cast<std::size_t>(m)].domain;
          auto& alive = alive_[static_cast<std::size_t>(m)];
          bool any = false;
          for (std::size_t k = 0; k < domain.size(); ++k) {
            if (!alive[k]) continue;
            if (domain[k] >= 1)
              prune(m, k);
            else
              any = true;
          }
          if (!any) return false;
        }
      } else if (open == 1 && picked == 0) {
        for (int m : c.members) {
          if (done(m)) continue;
          const auto& domain = enc_.space.variables[static_cast<std::size_t>(m)].domain;
          auto& alive = alive_[static_cast<std::size_t>(m)];
          bool any = false;
          for (std::size_t k = 0; k < domain.size(); ++k) {
            if (!alive[k]) continue;
            if (domain[k] == 0)
              prune(m, k);
            else
              any = true;
          }
          if (!any) return false;
        }
      }
    } else if (picked > 1) {
      // two members already selected: the owner can no longer be selected
      if (done(c.x)) return !sel(c.x);
      const auto& domain = enc_.space.variables[static_cast<std::size_t>(c.x)].domain;
      auto& alive = alive_[static_cast<std::size_t>(c.x)];
      bool any = false;
      for (std::size_t k = 0; k < domain.size(); ++k) {
        if (!alive[k]) continue;
        if (domain[k] >= 1)
          prune(c.x, k);
        else
          any = true;
      }
      if (!any) return false;
    }
    return true;
  }

  bool propagate_resource(const EncodedConstraint& c) {
    long long decided = 0;
    for (const auto& t : c.terms)
      if (done(t.host_var) && done(t.count_var) && val(t.host_var) == c.node)
        decided += t.amount * val(t.count_var);
    if (decided > c.bound) return false;
    // Counts of features already placed on this node cannot push past it.
    for (const auto& t : c.terms) {
      if (!done(t.host_var) || val(t.host_var) != c.node || done(t.count_var)) continue;
      const auto& domain = enc_.space.variables[static_cast<std::size_t>(t.count_var)].domain;
      auto& alive = alive_[static_cast<std::size_t>(t.count_var)];
      bool any = false;
      for (std::size_t k = 0; k < domain.size(); ++k) {
        if (!alive[k]) continue;
        if (decided + t.amount * domain[k] > c.bound)
          prune(t.count_var, k);
        else
          any = true;
      }
      if (!any) return false;
    }
    return true;
  }

  bool propagate(int var) {
    for (std::size_t ci : watchers_[static_cast<std::size_t>(var)]) {
      const EncodedConstraint& c = enc_.constraints[ci];
      switch (c.kind) {
        case EncodedConstraintKind::xor_exactly_one:
          if (!propagate_xor(c)) return false;
          break;
        case EncodedConstraintKind::resource_sum_leq:
          if (!propagate_resource(c)) return false;
          break;
        case EncodedConstraintKind::hosted_pin:
          if (!satisfied(c)) return false;
          break;
        default:
          if (!restrict_other(c, var)) return false;
          break;
      }
    }
    return true;
  }

  void emit(EnumerationResult& result) {
    for (const auto& c : enc_.constraints)
      if (!satisfied(c)) return;
    Configuration config;
    for (std::size_t v = 0; v < enc_.space.variables.size(); ++v) {
      const auto& var = enc_.space.variables[v];
      if (var.is_hosting) {
        if (value_[v] >= 0)
          config.hosting[var.feature] = enc_.space.node_ids[static_cast<std::size_t>(value_[v])];
      } else if (value_[v] >= 1) {
        config.selection[var.feature] = value_[v];
      }
    }
    if (result.configurations.size() >= options_.solution_cap) {
      result.truncated = true;
      return;
    }
    result.configurations.push_back(std::move(config));
  }

  void search(std::size_t v, EnumerationResult& result) {
    if (result.truncated) return;
    if (v == enc_.space.variables.size()) {
      emit(result);
      return;
    }
    const auto& domain = enc_.space.variables[v].domain;
    for (std::size_t k = 0; k < domain.size() && !result.truncated; ++k) {
      if (!alive_[v][k]) continue;
      const std::size_t mark = trail_.size();
      assigned_[v] = true;
      value_[v] = domain[k];
      if (propagate(static_cast<int>(v))) search(v + 1, result);
      assigned_[v] = false;
      while (trail_.size() > mark) {
        auto [tv, tk] = trail_.back();
        trail_.pop_back();
        alive_[static_cast<std::size_t>(tv)][tk] = 1;
      }
    }
  }

  const Encoding& enc_;
  EnumerateOptions options_;
  std::vector<std::vector<char>> alive_;
  std::vector<bool> assigned_;
  std::vector<int> value_;
  std::vector<std::vector<std::size_t>> watchers_;
  std::vector<std::pair<int, std::size_t>> trail_;
};

}  // namespace detail

/// Enumerates every solution of the encoding exactly once, in canonical
/// order (configurations compare as values, selection before hosting). When
/// the solution cap is hit the result is flagged as truncated.
inline EnumerationResult enumerate(const Encoding& encoding,
                                   const EnumerateOptions& options = {}) {
  return detail::SearchEngine(encoding, options).run();
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_SOLVER_HPP
