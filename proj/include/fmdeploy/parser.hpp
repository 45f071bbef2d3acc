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

#ifndef FMDEPLOY_PARSER_HPP
#define FMDEPLOY_PARSER_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fmdeploy/deployment.hpp"
#include "fmdeploy/diagnostics.hpp"
#include "fmdeploy/lexer.hpp"
#include "fmdeploy/model.hpp"
#include "fmdeploy/ontology.hpp"

namespace fmdeploy {

struct ModelParse {
  std::optional<FeatureModel> model;  // present iff no error diagnostics
  std::vector<ParseDiagnostic> diagnostics;
  std::map<std::string, SourceSpan> feature_spans;

  bool ok() const { return model.has_value(); }
};

struct SpecParse {
  std::optional<DeploymentSpec> spec;
  std::vector<ParseDiagnostic> diagnostics;
  std::vector<SourceSpan> constraint_spans;  // parallel to spec->constraints

  bool ok() const { return spec.has_value(); }
};

namespace detail {

// Thrown on unrecoverable syntax errors after the diagnostic is recorded;
// semantic problems (duplicate ids, unresolved names) accumulate instead.
struct ParseAbort {};

class ParserBase {
 public:
  ParserBase(std::string_view text, std::string file)
      : lexer_(text, std::move(file)) {
    tok_ = lexer_.next();
  }

  std::vector<ParseDiagnostic> take_diagnostics() { return std::move(diagnostics_); }

 protected:
  void error_at(const SourceSpan& span, const std::string& message) {
    diagnostics_.push_back(ParseDiagnostic{Severity::error, message, span});
  }

  [[noreturn]] void abort_at(const SourceSpan& span, const std::string& message) {
    error_at(span, message);
    throw ParseAbort{};
  }

  const Token& peek() const { return tok_; }
  bool at(TokenKind k) const { return tok_.kind == k; }

  Token advance() {
    Token t = std::move(tok_);
    if (t.kind == TokenKind::bad) abort_at(t.span, t.text);
    tok_ = lexer_.next();
    return t;
  }

  Token expect(TokenKind kind, const std::string& what) {
    if (tok_.kind == TokenKind::bad) abort_at(tok_.span, tok_.text);
    if (tok_.kind != kind) abort_at(tok_.span, "expected " + what + ", got " + tok_.describe());
    return advance();
  }

  bool accept(TokenKind kind) {
    if (tok_.kind != kind) return false;
    advance();
    return true;
  }

  static bool is_lower_snake(const std::string& s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    for (char c : s)
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return true;
  }

  Lexer lexer_;
  Token tok_;
  std::vector<ParseDiagnostic> diagnostics_;
};

class ModelParser : public ParserBase {
 public:
  ModelParser(std::string_view text, std::string file, const ResourceOntology& ontology)
      : ParserBase(text, std::move(file)), ontology_(ontology) {}

  ModelParse run() {
    ModelParse result;
    try {
      parse_model();
      expect(TokenKind::end_of_input, "end of input");
    } catch (const ParseAbort&) {
      // diagnostic already recorded
    }
    result.feature_spans = std::move(spans_);
    result.diagnostics = take_diagnostics();
    if (!has_errors(result.diagnostics)) result.model = std::move(model_);
    return result;
  }

 private:
  void parse_model() {
    expect(TokenKind::kw_model, "'model'");
    model_.name = expect(TokenKind::identifier, "a model name").text;
    if (accept(TokenKind::kw_class)) {
      model_.kind = ModelKind::deployment_node;
      if (accept(TokenKind::kw_embedded))
        model_.node_class = NodeClass::embedded;
      else if (accept(TokenKind::kw_elastic))
        model_.node_class = NodeClass::elastic;
      else
        abort_at(peek().span, "expected 'embedded' or 'elastic', got " + peek().describe());
    }
    expect(TokenKind::lbrace, "'{'");
    model_.root = parse_feature(std::nullopt, std::nullopt);
    expect(TokenKind::rbrace, "'}'");
    if (at(TokenKind::kw_constraints)) parse_cross_constraints();
  }

  std::string parse_feature(std::optional<std::string> parent, std::optional<int> group) {
    Feature f;
    if (accept(TokenKind::kw_mandatory))
      f.variability = Variability::mandatory;
    else if (accept(TokenKind::kw_optional))
      f.variability = Variability::optional;
    else
      abort_at(peek().span, "expected 'mandatory' or 'optional', got " + peek().describe());

    const Token id_tok = expect(TokenKind::identifier, "a feature identifier");
    f.id = id_tok.text;
    f.name = f.id;
    f.parent = std::move(parent);
    f.group = group;
    if (!is_lower_snake(f.id))
      error_at(id_tok.span, "feature identifier '" + f.id + "' must be lowercase snake_case");
    if (model_.has(f.id))
      error_at(id_tok.span, "duplicate feature identifier '" + f.id + "'");
    else
      spans_.emplace(f.id, id_tok.span);

    if (accept(TokenKind::kw_as))
      f.name = expect(TokenKind::string_literal, "a display name string").text;

    if (at(TokenKind::lbracket)) {
      const Token open = advance();
      const Token lo = expect(TokenKind::integer, "an integer lower bound");
      expect(TokenKind::dotdot, "'..'");
      const Token hi = expect(TokenKind::integer, "an integer upper bound");
      expect(TokenKind::rbracket, "']'");
      f.cardinality.lower = static_cast<int>(lo.value);
      f.cardinality.upper = static_cast<int>(hi.value);
      if (f.cardinality.lower > f.cardinality.upper || f.cardinality.upper < 1)
        error_at(open.span, "cardinality [" + lo.text + ".." + hi.text +
                                "] requires 0 <= lower <= upper and upper >= 1");
      else if (f.variability == Variability::mandatory && !group && f.cardinality.lower < 1)
        error_at(open.span, "mandatory feature '" + f.id + "' needs a lower bound of at least 1");
    }

    if (at(TokenKind::lparen)) parse_attributes(f);

    // Body: interleaved child features and groups, in declaration order.
    const std::string feature_id = f.id;
    model_.features.emplace(feature_id, std::move(f));
    if (accept(TokenKind::lbrace)) {
      while (!at(TokenKind::rbrace)) {
        if (at(TokenKind::kw_xor) || at(TokenKind::kw_or))
          parse_group(feature_id);
        else if (at(TokenKind::kw_mandatory) || at(TokenKind::kw_optional))
          model_.features.at(feature_id)
              .children.push_back(parse_feature(feature_id, std::nullopt));
        else
          abort_at(peek().span,
                   "expected a feature, a group or '}', got " + peek().describe());
      }
      expect(TokenKind::rbrace, "'}'");
    }
    return feature_id;
  }

  void parse_attributes(Feature& f) {
    expect(TokenKind::lparen, "'('");
    do {
      const Token name = expect(TokenKind::identifier, "a resource type");
      expect(TokenKind::equals, "'='");
      const Token amount = expect(TokenKind::integer, "an amount");
      if (!ontology_.contains(name.text))
        error_at(name.span, "unknown resource type '" + name.text + "'; the ontology defines " +
                                ontology_.describe());
      if (f.declares(name.text))
        error_at(name.span, "feature '" + f.id + "' declares '" + name.text + "' twice");
      f.attributes.push_back(Attribute{name.text, amount.value});
    } while (accept(TokenKind::comma));
    expect(TokenKind::rparen, "')'");
  }

  void parse_group(const std::string& owner) {
    const Token kw = advance();  // xor | or
    Group g;
    g.owner = owner;
    g.kind = kw.kind == TokenKind::kw_xor ? GroupKind::exclusive : GroupKind::inclusive_or;
    const int index = static_cast<int>(model_.groups.size());
    model_.groups.push_back(g);
    expect(TokenKind::lbrace, "'{'");
    std::vector<std::string> members;
    while (!at(TokenKind::rbrace)) {
      if (!(at(TokenKind::kw_mandatory) || at(TokenKind::kw_optional)))
        abort_at(peek().span, "expected a group member feature, got " + peek().describe());
      const std::string member = parse_feature(owner, index);
      members.push_back(member);
      model_.features.at(owner).children.push_back(member);
    }
    const Token close = expect(TokenKind::rbrace, "'}'");
    if (members.size() < 2)
      error_at(close.span, "a group needs at least two members");
    model_.groups[index].members = std::move(members);
  }

  void parse_cross_constraints() {
    expect(TokenKind::kw_constraints, "'constraints'");
    expect(TokenKind::lbrace, "'{'");
    while (!at(TokenKind::rbrace)) {
      const Token lhs = expect(TokenKind::identifier, "a feature identifier");
      CrossTreeConstraint c;
      if (accept(TokenKind::kw_implies))
        c.kind = CrossConstraintKind::implies;
      else if (accept(TokenKind::kw_excludes))
        c.kind = CrossConstraintKind::excludes;
      else
        abort_at(peek().span, "expected 'implies' or 'excludes', got " + peek().describe());
      const Token rhs = expect(TokenKind::identifier, "a feature identifier");
      expect(TokenKind::semicolon, "';'");
      c.antecedent = lhs.text;
      c.consequent = rhs.text;
      if (!model_.has(c.antecedent))
        error_at(lhs.span, "constraint references unknown feature '" + c.antecedent + "'");
      if (!model_.has(c.consequent))
        error_at(rhs.span, "constraint references unknown feature '" + c.consequent + "'");
      if (c.antecedent == c.consequent)
        error_at(lhs.span, "constraint relates '" + c.antecedent + "' to itself");
      model_.cross_constraints.push_back(std::move(c));
    }
    expect(TokenKind::rbrace, "'}'");
  }

  const ResourceOntology& ontology_;
  FeatureModel model_;
  std::map<std::string, SourceSpan> spans_;
};

class SpecParser : public ParserBase {
 public:
  SpecParser(std::string_view text, std::string file, const FeatureModel& app,
             std::span<const NodeDescriptor> nodes)
      : ParserBase(text, std::move(file)), app_(app), nodes_(nodes) {}

  SpecParse run() {
    SpecParse result;
    try {
      expect(TokenKind::kw_deploy, "'deploy'");
      expect(TokenKind::lbrace, "'{'");
      while (!at(TokenKind::rbrace)) parse_constraint();
      expect(TokenKind::rbrace, "'}'");
      expect(TokenKind::end_of_input, "end of input");
    } catch (const ParseAbort&) {
    }
    result.constraint_spans = std::move(spans_);
    result.diagnostics = take_diagnostics();
    if (!has_errors(result.diagnostics)) result.spec = std::move(spec_);
    return result;
  }

 private:
  void parse_constraint() {
    const Token kw = advance();
    if (kw.kind != TokenKind::kw_hostedby && kw.kind != TokenKind::kw_colocated &&
        kw.kind != TokenKind::kw_separated)
      abort_at(kw.span, "expected 'hostedby', 'colocated' or 'separated', got " + kw.describe());
    expect(TokenKind::lparen, "'('");
    const Token first = expect(TokenKind::identifier, "an identifier");
    expect(TokenKind::comma, "','");
    const Token second = expect(TokenKind::identifier, "an identifier");
    expect(TokenKind::rparen, "')'");
    expect(TokenKind::semicolon, "';'");

    DeploymentConstraint c;
    if (kw.kind == TokenKind::kw_hostedby) {
      c = DeploymentConstraint::hosted_by(first.text, second.text);
      if (!find_node(nodes_, first.text))
        error_at(first.span, "unknown node '" + first.text + "'");
      check_feature(second);
    } else {
      c = kw.kind == TokenKind::kw_colocated
              ? DeploymentConstraint::colocated(first.text, second.text)
              : DeploymentConstraint::separated(first.text, second.text);
      check_feature(first);
      check_feature(second);
      if (first.text == second.text)
        error_at(first.span, (kw.kind == TokenKind::kw_colocated
                                  ? std::string("colocation")
                                  : std::string("separation")) +
                                 " of a feature with itself");
    }

    for (const auto& prev : spec_.constraints) {
      if (prev == c) {
        error_at(kw.span, "duplicate constraint " + c.label());
        return;
      }
      if (prev.is_pair() && c.is_pair() && prev.a == c.a && prev.b == c.b && prev.kind != c.kind)
        error_at(kw.span, "contradiction: " + c.label() + " conflicts with " + prev.label());
    }
    spec_.constraints.push_back(std::move(c));
    spans_.push_back(kw.span);
  }

  void check_feature(const Token& tok) {
    if (!app_.has(tok.text)) {
      error_at(tok.span, "unknown feature '" + tok.text + "'");
      return;
    }
    if (!app_.at(tok.text).has_attributes())
      error_at(tok.span, "feature '" + tok.text +
                             "' has no attributes and cannot appear in a deployment constraint");
  }

  const FeatureModel& app_;
  std::span<const NodeDescriptor> nodes_;
  DeploymentSpec spec_;
  std::vector<SourceSpan> spans_;
};

}  // namespace detail

/// Parses a feature-model source. On success the returned model passes
/// validate_model against the same ontology.
inline ModelParse parse_model(std::string_view text, const std::string& file = "<input>",
                              const ResourceOntology& ontology = ResourceOntology::standard()) {
  return detail::ModelParser(text, file, ontology).run();
}

/// Parses a deployment-spec source against an application model and the
/// available nodes. Feature names resolve in the application, node names in
/// the node list; constraint features must carry attributes.
inline SpecParse parse_deployment_spec(std::string_view text, const std::string& file,
                                       const FeatureModel& app,
                                       std::span<const NodeDescriptor> nodes) {
  return detail::SpecParser(text, file, app, nodes).run();
}

inline SpecParse parse_deployment_spec(std::string_view text, const std::string& file,
                                       const FeatureModel& app,
                                       std::span<const FeatureModel> node_models) {
  std::vector<NodeDescriptor> descriptors;
  descriptors.reserve(node_models.size());
  for (const auto& m : node_models) descriptors.push_back(NodeDescriptor::from_model(m));
  return detail::SpecParser(text, file, app, descriptors).run();
}

}  // namespace fmdeploy

#endif  // FMDEPLOY_PARSER_HPP
