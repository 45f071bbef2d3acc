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

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmdeploy/fmdeploy.hpp"
#include "fmdeploy/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitOracle = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return in.good() || in.eof();
}

void print_diagnostics(const std::vector<fmdeploy::ParseDiagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << d.to_string() << "\n";
}

struct Inputs {
  fmdeploy::FeatureModel app;
  std::vector<fmdeploy::NodeDescriptor> nodes;
  fmdeploy::DeploymentSpec spec;
  std::map<std::string, std::string> digests;
};

// Loads and parses the application, node models and (optionally) the
// deployment spec. Returns the exit code to use on failure.
std::optional<int> load_inputs(const std::string& app_path,
                               const std::vector<std::string>& node_paths,
                               const std::string& spec_path, Inputs& inputs) {
  std::string text;
  if (!read_file(app_path, text)) {
    std::cerr << "cannot read '" << app_path << "'\n";
    return kExitIo;
  }
  inputs.digests[app_path] = fmdeploy::fnv1a_digest(text);
  fmdeploy::ModelParse app_parse = fmdeploy::parse_model(text, app_path);
  print_diagnostics(app_parse.diagnostics);
  if (!app_parse.ok()) return kExitValidation;
  if (app_parse.model->kind != fmdeploy::ModelKind::application) {
    std::cerr << app_path << ": expected an application model, got a deployment-node model\n";
    return kExitValidation;
  }
  inputs.app = std::move(*app_parse.model);

  for (const auto& node_path : node_paths) {
    if (!read_file(node_path, text)) {
      std::cerr << "cannot read '" << node_path << "'\n";
      return kExitIo;
    }
    inputs.digests[node_path] = fmdeploy::fnv1a_digest(text);
    fmdeploy::ModelParse node_parse = fmdeploy::parse_model(text, node_path);
    print_diagnostics(node_parse.diagnostics);
    if (!node_parse.ok()) return kExitValidation;
    if (node_parse.model->kind != fmdeploy::ModelKind::deployment_node) {
      std::cerr << node_path << ": expected a deployment-node model (declare 'class embedded' or "
                   "'class elastic')\n";
      return kExitValidation;
    }
    inputs.nodes.push_back(fmdeploy::NodeDescriptor::from_model(*node_parse.model));
  }

  if (!spec_path.empty()) {
    if (!read_file(spec_path, text)) {
      std::cerr << "cannot read '" << spec_path << "'\n";
      return kExitIo;
    }
    inputs.digests[spec_path] = fmdeploy::fnv1a_digest(text);
    fmdeploy::SpecParse spec_parse =
        fmdeploy::parse_deployment_spec(text, spec_path, inputs.app, inputs.nodes);
    print_diagnostics(spec_parse.diagnostics);
    if (!spec_parse.ok()) return kExitValidation;
    inputs.spec = std::move(*spec_parse.spec);
  }
  return std::nullopt;
}

std::uint64_t solution_cap(std::optional<std::uint64_t> limit_flag) {
  if (limit_flag) return *limit_flag;
  if (const char* env = std::getenv("FMDEPLOY_LIMIT")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && parsed > 0) return parsed;
    std::cerr << "ignoring invalid FMDEPLOY_LIMIT='" << env << "'\n";
  }
  return 1000000;
}

int cmd_validate(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "cannot read '" << path << "'\n";
    return kExitIo;
  }
  fmdeploy::ModelParse parse = fmdeploy::parse_model(text, path);
  print_diagnostics(parse.diagnostics);
  if (!parse.ok()) return kExitValidation;
  const fmdeploy::ValidationReport report = fmdeploy::validate_model(*parse.model);
  for (const auto& issue : report) std::cerr << path << ": error: " << issue.message << "\n";
  return report.empty() ? kExitOk : kExitValidation;
}

std::string selection_text(const fmdeploy::Configuration& config,
                           const fmdeploy::FeatureModel& app) {
  std::string out;
  for (const auto& [id, count] : config.selection) {
    if (!app.has(id)) continue;  // grafted node features carry no information
    if (!out.empty()) out += ", ";
    out += id;
    if (count > 1) out += " x" + std::to_string(count);
  }
  return out;
}

std::string hosting_text(const fmdeploy::Configuration& config) {
  std::string out;
  for (const auto& [id, node] : config.hosting) {
    if (!out.empty()) out += ", ";
    out += id + "->" + node;
  }
  return out.empty() ? "-" : out;
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], row[i].size());
    }
  for (const auto& row : rows) {
    std::cout << "|";
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << " " << std::left << std::setw(static_cast<int>(widths[i])) << row[i] << " |";
    std::cout << "\n";
  }
}

int cmd_enumerate(const std::string& app_path, const std::vector<std::string>& node_paths,
                  const std::string& spec_path, const std::string& format, bool count_only,
                  std::optional<std::uint64_t> limit, bool oracle) {
  Inputs inputs;
  if (auto failure = load_inputs(app_path, node_paths, spec_path, inputs)) return *failure;

  fmdeploy::MatchOptions options;
  options.solution_cap = solution_cap(limit);
  const fmdeploy::SolutionSet set =
      fmdeploy::possible_host(inputs.app, inputs.nodes, inputs.spec, options);
  for (const auto& d : set.diagnostics) std::cerr << d << "\n";

  if (oracle) {
    if (set.truncated) {
      std::cerr << "solution cap reached; oracle comparison is inconclusive\n";
      return kExitOracle;
    }
    const fmdeploy::AugmentedModel augmented =
        fmdeploy::build_augmented_model(inputs.app, inputs.nodes, inputs.spec);
    try {
      const std::vector<fmdeploy::Configuration> expected =
          fmdeploy::brute_force_enumerate(augmented, inputs.nodes);
      if (expected != set.configurations) {
        std::cerr << "oracle mismatch: search found " << set.count() << ", brute force found "
                  << expected.size() << "\n";
        return kExitOracle;
      }
    } catch (const fmdeploy::BruteForceBoundExceeded& e) {
      std::cerr << e.what() << "\n";
      return kExitOracle;
    }
  }

  if (count_only) {
    std::cout << set.count() << "\n";
    return kExitOk;
  }
  if (format == "table") {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"#", "selection", "hosting"});
    for (std::size_t i = 0; i < set.configurations.size(); ++i)
      rows.push_back({std::to_string(i + 1), selection_text(set.configurations[i], inputs.app),
                      hosting_text(set.configurations[i])});
    print_table(rows);
    std::cout << set.count() << " configuration(s)" << (set.truncated ? " (truncated)" : "")
              << "\n";
  } else {
    std::cout << fmdeploy::solution_set_to_json(set, inputs.app, inputs.nodes).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_stats(const std::string& app_path, const std::vector<std::string>& node_paths,
              const std::string& spec_path, const std::string& format,
              std::optional<std::uint64_t> limit) {
  Inputs inputs;
  if (auto failure = load_inputs(app_path, node_paths, spec_path, inputs)) return *failure;

  fmdeploy::MatchOptions options;
  options.solution_cap = solution_cap(limit);

  // Hosted-by constraints stay active in every run; the colocation and
  // separation constraints are toggled to show how each shrinks the space.
  fmdeploy::DeploymentSpec base;
  std::vector<fmdeploy::DeploymentConstraint> toggled;
  for (const auto& c : inputs.spec.constraints)
    (c.is_pair() ? toggled : base.constraints).push_back(c);

  std::vector<std::pair<std::string, fmdeploy::DeploymentSpec>> subsets;
  subsets.emplace_back("none", base);
  for (const auto& c : toggled) {
    fmdeploy::DeploymentSpec s = base;
    s.constraints.push_back(c);
    subsets.emplace_back(c.label(), s);
  }
  if (toggled.size() > 1) {
    fmdeploy::DeploymentSpec s = base;
    for (const auto& c : toggled) s.constraints.push_back(c);
    subsets.emplace_back("all", s);
  }

  fmdeploy::RunReport report;
  report.input_digests = inputs.digests;
  std::vector<std::pair<std::string, fmdeploy::SolutionStats>> columns;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [label, spec] : subsets) {
    const fmdeploy::SolutionSet set =
        fmdeploy::possible_host(inputs.app, inputs.nodes, spec, options);
    for (const auto& d : set.diagnostics) std::cerr << d << "\n";
    report.subset_counts[label] = set.count();
    report.truncated = report.truncated || set.truncated;
    report.count = set.count();  // last subset is the full spec
    columns.emplace_back(label, set.stats);
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (format == "table") {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Feature Model", "Features"};
    std::vector<std::string> counts{inputs.app.name, std::to_string(inputs.app.features.size())};
    std::vector<std::string> times{"Execution Time (ms)", "-"};
    for (const auto& [label, stats] : columns) {
      header.push_back(label == "none" ? "Config" : "Config with " + label);
      counts.push_back(std::to_string(stats.total));
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(1) << stats.elapsed_ms;
      times.push_back(ms.str());
    }
    rows.push_back(std::move(header));
    rows.push_back(std::move(counts));
    rows.push_back(std::move(times));
    print_table(rows);
  } else {
    std::cout << fmdeploy::run_report_to_json(report).dump(2) << "\n";
  }
  return report.truncated ? kExitValidation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deployment-configuration analysis over extended feature models"};
  app.require_subcommand(1);

  std::string model_path;
  auto* validate = app.add_subcommand("validate", "Parse and structurally check a model file");
  validate->add_option("model", model_path, "feature model (.fm)")->required();

  std::string app_path, spec_path;
  std::vector<std::string> node_paths;
  std::string format = "json";
  bool count_only = false;
  bool oracle = false;
  std::optional<std::uint64_t> limit;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("app", app_path, "application model (.fm)")->required();
    cmd->add_option("--node", node_paths, "deployment node model (.fm), repeatable")
        ->required()
        ->take_all();
    cmd->add_option("--spec", spec_path, "deployment spec (.dep)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--limit", limit, "solution cap (overrides FMDEPLOY_LIMIT)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate all valid deployment configurations");
  add_common(enumerate);
  enumerate->add_flag("--count-only", count_only, "print only the configuration count");
  enumerate->add_flag("--oracle", oracle,
                      "cross-check the result against the brute-force enumerator");

  auto* stats = app.add_subcommand("stats", "Configuration counts per deployment-constraint subset");
  add_common(stats);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(model_path);
    if (enumerate->parsed())
      return cmd_enumerate(app_path, node_paths, spec_path, format, count_only, limit, oracle);
    if (stats->parsed()) return cmd_stats(app_path, node_paths, spec_path, format, limit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
