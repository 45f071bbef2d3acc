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

#ifndef FMDEPLOY_TESTS_SUPPORT_UTIL_HPP
#define FMDEPLOY_TESTS_SUPPORT_UTIL_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmdeploy/fmdeploy.hpp"

namespace testsupport {

inline std::string fixture_dir() { return FMDEPLOY_FIXTURE_DIR; }
inline std::string cli_path() { return FMDEPLOY_CLI_PATH; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline fmdeploy::FeatureModel parse_or_die(const std::string& text,
                                           const std::string& name = "<test>") {
  fmdeploy::ModelParse parse = fmdeploy::parse_model(text, name);
  if (!parse.ok()) {
    std::string msg = "parse failed:";
    for (const auto& d : parse.diagnostics) msg += "\n  " + d.to_string();
    throw std::runtime_error(msg);
  }
  return std::move(*parse.model);
}

struct Fixture {
  fmdeploy::FeatureModel app;
  std::vector<fmdeploy::NodeDescriptor> nodes;  // HAB, CloudVM
  fmdeploy::DeploymentSpec spec;                // pin + colocated + separated
};

inline Fixture load_fixture() {
  Fixture f;
  f.app = parse_or_die(slurp(fixture_dir() + "/control_admittance.fm"), "control_admittance.fm");
  f.nodes.push_back(fmdeploy::NodeDescriptor::from_model(
      parse_or_die(slurp(fixture_dir() + "/hab.fm"), "hab.fm")));
  f.nodes.push_back(fmdeploy::NodeDescriptor::from_model(
      parse_or_die(slurp(fixture_dir() + "/cloud_vm.fm"), "cloud_vm.fm")));
  fmdeploy::SpecParse spec = fmdeploy::parse_deployment_spec(
      slurp(fixture_dir() + "/deployment.dep"), "deployment.dep", f.app,
      std::span<const fmdeploy::NodeDescriptor>(f.nodes));
  if (!spec.ok()) throw std::runtime_error("fixture deployment spec failed to parse");
  f.spec = std::move(*spec.spec);
  return f;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs the CLI with the given arguments, capturing both streams.
inline CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string base = "/tmp/fmdeploy_test_" + std::to_string(getpid()) + "_" +
                           std::to_string(counter++);
  const std::string out_path = base + ".out";
  const std::string err_path = base + ".err";
  const std::string command =
      cli_path() + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/fmdeploy_test_" + std::to_string(getpid()) + "_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace testsupport

#endif  // FMDEPLOY_TESTS_SUPPORT_UTIL_HPP
