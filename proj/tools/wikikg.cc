// Copyright 2026 The wikikg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point: build, metrics, analyze, report, verify.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "wikikg/pipeline/pipeline.h"

namespace {

std::string flag_name(const std::string& key) {
  std::string flag = key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return "--" + flag;
}

}  // namespace

int main(int argc, char** argv) {
  using wikikg::pipeline::KeyKind;
  CLI::App app{"Builds a knowledge graph from Wikipedia dumps and analyses article metrics."};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  bool force = false;
  std::map<std::string, std::string> overrides;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_flag("--force", force, "rerun stages even when their checkpoints are current");
  for (const auto& key : wikikg::pipeline::config_keys()) {
    std::string name = key.name;
    std::string help = std::string(key.help) + " [" + key.section + "]";
    if (key.kind == KeyKind::kSwitch) {
      app.add_flag_function(
          flag_name(name), [&overrides, name](int64_t) { overrides[name] = "true"; }, help);
    } else {
      app.add_option_function<std::string>(
          flag_name(name), [&overrides, name](const std::string& v) { overrides[name] = v; },
          help);
    }
  }

  std::string command;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"build", "build the graph tables from the dumps and verify them"},
           {"metrics", "compute per-article metrics from the graph"},
           {"analyze", "aggregate, correlate and rank the metrics"},
           {"report", "print the run report and the analysis report"},
           {"verify", "check graph integrity"}}) {
    app.add_subcommand(name, help)->callback([&command, name = name] { command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help output exits 0; every usage error is a configuration error.
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(wikikg::pipeline::kExitConfig);
  }

  wikikg::pipeline::PipelineConfig config;
  try {
    wikikg::pipeline::RawConfig raw = config_path.empty()
                                          ? wikikg::pipeline::RawConfig()
                                          : wikikg::pipeline::RawConfig::load(config_path);
    for (const auto& [name, value] : overrides) raw.override_value(name, value);
    config = wikikg::pipeline::PipelineConfig::from(raw);
  } catch (const wikikg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wikikg::pipeline::kExitConfig;
  }

  wikikg::pipeline::Pipeline pipeline(std::move(config), force, std::cout, std::cerr);
  if (command == "build") return pipeline.build();
  if (command == "metrics") return pipeline.metrics();
  if (command == "analyze") return pipeline.analyze();
  if (command == "report") return pipeline.report();
  return pipeline.verify();
}
