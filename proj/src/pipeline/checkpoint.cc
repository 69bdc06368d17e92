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

#include "wikikg/pipeline/checkpoint.h"

#include <fstream>
#include <sstream>

#include "wikikg/common/text.h"

namespace wikikg::pipeline {

namespace fs = std::filesystem;

StageRunner::StageRunner(fs::path out_dir, bool force, std::ostream& log)
    : out_(std::move(out_dir)), force_(force), log_(log) {}

fs::path StageRunner::manifest_path(const std::string& stage) const {
  return out_ / ".checkpoints" / (stage + ".manifest");
}

FileFingerprint StageRunner::fingerprint(const fs::path& path) {
  std::string key = fs::absolute(path).lexically_normal().string();
  // Files under the output directory are rewritten by stages.
  std::string out = fs::absolute(out_).lexically_normal().string();
  if (key.starts_with(out + "/")) return fingerprint_file(path);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FileFingerprint fp = fingerprint_file(path);
  cache_[key] = fp;
  return fp;
}

std::map<std::string, std::string> StageRunner::read_manifest(const std::string& stage) const {
  std::map<std::string, std::string> m;
  std::ifstream in(manifest_path(stage));
  std::string line;
  while (std::getline(in, line)) {
    size_t eq = line.find('=');
    if (eq != std::string::npos) m[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return m;
}

bool StageRunner::is_current(const StageSpec& stage) {
  auto m = read_manifest(stage.name);
  if (m.empty() || m["params"] != stage.params) return false;
  size_t inputs = 0, outputs = 0;
  for (const auto& [k, v] : m) {
    if (k.starts_with("input.")) ++inputs;
    if (k.starts_with("output.")) ++outputs;
  }
  if (inputs != stage.inputs.size() || outputs != stage.outputs.size()) return false;
  for (const auto& input : stage.inputs) {
    std::string key = "input." + fs::absolute(input).lexically_normal().string();
    if (!fs::exists(input) || m[key] != fingerprint(input).to_string()) return false;
  }
  for (const auto& output : stage.outputs) {
    fs::path p = out_ / output;
    if (!fs::exists(p) || m["output." + output] != fingerprint(p).to_string()) return false;
  }
  return true;
}

bool StageRunner::recorded_counters(const std::string& stage, Counters* counters) const {
  auto m = read_manifest(stage);
  if (m.empty()) return false;
  for (const auto& [k, v] : m) {
    if (!k.starts_with("counter.")) continue;
    if (auto n = parse_uint64(v)) counters->set(k.substr(8), *n);
  }
  return true;
}

StageRunner::Outcome StageRunner::run(const StageSpec& stage, Counters* counters) {
  if (!force_ && is_current(stage)) {
    recorded_counters(stage.name, counters);
    log_ << "stage " << stage.name << ": current\n";
    return Outcome::kCurrent;
  }
  log_ << "stage " << stage.name << ": running\n";
  fs::path staging = out_ / ".staging" / stage.name;
  try {
    fs::remove_all(staging);
    fs::create_directories(staging);
    fs::remove(manifest_path(stage.name));
    stage.run(staging, counters);
    for (const auto& output : stage.outputs) {
      if (!fs::exists(staging / output)) throw Error("missing output " + output);
    }
    for (const auto& output : stage.outputs) {
      fs::path target = out_ / output;
      fs::create_directories(target.parent_path());
      fs::rename(staging / output, target);
    }
    fs::remove_all(staging);
  } catch (const std::exception& e) {
    throw StageFailed(stage.name, e.what());
  }

  std::ostringstream manifest;
  manifest << "stage=" << stage.name << "\n";
  manifest << "params=" << stage.params << "\n";
  for (const auto& input : stage.inputs) {
    manifest << "input." << fs::absolute(input).lexically_normal().string() << "="
             << fingerprint(input).to_string() << "\n";
  }
  for (const auto& output : stage.outputs) {
    manifest << "output." << output << "=" << fingerprint_file(out_ / output).to_string() << "\n";
  }
  for (const auto& [k, v] : counters->values()) manifest << "counter." << k << "=" << v << "\n";
  fs::create_directories(manifest_path(stage.name).parent_path());
  std::ofstream out(manifest_path(stage.name), std::ios::trunc);
  out << manifest.str();
  if (!out) throw IoError("cannot write manifest for stage " + stage.name);
  return Outcome::kRan;
}

}  // namespace wikikg::pipeline
