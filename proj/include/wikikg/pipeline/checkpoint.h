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

#ifndef WIKIKG_PIPELINE_CHECKPOINT_H_
#define WIKIKG_PIPELINE_CHECKPOINT_H_

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wikikg/common/counters.h"
#include "wikikg/common/error.h"
#include "wikikg/common/input.h"

namespace wikikg::pipeline {

struct StageSpec {
  std::string name;
  // Files whose content decides whether the stage is current.
  std::vector<std::filesystem::path> inputs;
  // Rendered parameters; any change reruns the stage.
  std::string params;
  // Output paths relative to the output directory.
  std::vector<std::string> outputs;
  // Writes every output below the given staging directory.
  std::function<void(const std::filesystem::path& staging, Counters* counters)> run;
};

class StageFailed : public Error {
 public:
  StageFailed(const std::string& stage, const std::string& what)
      : Error("stage " + stage + " failed: " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Runs stages with content-hash checkpoints. A stage is current when its
// manifest records the same parameters and input fingerprints and every
// recorded output still has its recorded fingerprint. Outputs are produced
// under <out>/.staging/<stage>/ and moved into <out> only on success; a
// failed stage leaves its partial outputs in the staging directory.
class StageRunner {
 public:
  StageRunner(std::filesystem::path out_dir, bool force, std::ostream& log);

  enum class Outcome { kCurrent, kRan };

  // Throws StageFailed. Counters are those of the run, or the recorded ones
  // when the stage was current.
  Outcome run(const StageSpec& stage, Counters* counters);
  bool is_current(const StageSpec& stage);

  std::filesystem::path manifest_path(const std::string& stage) const;
  // Counters from the stage's manifest; false when it has none.
  bool recorded_counters(const std::string& stage, Counters* counters) const;

 private:
  FileFingerprint fingerprint(const std::filesystem::path& path);
  std::map<std::string, std::string> read_manifest(const std::string& stage) const;

  std::filesystem::path out_;
  bool force_;
  std::ostream& log_;
  std::map<std::string, FileFingerprint> cache_;
};

}  // namespace wikikg::pipeline

#endif  // WIKIKG_PIPELINE_CHECKPOINT_H_
