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

#ifndef WIKIKG_PIPELINE_PIPELINE_H_
#define WIKIKG_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wikikg/common/error.h"
#include "wikikg/pipeline/checkpoint.h"
#include "wikikg/pipeline/config.h"

namespace wikikg::pipeline {

enum ExitStatus : int {
  kExitOk = 0,
  kExitFailure = 1,     // a stage failed or a prerequisite is missing
  kExitConfig = 2,      // configuration or input validation
  kExitIntegrity = 3,   // the graph has integrity violations
};

class MissingGraph : public Error {
 public:
  using Error::Error;
};

class MissingMetrics : public Error {
 public:
  using Error::Error;
};

class IntegrityViolationsPresent : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kRunReportFile = "run_report.txt";
inline constexpr const char* kIntegrityReportFile = "integrity_report.txt";
inline constexpr const char* kUrlRejectsFile = "rejects/url_rejects.tsv";
inline constexpr const char* kAnalysisDir = "analysis";

// Subcommands. Each returns an ExitStatus and reports problems on `err`.
class Pipeline {
 public:
  Pipeline(PipelineConfig config, bool force, std::ostream& out, std::ostream& err);

  // Dumps to the 9 graph tables, then integrity verification.
  int build();
  // Graph to metrics.tsv; requires an integrity-clean graph.
  int metrics();
  // metrics.tsv to the analysis tables and report.
  int analyze();
  // Prints the run report and, when present, the analysis report.
  int report();
  // Re-verifies the graph and prints the integrity report.
  int verify();

 private:
  template <typename Fn>
  int guarded(Fn&& fn);

  void run_stage(const StageSpec& stage);
  void stage_pages();
  void stage_links();
  void stage_categories();
  void stage_urls();
  void stage_pubs();
  // Returns the number of violations.
  uint64_t stage_verify();
  void stage_metrics();
  void stage_analyze();

  void require_graph() const;
  // "<stage>.<counter>=<value>" lines from every recorded stage.
  std::string render_run_report() const;
  void write_run_report();
  SortOptions sort_options() const;
  std::filesystem::path out_path(const std::string& name) const;

  PipelineConfig config_;
  std::ostream& out_;
  std::ostream& err_;
  StageRunner runner_;
  size_t stages_run_ = 0;
};

// Stage names in execution order; run_report.txt follows this order.
const std::vector<std::string>& stage_names();

using RunReport = std::map<std::string, uint64_t>;

// key=value lines; anything else is ignored.
RunReport parse_run_report(std::istream& in);

// One counter identity: every row a stage read is accounted for exactly
// once, or a stage's output count agrees with the verified table.
struct Reconciliation {
  std::string name;
  uint64_t lhs = 0;
  uint64_t rhs = 0;

  bool ok() const { return lhs == rhs; }
};

// Identities for every stage present in the report; absent terms count 0.
std::vector<Reconciliation> reconcile(const RunReport& report);

}  // namespace wikikg::pipeline

#endif  // WIKIKG_PIPELINE_PIPELINE_H_
