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

#ifndef WIKIKG_ANALYSIS_ANALYSIS_H_
#define WIKIKG_ANALYSIS_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wikikg/common/counters.h"
#include "wikikg/common/error.h"
#include "wikikg/common/expected.h"
#include "wikikg/common/external_sort.h"
#include "wikikg/metrics/metrics.h"

namespace wikikg::analysis {

// Quality grades, best first.
enum class QualityClass { kFA, kFL, kA, kGA, kB, kC, kStart, kStub, kList };
enum class Importance { kTop, kHigh, kMid, kLow, kUnknown };

inline constexpr size_t kQualityClassCount = 9;

// Short label: FA, FL, A, GA, B, C, Start, Stub, List.
const char* to_string(QualityClass c);
// Accepts short labels and full names in any case, with or without a
// "-class" suffix ("FA", "Featured article", "B-Class").
std::optional<QualityClass> parse_quality_class(std::string_view label);
// Unrecognized importance labels map to kUnknown.
Importance parse_importance(std::string_view label);

struct QualityAssessment {
  PageId page_id = 0;
  std::string wikiproject;
  QualityClass quality = QualityClass::kStub;
  Importance importance = Importance::kUnknown;
};

// Reads "page_id, project, class, importance" rows (tab-separated, optional
// header). Rows with an unknown class label or a bad page id are skipped and
// counted as unknown_class_label / malformed_rows.
class AssessmentReader {
 public:
  explicit AssessmentReader(std::istream& in);
  bool next(QualityAssessment* out);
  const Counters& counters() const { return counters_; }

 private:
  std::istream& in_;
  std::string line_;
  bool first_ = true;
  Counters counters_;
};

using ClassMap = std::map<PageId, std::set<QualityClass>>;

// An article rated differently by several projects belongs to every class
// it was given.
ClassMap assign_quality_classes(Source<QualityAssessment> assessments);

struct ClassColumn {
  std::string label;  // "All articles" or a class label
  uint64_t n = 0;
  std::array<double, metrics::kMetricCount> mean{};
};

// "All articles" first, then each class with at least one member, best
// first. Classes overlap, so their n may sum to more than the rated count.
std::vector<ClassColumn> aggregate_by_class(const std::vector<metrics::ArticleMetrics>& rows,
                                            const ClassMap& classes);

struct SummaryStats {
  std::string metric;
  uint64_t n = 0;
  double mean = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double whisker_low = 0;   // smallest value >= q1 - 1.5 IQR
  double whisker_high = 0;  // largest value <= q3 + 1.5 IQR
};

// Linear interpolation between order statistics: h = (n - 1) p.
// `sorted` must be ascending and non-empty.
double quantile(const std::vector<double>& sorted, double p);
SummaryStats describe(std::string metric, std::vector<double> values);
std::vector<SummaryStats> describe_metrics(const std::vector<metrics::ArticleMetrics>& rows);

struct DegenerateVector {};

// Pearson correlation of mid-ranks. Ranks are kept doubled so that they are
// integers and the rank moments are exact; only the final ratio is rounded.
// Error for constant input or fewer than two values. Throws Error when the
// lengths differ.
Expected<double, DegenerateVector> spearman(const std::vector<double>& x,
                                            const std::vector<double>& y);

// Doubled mid-ranks (1-based): ties share the average of their positions.
std::vector<uint32_t> doubled_mid_ranks(const std::vector<double>& values);

struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> rho;  // nullopt: undefined
};

CorrelationMatrix spearman_matrix(const std::vector<metrics::ArticleMetrics>& rows,
                                  const std::vector<std::string>& selected, int threads = 1);

struct RankEntry {
  uint64_t rank = 0;
  PageId page_id = 0;
  std::string title;
  double value = 0;
};

// Descending by the metric, ties by ascending page_id; pages whose title is
// in `exclusions` (compared as title keys) are removed before taking n.
std::vector<RankEntry> rank_top_n(const std::vector<metrics::ArticleMetrics>& rows,
                                  const std::map<PageId, std::string>& titles,
                                  const std::string& metric, size_t n,
                                  const std::set<std::string>& exclusions);

// The first k page ids in ranking order, exclusions not applied; rank_top_n
// only needs titles for the first n + |exclusions| of them.
std::vector<PageId> top_candidates(const std::vector<metrics::ArticleMetrics>& rows,
                                   const std::string& metric, size_t k);

// One title per line; blank lines and '#' comments ignored.
std::set<std::string> read_exclusions(const std::filesystem::path& path);

// Shortest round-trip decimal rendering used in every analysis table.
std::string format_number(double v);

// Writes class_means.tsv, summary_stats.tsv, correlations.tsv,
// top_<metric>.tsv and report.txt into `dir`.
struct AnalysisOutputs {
  std::vector<ClassColumn> class_means;
  std::vector<SummaryStats> summary;
  CorrelationMatrix correlations;
  std::map<std::string, std::vector<RankEntry>> rankings;
};

void write_analysis(const std::filesystem::path& dir, const AnalysisOutputs& outputs);
std::string render_report(const AnalysisOutputs& outputs);

}  // namespace wikikg::analysis

#endif  // WIKIKG_ANALYSIS_ANALYSIS_H_
