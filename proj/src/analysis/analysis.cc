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

#include "wikikg/analysis/analysis.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "wikikg/common/parallel.h"
#include "wikikg/common/text.h"
#include "wikikg/common/tsv.h"
#include "wikikg/graph/title_index.h"

namespace wikikg::analysis {
namespace {

std::string fold_label(std::string_view label) {
  std::string s;
  for (char c : trim(label)) {
    if (c == ' ' || c == '-' || c == '_') continue;
    s.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c));
  }
  if (s.size() > 5 && s.ends_with("class")) s.resize(s.size() - 5);
  return s;
}

std::vector<double> column(const std::vector<metrics::ArticleMetrics>& rows, size_t metric) {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(metrics::metric_value(r, metric));
  return v;
}

int require_metric(const std::string& name) {
  int idx = metrics::metric_index(name);
  if (idx < 0) throw ConfigError("unknown metric '" + name + "'");
  return idx;
}

// Descending value, then ascending page_id.
std::vector<size_t> ranking_order(const std::vector<metrics::ArticleMetrics>& rows, size_t metric,
                                  size_t k) {
  std::vector<size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](size_t a, size_t b) {
    double va = metrics::metric_value(rows[a], metric);
    double vb = metrics::metric_value(rows[b], metric);
    if (va != vb) return va > vb;
    return rows[a].page_id < rows[b].page_id;
  };
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + k, order.end(), better);
  order.resize(k);
  return order;
}

using Int128 = __int128;

struct RankMoments {
  Int128 sum = 0;
  Int128 centered = 0;  // n * sum(r^2) - sum(r)^2
};

RankMoments moments(const std::vector<uint32_t>& r) {
  RankMoments m;
  Int128 sq = 0;
  for (uint32_t v : r) {
    m.sum += v;
    sq += static_cast<Int128>(v) * v;
  }
  m.centered = static_cast<Int128>(r.size()) * sq - m.sum * m.sum;
  return m;
}

// Exact numerator over exact moments; the only rounding is in the ratio.
std::optional<double> rank_correlation(const std::vector<uint32_t>& rx, const RankMoments& mx,
                                       const std::vector<uint32_t>& ry, const RankMoments& my) {
  if (rx.size() < 2 || mx.centered == 0 || my.centered == 0) return std::nullopt;
  Int128 cross = 0;
  for (size_t i = 0; i < rx.size(); ++i) cross += static_cast<Int128>(rx[i]) * ry[i];
  Int128 num = static_cast<Int128>(rx.size()) * cross - mx.sum * my.sum;
  double rho;
  if (mx.centered == my.centered) {
    rho = static_cast<double>(num) / static_cast<double>(mx.centered);
  } else {
    rho = static_cast<double>(num) /
          std::sqrt(static_cast<double>(mx.centered) * static_cast<double>(my.centered));
  }
  return std::clamp(rho, -1.0, 1.0);
}

}  // namespace

const char* to_string(QualityClass c) {
  switch (c) {
    case QualityClass::kFA: return "FA";
    case QualityClass::kFL: return "FL";
    case QualityClass::kA: return "A";
    case QualityClass::kGA: return "GA";
    case QualityClass::kB: return "B";
    case QualityClass::kC: return "C";
    case QualityClass::kStart: return "Start";
    case QualityClass::kStub: return "Stub";
    case QualityClass::kList: return "List";
  }
  return "Stub";
}

std::optional<QualityClass> parse_quality_class(std::string_view label) {
  static const std::map<std::string, QualityClass> kLabels = {
      {"fa", QualityClass::kFA},        {"featuredarticle", QualityClass::kFA},
      {"fl", QualityClass::kFL},        {"featuredlist", QualityClass::kFL},
      {"a", QualityClass::kA},          {"ga", QualityClass::kGA},
      {"goodarticle", QualityClass::kGA}, {"b", QualityClass::kB},
      {"c", QualityClass::kC},          {"start", QualityClass::kStart},
      {"stub", QualityClass::kStub},    {"list", QualityClass::kList},
  };
  auto it = kLabels.find(fold_label(label));
  if (it == kLabels.end()) return std::nullopt;
  return it->second;
}

Importance parse_importance(std::string_view label) {
  std::string s = fold_label(label);
  if (s == "top") return Importance::kTop;
  if (s == "high") return Importance::kHigh;
  if (s == "mid") return Importance::kMid;
  if (s == "low") return Importance::kLow;
  return Importance::kUnknown;
}

AssessmentReader::AssessmentReader(std::istream& in) : in_(in) {
  counters_.add("rows", 0);
  counters_.add("malformed_rows", 0);
  counters_.add("unknown_class_label", 0);
}

bool AssessmentReader::next(QualityAssessment* out) {
  std::vector<std::string> f;
  while (std::getline(in_, line_)) {
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    bool first = first_;
    first_ = false;
    if (trim(line_).empty()) continue;
    split_tsv_line(line_, &f);
    if (first && !f.empty() && f[0] == "page_id") continue;
    counters_.add("rows");
    auto id = f.size() >= 3 ? parse_int64(trim(f[0])) : std::nullopt;
    if (!id || *id <= 0) {
      counters_.add("malformed_rows");
      continue;
    }
    auto cls = parse_quality_class(f[2]);
    if (!cls) {
      counters_.add("unknown_class_label");
      continue;
    }
    out->page_id = *id;
    out->wikiproject = f[1];
    out->quality = *cls;
    out->importance = f.size() >= 4 ? parse_importance(f[3]) : Importance::kUnknown;
    return true;
  }
  return false;
}

ClassMap assign_quality_classes(Source<QualityAssessment> assessments) {
  ClassMap map;
  QualityAssessment a;
  while (assessments(a)) map[a.page_id].insert(a.quality);
  return map;
}

std::vector<ClassColumn> aggregate_by_class(const std::vector<metrics::ArticleMetrics>& rows,
                                            const ClassMap& classes) {
  std::vector<ClassColumn> cols(kQualityClassCount + 1);
  cols[0].label = "All articles";
  for (size_t c = 0; c < kQualityClassCount; ++c) {
    cols[c + 1].label = to_string(static_cast<QualityClass>(c));
  }
  // Sums first, divided at the end, in row order for reproducible rounding.
  auto add = [](ClassColumn& col, const metrics::ArticleMetrics& r) {
    col.n++;
    for (size_t m = 0; m < metrics::kMetricCount; ++m) col.mean[m] += metrics::metric_value(r, m);
  };
  for (const auto& r : rows) {
    add(cols[0], r);
    auto it = classes.find(r.page_id);
    if (it == classes.end()) continue;
    for (QualityClass c : it->second) add(cols[static_cast<size_t>(c) + 1], r);
  }
  std::vector<ClassColumn> out;
  for (size_t c = 0; c < cols.size(); ++c) {
    if (c > 0 && cols[c].n == 0) continue;
    for (auto& v : cols[c].mean) v = cols[c].n ? v / static_cast<double>(cols[c].n) : 0.0;
    out.push_back(cols[c]);
  }
  return out;
}

double quantile(const std::vector<double>& sorted, double p) {
  double h = (static_cast<double>(sorted.size()) - 1) * p;
  size_t lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats describe(std::string metric, std::vector<double> values) {
  SummaryStats s;
  s.metric = std::move(metric);
  s.n = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  double iqr = s.q3 - s.q1;
  double lo = s.q1 - 1.5 * iqr, hi = s.q3 + 1.5 * iqr;
  s.whisker_low = *std::lower_bound(values.begin(), values.end(), lo);
  s.whisker_high = *(std::upper_bound(values.begin(), values.end(), hi) - 1);
  return s;
}

std::vector<SummaryStats> describe_metrics(const std::vector<metrics::ArticleMetrics>& rows) {
  std::vector<SummaryStats> out;
  for (size_t m = 0; m < metrics::kMetricCount; ++m) {
    out.push_back(describe(metrics::metric_names()[m], column(rows, m)));
  }
  return out;
}

std::vector<uint32_t> doubled_mid_ranks(const std::vector<double>& values) {
  std::vector<uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t a, uint32_t b) { return values[a] < values[b]; });
  std::vector<uint32_t> ranks(values.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i+1 .. j+1 share the rank (i + j + 2) / 2.
    auto doubled = static_cast<uint32_t>(i + j + 2);
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = doubled;
    i = j + 1;
  }
  return ranks;
}

Expected<double, DegenerateVector> spearman(const std::vector<double>& x,
                                            const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("spearman: vectors differ in length");
  auto rx = doubled_mid_ranks(x), ry = doubled_mid_ranks(y);
  auto rho = rank_correlation(rx, moments(rx), ry, moments(ry));
  if (!rho) return DegenerateVector{};
  return *rho;
}

CorrelationMatrix spearman_matrix(const std::vector<metrics::ArticleMetrics>& rows,
                                  const std::vector<std::string>& selected, int threads) {
  CorrelationMatrix m;
  m.names = selected;
  const size_t k = selected.size();
  std::vector<std::vector<uint32_t>> ranks(k);
  std::vector<RankMoments> mom(k);
  parallel_for(k, static_cast<size_t>(std::max(threads, 1)), [&](size_t i) {
    ranks[i] = doubled_mid_ranks(column(rows, require_metric(selected[i])));
    mom[i] = moments(ranks[i]);
  });
  m.rho.assign(k, std::vector<std::optional<double>>(k));
  std::vector<std::pair<size_t, size_t>> cells;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i; j < k; ++j) cells.emplace_back(i, j);
  }
  parallel_for(cells.size(), static_cast<size_t>(std::max(threads, 1)), [&](size_t c) {
    auto [i, j] = cells[c];
    auto rho = rank_correlation(ranks[i], mom[i], ranks[j], mom[j]);
    m.rho[i][j] = rho;
    m.rho[j][i] = rho;
  });
  return m;
}

std::vector<PageId> top_candidates(const std::vector<metrics::ArticleMetrics>& rows,
                                   const std::string& metric, size_t k) {
  std::vector<PageId> ids;
  for (size_t i : ranking_order(rows, require_metric(metric), k)) ids.push_back(rows[i].page_id);
  return ids;
}

std::vector<RankEntry> rank_top_n(const std::vector<metrics::ArticleMetrics>& rows,
                                  const std::map<PageId, std::string>& titles,
                                  const std::string& metric, size_t n,
                                  const std::set<std::string>& exclusions) {
  size_t idx = require_metric(metric);
  std::set<std::string> excluded;
  for (const auto& t : exclusions) excluded.insert(graph::title_key(t));
  std::vector<RankEntry> out;
  for (size_t i : ranking_order(rows, idx, n + exclusions.size())) {
    if (out.size() == n) break;
    auto it = titles.find(rows[i].page_id);
    std::string title = it == titles.end() ? std::string() : it->second;
    if (excluded.count(graph::title_key(title))) continue;
    out.push_back({out.size() + 1, rows[i].page_id, title, metrics::metric_value(rows[i], idx)});
  }
  return out;
}

std::set<std::string> read_exclusions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open exclusions file: " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace(t);
  }
  return out;
}

std::string format_number(double v) {
  if (v == 0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_analysis(const std::filesystem::path& dir, const AnalysisOutputs& o) {
  {
    std::vector<std::string> header = {"metric"};
    for (const auto& c : o.class_means) header.push_back(c.label);
    TsvWriter w(dir / "class_means.tsv", header);
    std::vector<std::string> row = {"n"};
    for (const auto& c : o.class_means) row.push_back(std::to_string(c.n));
    w.write_fields(row);
    for (size_t m = 0; m < metrics::kMetricCount; ++m) {
      row = {metrics::metric_names()[m]};
      for (const auto& c : o.class_means) row.push_back(format_number(c.mean[m]));
      w.write_fields(row);
    }
    w.close();
  }
  {
    TsvWriter w(dir / "summary_stats.tsv", {"metric", "n", "mean", "q1", "median", "q3",
                                            "whisker_low", "whisker_high"});
    for (const auto& s : o.summary) {
      w.write_fields({s.metric, std::to_string(s.n), format_number(s.mean), format_number(s.q1),
                      format_number(s.median), format_number(s.q3),
                      format_number(s.whisker_low), format_number(s.whisker_high)});
    }
    w.close();
  }
  {
    std::vector<std::string> header = {"metric"};
    header.insert(header.end(), o.correlations.names.begin(), o.correlations.names.end());
    TsvWriter w(dir / "correlations.tsv", header);
    for (size_t i = 0; i < o.correlations.names.size(); ++i) {
      std::vector<std::string> row = {o.correlations.names[i]};
      for (const auto& cell : o.correlations.rho[i]) {
        row.push_back(cell ? format_number(*cell) : "NA");
      }
      w.write_fields(row);
    }
    w.close();
  }
  for (const auto& [metric, entries] : o.rankings) {
    TsvWriter w(dir / ("top_" + metric + ".tsv"), {"rank", "page_id", "title", "value"});
    for (const auto& e : entries) {
      w.write_row(e.rank, e.page_id, e.title, format_number(e.value));
    }
    w.close();
  }
  std::ofstream report(dir / "report.txt", std::ios::binary | std::ios::trunc);
  report << render_report(o);
  if (!report) throw IoError("cannot write report.txt");
}

std::string render_report(const AnalysisOutputs& o) {
  std::ostringstream out;
  auto cell = [](std::string s, size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
  };
  auto fixed2 = [](double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
  };

  out << "Average metrics by quality class\n\n" << cell("", 16);
  for (const auto& c : o.class_means) out << cell(c.label, 14);
  out << "\n" << cell("n", 16);
  for (const auto& c : o.class_means) out << cell(std::to_string(c.n), 14);
  out << "\n";
  for (size_t m = 0; m < metrics::kMetricCount; ++m) {
    out << cell(metrics::metric_names()[m], 16);
    for (const auto& c : o.class_means) out << cell(fixed2(c.mean[m]), 14);
    out << "\n";
  }

  out << "\nDescriptive statistics\n\n" << cell("", 16);
  for (const char* h : {"n", "mean", "q1", "median", "q3", "low", "high"}) out << cell(h, 12);
  out << "\n";
  for (const auto& s : o.summary) {
    out << cell(s.metric, 16) << cell(std::to_string(s.n), 12);
    for (double v : {s.mean, s.q1, s.median, s.q3, s.whisker_low, s.whisker_high}) {
      out << cell(fixed2(v), 12);
    }
    out << "\n";
  }

  out << "\nSpearman correlations\n\n" << cell("", 16);
  for (const auto& name : o.correlations.names) out << cell(name.substr(0, 7), 8);
  out << "\n";
  for (size_t i = 0; i < o.correlations.names.size(); ++i) {
    out << cell(o.correlations.names[i], 16);
    for (const auto& v : o.correlations.rho[i]) out << cell(v ? fixed2(*v) : "NA", 8);
    out << "\n";
  }

  for (const auto& [metric, entries] : o.rankings) {
    out << "\nTop " << entries.size() << " by " << metric << "\n\n";
    for (const auto& e : entries) {
      out << cell(std::to_string(e.rank), 4) << "  " << e.title << "  " << format_number(e.value)
          << "\n";
    }
  }
  return out.str();
}

}  // namespace wikikg::analysis
