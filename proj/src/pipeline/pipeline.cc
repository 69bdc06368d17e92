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

#include "wikikg/pipeline/pipeline.h"

#include <fstream>
#include <mutex>
#include <sstream>

#include "wikikg/analysis/analysis.h"
#include "wikikg/common/input.h"
#include "wikikg/common/parallel.h"
#include "wikikg/common/text.h"
#include "wikikg/common/tsv.h"
#include "wikikg/graph/category_tables.h"
#include "wikikg/graph/integrity.h"
#include "wikikg/graph/page_links.h"
#include "wikikg/graph/page_table.h"
#include "wikikg/graph/reference_tables.h"
#include "wikikg/graph/tables.h"
#include "wikikg/ingest/citations.h"
#include "wikikg/ingest/dump_tables.h"
#include "wikikg/ingest/pageviews.h"
#include "wikikg/ingest/revision_aggregate.h"
#include "wikikg/ingest/revision_history.h"
#include "wikikg/metrics/metrics.h"
#include "wikikg/normalize/domain_rules.h"
#include "wikikg/normalize/identifiers.h"

namespace wikikg::pipeline {

namespace fs = std::filesystem;

namespace {

// Concatenates per-file streams; files are opened lazily, one at a time.
template <typename T>
Source<T> chain_files(std::vector<fs::path> files,
                      std::function<Source<T>(const fs::path&)> open) {
  struct State {
    std::vector<fs::path> files;
    size_t next = 0;
    Source<T> current;
  };
  auto state = std::make_shared<State>();
  state->files = std::move(files);
  return [state, open](T& out) {
    while (true) {
      if (state->current && state->current(out)) return true;
      if (state->next >= state->files.size()) return false;
      state->current = open(state->files[state->next++]);
    }
  };
}

// Rows of a table spread over several SQL dump files. Reader counters are
// merged under `prefix` as each file is exhausted.
template <typename Row>
Source<Row> dump_rows(const std::vector<fs::path>& files, const ingest::SqlSchema& schema,
                      Counters* counters, const std::string& prefix) {
  using Reader = ingest::DumpTableReader<Row>;
  return chain_files<Row>(files, [schema, counters, prefix](const fs::path& f) -> Source<Row> {
    struct State {
      std::unique_ptr<std::istream> in;
      std::unique_ptr<Reader> reader;
      bool done = false;
    };
    auto s = std::make_shared<State>();
    s->in = open_input(f);
    s->reader = std::make_unique<Reader>(*s->in, schema);
    return [s, counters, prefix](Row& row) {
      if (s->done) return false;
      if (s->reader->next(&row)) return true;
      s->done = true;
      counters->merge(s->reader->counters(), prefix);
      return false;
    };
  });
}

Source<ingest::CitationRecord> citation_records(const std::vector<fs::path>& files,
                                                const ingest::CitationColumns& columns,
                                                Counters* counters) {
  return chain_files<ingest::CitationRecord>(
      files, [columns, counters](const fs::path& f) -> Source<ingest::CitationRecord> {
        struct State {
          std::unique_ptr<std::istream> in;
          std::unique_ptr<ingest::CitationParser> parser;
          bool done = false;
        };
        auto s = std::make_shared<State>();
        s->in = open_input(f);
        s->parser = std::make_unique<ingest::CitationParser>(*s->in, columns, f.string());
        return [s, counters](ingest::CitationRecord& r) {
          if (s->done) return false;
          if (s->parser->next(&r)) return true;
          s->done = true;
          counters->merge(s->parser->counters(), "citations.");
          return false;
        };
      });
}

Source<graph::PageTally> view_tallies(const PipelineConfig& c, Counters* counters) {
  return chain_files<graph::PageTally>(
      c.pageviews, [&c, counters](const fs::path& f) -> Source<graph::PageTally> {
        ingest::PageviewFilter filter;
        filter.wiki_code = c.wiki_code;
        filter.window = c.views_window;
        filter.agents = c.agent_types;
        filter.file_date = ingest::date_from_filename(f.filename().string());
        filter.file_agent = ingest::agent_from_filename(f.filename().string());
        filter.max_malformed_fraction = c.views_max_malformed;
        struct State {
          std::unique_ptr<std::istream> in;
          std::unique_ptr<ingest::PageviewParser> parser;
          ingest::PageViewRecord record;
          bool done = false;
        };
        auto s = std::make_shared<State>();
        s->in = open_input(f);
        s->parser =
            std::make_unique<ingest::PageviewParser>(*s->in, c.view_columns, filter, f.string());
        return [s, counters](graph::PageTally& t) {
          if (s->done) return false;
          if (!s->parser->next(&s->record)) {
            s->done = true;
            counters->merge(s->parser->counters(), "pageviews.");
            return false;
          }
          t = {s->record.page_id, s->record.ns,
               s->record.page_id > 0 ? std::string() : std::move(s->record.title),
               s->record.count, 0};
          return true;
        };
      });
}

template <typename T>
Source<T> concat(Source<T> first, Source<T> second) {
  auto in_first = std::make_shared<bool>(true);
  return [first, second, in_first](T& out) mutable {
    if (*in_first) {
      if (first(out)) return true;
      *in_first = false;
    }
    return second(out);
  };
}

template <typename T>
graph::Sink<T> table_sink(TsvWriter& w) {
  return [&w](const T& r) { graph::write_row(w, r); };
}

normalize::IdentifierVocabulary vocabulary(const PipelineConfig& c) {
  auto defaults = normalize::IdentifierVocabulary::defaults();
  if (c.identifier_schemes == defaults.schemes()) return defaults;
  std::map<std::string, std::string> aliases;
  for (const auto& [alias, target] : std::map<std::string, std::string>{
           {"ol", "olid"}, {"handle", "hdl"}}) {
    if (std::count(c.identifier_schemes.begin(), c.identifier_schemes.end(), target)) {
      aliases[alias] = target;
    }
  }
  return normalize::IdentifierVocabulary(c.identifier_schemes, aliases);
}

normalize::DomainRuleSet domain_rules(const PipelineConfig& c) {
  return c.domain_rules ? normalize::DomainRuleSet::load(*c.domain_rules)
                        : normalize::DomainRuleSet::builtin();
}

std::vector<fs::path> join(std::initializer_list<const std::vector<fs::path>*> lists) {
  std::vector<fs::path> out;
  for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
  return out;
}

const std::vector<std::string> kCitationKeys = {
    "citations_delimiter",   "citations_col_page_id", "citations_col_page_title",
    "citations_col_url",     "citations_col_type",    "citations_col_id_list",
    "citations_id_columns",  "citations_fields",      "citations_max_malformed"};

std::vector<std::string> with_citation_keys(std::vector<std::string> keys) {
  keys.insert(keys.end(), kCitationKeys.begin(), kCitationKeys.end());
  return keys;
}

}  // namespace

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {"pages", "links",  "categories", "urls",
                                                 "pubs",  "verify", "metrics",    "analyze"};
  return names;
}

RunReport parse_run_report(std::istream& in) {
  RunReport report;
  std::string line;
  while (std::getline(in, line)) {
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    if (auto v = parse_uint64(std::string_view(line).substr(eq + 1))) {
      report[line.substr(0, eq)] = *v;
    }
  }
  return report;
}

std::vector<Reconciliation> reconcile(const RunReport& report) {
  auto has = [&](const std::string& stage) {
    auto it = report.lower_bound(stage + ".");
    return it != report.end() && it->first.starts_with(stage + ".");
  };
  auto sum = [&](std::initializer_list<const char*> keys) {
    uint64_t total = 0;
    for (const char* k : keys) {
      auto it = report.find(k);
      if (it != report.end()) total += it->second;
    }
    return total;
  };
  std::vector<Reconciliation> out;
  auto check = [&](std::string name, std::initializer_list<const char*> lhs,
                   std::initializer_list<const char*> rhs) {
    out.push_back({std::move(name), sum(lhs), sum(rhs)});
  };

  if (has("pages")) {
    check("pages.rows", {"pages.page_dump.rows_in"},
          {"pages.pages", "pages.page_dump.invalid_rows"});
  }
  if (has("links")) {
    check("links.dump_rows", {"links.pagelinks_dump.rows_in"},
          {"links.rows_in", "links.pagelinks_dump.invalid_rows"});
    check("links.rows", {"links.rows_in"},
          {"links.edges_out", "links.dropped_out_of_scope", "links.dropped_unresolved",
           "links.dropped_orphan_source", "links.deduped"});
  }
  if (has("categories")) {
    check("categories.categories", {"categories.categories_in"},
          {"categories.categories_out", "categories.categories_duplicate_id"});
    check("categories.category_links", {"categories.category_links_in"},
          {"categories.category_links_out", "categories.category_links_deduped",
           "categories.category_links_orphan_page", "categories.category_links_unresolved"});
    check("categories.properties", {"categories.properties_in"},
          {"categories.properties_out", "categories.properties_deduped",
           "categories.properties_orphan_page"});
  }
  if (has("urls")) {
    check("urls.refs", {"urls.external_links_in", "urls.citation_urls_in"},
          {"urls.urls_rejected", "urls.url_refs_unresolved_title", "urls.url_refs_orphan_page",
           "urls.page_url_deduped", "urls.page_url_out"});
  }
  if (has("pubs")) {
    check("pubs.citations", {"pubs.citations_in"},
          {"pubs.citations_without_pub", "pubs.pub_refs_unresolved_title",
           "pubs.pub_refs_orphan_page", "pubs.page_pub_deduped", "pubs.page_pub_out"});
  }
  if (has("verify")) {
    check("verify.page", {"pages.pages"}, {"verify.rows.page.tsv"});
    check("verify.page_link", {"links.edges_out"}, {"verify.rows.page_link.tsv"});
    check("verify.category", {"categories.categories_out"}, {"verify.rows.category.tsv"});
    check("verify.page_category", {"categories.category_links_out"},
          {"verify.rows.page_category.tsv"});
    check("verify.page_property", {"categories.properties_out"},
          {"verify.rows.page_property.tsv"});
    check("verify.url", {"urls.urls_out"}, {"verify.rows.url.tsv"});
    check("verify.page_url", {"urls.page_url_out"}, {"verify.rows.page_url.tsv"});
    check("verify.pub", {"pubs.pubs_out"}, {"verify.rows.pub.tsv"});
    check("verify.page_pub", {"pubs.page_pub_out"}, {"verify.rows.page_pub.tsv"});
  }
  if (has("metrics")) {
    check("metrics.edges", {"links.edges_out"},
          {"metrics.edges_in_scope", "metrics.edges_out_of_scope"});
  }
  return out;
}

Pipeline::Pipeline(PipelineConfig config, bool force, std::ostream& out, std::ostream& err)
    : config_(std::move(config)), out_(out), err_(err), runner_(config_.out, force, out) {}

fs::path Pipeline::out_path(const std::string& name) const { return config_.out / name; }

SortOptions Pipeline::sort_options() const {
  SortOptions sort;
  sort.memory_budget = config_.sort_budget();
  sort.temp_dir = config_.temp_dir;
  return sort;
}

template <typename Fn>
int Pipeline::guarded(Fn&& fn) {
  stages_run_ = 0;
  int status = kExitOk;
  try {
    fs::create_directories(config_.out);
    fs::create_directories(config_.temp_dir);
    status = fn();
  } catch (const ConfigError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IntegrityViolationsPresent& e) {
    err_ << "error: " << e.what() << "\n";
    status = kExitIntegrity;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    status = kExitFailure;
  }
  try {
    write_run_report();
    if (config_.temp_dir == config_.out / ".tmp") fs::remove_all(config_.temp_dir);
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    if (status == kExitOk) status = kExitFailure;
  }
  return status;
}

void Pipeline::run_stage(const StageSpec& stage) {
  Counters counters;
  if (runner_.run(stage, &counters) == StageRunner::Outcome::kRan) ++stages_run_;
}

void Pipeline::require_graph() const {
  for (const auto& f : graph::graph_files()) {
    if (!fs::exists(out_path(f))) {
      throw MissingGraph("graph table " + out_path(f).string() + " is missing; run build first");
    }
  }
}

std::string Pipeline::render_run_report() const {
  std::ostringstream report;
  for (const auto& stage : stage_names()) {
    Counters counters;
    if (!runner_.recorded_counters(stage, &counters)) continue;
    for (const auto& [k, v] : counters.values()) report << stage << "." << k << "=" << v << "\n";
  }
  return report.str();
}

void Pipeline::write_run_report() {
  std::ofstream out(out_path(kRunReportFile), std::ios::trunc);
  out << render_run_report();
  if (!out) throw IoError("cannot write " + out_path(kRunReportFile).string());
}

void Pipeline::stage_pages() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "pages";
  s.inputs = join({&c.page_dump, &c.history, &c.pageviews, &c.citations});
  s.params = c.render(with_citation_keys(
      {"page_schema", "wiki_code", "views_start", "views_end", "views_delimiter",
       "views_col_wiki", "views_col_title", "views_col_page_id", "views_col_namespace",
       "views_col_agent", "views_col_count", "views_col_date", "agent_types",
       "views_max_malformed"}));
  s.outputs = {graph::kPageFile};
  s.run = [this, &c](const fs::path& staging, Counters* counters) {
    SortOptions sort = sort_options();

    // History shards are parsed in parallel; each spills to its own run.
    SortOptions shard_sort = sort;
    shard_sort.memory_budget = std::max<size_t>(
        size_t{1} << 20, sort.memory_budget / static_cast<size_t>(c.threads));
    std::vector<RunFile<ingest::EditorTally>> shards(c.history.size());
    std::mutex mu;
    parallel_for(c.history.size(), static_cast<size_t>(c.threads), [&](size_t i) {
      auto in = open_input(c.history[i]);
      ingest::RevisionHistoryParser parser(*in);
      ingest::ExternalRevisionAggregator aggregator(shard_sort);
      ingest::RevisionEvent event;
      while (parser.next(&event)) aggregator.add(event);
      shards[i] = RunFile<ingest::EditorTally>::write(sort.temp_dir, aggregator.finish());
      std::lock_guard<std::mutex> lock(mu);
      counters->add("history.pages", parser.pages());
      counters->add("history.revisions", parser.revisions());
    });
    std::vector<Source<ingest::EditorTally>> sorted;
    for (const auto& shard : shards) sorted.push_back(shard.open());
    Source<ingest::RevisionAggregate> revisions = ingest::reduce_editor_tallies(
        sorted.empty() ? Source<ingest::EditorTally>([](ingest::EditorTally&) { return false; })
                       : merge_sources(std::move(sorted)));

    Source<graph::PageTally> tallies =
        concat(view_tallies(c, counters),
               graph::citation_tallies(citation_records(c.citations, c.citation_columns,
                                                        counters)));

    TsvWriter w(staging / graph::kPageFile, graph::page_header());
    graph::build_page_table(
        dump_rows<ingest::RawPageRow>(c.page_dump, c.schemas.page, counters, "page_dump."),
        revisions, tallies, sort, table_sink<graph::PageRecord>(w), counters);
    w.close();
  };
  run_stage(s);
}

void Pipeline::stage_links() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "links";
  s.inputs = c.pagelinks_dump;
  s.inputs.push_back(out_path(graph::kPageFile));
  s.params = c.render({"pagelinks_schema", "scope_namespaces", "resolve_redirects"});
  s.outputs = {graph::kPageLinkFile};
  s.run = [this, &c](const fs::path& staging, Counters* counters) {
    fs::path page_file = out_path(graph::kPageFile);
    graph::PageSourceFactory pages = [page_file] {
      return graph::read_table<graph::PageRecord>(page_file, graph::page_header());
    };
    graph::LinkOptions options;
    options.scope = c.scope_namespaces;
    options.resolve_redirects = c.resolve_redirects;
    TsvWriter w(staging / graph::kPageLinkFile, graph::page_link_header());
    graph::build_page_links(
        dump_rows<ingest::PageLinkRow>(c.pagelinks_dump, c.schemas.pagelinks, counters,
                                       "pagelinks_dump."),
        pages, options, sort_options(), table_sink<graph::PageLinkEdge>(w), counters);
    w.close();
  };
  run_stage(s);
}

void Pipeline::stage_categories() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "categories";
  s.inputs = join({&c.category_dump, &c.categorylinks_dump, &c.page_props_dump});
  s.inputs.push_back(out_path(graph::kPageFile));
  s.params = c.render({"category_schema", "categorylinks_schema", "page_props_schema"});
  s.outputs = {graph::kCategoryFile, graph::kPageCategoryFile, graph::kPagePropertyFile};
  s.run = [this, &c](const fs::path& staging, Counters* counters) {
    fs::path page_file = out_path(graph::kPageFile);
    graph::PageSourceFactory pages = [page_file] {
      return graph::read_table<graph::PageRecord>(page_file, graph::page_header());
    };
    TsvWriter categories(staging / graph::kCategoryFile, graph::category_header());
    TsvWriter edges(staging / graph::kPageCategoryFile, graph::page_category_header());
    TsvWriter props(staging / graph::kPagePropertyFile, graph::page_property_header());
    graph::build_category_tables(
        dump_rows<ingest::RawCategoryRow>(c.category_dump, c.schemas.category, counters,
                                          "category_dump."),
        dump_rows<ingest::CategoryLinkRow>(c.categorylinks_dump, c.schemas.categorylinks,
                                           counters, "categorylinks_dump."),
        dump_rows<ingest::PagePropRow>(c.page_props_dump, c.schemas.page_props, counters,
                                       "page_props_dump."),
        pages, sort_options(), table_sink<graph::CategoryRecord>(categories),
        table_sink<graph::PageCategoryEdge>(edges), table_sink<ingest::PagePropRow>(props),
        counters);
    categories.close();
    edges.close();
    props.close();
  };
  run_stage(s);
}

void Pipeline::stage_urls() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "urls";
  s.inputs = join({&c.externallinks_dump, &c.citations});
  if (c.domain_rules) s.inputs.push_back(*c.domain_rules);
  s.inputs.push_back(out_path(graph::kPageFile));
  s.params = c.render(with_citation_keys({"externallinks_schema"}));
  s.outputs = {graph::kUrlFile, graph::kPageUrlFile, kUrlRejectsFile};
  s.run = [this, &c](const fs::path& staging, Counters* counters) {
    fs::path page_file = out_path(graph::kPageFile);
    graph::PageSourceFactory pages = [page_file] {
      return graph::read_table<graph::PageRecord>(page_file, graph::page_header());
    };
    normalize::DomainRuleSet rules = domain_rules(c);
    counters->set("domain_rules", rules.size());
    fs::create_directories((staging / kUrlRejectsFile).parent_path());
    TsvWriter urls(staging / graph::kUrlFile, graph::url_header());
    TsvWriter edges(staging / graph::kPageUrlFile, graph::page_url_header());
    TsvWriter rejects(staging / kUrlRejectsFile, {"original", "reason"});
    graph::build_url_tables(
        dump_rows<ingest::ExternalLinkRow>(c.externallinks_dump, c.schemas.externallinks,
                                           counters, "externallinks_dump."),
        citation_records(c.citations, c.citation_columns, counters), rules, pages,
        sort_options(), table_sink<graph::UrlRecord>(urls),
        table_sink<graph::PageUrlEdge>(edges),
        [&rejects](const graph::RejectedUrl& r) { rejects.write_row(r.original, r.reason); },
        counters);
    urls.close();
    edges.close();
    rejects.close();
  };
  run_stage(s);
}

void Pipeline::stage_pubs() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "pubs";
  s.inputs = c.citations;
  s.inputs.push_back(out_path(graph::kPageFile));
  s.params = c.render(with_citation_keys({"identifier_schemes"}));
  s.outputs = {graph::kPubFile, graph::kPagePubFile};
  s.run = [this, &c](const fs::path& staging, Counters* counters) {
    fs::path page_file = out_path(graph::kPageFile);
    graph::PageSourceFactory pages = [page_file] {
      return graph::read_table<graph::PageRecord>(page_file, graph::page_header());
    };
    normalize::IdentifierVocabulary vocab = vocabulary(c);
    TsvWriter pubs(staging / graph::kPubFile, graph::pub_header(vocab.schemes()));
    TsvWriter edges(staging / graph::kPagePubFile, graph::page_pub_header());
    graph::build_pub_tables(citation_records(c.citations, c.citation_columns, counters), vocab,
                            pages, sort_options(), table_sink<graph::PubRecord>(pubs),
                            table_sink<graph::PagePubEdge>(edges), counters);
    pubs.close();
    edges.close();
  };
  run_stage(s);
}

uint64_t Pipeline::stage_verify() {
  require_graph();
  StageSpec s;
  s.name = "verify";
  for (const auto& f : graph::graph_files()) s.inputs.push_back(out_path(f));
  s.params = config_.render({"identifier_schemes"});
  s.outputs = {kIntegrityReportFile};
  s.run = [this](const fs::path& staging, Counters* counters) {
    graph::IntegrityReport report = graph::verify_integrity(config_.out, config_.identifier_schemes);
    std::ofstream out(staging / kIntegrityReportFile);
    out << report.render();
    if (!out) throw IoError("cannot write integrity report");
    for (const auto& [file, n] : report.rows) counters->set("rows." + file, n);
    counters->set("violations", report.total_violations());
  };
  run_stage(s);
  Counters recorded;
  runner_.recorded_counters("verify", &recorded);
  return recorded.get("violations");
}

void Pipeline::stage_metrics() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "metrics";
  for (const char* f : {graph::kPageFile, graph::kPageLinkFile, graph::kPagePubFile,
                        graph::kPageUrlFile}) {
    s.inputs.push_back(out_path(f));
  }
  s.params = c.render({"views_start", "views_end", "as_of", "include_talk_archives"});
  s.outputs = {metrics::kMetricsFile};
  s.run = [this, &c](const fs::path& staging, Counters* counters) {
    metrics::MetricWindow window{c.views_window.start, c.views_window.end, c.as_of};
    metrics::MetricOptions options;
    options.include_talk_archives = c.include_talk_archives;
    metrics::MetricsWriter writer(staging / metrics::kMetricsFile);
    metrics::compute_metrics_from_graph(
        config_.out, window, options, sort_options(),
        [&writer](const metrics::ArticleMetrics& m) { writer.write(m); }, counters);
    writer.close();
  };
  run_stage(s);
}

void Pipeline::stage_analyze() {
  const PipelineConfig& c = config_;
  StageSpec s;
  s.name = "analyze";
  s.inputs = {out_path(metrics::kMetricsFile), out_path(graph::kPageFile)};
  if (c.assessments) s.inputs.push_back(*c.assessments);
  if (c.exclusions) s.inputs.push_back(*c.exclusions);
  s.params = c.render({"rank_metrics", "top_n", "correlation_metrics"});
  const std::string dir = kAnalysisDir;
  s.outputs = {dir + "/class_means.tsv", dir + "/summary_stats.tsv", dir + "/correlations.tsv"};
  for (const auto& m : c.rank_metrics) s.outputs.push_back(dir + "/top_" + m + ".tsv");
  s.outputs.push_back(dir + "/report.txt");
  s.run = [this, &c, dir](const fs::path& staging, Counters* counters) {
    std::vector<metrics::ArticleMetrics> rows = metrics::read_metrics(out_path(metrics::kMetricsFile));
    counters->set("articles", rows.size());

    analysis::ClassMap classes;
    if (c.assessments) {
      auto in = open_input(*c.assessments);
      analysis::AssessmentReader reader(*in);
      auto source = [&reader](analysis::QualityAssessment& a) { return reader.next(&a); };
      classes = analysis::assign_quality_classes(source);
      counters->merge(reader.counters(), "assessments.");
    }
    std::set<std::string> exclusions;
    if (c.exclusions) exclusions = analysis::read_exclusions(*c.exclusions);
    counters->set("exclusions", exclusions.size());

    analysis::AnalysisOutputs outputs;
    outputs.class_means = analysis::aggregate_by_class(rows, classes);
    outputs.summary = analysis::describe_metrics(rows);
    outputs.correlations = analysis::spearman_matrix(rows, c.correlation_metrics, c.threads);

    // Titles are only needed for the heads of the rankings.
    std::set<PageId> wanted;
    for (const auto& m : c.rank_metrics) {
      for (PageId id : analysis::top_candidates(rows, m, c.top_n + exclusions.size())) {
        wanted.insert(id);
      }
    }
    std::map<PageId, std::string> titles;
    {
      auto pages = graph::read_table<graph::PageRecord>(out_path(graph::kPageFile),
                                                        graph::page_header());
      graph::PageRecord p;
      while (pages(p)) {
        if (wanted.count(p.page_id)) titles[p.page_id] = p.title;
      }
    }
    for (const auto& m : c.rank_metrics) {
      outputs.rankings[m] = analysis::rank_top_n(rows, titles, m, c.top_n, exclusions);
    }
    fs::create_directories(staging / dir);
    analysis::write_analysis(staging / dir, outputs);
  };
  run_stage(s);
}

int Pipeline::build() {
  return guarded([this] {
    const PipelineConfig& c = config_;
    check_inputs({{"page_dump", c.page_dump},
                  {"category_dump", c.category_dump},
                  {"categorylinks_dump", c.categorylinks_dump},
                  {"page_props_dump", c.page_props_dump},
                  {"pagelinks_dump", c.pagelinks_dump},
                  {"externallinks_dump", c.externallinks_dump},
                  {"history", c.history},
                  {"pageviews", c.pageviews, false},
                  {"citations", c.citations, false},
                  {"domain_rules", c.domain_rules ? std::vector<fs::path>{*c.domain_rules}
                                                  : std::vector<fs::path>{},
                   false}});
    stage_pages();
    stage_links();
    stage_categories();
    stage_urls();
    stage_pubs();
    uint64_t violations = stage_verify();
    if (stages_run_ == 0) out_ << "all stages current\n";
    if (violations > 0) {
      throw IntegrityViolationsPresent(std::to_string(violations) +
                                       " integrity violations; see " +
                                       out_path(kIntegrityReportFile).string());
    }
    return static_cast<int>(kExitOk);
  });
}

int Pipeline::metrics() {
  return guarded([this] {
    uint64_t violations = stage_verify();
    if (violations > 0) {
      throw IntegrityViolationsPresent(std::to_string(violations) +
                                       " integrity violations; run verify for details");
    }
    stage_metrics();
    if (stages_run_ == 0) out_ << "all stages current\n";
    return static_cast<int>(kExitOk);
  });
}

int Pipeline::analyze() {
  return guarded([this] {
    const PipelineConfig& c = config_;
    check_inputs({{"assessments",
                   c.assessments ? std::vector<fs::path>{*c.assessments} : std::vector<fs::path>{},
                   false},
                  {"exclusions",
                   c.exclusions ? std::vector<fs::path>{*c.exclusions} : std::vector<fs::path>{},
                   false}});
    if (!fs::exists(out_path(metrics::kMetricsFile))) {
      throw MissingMetrics(out_path(metrics::kMetricsFile).string() +
                           " is missing; run metrics first");
    }
    require_graph();
    stage_analyze();
    if (stages_run_ == 0) out_ << "all stages current\n";
    return static_cast<int>(kExitOk);
  });
}

int Pipeline::report() {
  return guarded([this] {
    std::string body = render_run_report();
    if (body.empty()) throw Error("no completed stages in " + config_.out.string());
    out_ << body;
    std::istringstream parsed(body);
    size_t failed = 0;
    for (const auto& r : reconcile(parse_run_report(parsed))) {
      if (r.ok()) continue;
      ++failed;
      err_ << "reconciliation " << r.name << ": " << r.lhs << " != " << r.rhs << "\n";
    }
    if (failed > 0) return static_cast<int>(kExitFailure);
    fs::path analysis_report = out_path(std::string(kAnalysisDir) + "/report.txt");
    if (fs::exists(analysis_report)) {
      std::ifstream in(analysis_report);
      out_ << "\n" << in.rdbuf();
    }
    return static_cast<int>(kExitOk);
  });
}

int Pipeline::verify() {
  return guarded([this] {
    uint64_t violations = stage_verify();
    std::ifstream in(out_path(kIntegrityReportFile));
    out_ << in.rdbuf();
    return static_cast<int>(violations > 0 ? kExitIntegrity : kExitOk);
  });
}

}  // namespace wikikg::pipeline
