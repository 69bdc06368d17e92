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

#include "harness.h"

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>
#include <zlib.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "wikikg/graph/page_links.h"
#include "wikikg/metrics/metrics.h"

#ifndef WIKIKG_SOURCE_DIR
#error "WIKIKG_SOURCE_DIR must be defined"
#endif
#ifndef WIKIKG_CLI
#error "WIKIKG_CLI must be defined"
#endif

namespace wikikg::test {

fs::path source_dir() { return WIKIKG_SOURCE_DIR; }
fs::path cli_path() { return WIKIKG_CLI; }
fs::path mini_wiki_dir() { return source_dir() / "tests" / "fixtures" / "mini_wiki"; }

ScratchDir::ScratchDir(const std::string& prefix) {
  std::string pattern = (fs::temp_directory_path() / (prefix + "-XXXXXX")).string();
  if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

}  // namespace

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

CommandResult run_cli(const std::vector<std::string>& args) {
  std::string command = shell_quote(cli_path().string());
  for (const auto& a : args) command += " " + shell_quote(a);
  return run_command(command);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::map<std::string, std::string> hash_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    fs::path rel = fs::relative(entry.path(), dir);
    bool hidden = false;
    for (const auto& part : rel) hidden = hidden || part.string().starts_with(".");
    if (hidden) continue;
    std::string bytes = read_file(entry.path());
    uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                      static_cast<uInt>(bytes.size()));
    out[rel.string()] = std::to_string(bytes.size()) + ":" + std::to_string(crc);
  }
  return out;
}

ChildRun run_in_child(const std::function<std::string()>& fn) {
  ChildRun run;
  int fds[2];
  if (pipe(fds) != 0) {
    run.output = "pipe failed";
    return run;
  }
  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    run.output = "fork failed";
    return run;
  }
  if (pid == 0) {
    close(fds[0]);
    std::string message;
    try {
      message = "1" + fn();
    } catch (const std::exception& e) {
      message = std::string("0") + e.what();
    }
    size_t off = 0;
    while (off < message.size()) {
      ssize_t w = write(fds[1], message.data() + off, message.size() - off);
      if (w <= 0) break;
      off += static_cast<size_t>(w);
    }
    close(fds[1]);
    _exit(0);
  }
  close(fds[1]);
  std::string message;
  char buf[4096];
  ssize_t n;
  while ((n = read(fds[0], buf, sizeof(buf))) > 0) message.append(buf, static_cast<size_t>(n));
  close(fds[0]);
  int status = 0;
  struct rusage usage {};
  wait4(pid, &status, 0, &usage);
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.max_rss_bytes = static_cast<uint64_t>(usage.ru_maxrss) * 1024;
  if (!WIFEXITED(status) || message.empty()) {
    run.output = "child terminated abnormally";
    return run;
  }
  run.ok = message[0] == '1';
  run.output = message.substr(1);
  return run;
}

LinkScaleResult run_link_scale(uint64_t rows, uint64_t pages, const SortOptions& sort,
                               uint64_t seed) {
  graph::PageSourceFactory page_source = [pages] {
    auto next = std::make_shared<PageId>(0);
    return Source<graph::PageRecord>([next, pages](graph::PageRecord& p) {
      if (static_cast<uint64_t>(*next) >= pages) return false;
      p = graph::PageRecord{};
      p.page_id = ++*next;
      p.ns = p.page_id % 10 == 0 ? 1 : 0;
      p.title = "Page_" + std::to_string(p.page_id);
      p.is_redirect = p.page_id % 20 == 5;
      return true;
    });
  };

  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto emitted = std::make_shared<uint64_t>(0);
  Source<ingest::PageLinkRow> link_rows = [=](ingest::PageLinkRow& r) {
    if (*emitted >= rows) return false;
    ++*emitted;
    std::mt19937_64& g = *rng;
    // About 0.1% orphan sources, 2% unresolved titles, 2% talk targets.
    uint64_t from = g() % (pages + pages / 1000 + 1) + 1;
    uint64_t to = g() % (pages + pages / 50 + 1) + 1;
    r.from_page_id = static_cast<PageId>(from);
    r.to_namespace = g() % 50 == 0 ? 1 : 0;
    r.to_title = (g() % 4 == 0 ? "page_" : "Page_") + std::to_string(to);
    return true;
  };

  LinkScaleResult result;
  auto edge_file = std::make_shared<TempFile>(sort.temp_dir);
  uint64_t edge_count = 0;
  {
    RunWriter<graph::PageLinkEdge> writer(edge_file->path());
    graph::build_page_links(
        std::move(link_rows), page_source, graph::LinkOptions{}, sort,
        [&](const graph::PageLinkEdge& e) { writer.write(e); }, &result.link_counters);
    writer.close();
    edge_count = writer.count();
  }
  RunFile<graph::PageLinkEdge> edges(edge_file, edge_count);

  metrics::MetricWindow window;
  window.views_start = Date(std::chrono::days(18718));
  window.views_end = Date(std::chrono::days(18808));
  window.as_of = Date(std::chrono::days(18809));
  metrics::compute_article_metrics(
      page_source, edges.open(), [](graph::PagePubEdge&) { return false; },
      [](graph::PageUrlEdge&) { return false; }, window, metrics::MetricOptions{}, sort,
      [&](const metrics::ArticleMetrics& m) {
        ++result.articles;
        result.sum_links += m.links;
        result.sum_linked += m.linked;
      },
      &result.metric_counters);
  return result;
}

}  // namespace wikikg::test
