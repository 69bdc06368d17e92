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

#include "wikikg/graph/reference_tables.h"

#include "wikikg/graph/title_index.h"

namespace wikikg::graph {
namespace {

struct UrlRef {
  PageId page_id = 0;
  int32_t ns = 0;
  std::string title;
  std::string url;
  std::string domain;
  bool in_reference = false;

  auto tie() const { return std::tie(page_id, ns, title, url, domain, in_reference); }
  size_t heap_bytes() const { return title.capacity() + url.capacity() + domain.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, ns, title, url, domain, in_reference);
  }
};

struct PubRef {
  PageId page_id = 0;
  int32_t ns = 0;
  std::string title;
  std::string key;

  auto tie() const { return std::tie(page_id, ns, title, key); }
  size_t heap_bytes() const { return title.capacity() + key.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, ns, title, key);
  }
};

template <typename T>
struct ByTie {
  bool operator()(const T& a, const T& b) const { return a.tie() < b.tie(); }
};

template <typename T>
struct ByTitle {
  bool operator()(const T& a, const T& b) const {
    return std::tie(a.ns, a.title) < std::tie(b.ns, b.title) ||
           (std::tie(a.ns, a.title) == std::tie(b.ns, b.title) && a.tie() < b.tie());
  }
};

struct UrlFirst {
  bool operator()(const UrlRef& a, const UrlRef& b) const {
    return std::tie(a.url, a.page_id, a.in_reference) < std::tie(b.url, b.page_id, b.in_reference);
  }
};

struct KeyFirst {
  bool operator()(const PubRef& a, const PubRef& b) const {
    return std::tie(a.key, a.page_id) < std::tie(b.key, b.page_id);
  }
};

// Refs carry either a page_id or a (namespace, title) pair; the latter are
// collected in `titled` and resolved here by one merge against the pages.
template <typename T>
class PageRouter {
 public:
  explicit PageRouter(const SortOptions& sort) : sort_(sort), titled_(sort), by_page_(sort) {}

  void add(T ref) {
    if (ref.page_id > 0) {
      by_page_.add(std::move(ref));
    } else {
      ref.title = title_key(ref.title);
      titled_.add(std::move(ref));
    }
  }

  // Refs in (page_id, ...) order, titles resolved.
  Source<T> finish(const PageSourceFactory& pages, Counters* counters,
                   const std::string& unresolved_counter) {
    if (titled_.records() > 0) {
      TitleCursor titles(pages_by_title(pages, sort_));
      Source<T> sorted = titled_.finish();
      T ref;
      while (sorted(ref)) {
        auto id = titles.seek(ref.ns, ref.title);
        if (!id) {
          counters->add(unresolved_counter);
          continue;
        }
        ref.page_id = *id;
        ref.ns = 0;
        ref.title.clear();
        by_page_.add(std::move(ref));
      }
    }
    return by_page_.finish();
  }

 private:
  SortOptions sort_;
  ExternalSorter<T, ByTitle<T>> titled_;
  ExternalSorter<T, ByTie<T>> by_page_;
};

}  // namespace

NormalizedCitation normalize_citation(const ingest::CitationRecord& record,
                                      const normalize::DomainRuleSet& rules,
                                      const normalize::IdentifierVocabulary& vocab,
                                      Counters* counters, const Sink<RejectedUrl>* rejects) {
  NormalizedCitation out;
  out.page_id = record.source_page_id;
  out.title = record.source_page_title;
  for (const auto& raw : record.raw_urls) {
    auto url = normalize::normalize_url(raw, rules);
    if (url) {
      out.urls.push_back(*url);
    } else {
      counters->add("urls_rejected");
      if (rejects) (*rejects)({raw, url.error().reason});
    }
  }
  for (const auto& [scheme, value] : record.raw_identifiers) {
    counters->add("identifiers_in");
    auto id = normalize::normalize_identifier(scheme, value, vocab);
    if (id) {
      out.identifiers.push_back(*id);
    } else {
      counters->add(std::string("identifiers_") + normalize::to_string(id.error().kind));
    }
  }
  auto key = normalize::pub_identity_key(out.identifiers);
  if (key) out.pub_key = *key;
  return out;
}

Source<PageTally> citation_tallies(Source<ingest::CitationRecord> citations) {
  auto record = std::make_shared<ingest::CitationRecord>();
  return [citations, record](PageTally& out) mutable {
    if (!citations(*record)) return false;
    out = {record->source_page_id, 0,
           record->source_page_id > 0 ? std::string() : record->source_page_title, 0, 1};
    return true;
  };
}

std::vector<std::string> pub_columns(std::string_view key,
                                     const normalize::IdentifierVocabulary& vocab) {
  std::vector<std::string> columns(vocab.schemes().size());
  for (const auto& id : normalize::parse_identity_key(key)) {
    int idx = vocab.index_of(id.scheme);
    if (idx < 0) continue;
    std::string& cell = columns[idx];
    if (cell.empty() || id.value.size() > cell.size() ||
        (id.value.size() == cell.size() && id.value < cell)) {
      cell = id.value;
    }
  }
  return columns;
}

void build_url_tables(Source<ingest::ExternalLinkRow> external_links,
                      Source<ingest::CitationRecord> citations,
                      const normalize::DomainRuleSet& rules, const PageSourceFactory& pages,
                      const SortOptions& sort, const Sink<UrlRecord>& url_out,
                      const Sink<PageUrlEdge>& edge_out, const Sink<RejectedUrl>& rejects,
                      Counters* counters) {
  for (const char* name :
       {"external_links_in", "citation_urls_in", "urls_rejected", "url_refs_unresolved_title",
        "url_refs_orphan_page", "page_url_deduped", "page_url_out", "page_url_in_reference",
        "urls_out"}) {
    counters->add(name, 0);
  }
  PageRouter<UrlRef> router(sort);
  ingest::ExternalLinkRow link;
  while (external_links(link)) {
    counters->add("external_links_in");
    auto url = normalize::normalize_url(link.raw_url, rules);
    if (!url) {
      counters->add("urls_rejected");
      rejects({link.raw_url, url.error().reason});
      continue;
    }
    router.add({link.from_page_id, 0, {}, url->url, url->domain, false});
  }
  ingest::CitationRecord record;
  while (citations(record)) {
    for (const auto& raw : record.raw_urls) {
      counters->add("citation_urls_in");
      auto url = normalize::normalize_url(raw, rules);
      if (!url) {
        counters->add("urls_rejected");
        rejects({raw, url.error().reason});
        continue;
      }
      router.add({record.source_page_id, 0,
                  record.source_page_id > 0 ? std::string() : record.source_page_title,
                  url->url, url->domain, true});
    }
  }

  // Per (page, url): drop orphans, OR the reference flag.
  ExternalSorter<UrlRef, UrlFirst> by_url(sort);
  {
    Source<UrlRef> refs = router.finish(pages, counters, "url_refs_unresolved_title");
    PageCursor cursor(pages());
    UrlRef ref, group;
    bool open = false;
    while (refs(ref)) {
      if (!cursor.seek(ref.page_id)) {
        counters->add("url_refs_orphan_page");
        continue;
      }
      if (open && ref.page_id == group.page_id && ref.url == group.url) {
        counters->add("page_url_deduped");
        group.in_reference = group.in_reference || ref.in_reference;
        continue;
      }
      if (open) by_url.add(std::move(group));
      group = std::move(ref);
      open = true;
    }
    if (open) by_url.add(std::move(group));
  }

  ExternalSorter<PageUrlEdge> edges(sort);
  {
    Source<UrlRef> sorted = by_url.finish();
    UrlRef ref;
    std::string last;
    int64_t url_id = 0;
    while (sorted(ref)) {
      if (url_id == 0 || ref.url != last) {
        ++url_id;
        last = ref.url;
        counters->add("urls_out");
        url_out({url_id, ref.url, ref.domain});
      }
      edges.add({ref.page_id, url_id, ref.in_reference});
    }
  }
  Source<PageUrlEdge> sorted = edges.finish();
  PageUrlEdge e;
  while (sorted(e)) {
    counters->add("page_url_out");
    if (e.in_reference) counters->add("page_url_in_reference");
    edge_out(e);
  }
}

void build_pub_tables(Source<ingest::CitationRecord> citations,
                      const normalize::IdentifierVocabulary& vocab,
                      const PageSourceFactory& pages, const SortOptions& sort,
                      const Sink<PubRecord>& pub_out, const Sink<PagePubEdge>& edge_out,
                      Counters* counters) {
  for (const char* name :
       {"citations_in", "citations_without_pub", "identifiers_in", "pub_refs_unresolved_title",
        "pub_refs_orphan_page", "page_pub_deduped", "page_pub_out", "pubs_out",
        "pubs_scheme_conflicts"}) {
    counters->add(name, 0);
  }
  normalize::DomainRuleSet no_rules;
  PageRouter<PubRef> router(sort);
  ingest::CitationRecord record;
  while (citations(record)) {
    counters->add("citations_in");
    ingest::CitationRecord ids_only = record;
    ids_only.raw_urls.clear();
    NormalizedCitation c = normalize_citation(ids_only, no_rules, vocab, counters);
    if (!c.pub_key) {
      counters->add("citations_without_pub");
      continue;
    }
    router.add({c.page_id, 0, c.page_id > 0 ? std::string() : c.title, *c.pub_key});
  }

  ExternalSorter<PubRef, KeyFirst> by_key(sort);
  {
    Source<PubRef> refs = router.finish(pages, counters, "pub_refs_unresolved_title");
    PageCursor cursor(pages());
    PubRef ref, last;
    while (refs(ref)) {
      if (!cursor.seek(ref.page_id)) {
        counters->add("pub_refs_orphan_page");
      } else if (ref.page_id == last.page_id && ref.key == last.key) {
        counters->add("page_pub_deduped");
      } else {
        last = ref;
        by_key.add(std::move(ref));
      }
    }
  }

  ExternalSorter<PagePubEdge> edges(sort);
  {
    Source<PubRef> sorted = by_key.finish();
    PubRef ref;
    std::string last;
    int64_t pub_id = 0;
    while (sorted(ref)) {
      if (pub_id == 0 || ref.key != last) {
        ++pub_id;
        last = ref.key;
        auto ids = normalize::parse_identity_key(ref.key);
        for (size_t i = 1; i < ids.size(); ++i) {
          if (ids[i].scheme == ids[i - 1].scheme) {
            counters->add("pubs_scheme_conflicts");
            break;
          }
        }
        counters->add("pubs_out");
        pub_out({pub_id, ref.key, pub_columns(ref.key, vocab)});
      }
      edges.add({ref.page_id, pub_id});
    }
  }
  Source<PagePubEdge> sorted = edges.finish();
  PagePubEdge e;
  while (sorted(e)) {
    counters->add("page_pub_out");
    edge_out(e);
  }
}

}  // namespace wikikg::graph
