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

#ifndef WIKIKG_GRAPH_REFERENCE_TABLES_H_
#define WIKIKG_GRAPH_REFERENCE_TABLES_H_

#include <optional>
#include <string>
#include <vector>

#include "wikikg/graph/page_table.h"
#include "wikikg/graph/records.h"
#include "wikikg/ingest/citations.h"
#include "wikikg/ingest/dump_tables.h"
#include "wikikg/normalize/identifiers.h"
#include "wikikg/normalize/url.h"

namespace wikikg::graph {

// A URL that failed canonicalization, with the reason.
struct RejectedUrl {
  std::string original;
  std::string reason;
};

// One citation record after URL and identifier normalization.
struct NormalizedCitation {
  PageId page_id = 0;  // 0 when only the title is known
  std::string title;
  std::vector<normalize::CanonicalUrl> urls;
  std::vector<normalize::IdentifierPair> identifiers;
  std::optional<std::string> pub_key;
};

// Identifier failures are counted by kind; rejected URLs go to `rejects`
// when given.
NormalizedCitation normalize_citation(const ingest::CitationRecord& record,
                                      const normalize::DomainRuleSet& rules,
                                      const normalize::IdentifierVocabulary& vocab,
                                      Counters* counters,
                                      const Sink<RejectedUrl>* rejects = nullptr);

// One reference tally (references = 1) per citation record, for
// build_page_table. Citations name article pages, so title keys use
// namespace 0.
Source<PageTally> citation_tallies(Source<ingest::CitationRecord> citations);

// Scheme columns of a publication, derived from its key alone: the value of
// each vocabulary scheme, or empty. A scheme present twice keeps the longer
// value (the lexicographically smaller on equal length).
std::vector<std::string> pub_columns(std::string_view key,
                                     const normalize::IdentifierVocabulary& vocab);

// URL tables from externallinks and citations, normalized with one rule
// set. url_id is dense and assigned in lexicographic URL order. A page_url
// edge has in_reference set when the pair occurs in the citations (the flag
// wins on conflict). Edges from unknown pages or unresolvable titles are
// dropped and counted; unparseable URLs go to `rejects`.
void build_url_tables(Source<ingest::ExternalLinkRow> external_links,
                      Source<ingest::CitationRecord> citations,
                      const normalize::DomainRuleSet& rules, const PageSourceFactory& pages,
                      const SortOptions& sort, const Sink<UrlRecord>& url_out,
                      const Sink<PageUrlEdge>& edge_out, const Sink<RejectedUrl>& rejects,
                      Counters* counters);

// One publication per distinct identifier-set key, pub_id dense in key
// order, and page_pub edges deduplicated per (page_id, pub_id).
void build_pub_tables(Source<ingest::CitationRecord> citations,
                      const normalize::IdentifierVocabulary& vocab,
                      const PageSourceFactory& pages, const SortOptions& sort,
                      const Sink<PubRecord>& pub_out, const Sink<PagePubEdge>& edge_out,
                      Counters* counters);

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_REFERENCE_TABLES_H_
