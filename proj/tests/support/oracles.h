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

#ifndef WIKIKG_TESTS_SUPPORT_ORACLES_H_
#define WIKIKG_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wikikg/ingest/revision_aggregate.h"
#include "wikikg/ingest/sql_dump.h"

namespace wikikg::test {

using Rng = std::mt19937_64;

// Valid UTF-8 heavy on characters that need escaping.
std::string random_text(Rng& rng, size_t max_len);
ingest::SqlRow random_sql_row(Rng& rng, size_t columns);
std::vector<ingest::SqlRow> random_sql_rows(Rng& rng);

// Up to `max_events` revisions over a small set of pages, shuffled.
std::vector<ingest::RevisionEvent> random_revisions(Rng& rng, size_t max_events);

// Sort-and-count reference for edits, distinct editors and first revision.
std::map<PageId, ingest::RevisionAggregate> brute_force_revisions(
    const std::vector<ingest::RevisionEvent>& events);

// Disk-backed path used by the pipeline: tallies per contiguous page group,
// external sort, reduction. `budget` forces spills when small.
std::map<PageId, ingest::RevisionAggregate> external_revisions(
    const std::vector<ingest::RevisionEvent>& events, size_t budget);

// Nine random digits plus a mod-11 check character.
std::string random_isbn10(Rng& rng);
// 978 prefix and weighted 1/3 check digit, computed digit by digit.
std::string isbn10_to_13_reference(const std::string& isbn10);
// Same digits with hyphens or spaces inserted at random positions.
std::string decorate_isbn(Rng& rng, const std::string& isbn);

// Average-rank Spearman by counting, in long double.
double spearman_reference(const std::vector<double>& x, const std::vector<double>& y);
// n values drawn from a few distinct levels, so ties are frequent.
std::vector<double> random_tied_vector(Rng& rng, size_t n);

// URL-shaped strings built from schemes, hosts, archive wrappers, queries,
// whitespace and junk.
std::string random_url(Rng& rng);
std::string random_bytes(Rng& rng, size_t max_len);

}  // namespace wikikg::test

#endif  // WIKIKG_TESTS_SUPPORT_ORACLES_H_
