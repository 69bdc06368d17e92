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

#ifndef WIKIKG_INGEST_REVISION_HISTORY_H_
#define WIKIKG_INGEST_REVISION_HISTORY_H_

#include <cstdint>
#include <deque>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "wikikg/common/counters.h"
#include "wikikg/common/error.h"
#include "wikikg/common/time.h"

namespace wikikg::ingest {

enum class ContributorKind : uint8_t { kRegistered, kAnonymous, kDeleted };

struct ContributorIdentity {
  ContributorKind kind = ContributorKind::kDeleted;
  // User id (or user name when the export omits ids) for registered users,
  // the IP literal for anonymous edits, empty for deleted contributors.
  std::string key;

  // Identity string used for distinct counting. All deleted contributors
  // share one sentinel, so they add at most one editor per page.
  std::string identity() const;

  bool operator==(const ContributorIdentity&) const = default;
};

struct RevisionEvent {
  PageId page_id = 0;
  int32_t ns = 0;
  std::string title;
  Timestamp timestamp{};
  ContributorIdentity contributor;
};

class XmlStructure : public Error {
 public:
  XmlStructure(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Streams revision events from a stub-meta-history XML export in document
// order. Unknown elements are ignored. Only the text of the handful of
// elements the parser needs is buffered, so memory does not grow with the
// size of the file.
class RevisionHistoryParser {
 public:
  explicit RevisionHistoryParser(std::istream& in);
  ~RevisionHistoryParser();
  RevisionHistoryParser(const RevisionHistoryParser&) = delete;
  RevisionHistoryParser& operator=(const RevisionHistoryParser&) = delete;

  bool next(RevisionEvent* event);

  uint64_t pages() const;
  uint64_t revisions() const;

 private:
  struct State;
  bool pump();

  std::istream& in_;
  std::unique_ptr<State> state_;
  std::vector<char> buf_;
  bool finished_ = false;
};

}  // namespace wikikg::ingest

#endif  // WIKIKG_INGEST_REVISION_HISTORY_H_
