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

#include "wikikg/ingest/revision_history.h"

#include <expat.h>

#include <cstring>
#include <optional>

#include "wikikg/common/text.h"

namespace wikikg::ingest {

std::string ContributorIdentity::identity() const {
  switch (kind) {
    case ContributorKind::kRegistered:
      return "r:" + key;
    case ContributorKind::kAnonymous:
      return "a:" + key;
    case ContributorKind::kDeleted:
      break;
  }
  return "d";
}

namespace {

enum class Capture {
  kNone,
  kPageTitle,
  kPageNs,
  kPageId,
  kTimestamp,
  kUserId,
  kUserName,
  kUserIp
};

}  // namespace

struct RevisionHistoryParser::State {
  XML_Parser parser = nullptr;
  std::vector<std::string> path;
  std::deque<RevisionEvent> ready;
  std::optional<XmlStructure> failure;

  Capture capture = Capture::kNone;
  std::string text;

  // Current page.
  bool in_page = false;
  std::optional<PageId> page_id;
  int32_t ns = 0;
  std::string title;

  // Current revision.
  bool in_revision = false;
  std::string timestamp;
  bool has_timestamp = false;
  bool contributor_deleted = false;
  std::string user_id;
  std::string user_name;
  std::string user_ip;

  uint64_t pages = 0;
  uint64_t revisions = 0;

  std::string path_string() const {
    std::string out;
    for (const auto& p : path) {
      if (!out.empty()) out.push_back('/');
      out += p;
    }
    return out;
  }

  const std::string& parent() const {
    static const std::string kEmpty;
    return path.size() >= 2 ? path[path.size() - 2] : kEmpty;
  }

  void fail(const std::string& where, const std::string& what) {
    if (!failure) failure.emplace(where, what);
    XML_StopParser(parser, XML_FALSE);
  }

  void start(const char* name, const char** attrs) {
    path.emplace_back(name);
    const std::string& p = parent();
    capture = Capture::kNone;
    if (std::strcmp(name, "page") == 0) {
      in_page = true;
      page_id.reset();
      ns = 0;
      title.clear();
      ++pages;
    } else if (std::strcmp(name, "revision") == 0 && p == "page") {
      in_revision = true;
      has_timestamp = false;
      timestamp.clear();
      contributor_deleted = false;
      user_id.clear();
      user_name.clear();
      user_ip.clear();
    } else if (p == "page") {
      if (std::strcmp(name, "title") == 0) capture = Capture::kPageTitle;
      if (std::strcmp(name, "ns") == 0) capture = Capture::kPageNs;
      if (std::strcmp(name, "id") == 0) capture = Capture::kPageId;
    } else if (p == "revision" && in_revision) {
      if (std::strcmp(name, "timestamp") == 0) capture = Capture::kTimestamp;
      if (std::strcmp(name, "contributor") == 0) {
        for (const char** a = attrs; a && *a; a += 2) {
          if (std::strcmp(a[0], "deleted") == 0) contributor_deleted = true;
        }
      }
    } else if (p == "contributor" && in_revision) {
      if (std::strcmp(name, "id") == 0) capture = Capture::kUserId;
      if (std::strcmp(name, "username") == 0) capture = Capture::kUserName;
      if (std::strcmp(name, "ip") == 0) capture = Capture::kUserIp;
    }
    text.clear();
  }

  void end(const char* name) {
    switch (capture) {
      case Capture::kPageTitle:
        title = text;
        break;
      case Capture::kPageNs: {
        auto v = parse_int64(trim(text));
        if (!v) return fail(path_string(), "invalid namespace '" + text + "'");
        ns = static_cast<int32_t>(*v);
        break;
      }
      case Capture::kPageId: {
        auto v = parse_int64(trim(text));
        if (!v || *v <= 0) return fail(path_string(), "invalid page id '" + text + "'");
        page_id = *v;
        break;
      }
      case Capture::kTimestamp:
        timestamp = std::string(trim(text));
        has_timestamp = true;
        break;
      case Capture::kUserId:
        user_id = std::string(trim(text));
        break;
      case Capture::kUserName:
        user_name = text;
        break;
      case Capture::kUserIp:
        user_ip = std::string(trim(text));
        break;
      case Capture::kNone:
        break;
    }
    capture = Capture::kNone;
    if (std::strcmp(name, "revision") == 0 && in_revision && parent() == "page") {
      finish_revision();
      in_revision = false;
    } else if (std::strcmp(name, "page") == 0) {
      in_page = false;
    }
    path.pop_back();
  }

  void finish_revision() {
    if (!page_id) return fail(path_string(), "missing page id");
    if (!has_timestamp) return fail(path_string() + "/timestamp", "missing timestamp");
    auto ts = parse_iso_timestamp(timestamp);
    if (!ts) {
      return fail(path_string() + "/timestamp", "invalid timestamp '" + timestamp + "'");
    }
    RevisionEvent ev;
    ev.page_id = *page_id;
    ev.ns = ns;
    ev.title = title;
    ev.timestamp = *ts;
    if (contributor_deleted) {
      ev.contributor = {ContributorKind::kDeleted, {}};
    } else if (!user_id.empty()) {
      ev.contributor = {ContributorKind::kRegistered, user_id};
    } else if (!user_name.empty()) {
      ev.contributor = {ContributorKind::kRegistered, user_name};
    } else if (!user_ip.empty()) {
      ev.contributor = {ContributorKind::kAnonymous, user_ip};
    } else {
      ev.contributor = {ContributorKind::kDeleted, {}};
    }
    ready.push_back(std::move(ev));
    ++revisions;
  }

  static void on_start(void* data, const char* name, const char** attrs) {
    static_cast<State*>(data)->start(name, attrs);
  }
  static void on_end(void* data, const char* name) {
    static_cast<State*>(data)->end(name);
  }
  static void on_text(void* data, const char* s, int len) {
    auto* st = static_cast<State*>(data);
    if (st->capture != Capture::kNone) st->text.append(s, static_cast<size_t>(len));
  }
};

RevisionHistoryParser::RevisionHistoryParser(std::istream& in)
    : in_(in), state_(std::make_unique<State>()), buf_(1 << 16) {
  state_->parser = XML_ParserCreate("UTF-8");
  XML_SetUserData(state_->parser, state_.get());
  XML_SetElementHandler(state_->parser, &State::on_start, &State::on_end);
  XML_SetCharacterDataHandler(state_->parser, &State::on_text);
}

RevisionHistoryParser::~RevisionHistoryParser() {
  XML_ParserFree(state_->parser);
}

uint64_t RevisionHistoryParser::pages() const { return state_->pages; }
uint64_t RevisionHistoryParser::revisions() const { return state_->revisions; }

bool RevisionHistoryParser::pump() {
  if (finished_) return false;
  in_.read(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  auto got = static_cast<int>(in_.gcount());
  bool final = got == 0 || !in_;
  XML_Status status =
      XML_Parse(state_->parser, buf_.data(), got, final ? XML_TRUE : XML_FALSE);
  if (state_->failure) throw *state_->failure;
  if (status != XML_STATUS_OK) {
    // An entirely empty stream carries no events.
    if (final && state_->pages == 0 && state_->path.empty() &&
        XML_GetErrorCode(state_->parser) == XML_ERROR_NO_ELEMENTS) {
      finished_ = true;
      return false;
    }
    throw XmlStructure(
        state_->path_string().empty() ? "/" : state_->path_string(),
        std::string("XML error at line ") +
            std::to_string(XML_GetCurrentLineNumber(state_->parser)) + ": " +
            XML_ErrorString(XML_GetErrorCode(state_->parser)));
  }
  if (final) finished_ = true;
  return true;
}

bool RevisionHistoryParser::next(RevisionEvent* event) {
  while (state_->ready.empty()) {
    if (!pump()) return false;
  }
  *event = std::move(state_->ready.front());
  state_->ready.pop_front();
  return true;
}

}  // namespace wikikg::ingest
