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

#ifndef WIKIKG_COMMON_EXTERNAL_SORT_H_
#define WIKIKG_COMMON_EXTERNAL_SORT_H_

#include <algorithm>
#include <atomic>
#include <cereal/archives/binary.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "wikikg/common/error.h"

namespace wikikg {

// Pull-style record stream: returns false once exhausted.
template <typename T>
using Source = std::function<bool(T&)>;

template <typename T>
Source<T> source_from_vector(std::vector<T> values) {
  auto data = std::make_shared<std::vector<T>>(std::move(values));
  auto pos = std::make_shared<size_t>(0);
  return [data, pos](T& out) {
    if (*pos >= data->size()) return false;
    out = std::move((*data)[(*pos)++]);
    return true;
  };
}

template <typename T>
std::vector<T> drain(Source<T>& source) {
  std::vector<T> out;
  T value;
  while (source(value)) out.push_back(std::move(value));
  return out;
}

struct SortOptions {
  // Bytes of records held in memory before a run is spilled.
  size_t memory_budget = size_t{64} << 20;
  std::filesystem::path temp_dir = std::filesystem::temp_directory_path();
  // Maximum number of runs merged at once.
  size_t max_fan_in = 64;
};

// Approximate in-memory size of a record; types owning heap storage expose
// heap_bytes().
template <typename T>
size_t record_footprint(const T& value) {
  if constexpr (requires { value.heap_bytes(); }) {
    return sizeof(T) + value.heap_bytes();
  } else {
    return sizeof(T);
  }
}

// A file that is removed when the last owner goes away.
class TempFile {
 public:
  explicit TempFile(const std::filesystem::path& dir);
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile();

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Binary run of cereal-serialized records. Each record is preceded by a
// continuation flag; a false flag terminates the run.
template <typename T>
class RunWriter {
 public:
  explicit RunWriter(const std::filesystem::path& path)
      : out_(path, std::ios::binary | std::ios::trunc), archive_(out_) {
    if (!out_) throw IoError("cannot create run file: " + path.string());
  }

  void write(const T& value) {
    archive_(true, value);
    ++count_;
  }

  void close() {
    archive_(false);
    out_.flush();
    if (!out_) throw IoError("run file write failed");
  }

  uint64_t count() const { return count_; }

 private:
  std::ofstream out_;
  cereal::BinaryOutputArchive archive_;
  uint64_t count_ = 0;
};

// A persisted sorted stream that can be re-read any number of times.
template <typename T>
class RunFile {
 public:
  RunFile() = default;
  RunFile(std::shared_ptr<TempFile> file, uint64_t count)
      : file_(std::move(file)), count_(count) {}

  static RunFile write(const std::filesystem::path& temp_dir, Source<T> source) {
    auto file = std::make_shared<TempFile>(temp_dir);
    RunWriter<T> writer(file->path());
    T value;
    while (source(value)) writer.write(value);
    writer.close();
    return RunFile(std::move(file), writer.count());
  }

  Source<T> open() const {
    if (!file_) return [](T&) { return false; };
    struct State {
      std::shared_ptr<TempFile> file;
      std::ifstream in;
      std::unique_ptr<cereal::BinaryInputArchive> archive;
      bool done = false;
    };
    auto state = std::make_shared<State>();
    state->file = file_;
    state->in.open(file_->path(), std::ios::binary);
    if (!state->in) throw IoError("cannot open run file");
    state->archive = std::make_unique<cereal::BinaryInputArchive>(state->in);
    return [state](T& out) {
      if (state->done) return false;
      bool more = false;
      (*state->archive)(more);
      if (!more) {
        state->done = true;
        return false;
      }
      (*state->archive)(out);
      return true;
    };
  }

  uint64_t count() const { return count_; }

 private:
  std::shared_ptr<TempFile> file_;
  uint64_t count_ = 0;
};

// K-way merge of individually sorted sources. Ties are resolved in favour of
// the lower source index, so merging runs in creation order is stable.
template <typename T, typename Less = std::less<T>>
Source<T> merge_sources(std::vector<Source<T>> sources, Less less = Less()) {
  if (sources.size() == 1) return std::move(sources.front());
  struct Head {
    T value;
    size_t index;
  };
  struct State {
    std::vector<Source<T>> sources;
    std::vector<Head> heap;
    Less less;
    bool primed = false;
  };
  auto state = std::make_shared<State>();
  state->sources = std::move(sources);
  state->less = less;
  // std heap functions build a max-heap; invert the ordering.
  auto after = [state](const Head& a, const Head& b) {
    if (state->less(b.value, a.value)) return true;
    if (state->less(a.value, b.value)) return false;
    return a.index > b.index;
  };
  return [state, after](T& out) {
    if (!state->primed) {
      state->primed = true;
      for (size_t i = 0; i < state->sources.size(); ++i) {
        Head h{T{}, i};
        if (state->sources[i](h.value)) state->heap.push_back(std::move(h));
      }
      std::make_heap(state->heap.begin(), state->heap.end(), after);
    }
    if (state->heap.empty()) return false;
    std::pop_heap(state->heap.begin(), state->heap.end(), after);
    Head& top = state->heap.back();
    out = std::move(top.value);
    if (state->sources[top.index](top.value)) {
      std::push_heap(state->heap.begin(), state->heap.end(), after);
    } else {
      state->heap.pop_back();
    }
    return true;
  };
}

// Sorts an unbounded record stream within a memory budget by spilling sorted
// runs to disk and merging them. `Less` must be a strict total order over the
// record's full contents for the output to be deterministic.
template <typename T, typename Less = std::less<T>>
class ExternalSorter {
 public:
  explicit ExternalSorter(SortOptions options, Less less = Less())
      : options_(std::move(options)), less_(less) {}

  void add(T value) {
    bytes_ += record_footprint(value);
    buffer_.push_back(std::move(value));
    ++records_;
    if (bytes_ >= options_.memory_budget) spill();
  }

  // Consumes the sorter. The returned stream owns any spilled runs.
  Source<T> finish() {
    if (runs_.empty()) {
      std::sort(buffer_.begin(), buffer_.end(), less_);
      auto out = source_from_vector(std::move(buffer_));
      buffer_ = {};
      return out;
    }
    if (!buffer_.empty()) spill();
    while (runs_.size() > std::max<size_t>(options_.max_fan_in, 2)) {
      std::vector<RunFile<T>> next;
      for (size_t i = 0; i < runs_.size(); i += options_.max_fan_in) {
        std::vector<Source<T>> group;
        for (size_t j = i; j < std::min(runs_.size(), i + options_.max_fan_in);
             ++j) {
          group.push_back(runs_[j].open());
        }
        next.push_back(RunFile<T>::write(
            options_.temp_dir, merge_sources<T, Less>(std::move(group), less_)));
      }
      runs_ = std::move(next);
      ++merge_passes_;
    }
    std::vector<Source<T>> sources;
    for (const auto& run : runs_) sources.push_back(run.open());
    runs_.clear();
    return merge_sources<T, Less>(std::move(sources), less_);
  }

  uint64_t records() const { return records_; }
  size_t spilled_runs() const { return spilled_runs_; }
  size_t merge_passes() const { return merge_passes_; }

 private:
  void spill() {
    std::sort(buffer_.begin(), buffer_.end(), less_);
    runs_.push_back(
        RunFile<T>::write(options_.temp_dir, source_from_vector(std::move(buffer_))));
    buffer_ = {};
    bytes_ = 0;
    ++spilled_runs_;
  }

  SortOptions options_;
  Less less_;
  std::vector<T> buffer_;
  size_t bytes_ = 0;
  uint64_t records_ = 0;
  size_t spilled_runs_ = 0;
  size_t merge_passes_ = 0;
  std::vector<RunFile<T>> runs_;
};

}  // namespace wikikg

#endif  // WIKIKG_COMMON_EXTERNAL_SORT_H_
