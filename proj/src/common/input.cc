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

#include "wikikg/common/input.h"

#include <fnmatch.h>
#include <zlib.h>

#include <algorithm>
#include <boost/iostreams/device/file.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <cstdio>
#include <fstream>

#include "wikikg/common/error.h"
#include "wikikg/common/text.h"

namespace wikikg {

namespace io = boost::iostreams;

std::unique_ptr<std::istream> open_input(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError("input not found: " + path.string());
  }
  const std::string ext = path.extension().string();
  if (ext != ".gz" && ext != ".bz2") {
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) throw IoError("cannot open: " + path.string());
    return in;
  }
  auto in = std::make_unique<io::filtering_istream>();
  if (ext == ".gz") {
    in->push(io::gzip_decompressor());
  } else {
    in->push(io::bzip2_decompressor());
  }
  in->push(io::file_source(path.string(), std::ios::binary));
  return in;
}

std::vector<std::filesystem::path> expand_paths(
    const std::string& spec, const std::filesystem::path& base) {
  std::vector<std::filesystem::path> out;
  for (std::string_view item : split(spec, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::filesystem::path p(std::string{item});
    if (p.is_relative()) p = base / p;
    const std::string name = p.filename().string();
    if (name.find_first_of("*?[") == std::string::npos) {
      out.push_back(p);
      continue;
    }
    std::vector<std::filesystem::path> matches;
    std::error_code ec;
    for (const auto& entry :
         std::filesystem::directory_iterator(p.parent_path(), ec)) {
      if (fnmatch(name.c_str(), entry.path().filename().c_str(), 0) == 0) {
        matches.push_back(entry.path());
      }
    }
    if (matches.empty()) {
      // Keep the pattern so validation reports it as missing.
      out.push_back(p);
    }
    std::sort(matches.begin(), matches.end());
    out.insert(out.end(), matches.begin(), matches.end());
  }
  return out;
}

std::string FileFingerprint::to_string() const {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%llu:%08x",
                static_cast<unsigned long long>(size), crc32);
  return buf;
}

FileFingerprint fingerprint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot fingerprint: " + path.string());
  FileFingerprint fp;
  uLong crc = ::crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 20);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    std::streamsize got = in.gcount();
    if (got <= 0) break;
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(buf.data()),
                  static_cast<uInt>(got));
    fp.size += static_cast<uint64_t>(got);
  }
  fp.crc32 = static_cast<uint32_t>(crc);
  return fp;
}

}  // namespace wikikg
