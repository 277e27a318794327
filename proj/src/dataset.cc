// Copyright 2026 The PCDM Authors
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

#include "pcdm/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "pcdm/error.h"

namespace pcdm {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view DistortionClassId(DistortionClass c) {
  switch (c) {
    case DistortionClass::kJp2k: return "jp2k";
    case DistortionClass::kJpeg: return "jpeg";
    case DistortionClass::kWn: return "wn";
    case DistortionClass::kGblur: return "gblur";
    case DistortionClass::kFf: return "ff";
    case DistortionClass::kOther: return "other";
  }
  return "other";
}

std::string_view DistortionClassLabel(DistortionClass c) {
  switch (c) {
    case DistortionClass::kJp2k: return "Jp2k";
    case DistortionClass::kJpeg: return "Jpeg";
    case DistortionClass::kWn: return "Wn";
    case DistortionClass::kGblur: return "Gblur";
    case DistortionClass::kFf: return "FF";
    case DistortionClass::kOther: return "Other";
  }
  return "Other";
}

DistortionClass ParseDistortionClass(std::string_view id) {
  std::string lower(id);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (DistortionClass c : kAllDistortionClasses) {
    if (DistortionClassId(c) == lower) return c;
  }
  throw Error(ErrorCode::kUnknownClass, "'" + std::string(id) + "'");
}

DatasetManifest LoadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  const fs::path base = path.parent_path();

  DatasetManifest manifest;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (Trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    std::vector<std::string> fields = SplitCsv(line);
    for (auto& f : fields) f = Trim(f);
    if (!saw_header) {
      if (fields != std::vector<std::string>{"ref", "dist", "dmos", "class"}) {
        throw Error(ErrorCode::kParseError,
                    where + ": expected header 'ref,dist,dmos,class'");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParseError, where + ": expected 4 fields");
    }
    ManifestEntry entry;
    entry.line = line_no;
    const std::string& dmos = fields[2];
    auto [ptr, ec] =
        std::from_chars(dmos.data(), dmos.data() + dmos.size(), entry.dmos);
    if (ec != std::errc() || ptr != dmos.data() + dmos.size() ||
        !std::isfinite(entry.dmos)) {
      throw Error(ErrorCode::kParseError, where + ": bad dmos '" + dmos + "'");
    }
    try {
      entry.distortion = ParseDistortionClass(fields[3]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUnknownClass, where + ": '" + fields[3] + "'");
    }
    entry.ref_path = fs::path(fields[0]).is_absolute() ? fs::path(fields[0])
                                                       : base / fields[0];
    entry.dist_path = fs::path(fields[1]).is_absolute() ? fs::path(fields[1])
                                                        : base / fields[1];
    for (const fs::path& p : {entry.ref_path, entry.dist_path}) {
      std::error_code exists_ec;
      if (!fs::is_regular_file(p, exists_ec)) {
        throw Error(ErrorCode::kMissingFile, where + ": " + p.string());
      }
    }
    manifest.entries.push_back(std::move(entry));
  }
  if (!saw_header) {
    throw Error(ErrorCode::kParseError, path.string() + ": empty manifest");
  }
  return manifest;
}

}  // namespace pcdm
