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

#ifndef PCDM_DATASET_H_
#define PCDM_DATASET_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pcdm {

enum class DistortionClass { kJp2k, kJpeg, kWn, kGblur, kFf, kOther };

inline constexpr std::array<DistortionClass, 6> kAllDistortionClasses = {
    DistortionClass::kJp2k, DistortionClass::kJpeg, DistortionClass::kWn,
    DistortionClass::kGblur, DistortionClass::kFf,  DistortionClass::kOther};

// Lower-case manifest spelling, e.g. "jp2k".
std::string_view DistortionClassId(DistortionClass c);
// Column heading used in reports, e.g. "Jp2k".
std::string_view DistortionClassLabel(DistortionClass c);
// Case-insensitive; throws kUnknownClass.
DistortionClass ParseDistortionClass(std::string_view id);

struct ManifestEntry {
  std::filesystem::path ref_path;
  std::filesystem::path dist_path;
  double dmos = 0.0;
  DistortionClass distortion = DistortionClass::kOther;
  int line = 0;  // 1-based line in the manifest file
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

// Reads a UTF-8 CSV with the header "ref,dist,dmos,class". Relative paths are
// resolved against the manifest's directory and must exist. Fields are not
// quoted, so paths cannot contain commas.
//
// Throws kFileNotFound (the manifest itself), kParseError, kMissingFile or
// kUnknownClass; the message names the offending line.
DatasetManifest LoadManifest(const std::filesystem::path& path);

}  // namespace pcdm

#endif  // PCDM_DATASET_H_
