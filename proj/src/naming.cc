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

#include "pcdm/naming.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>

namespace pcdm {
namespace {

double Sum(DescriptorView probs) {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

std::vector<std::string> DefaultTermNames(size_t n) {
  if (n == BasicColorTerms().size()) return BasicColorTerms();
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back("term" + std::to_string(i));
  return names;
}

std::string_view NextToken(std::string_view& line) {
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) {
    line = {};
    return {};
  }
  line.remove_prefix(begin);
  const auto end = line.find_first_of(" \t\r");
  const std::string_view token = line.substr(0, end);
  line.remove_prefix(end == std::string_view::npos ? line.size() : end);
  return token;
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

bool OnSimplex(DescriptorView probs, double tolerance) {
  if (probs.empty()) return false;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
  }
  return std::abs(Sum(probs) - 1.0) <= tolerance;
}

ColorDescriptor::ColorDescriptor(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (!OnSimplex(probs_)) {
    throw Error(ErrorCode::kSimplexViolation,
                "descriptor mass " + std::to_string(Sum(probs_)));
  }
}

ColorDescriptor ColorDescriptor::OneHot(size_t size, size_t index) {
  std::vector<double> probs(size, 0.0);
  probs.at(index) = 1.0;
  return ColorDescriptor(std::move(probs));
}

ColorDescriptor ColorDescriptor::Uniform(size_t size) {
  std::vector<double> probs(size, 1.0 / static_cast<double>(size));
  // Push the rounding residue into the last entry.
  probs.back() = 1.0 - std::accumulate(probs.begin(), probs.end() - 1, 0.0);
  return ColorDescriptor(std::move(probs));
}

void ColorVocabulary::Validate() const {
  if (terms.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary needs >= 2 terms");
  }
  if (prototypes.size() != terms.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "vocabulary needs one prototype per term");
  }
  if (std::set<std::string>(terms.begin(), terms.end()).size() !=
      terms.size()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate vocabulary term");
  }
}

const std::vector<std::string>& BasicColorTerms() {
  static const std::vector<std::string> kTerms = {
      "black", "blue",   "brown", "grey",  "green", "orange",
      "pink",  "purple", "red",   "white", "yellow"};
  return kTerms;
}

ColorVocabulary DefaultVocabulary() {
  // Focal sRGB colors, one per basic term, in BasicColorTerms() order.
  static constexpr double kFocal[11][3] = {
      {20, 20, 20},    {30, 60, 200},   {120, 70, 30},  {128, 128, 128},
      {40, 150, 50},   {245, 130, 20},  {245, 150, 190}, {120, 40, 150},
      {200, 20, 30},   {245, 245, 245}, {240, 220, 30}};
  ColorVocabulary vocab;
  vocab.terms = BasicColorTerms();
  for (const auto& c : kFocal) {
    vocab.prototypes.push_back(RgbToLab(c[0], c[1], c[2]));
  }
  return vocab;
}

NamingTable::NamingTable(int bins_per_channel, int num_terms,
                         std::vector<double> probs)
    : bins_(bins_per_channel), terms_(num_terms), probs_(std::move(probs)) {
  if (bins_ < 1 || bins_ > 256) {
    throw Error(ErrorCode::kInvalidArgument,
                "bins per channel must be in [1, 256]");
  }
  if (terms_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two color terms");
  }
  if (probs_.size() != bin_count() * terms_) {
    throw Error(ErrorCode::kWrongRowCount,
                "expected " + std::to_string(bin_count()) + " rows");
  }
  for (size_t bin = 0; bin < bin_count(); ++bin) {
    if (!OnSimplex(Descriptor(bin))) {
      throw Error(ErrorCode::kSimplexViolation,
                  "bin " + std::to_string(bin) + " has mass " +
                      std::to_string(Sum(Descriptor(bin))));
    }
  }
}

double NamingTable::ChannelBinCenter(int bin) const {
  // Integer code values v with floor(v * bins / 256) == bin.
  const int first = (bin * 256 + bins_ - 1) / bins_;
  const int last = ((bin + 1) * 256 + bins_ - 1) / bins_ - 1;
  return 0.5 * (first + last);
}

LabColor NamingTable::BinCenterLab(size_t bin) const {
  const int b = static_cast<int>(bin % bins_);
  const int g = static_cast<int>((bin / bins_) % bins_);
  const int r = static_cast<int>(bin / (static_cast<size_t>(bins_) * bins_));
  return RgbToLab(ChannelBinCenter(r), ChannelBinCenter(g),
                  ChannelBinCenter(b));
}

ColorDescriptor DescribePixel(const NamingTable& table, const Rgb& rgb) {
  const DescriptorView view = table.Describe(rgb);
  return ColorDescriptor(std::vector<double>(view.begin(), view.end()));
}

NamingTable LoadNamingTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());

  struct Row {
    int r, g, b;
    std::vector<double> probs;
  };
  std::vector<Row> rows;
  int columns = -1;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    const auto first = rest.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || rest[first] == '#') continue;

    std::vector<std::string_view> tokens;
    for (auto tok = NextToken(rest); !tok.empty(); tok = NextToken(rest)) {
      tokens.push_back(tok);
    }
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (columns < 0) {
      columns = static_cast<int>(tokens.size());
      if (columns < 5) {
        throw Error(ErrorCode::kParseError, where + ": too few columns");
      }
    } else if (static_cast<int>(tokens.size()) != columns) {
      throw Error(ErrorCode::kParseError, where + ": inconsistent columns");
    }
    Row row;
    if (!ParseNumber(tokens[0], row.r) || !ParseNumber(tokens[1], row.g) ||
        !ParseNumber(tokens[2], row.b)) {
      throw Error(ErrorCode::kParseError, where + ": bad bin index");
    }
    for (size_t k = 3; k < tokens.size(); ++k) {
      double p;
      if (!ParseNumber(tokens[k], p) || !std::isfinite(p) || p < 0.0) {
        throw Error(ErrorCode::kParseError, where + ": bad probability");
      }
      row.probs.push_back(p);
    }
    const double mass = Sum(row.probs);
    if (std::abs(mass - 1.0) > kTableRowTolerance) {
      throw Error(ErrorCode::kSimplexViolation,
                  where + ": row mass " + std::to_string(mass));
    }
    for (double& p : row.probs) p /= mass;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kWrongRowCount, "empty table");

  const int bins = static_cast<int>(std::lround(std::cbrt(rows.size())));
  if (static_cast<size_t>(bins) * bins * bins != rows.size() || bins > 256) {
    throw Error(ErrorCode::kWrongRowCount,
                std::to_string(rows.size()) + " rows is not a cube");
  }
  const int terms = columns - 3;
  const size_t bin_count = rows.size();
  std::vector<double> probs(bin_count * terms);
  std::vector<bool> seen(bin_count, false);
  for (const Row& row : rows) {
    if (row.r < 0 || row.g < 0 || row.b < 0 || row.r >= bins ||
        row.g >= bins || row.b >= bins) {
      throw Error(ErrorCode::kParseError, "bin index out of range");
    }
    const size_t bin =
        (static_cast<size_t>(row.r) * bins + row.g) * bins + row.b;
    if (seen[bin]) throw Error(ErrorCode::kParseError, "duplicate bin");
    seen[bin] = true;
    std::copy(row.probs.begin(), row.probs.end(), probs.begin() + bin * terms);
  }
  return NamingTable(bins, terms, std::move(probs));
}

void SaveNamingTable(const NamingTable& table,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  out.precision(17);
  const int bins = table.bins_per_channel();
  for (int r = 0; r < bins; ++r) {
    for (int g = 0; g < bins; ++g) {
      for (int b = 0; b < bins; ++b) {
        out << r << ' ' << g << ' ' << b;
        const size_t bin = (static_cast<size_t>(r) * bins + g) * bins + b;
        for (double p : table.Descriptor(bin)) out << ' ' << p;
        out << '\n';
      }
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

NamingTable FallbackTable(const ColorVocabulary& vocab, double sigma,
                          int bins) {
  vocab.Validate();
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  const size_t n = vocab.size();
  // Uniform placeholder table, used only for its bin centers.
  const NamingTable shape(bins, static_cast<int>(n),
                          std::vector<double>(static_cast<size_t>(bins) * bins *
                                                  bins * n,
                                              1.0 / n));
  std::vector<double> probs(shape.bin_count() * n);
  std::vector<double> energy(n);
  for (size_t bin = 0; bin < shape.bin_count(); ++bin) {
    const LabColor center = shape.BinCenterLab(bin);
    for (size_t i = 0; i < n; ++i) {
      const double de = DeltaE2000(center, vocab.prototypes[i]);
      energy[i] = de * de / (2.0 * sigma * sigma);
    }
    // Shift by the smallest energy so the closest term never underflows.
    const double floor_energy = *std::min_element(energy.begin(), energy.end());
    double* row = probs.data() + bin * n;
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      row[i] = std::exp(floor_energy - energy[i]);
      total += row[i];
    }
    for (size_t i = 0; i < n; ++i) row[i] /= total;
  }
  return NamingTable(bins, static_cast<int>(n), std::move(probs));
}

ColorVocabulary DerivePrototypes(const NamingTable& table,
                                 std::vector<std::string> terms) {
  const size_t n = table.num_terms();
  if (terms.empty()) terms = DefaultTermNames(n);
  if (terms.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "term count does not match table");
  }
  std::vector<double> weight(n, 0.0), sum_l(n, 0.0), sum_a(n, 0.0),
      sum_b(n, 0.0);
  for (size_t bin = 0; bin < table.bin_count(); ++bin) {
    const LabColor c = table.BinCenterLab(bin);
    const DescriptorView p = table.Descriptor(bin);
    for (size_t i = 0; i < n; ++i) {
      weight[i] += p[i];
      sum_l[i] += p[i] * c.l;
      sum_a[i] += p[i] * c.a;
      sum_b[i] += p[i] * c.b;
    }
  }
  ColorVocabulary vocab;
  vocab.terms = std::move(terms);
  for (size_t i = 0; i < n; ++i) {
    if (!(weight[i] > 0.0)) {
      throw Error(ErrorCode::kDegenerateTerm, vocab.terms[i]);
    }
    vocab.prototypes.push_back(
        {sum_l[i] / weight[i], sum_a[i] / weight[i], sum_b[i] / weight[i]});
  }
  vocab.Validate();
  return vocab;
}

GroundDistanceMatrix::GroundDistanceMatrix(size_t size,
                                           std::vector<double> values)
    : n_(size), d_(std::move(values)) {
  if (n_ < 2 || d_.size() != n_ * n_) {
    throw Error(ErrorCode::kInvalidArgument, "ground distance must be NxN");
  }
  for (size_t i = 0; i < n_; ++i) {
    if (at(i, i) != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "nonzero diagonal");
    }
    for (size_t j = 0; j < n_; ++j) {
      const double v = at(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "distance outside [0, 1]");
      }
      if (v != at(j, i)) {
        throw Error(ErrorCode::kInvalidArgument, "asymmetric ground distance");
      }
    }
  }
}

double GroundDistanceMatrix::MaxEntry() const {
  return *std::max_element(d_.begin(), d_.end());
}

std::string GroundDistanceMatrix::ToCsv() const {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  for (size_t i = 0; i < n_; ++i) {
    for (size_t j = 0; j < n_; ++j) {
      if (j > 0) out << ',';
      out << at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

GroundDistanceMatrix GroundDistance(const ColorVocabulary& vocab,
                                    double threshold) {
  vocab.Validate();
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be positive");
  }
  const size_t n = vocab.size();
  std::vector<double> d(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double de = DeltaE2000(vocab.prototypes[i], vocab.prototypes[j]);
      d[i * n + j] = d[j * n + i] = std::min(de, threshold) / threshold;
    }
  }
  return GroundDistanceMatrix(n, std::move(d));
}

GroundDistanceMatrix NormalizedGroundDistance(const ColorVocabulary& vocab) {
  vocab.Validate();
  double max_de = 0.0;
  for (size_t i = 0; i < vocab.size(); ++i) {
    for (size_t j = i + 1; j < vocab.size(); ++j) {
      max_de = std::max(
          max_de, DeltaE2000(vocab.prototypes[i], vocab.prototypes[j]));
    }
  }
  if (max_de == 0.0) {
    return GroundDistanceMatrix(vocab.size(),
                                std::vector<double>(vocab.size() * vocab.size()));
  }
  return GroundDistance(vocab, max_de);
}

NamingModel MakeNamingModel(NamingTable table) {
  auto shared = std::make_shared<const NamingTable>(std::move(table));
  auto ground = std::make_shared<const GroundDistanceMatrix>(
      NormalizedGroundDistance(DerivePrototypes(*shared)));
  return {std::move(shared), std::move(ground)};
}

const NamingModel& DefaultNamingModel() {
  static const NamingModel model =
      MakeNamingModel(FallbackTable(DefaultVocabulary()));
  return model;
}

}  // namespace pcdm
