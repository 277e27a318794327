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

#ifndef PCDM_NAMING_H_
#define PCDM_NAMING_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcdm/colorspace.h"
#include "pcdm/image.h"

namespace pcdm {

// Tolerance used when checking that probability vectors sum to one.
inline constexpr double kSimplexTolerance = 1e-9;

// Rows of a naming table file may be off by this much before loading fails;
// within it they are renormalized.
inline constexpr double kTableRowTolerance = 1e-3;

inline constexpr int kDefaultBinsPerChannel = 32;

// Spread of the Gaussian fallback table, in CIEDE2000 units.
inline constexpr double kDefaultFallbackSigma = 10.0;

// Read-only view of a descriptor stored elsewhere (e.g. inside a table).
using DescriptorView = std::span<const double>;

// A probability distribution over the terms of a color vocabulary.
class ColorDescriptor {
 public:
  // Throws kSimplexViolation unless every entry is >= 0 and the sum is one
  // within kSimplexTolerance.
  explicit ColorDescriptor(std::vector<double> probs);

  static ColorDescriptor OneHot(size_t size, size_t index);
  static ColorDescriptor Uniform(size_t size);

  size_t size() const { return probs_.size(); }
  double operator[](size_t i) const { return probs_[i]; }
  DescriptorView view() const { return probs_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// True when `probs` is nonnegative and sums to one within `tolerance`.
bool OnSimplex(DescriptorView probs, double tolerance = kSimplexTolerance);

// Ordered color terms with one Lab prototype per term.
struct ColorVocabulary {
  std::vector<std::string> terms;
  std::vector<LabColor> prototypes;

  size_t size() const { return terms.size(); }

  // Throws kInvalidArgument unless there are at least two unique terms and
  // one prototype per term.
  void Validate() const;
};

// The eleven basic color terms in their canonical order.
const std::vector<std::string>& BasicColorTerms();

// Basic terms with prototypes at hand-picked focal sRGB colors.
ColorVocabulary DefaultVocabulary();

// Lookup table from quantized RGB to color descriptors. Each channel is split
// into `bins_per_channel` equal bins; a code value v falls into bin
// floor(v * bins / 256). The flattened bin index is (r * bins + g) * bins + b.
class NamingTable {
 public:
  // `probs` holds bins^3 rows of `num_terms` entries each. Every row must lie
  // on the simplex.
  NamingTable(int bins_per_channel, int num_terms, std::vector<double> probs);

  int bins_per_channel() const { return bins_; }
  int num_terms() const { return terms_; }
  size_t bin_count() const {
    return static_cast<size_t>(bins_) * bins_ * bins_;
  }

  int ChannelBin(uint8_t v) const { return v * bins_ / 256; }
  size_t BinIndex(const Rgb& p) const {
    return (static_cast<size_t>(ChannelBin(p.r)) * bins_ + ChannelBin(p.g)) *
               bins_ +
           ChannelBin(p.b);
  }

  DescriptorView Descriptor(size_t bin) const {
    return {probs_.data() + bin * terms_, static_cast<size_t>(terms_)};
  }
  DescriptorView Describe(const Rgb& p) const {
    return Descriptor(BinIndex(p));
  }

  // Center of a bin in 8-bit code values, e.g. 3.5 for bin 0 of 32.
  double ChannelBinCenter(int bin) const;
  LabColor BinCenterLab(size_t bin) const;

 private:
  int bins_;
  int terms_;
  std::vector<double> probs_;
};

// Returns the descriptor of the bin containing `rgb`.
ColorDescriptor DescribePixel(const NamingTable& table, const Rgb& rgb);

// Parses the whitespace-separated text format, one row per bin:
//   r_idx g_idx b_idx p_1 ... p_N
// Lines starting with '#' and blank lines are ignored. The number of terms
// is taken from the first row and the bin count from the row count, which
// must be a perfect cube. Rows within kTableRowTolerance of unit mass are
// renormalized.
//
// Throws kFileNotFound, kParseError (malformed numbers, inconsistent column
// counts, bad or duplicate indices), kWrongRowCount or kSimplexViolation.
NamingTable LoadNamingTable(const std::filesystem::path& path);

void SaveNamingTable(const NamingTable& table,
                     const std::filesystem::path& path);

// Deterministic stand-in for a learned table: the descriptor of each bin
// center c is proportional to exp(-dE00(c, prototype_i)^2 / (2 sigma^2)).
NamingTable FallbackTable(const ColorVocabulary& vocab,
                          double sigma = kDefaultFallbackSigma,
                          int bins = kDefaultBinsPerChannel);

// Prototype of each term is the mean Lab bin center weighted by that term's
// probability in each bin. `terms` defaults to the basic color terms when the
// table has eleven columns and to "term0", "term1", ... otherwise.
//
// Throws kDegenerateTerm when a term has zero total weight.
ColorVocabulary DerivePrototypes(const NamingTable& table,
                                 std::vector<std::string> terms = {});

// Symmetric matrix of perceived distances between color terms, in [0, 1].
class GroundDistanceMatrix {
 public:
  // Validates zero diagonal, symmetry and range; throws kInvalidArgument.
  GroundDistanceMatrix(size_t size, std::vector<double> values);

  size_t size() const { return n_; }
  double at(size_t i, size_t j) const { return d_[i * n_ + j]; }
  std::span<const double> values() const { return d_; }
  double MaxEntry() const;

  // N rows of N comma-separated values.
  std::string ToCsv() const;

 private:
  size_t n_;
  std::vector<double> d_;
};

// d[i][j] = min(dE00(prototype_i, prototype_j), threshold) / threshold.
GroundDistanceMatrix GroundDistance(const ColorVocabulary& vocab,
                                    double threshold);

// GroundDistance with the threshold set to the largest pairwise prototype
// difference; the farthest pair has distance exactly one. All-equal
// prototypes give the zero matrix.
GroundDistanceMatrix NormalizedGroundDistance(const ColorVocabulary& vocab);

// A naming table paired with the ground distances between its terms.
struct NamingModel {
  std::shared_ptr<const NamingTable> table;
  std::shared_ptr<const GroundDistanceMatrix> ground;
};

// Table plus NormalizedGroundDistance(DerivePrototypes(table)).
NamingModel MakeNamingModel(NamingTable table);

// The Gaussian fallback built from DefaultVocabulary(), computed once per
// process.
const NamingModel& DefaultNamingModel();

}  // namespace pcdm

#endif  // PCDM_NAMING_H_
