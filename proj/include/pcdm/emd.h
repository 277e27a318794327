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

#ifndef PCDM_EMD_H_
#define PCDM_EMD_H_

#include <cstddef>
#include <vector>

#include "pcdm/naming.h"

namespace pcdm {

// Total masses of the two distributions may differ by at most this much.
inline constexpr double kMassTolerance = 1e-9;

// N x N transport plan; row sums equal the source distribution and column
// sums equal the target distribution.
class FlowMatrix {
 public:
  FlowMatrix() = default;
  explicit FlowMatrix(size_t size) : n_(size), f_(size * size, 0.0) {}

  size_t size() const { return n_; }
  double at(size_t i, size_t j) const { return f_[i * n_ + j]; }
  double& at(size_t i, size_t j) { return f_[i * n_ + j]; }

  double RowSum(size_t i) const;
  double ColumnSum(size_t j) const;

 private:
  size_t n_ = 0;
  std::vector<double> f_;
};

struct EmdResult {
  double cost = 0.0;
  FlowMatrix flow;
};

// Exact earth mover's distance between two distributions of equal mass,
// solved with the transportation simplex method (MODI potentials).
//
// The solver keeps its working buffers between calls; reuse one instance
// per thread when solving many small problems.
class TransportationSolver {
 public:
  // Throws kInvalidArgument when sizes disagree or a mass is negative, and
  // kInfeasibleMarginals when the total masses differ by more than
  // kMassTolerance.
  EmdResult Solve(DescriptorView source, DescriptorView target,
                  const GroundDistanceMatrix& ground);

  // Same as Solve() without materializing the flow.
  double Cost(DescriptorView source, DescriptorView target,
              const GroundDistanceMatrix& ground);

  // Simplex pivots performed by the last call.
  int last_pivot_count() const { return pivots_; }

 private:
  void Run(DescriptorView source, DescriptorView target,
           const GroundDistanceMatrix& ground);
  void NorthWestCorner();
  void ComputePotentials();
  bool FindEntering(bool bland, size_t* row, size_t* col) const;
  // Pivots on the given entering cell; returns the step length.
  double Pivot(size_t row, size_t col);

  // Compressed problem over the nonzero-mass sources and sinks.
  std::vector<size_t> rows_;
  std::vector<size_t> cols_;
  std::vector<double> supply_;
  std::vector<double> demand_;
  std::vector<double> cost_;   // rows_.size() x cols_.size()
  std::vector<double> flow_;   // same shape
  std::vector<char> basic_;    // same shape
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<char> known_u_;
  std::vector<char> known_v_;
  std::vector<int> parent_;
  std::vector<int> queue_;
  int pivots_ = 0;
};

// Convenience wrapper around a temporary TransportationSolver.
EmdResult Emd(DescriptorView source, DescriptorView target,
              const GroundDistanceMatrix& ground);

inline EmdResult Emd(const ColorDescriptor& source,
                     const ColorDescriptor& target,
                     const GroundDistanceMatrix& ground) {
  return Emd(source.view(), target.view(), ground);
}

}  // namespace pcdm

#endif  // PCDM_EMD_H_
