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

#include "pcdm/emd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pcdm {
namespace {

// Reduced costs above -kOptimalityTolerance count as nonnegative.
constexpr double kOptimalityTolerance = 1e-12;

// Pivots chosen by Dantzig's rule before switching to Bland's rule.
constexpr int kDantzigPivotLimit = 500;
constexpr int kPivotLimit = 100000;

}  // namespace

double FlowMatrix::RowSum(size_t i) const {
  double s = 0.0;
  for (size_t j = 0; j < n_; ++j) s += at(i, j);
  return s;
}

double FlowMatrix::ColumnSum(size_t j) const {
  double s = 0.0;
  for (size_t i = 0; i < n_; ++i) s += at(i, j);
  return s;
}

void TransportationSolver::Run(DescriptorView source, DescriptorView target,
                               const GroundDistanceMatrix& ground) {
  const size_t n = ground.size();
  if (source.size() != n || target.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "distribution size does not match ground distance");
  }
  double source_mass = 0.0;
  double target_mass = 0.0;
  rows_.clear();
  cols_.clear();
  supply_.clear();
  demand_.clear();
  for (size_t i = 0; i < n; ++i) {
    if (!(source[i] >= 0.0) || !(target[i] >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "negative or NaN mass");
    }
    source_mass += source[i];
    target_mass += target[i];
    // Zero-mass entries are left out of the compressed problem.
    if (source[i] > 0.0) {
      rows_.push_back(i);
      supply_.push_back(source[i]);
    }
    if (target[i] > 0.0) {
      cols_.push_back(i);
      demand_.push_back(target[i]);
    }
  }
  if (std::abs(source_mass - target_mass) > kMassTolerance) {
    throw Error(ErrorCode::kInfeasibleMarginals,
                std::to_string(source_mass) + " vs " +
                    std::to_string(target_mass));
  }
  pivots_ = 0;
  const size_t m = rows_.size();
  const size_t k = cols_.size();
  flow_.assign(m * k, 0.0);
  basic_.assign(m * k, 0);
  if (m == 0 || k == 0) return;
  cost_.resize(m * k);
  for (size_t r = 0; r < m; ++r) {
    for (size_t c = 0; c < k; ++c) {
      cost_[r * k + c] = ground.at(rows_[r], cols_[c]);
    }
  }
  NorthWestCorner();
  if (m == 1 || k == 1) return;  // the only feasible plan

  while (true) {
    ComputePotentials();
    size_t row = 0;
    size_t col = 0;
    if (!FindEntering(pivots_ >= kDantzigPivotLimit, &row, &col)) break;
    Pivot(row, col);
    if (++pivots_ > kPivotLimit) {
      throw Error(ErrorCode::kNonConvergence, "transportation simplex");
    }
  }
}

void TransportationSolver::NorthWestCorner() {
  const size_t m = rows_.size();
  const size_t k = cols_.size();
  std::vector<double>& left = u_;  // reused as scratch
  std::vector<double>& need = v_;
  left = supply_;
  need = demand_;
  size_t r = 0;
  size_t c = 0;
  while (true) {
    const double x = std::min(left[r], need[c]);
    flow_[r * k + c] = x;
    basic_[r * k + c] = 1;
    left[r] -= x;
    need[c] -= x;
    if (r + 1 == m && c + 1 == k) break;
    if (r + 1 == m) {
      ++c;
    } else if (c + 1 == k) {
      ++r;
    } else if (left[r] <= need[c]) {
      ++r;
    } else {
      ++c;
    }
  }
  // Any residual mass (bounded by kMassTolerance) lands in the last cell.
  flow_[m * k - 1] += std::max(left[m - 1], need[k - 1]);
}

void TransportationSolver::ComputePotentials() {
  const size_t m = rows_.size();
  const size_t k = cols_.size();
  u_.assign(m, 0.0);
  v_.assign(k, 0.0);
  known_u_.assign(m, 0);
  known_v_.assign(k, 0);
  known_u_[0] = 1;
  size_t assigned = 1;
  while (assigned < m + k) {
    const size_t before = assigned;
    for (size_t r = 0; r < m; ++r) {
      for (size_t c = 0; c < k; ++c) {
        if (!basic_[r * k + c] || known_u_[r] == known_v_[c]) continue;
        if (known_u_[r]) {
          v_[c] = cost_[r * k + c] - u_[r];
          known_v_[c] = 1;
        } else {
          u_[r] = cost_[r * k + c] - v_[c];
          known_u_[r] = 1;
        }
        ++assigned;
      }
    }
    if (assigned == before) {
      throw Error(ErrorCode::kNonConvergence, "disconnected simplex basis");
    }
  }
}

bool TransportationSolver::FindEntering(bool bland, size_t* row,
                                        size_t* col) const {
  const size_t m = rows_.size();
  const size_t k = cols_.size();
  double best = -kOptimalityTolerance;
  bool found = false;
  for (size_t r = 0; r < m; ++r) {
    for (size_t c = 0; c < k; ++c) {
      if (basic_[r * k + c]) continue;
      const double reduced = cost_[r * k + c] - u_[r] - v_[c];
      if (reduced < best) {
        *row = r;
        *col = c;
        found = true;
        if (bland) return true;
        best = reduced;
      }
    }
  }
  return found;
}

double TransportationSolver::Pivot(size_t row, size_t col) {
  const int m = static_cast<int>(rows_.size());
  const int k = static_cast<int>(cols_.size());
  // Breadth-first search through the basis tree from the entering row to the
  // entering column. Nodes 0..m-1 are rows, m..m+k-1 are columns.
  parent_.assign(m + k, -1);
  queue_.clear();
  const int start = static_cast<int>(row);
  const int goal = m + static_cast<int>(col);
  parent_[start] = start;
  queue_.push_back(start);
  for (size_t head = 0; head < queue_.size() && parent_[goal] < 0; ++head) {
    const int node = queue_[head];
    if (node < m) {
      for (int c = 0; c < k; ++c) {
        if (basic_[node * k + c] && parent_[m + c] < 0) {
          parent_[m + c] = node;
          queue_.push_back(m + c);
        }
      }
    } else {
      const int c = node - m;
      for (int r = 0; r < m; ++r) {
        if (basic_[r * k + c] && parent_[r] < 0) {
          parent_[r] = node;
          queue_.push_back(r);
        }
      }
    }
  }
  if (parent_[goal] < 0) {
    throw Error(ErrorCode::kNonConvergence, "no cycle through entering cell");
  }

  // Walk back from the goal. Edges alternate sign starting with a donor
  // (negative) edge next to the entering cell.
  auto cell_of = [&](int a, int b) {
    const int r = a < m ? a : b;
    const int c = (a < m ? b : a) - m;
    return static_cast<size_t>(r) * k + c;
  };
  double theta = std::numeric_limits<double>::infinity();
  size_t leaving = 0;
  bool negative = true;
  for (int node = goal; node != start; node = parent_[node]) {
    const size_t cell = cell_of(node, parent_[node]);
    if (negative && flow_[cell] < theta) {
      theta = flow_[cell];
      leaving = cell;
    }
    negative = !negative;
  }
  negative = true;
  for (int node = goal; node != start; node = parent_[node]) {
    const size_t cell = cell_of(node, parent_[node]);
    flow_[cell] += negative ? -theta : theta;
    negative = !negative;
  }
  const size_t entering = row * k + col;
  flow_[entering] = theta;
  basic_[entering] = 1;
  flow_[leaving] = 0.0;
  basic_[leaving] = 0;
  return theta;
}

EmdResult TransportationSolver::Solve(DescriptorView source,
                                      DescriptorView target,
                                      const GroundDistanceMatrix& ground) {
  Run(source, target, ground);
  EmdResult result;
  result.flow = FlowMatrix(ground.size());
  const size_t k = cols_.size();
  for (size_t r = 0; r < rows_.size(); ++r) {
    for (size_t c = 0; c < k; ++c) {
      const double x = std::max(flow_[r * k + c], 0.0);
      result.flow.at(rows_[r], cols_[c]) = x;
      result.cost += x * cost_[r * k + c];
    }
  }
  return result;
}

double TransportationSolver::Cost(DescriptorView source, DescriptorView target,
                                  const GroundDistanceMatrix& ground) {
  Run(source, target, ground);
  const size_t k = cols_.size();
  double cost = 0.0;
  for (size_t r = 0; r < rows_.size(); ++r) {
    for (size_t c = 0; c < k; ++c) {
      if (basic_[r * k + c]) {
        cost += std::max(flow_[r * k + c], 0.0) * cost_[r * k + c];
      }
    }
  }
  return cost;
}

EmdResult Emd(DescriptorView source, DescriptorView target,
              const GroundDistanceMatrix& ground) {
  TransportationSolver solver;
  return solver.Solve(source, target, ground);
}

}  // namespace pcdm
