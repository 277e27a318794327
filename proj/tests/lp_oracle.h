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

#ifndef PCDM_TESTS_LP_ORACLE_H_
#define PCDM_TESTS_LP_ORACLE_H_

#include <vector>

namespace pcdm::testing {

// Dense two-phase tableau simplex with Bland's rule for
//   min c^T x  subject to  A x = b,  x >= 0,  b >= 0.
// Test-only reference; written without reference to the transportation
// solver it checks.
struct LpSolution {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

LpSolution SolveStandardFormLp(const std::vector<std::vector<double>>& a,
                               const std::vector<double>& b,
                               const std::vector<double>& c);

// Optimal transport cost between `p` and `q` (equal mass) under the cost
// matrix `d` (row-major n x n), posed as the LP above.
double TransportLpCost(const std::vector<double>& p,
                       const std::vector<double>& q,
                       const std::vector<double>& d);

}  // namespace pcdm::testing

#endif  // PCDM_TESTS_LP_ORACLE_H_
