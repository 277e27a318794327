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

#include "pcdm/pcdm.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace pcdm {
namespace {

bool LabLess(const LabColor& x, const LabColor& y) {
  if (x.l != y.l) return x.l < y.l;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

int WorkerCount(int requested, int rows) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(n, 1, std::max(rows, 1));
}

}  // namespace

void PcdmConfig::Validate() const {
  if (!(sampling_rate > 0.0 && sampling_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling rate must be in (0, 1]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be in [0, 1]");
  }
  if (!(z > 0.0)) throw Error(ErrorCode::kInvalidArgument, "z must be > 0");
  if (!(de_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be > 0");
  }
  if (!(de_params.kl > 0.0 && de_params.kc > 0.0 && de_params.kh > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "kL, kC, kH must be > 0");
  }
  if (naming.table == nullptr || naming.ground == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "naming model not set");
  }
  if (static_cast<size_t>(naming.table->num_terms()) != naming.ground->size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "naming table and ground distance sizes differ");
  }
}

double FuseLogistic(double fused, double z) {
  return 1.0 / (1.0 + std::exp(-z * (fused - 0.5)));
}

double PixelDifference(const LabColor& s1, const LabColor& s2,
                       DescriptorView p1, DescriptorView p2,
                       const PcdmConfig& config,
                       TransportationSolver& solver) {
  const bool swap_lab = LabLess(s2, s1);
  const double de = DeltaE2000(swap_lab ? s2 : s1, swap_lab ? s1 : s2,
                               config.de_params);
  const double normalized_de =
      std::min(de, config.de_threshold) / config.de_threshold;

  double emd = 0.0;
  if (!std::equal(p1.begin(), p1.end(), p2.begin(), p2.end())) {
    const bool swap_desc = std::lexicographical_compare(p2.begin(), p2.end(),
                                                        p1.begin(), p1.end());
    emd = swap_desc ? solver.Cost(p2, p1, *config.naming.ground)
                    : solver.Cost(p1, p2, *config.naming.ground);
  }
  const double fused =
      config.alpha * normalized_de + (1.0 - config.alpha) * emd;
  return FuseLogistic(fused, config.z);
}

double PixelDifference(const LabColor& s1, const LabColor& s2,
                       DescriptorView p1, DescriptorView p2,
                       const PcdmConfig& config) {
  TransportationSolver solver;
  return PixelDifference(s1, s2, p1, p2, config, solver);
}

DistortionMap PcdmMap(const RgbImage& reference, const RgbImage& distorted,
                      const PcdmConfig& config) {
  CheckSameShape(reference, distorted);
  config.Validate();
  const RgbImage ref = Downsample(reference, config.sampling_rate);
  const RgbImage dist = Downsample(distorted, config.sampling_rate);
  const NamingTable& table = *config.naming.table;

  DistortionMap map(ref.width(), ref.height());
  auto work = [&](int first_row, int stride) {
    TransportationSolver solver;
    for (int y = first_row; y < ref.height(); y += stride) {
      const auto ref_row = ref.row(y);
      const auto dist_row = dist.row(y);
      auto out = map.row(y);
      for (int x = 0; x < ref.width(); ++x) {
        out[x] = PixelDifference(RgbToLab(ref_row[x]), RgbToLab(dist_row[x]),
                                 table.Describe(ref_row[x]),
                                 table.Describe(dist_row[x]), config, solver);
      }
    }
  };
  const int workers = WorkerCount(config.threads, ref.height());
  if (workers == 1) {
    work(0, 1);
    return map;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return map;
}

PcdmScore PoolMap(const DistortionMap& map) {
  double sum = 0.0;
  for (double v : map.pixels()) sum += v;
  const double score = sum / static_cast<double>(map.size());
  return {score, 1.0 - score};
}

PcdmScore ComputePcdm(const RgbImage& reference, const RgbImage& distorted,
                      const PcdmConfig& config) {
  return PoolMap(PcdmMap(reference, distorted, config));
}

}  // namespace pcdm
