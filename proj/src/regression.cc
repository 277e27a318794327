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

#include "pcdm/regression.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "pcdm/error.h"
#include "pcdm/stats.h"

namespace pcdm {
namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

constexpr double kMaxExponent = 700.0;
constexpr double kMaxDamping = 1e16;
constexpr int kPerturbedStarts = 5;

double Exponent(const RegressionParams& p, double x) {
  return std::clamp(p.beta[1] * (x - p.beta[2]), -kMaxExponent, kMaxExponent);
}

// Model value and its gradient with respect to beta.
double Evaluate(const RegressionParams& p, double x, LogisticForm form,
                Vec5* gradient) {
  const double e = std::exp(Exponent(p, x));
  double core, dcore_dt;  // logistic core and its derivative in t
  if (form == LogisticForm::kStandard) {
    const double s = 1.0 / (1.0 + e);
    core = 0.5 - s;
    dcore_dt = s * (1.0 - s);
  } else {
    const double q = 1.0 / (2.0 + e);
    core = 1.0 - q;
    dcore_dt = (e * q) * q;
  }
  if (gradient != nullptr) {
    (*gradient)(0) = core;
    (*gradient)(1) = p.beta[0] * dcore_dt * (x - p.beta[2]);
    (*gradient)(2) = -p.beta[0] * dcore_dt * p.beta[1];
    (*gradient)(3) = x;
    (*gradient)(4) = 1.0;
  }
  return p.beta[0] * core + p.beta[3] * x + p.beta[4];
}

double SumSquares(const RegressionParams& p, std::span<const double> raw,
                  std::span<const double> dmos, LogisticForm form) {
  double sse = 0.0;
  for (size_t i = 0; i < raw.size(); ++i) {
    const double r = Evaluate(p, raw[i], form, nullptr) - dmos[i];
    sse += r * r;
  }
  return sse;
}

struct StartResult {
  RegressionParams params;
  double sse = std::numeric_limits<double>::infinity();
  bool converged = false;
};

StartResult Refine(RegressionParams params, std::span<const double> raw,
                   std::span<const double> dmos,
                   const RegressionOptions& options) {
  double sse = SumSquares(params, raw, dmos, options.form);
  double damping = 1e-3;
  StartResult result;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (sse == 0.0 || !std::isfinite(sse)) {
      result.converged = std::isfinite(sse);
      break;
    }
    Mat5 normal = Mat5::Zero();
    Vec5 rhs = Vec5::Zero();
    Vec5 grad;
    for (size_t i = 0; i < raw.size(); ++i) {
      const double r =
          Evaluate(params, raw[i], options.form, &grad) - dmos[i];
      normal.noalias() += grad * grad.transpose();
      rhs.noalias() -= grad * r;
    }
    const double diag_floor = 1e-12 * std::max(normal.diagonal().maxCoeff(), 1.0);

    bool accepted = false;
    while (damping <= kMaxDamping) {
      Mat5 damped = normal;
      for (int k = 0; k < 5; ++k) {
        damped(k, k) += damping * std::max(normal(k, k), diag_floor);
      }
      const Vec5 step = damped.ldlt().solve(rhs);
      RegressionParams trial = params;
      for (int k = 0; k < 5; ++k) trial.beta[k] += step(k);
      const double trial_sse = SumSquares(trial, raw, dmos, options.form);
      if (std::isfinite(trial_sse) && trial_sse < sse) {
        const double decrease = (sse - trial_sse) / sse;
        params = trial;
        sse = trial_sse;
        damping = std::max(damping * 0.1, 1e-12);
        accepted = true;
        if (decrease < options.relative_tolerance) result.converged = true;
        break;
      }
      damping *= 10.0;
    }
    // No descent direction left at any damping: a stationary point.
    if (!accepted) result.converged = true;
    if (result.converged) break;
  }
  result.params = params;
  result.sse = sse;
  return result;
}

double StdDev(std::span<const double> v) {
  const double mean =
      std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

LogisticForm ParseLogisticForm(std::string_view name) {
  if (name == "standard") return LogisticForm::kStandard;
  if (name == "printed") return LogisticForm::kPrinted;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown logistic form '" + std::string(name) + "'");
}

std::string_view LogisticFormName(LogisticForm form) {
  return form == LogisticForm::kStandard ? "standard" : "printed";
}

double PredictDmos(const RegressionParams& params, double raw,
                   LogisticForm form) {
  return Evaluate(params, raw, form, nullptr);
}

std::vector<double> PredictDmos(const RegressionParams& params,
                                std::span<const double> raw,
                                LogisticForm form) {
  std::vector<double> out;
  out.reserve(raw.size());
  for (double x : raw) out.push_back(Evaluate(params, x, form, nullptr));
  return out;
}

RegressionFit FitRegression(std::span<const double> raw,
                            std::span<const double> dmos,
                            const RegressionOptions& options) {
  if (raw.size() != dmos.size()) {
    throw Error(ErrorCode::kDegenerateInput, "length mismatch");
  }
  if (raw.size() < 5) {
    throw Error(ErrorCode::kDegenerateInput, "need at least five points");
  }
  for (size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i]) || !std::isfinite(dmos[i])) {
      throw Error(ErrorCode::kDegenerateInput, "non-finite value");
    }
  }
  const auto [min_raw, max_raw] = std::minmax_element(raw.begin(), raw.end());
  if (*min_raw == *max_raw) {
    throw Error(ErrorCode::kDegenerateInput, "constant raw scores");
  }
  const auto [min_dmos, max_dmos] =
      std::minmax_element(dmos.begin(), dmos.end());
  const double mean_raw =
      std::accumulate(raw.begin(), raw.end(), 0.0) / raw.size();
  const double mean_dmos =
      std::accumulate(dmos.begin(), dmos.end(), 0.0) / dmos.size();
  const double std_raw = StdDev(raw);

  std::vector<RegressionParams> starts;
  RegressionParams base;
  base.beta = {*max_dmos - *min_dmos, 1.0 / std_raw, mean_raw, 0.0, mean_dmos};
  starts.push_back(base);
  for (int seed = 1; seed <= kPerturbedStarts; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> factor(0.5, 2.0);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    RegressionParams p = base;
    p.beta[0] *= factor(rng);
    // Odd seeds flip the sign of the slope.
    p.beta[1] *= factor(rng) * (seed % 2 == 1 ? -1.0 : 1.0);
    p.beta[2] += shift(rng) * std_raw;
    starts.push_back(p);
  }
  const AffineFit line = FitAffine(raw, dmos);
  RegressionParams affine;
  affine.beta = {0.0, 1.0 / std_raw, mean_raw, line.slope, line.intercept};
  starts.push_back(affine);

  RegressionFit fit;
  double best_sse = std::numeric_limits<double>::infinity();
  for (const RegressionParams& start : starts) {
    const StartResult r = Refine(start, raw, dmos, options);
    if (r.converged) ++fit.starts_converged;
    if (r.sse < best_sse) {
      best_sse = r.sse;
      fit.params = r.params;
    }
  }
  if (fit.starts_converged == 0) {
    throw Error(ErrorCode::kNonConvergence,
                "no start converged within " +
                    std::to_string(options.max_iterations) + " iterations");
  }
  fit.rmse = std::sqrt(best_sse / static_cast<double>(raw.size()));
  return fit;
}

}  // namespace pcdm
