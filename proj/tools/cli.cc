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

#include "cli.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "pcdm/baselines.h"
#include "pcdm/dataset.h"
#include "pcdm/decompose.h"
#include "pcdm/evaluate.h"
#include "pcdm/imageio.h"
#include "pcdm/naming.h"
#include "pcdm/pcdm.h"

namespace pcdm::cli {
namespace {

namespace fs = std::filesystem;

// Raised for problems the user must fix on the command line (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Format6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Pipeline flags shared by score, map and eval.
struct PipelineFlags {
  std::optional<double> rate;
  std::optional<double> alpha;
  std::optional<double> z;
  std::optional<double> threshold;
  std::optional<std::string> table;
  std::optional<std::string> config;

  void Register(CLI::App* app) {
    app->add_option("--rate", rate, "Sampling rate in (0, 1]");
    app->add_option("--alpha", alpha, "Weight of the CIEDE2000 term");
    app->add_option("--z", z, "Logistic steepness");
    app->add_option("--threshold", threshold,
                    "CIEDE2000 normalization threshold");
    app->add_option("--table", table, "Color naming table file")
        ->check(CLI::ExistingFile);
    app->add_option("--config", config,
                    "key = value file with PcdmConfig field names")
        ->check(CLI::ExistingFile);
  }
};

// Parses "key = value" lines; '#' starts a comment, [section] lines and
// blank lines are ignored, values may be double-quoted.
std::map<std::string, std::string> ReadConfigFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) +
                       ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    values[key] = value;
  }
  return values;
}

double ParseConfigNumber(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': not a number '" + value + "'");
  }
}

PcdmConfig BuildConfig(const PipelineFlags& flags) {
  PcdmConfig config;
  std::optional<std::string> table_path;
  if (flags.config) {
    const fs::path config_path(*flags.config);
    for (const auto& [key, value] : ReadConfigFile(config_path)) {
      if (key == "sampling_rate") {
        config.sampling_rate = ParseConfigNumber(key, value);
      } else if (key == "alpha") {
        config.alpha = ParseConfigNumber(key, value);
      } else if (key == "z") {
        config.z = ParseConfigNumber(key, value);
      } else if (key == "de_threshold") {
        config.de_threshold = ParseConfigNumber(key, value);
      } else if (key == "table") {
        const fs::path p(value);
        table_path =
            (p.is_absolute() ? p : config_path.parent_path() / p).string();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  }
  if (flags.rate) config.sampling_rate = *flags.rate;
  if (flags.alpha) config.alpha = *flags.alpha;
  if (flags.z) config.z = *flags.z;
  if (flags.threshold) config.de_threshold = *flags.threshold;
  if (flags.table) table_path = *flags.table;
  try {
    config.Validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (table_path) config.naming = MakeNamingModel(LoadNamingTable(*table_path));
  config.threads = 1;
  return config;
}

int CmdScore(const std::string& ref, const std::string& dist,
             const std::string& metric_name, const PipelineFlags& flags,
             std::ostream& out) {
  const MetricId metric = ParseMetricId(metric_name);
  const PcdmConfig config = BuildConfig(flags);
  const RgbImage a = LoadImage(ref);
  const RgbImage b = LoadImage(dist);
  std::string line = "metric=" + std::string(MetricIdName(metric));
  if (metric == MetricId::kPcdm) {
    const PcdmScore s = ComputePcdm(a, b, config);
    line += " score=" + Format6(s.score) + " residual=" + Format6(s.residual);
  } else {
    line += " score=" + Format6(ScorePair(a, b, metric, config));
  }
  out << line << '\n';
  return kExitOk;
}

int CmdMap(const std::string& ref, const std::string& dist,
           const std::string& metric_name, const std::string& out_path,
           bool residual, const PipelineFlags& flags, std::ostream& out) {
  const MetricId metric = ParseMetricId(metric_name);
  if (metric != MetricId::kPcdm && metric != MetricId::kSsim) {
    throw UsageError("map supports --metric pcdm or ssim");
  }
  if (residual && metric != MetricId::kPcdm) {
    throw UsageError("--residual applies to pcdm maps only");
  }
  const PcdmConfig config = BuildConfig(flags);
  const RgbImage a = LoadImage(ref);
  const RgbImage b = LoadImage(dist);
  RealGrid map;
  if (metric == MetricId::kPcdm) {
    map = PcdmMap(a, b, config);
    if (residual) {
      for (double& v : map.pixels()) v = 1.0 - v;
    }
  } else {
    map = Ssim(a, b).map;
    // Negative structural similarity is shown as black.
    for (double& v : map.pixels()) v = std::clamp(v, 0.0, 1.0);
  }
  SaveGrayscaleMap(map, out_path);
  out << "map=" << out_path << " width=" << map.width()
      << " height=" << map.height() << '\n';
  return kExitOk;
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

int CmdEval(const std::string& manifest_path, const std::string& metric_name,
            const std::string& out_dir, int jobs, const std::string& form,
            const PipelineFlags& flags, std::ostream& out, std::ostream& err) {
  const MetricId metric = ParseMetricId(metric_name);
  EvalOptions options;
  options.pcdm = BuildConfig(flags);
  options.jobs = jobs;
  try {
    options.form = ParseLogisticForm(form);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const DatasetManifest manifest = LoadManifest(manifest_path);
  const MetricReport report = Evaluate(manifest, metric, options);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir);
  const std::string stem(MetricIdName(metric));
  const fs::path dir(out_dir);
  WriteTextFile(dir / ("report_" + stem + ".txt"), FormatReportTable(report));
  WriteTextFile(dir / ("report_" + stem + ".csv"), ReportCsv(report));
  WriteTextFile(dir / ("scatter_" + stem + ".csv"), ScatterCsv(report));

  if (report.excluded_pairs > 0) {
    err << "warning: " << report.excluded_pairs
        << " pair(s) with non-finite score excluded\n";
  }
  for (const auto& c : report.skipped_classes) {
    err << "warning: class " << c << " has fewer than 5 pairs, not fitted\n";
  }
  const ReportCell* all = report.Find("All");
  out << "metric=" << stem << " cc=" << Format6(all->pearson_cc)
      << " rmse=" << Format6(all->rmse) << " n=" << all->n << '\n';
  return kExitOk;
}

int CmdDecompose(const std::string& ref, const std::string& dist,
                 const std::string& out_intensity,
                 const std::string& out_chroma, std::ostream& out) {
  const RgbImage a = LoadImage(ref);
  const RgbImage b = LoadImage(dist);
  const DecomposedDistortion parts = DecomposeDistortion(a, b);
  SaveImage(parts.intensity_only, out_intensity);
  SaveImage(parts.chroma_only, out_chroma);
  out << "intensity=" << out_intensity << " chroma=" << out_chroma << '\n';
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Full-reference image quality metrics: PCDM, PSNR, SSIM, "
               "CIEDE2000", "pcdm"};
  app.require_subcommand(1);

  std::string ref, dist, metric = "pcdm", out_path, manifest, out_dir;
  std::string out_intensity, out_chroma, form = "standard";
  bool residual = false;
  int jobs = 0;
  PipelineFlags score_flags, map_flags, eval_flags;

  CLI::App* score = app.add_subcommand("score", "Score one image pair");
  score->add_option("--ref", ref, "Reference image")->required();
  score->add_option("--dist", dist, "Distorted image")->required();
  score->add_option("--metric", metric, "pcdm, psnr, ssim or de2000");
  score_flags.Register(score);

  CLI::App* map = app.add_subcommand("map", "Export a distortion map as PNG");
  map->add_option("--ref", ref, "Reference image")->required();
  map->add_option("--dist", dist, "Distorted image")->required();
  map->add_option("--metric", metric, "pcdm or ssim");
  map->add_option("--out", out_path, "Output PNG")->required();
  map->add_flag("--residual", residual, "Export 1 - v (pcdm only)");
  map_flags.Register(map);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a metric on a dataset");
  eval->add_option("--manifest", manifest, "CSV ref,dist,dmos,class")
      ->required();
  eval->add_option("--metric", metric, "pcdm, psnr, ssim or de2000")
      ->required();
  eval->add_option("--out-dir", out_dir, "Directory for reports")->required();
  eval->add_option("--jobs", jobs, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  eval->add_option("--form", form, "Logistic form: standard or printed");
  eval_flags.Register(eval);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "Split a distortion into intensity and chroma parts");
  decompose->add_option("--ref", ref, "Reference image")->required();
  decompose->add_option("--dist", dist, "Distorted image")->required();
  decompose->add_option("--out-intensity", out_intensity, "Output image")
      ->required();
  decompose->add_option("--out-chroma", out_chroma, "Output image")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (score->parsed()) return CmdScore(ref, dist, metric, score_flags, out);
    if (map->parsed()) {
      return CmdMap(ref, dist, metric, out_path, residual, map_flags, out);
    }
    if (eval->parsed()) {
      return CmdEval(manifest, metric, out_dir, jobs, form, eval_flags, out,
                     err);
    }
    if (decompose->parsed()) {
      return CmdDecompose(ref, dist, out_intensity, out_chroma, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pcdm::cli
