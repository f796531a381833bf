// Copyright 2026 The vqaprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// vqaprobe: generate / evaluate / validate / stats.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "vqaprobe/common.h"
#include "vqaprobe/pipeline.h"

namespace fs = std::filesystem;
using namespace vqaprobe;

namespace {

#ifndef VQAPROBE_DATA_DIR
#define VQAPROBE_DATA_DIR "data"
#endif

// Expands directories into their {test}.jsonl files.
std::vector<fs::path> ExpandDatasets(const std::vector<std::string>& args) {
  std::vector<fs::path> files;
  for (const auto& arg : args) {
    if (fs::is_directory(arg)) {
      auto found = DatasetFiles(arg);
      if (found.empty()) throw Error("no dataset files in " + arg);
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(arg);
    }
  }
  return files;
}

int Generate(const std::string& config_path, std::optional<uint64_t> seed,
             std::optional<int> jobs, const std::string& out_dir, std::optional<size_t> limit) {
  RunConfig config = LoadConfig(config_path);
  if (seed) config.generation.seed = *seed;
  if (jobs) config.generation.jobs = *jobs;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (limit) config.inputs.limit = *limit;
  if (config.generation.jobs < 1) throw Error("--jobs must be >= 1");
  RunGenerate(config);
  return 0;
}

int Evaluate(const std::vector<std::string>& datasets, const std::vector<std::string>& predictions,
             const std::string& policy, const std::string& format, const std::string& out,
             double max_unresolved) {
  EvaluateResult result = RunEvaluate(ExpandDatasets(datasets),
                                      std::vector<fs::path>(predictions.begin(), predictions.end()),
                                      ParseMissingPolicy(policy), max_unresolved);
  const std::string text = format == "json" ? result.ToJson().dump(2) + "\n" : result.ToText();
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteFile(out, text);
    spdlog::info("wrote {}", out);
  }
  return 0;
}

int Validate(const std::string& data_dir, const std::vector<std::string>& datasets) {
  const fs::path data(data_dir);
  ValidationReport report =
      RunValidate(data / "ontology", data / "templates" / "templates.tsv",
                  data / "templates" / "negated.tsv", ExpandDatasets(datasets));
  for (const auto& [qtype, count] : report.template_counts) {
    std::cout << qtype << "\t" << count << "\n";
  }
  for (const auto& note : report.notes) std::cout << note << "\n";
  for (const auto& problem : report.problems) std::cout << "problem: " << problem << "\n";
  if (!report.problems.empty()) {
    spdlog::error("{} problems", report.problems.size());
    return 1;
  }
  std::cout << "ok\n";
  return 0;
}

int Stats(const std::string& dir) {
  const auto manifest = nlohmann::json::parse(ReadFile(fs::path(dir) / "manifest.json"));
  std::printf("%-12s %8s %8s %8s %8s %8s %8s\n", "test", "target", "binary", "multi", "yes", "no",
              "pairs");
  for (const auto& [name, stats] : manifest.at("tests").items()) {
    const auto& target = stats.at("target");
    std::printf("%-12s %8lld %8lld %8lld %8lld %8lld %8lld\n", name.c_str(),
                static_cast<long long>(target.at("binary").get<int64_t>() +
                                       target.at("multi_choice").get<int64_t>()),
                static_cast<long long>(stats.at("originals").at("binary").get<int64_t>()),
                static_cast<long long>(stats.at("originals").at("multi_choice").get<int64_t>()),
                static_cast<long long>(stats.at("balance").at("yes").get<int64_t>()),
                static_cast<long long>(stats.at("balance").at("no").get<int64_t>()),
                static_cast<long long>(stats.at("pairs").get<int64_t>()));
  }
  const auto& accounting = manifest.at("pair_accounting");
  std::printf("pairs: %lld (one per original), %lld (one per perturbation)\n",
              static_cast<long long>(accounting.at("one_pair_per_original").get<int64_t>()),
              static_cast<long long>(accounting.at("one_pair_per_perturbation").get<int64_t>()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("vqaprobe"));
  spdlog::set_pattern("[%H:%M:%S] [%^%l%$] %v");

  CLI::App app{"Probe VQA models with paired test suites."};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  auto* generate = app.add_subcommand("generate", "Generate the six test datasets");
  std::string config_path, out_dir;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  std::optional<size_t> limit;
  generate->add_option("-c,--config", config_path, "TOML run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--seed", seed, "Override the seed");
  generate->add_option("-j,--jobs", jobs, "Worker threads");
  generate->add_option("-o,--out-dir", out_dir, "Override the output directory");
  generate->add_option("--limit", limit, "Use only the first N images");

  auto* evaluate = app.add_subcommand("evaluate", "Score model predictions");
  std::vector<std::string> datasets, predictions;
  std::string policy = "count-as-wrong", format = "text", out;
  double max_unresolved = 0.0;
  evaluate->add_option("-d,--datasets", datasets, "Dataset files or generate output dirs")
      ->required();
  evaluate->add_option("-p,--predictions", predictions, "Prediction JSONL, one per model")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--missing-policy", policy, "count-as-wrong or exclude")
      ->check(CLI::IsMember({"count-as-wrong", "exclude"}));
  evaluate->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  evaluate->add_option("-o,--out", out, "Write the report here instead of stdout");
  evaluate->add_option("--max-unresolved", max_unresolved,
                       "Tolerated share of prediction ids absent from the datasets")
      ->check(CLI::Range(0.0, 1.0));

  auto* validate = app.add_subcommand("validate", "Check ontology, templates and datasets");
  std::string data_dir = VQAPROBE_DATA_DIR;
  std::vector<std::string> validate_datasets;
  validate->add_option("--data-dir", data_dir, "Directory with ontology/ and templates/");
  validate->add_option("-d,--datasets", validate_datasets, "Dataset files or output dirs");

  auto* stats = app.add_subcommand("stats", "Summarize a generate output directory");
  std::string stats_dir;
  stats->add_option("dir", stats_dir, "Output directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (*generate) return Generate(config_path, seed, jobs, out_dir, limit);
    if (*evaluate) return Evaluate(datasets, predictions, policy, format, out, max_unresolved);
    if (*validate) return Validate(data_dir, validate_datasets);
    if (*stats) return Stats(stats_dir);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
