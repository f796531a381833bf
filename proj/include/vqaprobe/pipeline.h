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

// End-to-end generation and evaluation drivers used by the CLI.

#ifndef VQAPROBE_PIPELINE_H_
#define VQAPROBE_PIPELINE_H_

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqaprobe/config.h"
#include "vqaprobe/dataset.h"
#include "vqaprobe/generator.h"
#include "vqaprobe/metrics.h"
#include "vqaprobe/sampling.h"

namespace vqaprobe {

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn);

struct TestStats {
  TestTargets target;
  int64_t binary = 0;
  int64_t multi_choice = 0;
  int64_t yes = 0;
  int64_t no = 0;
  std::map<std::string, int64_t> by_qtype;
  std::map<std::string, int64_t> choice_counts;  // "2" / "3"
  std::map<std::string, int64_t> drops;
  int64_t pairs = 0;

  int64_t originals() const { return binary + multi_choice; }
  nlohmann::json ToJson() const;
};

struct TestOutput {
  std::vector<InstancePair> pairs;
  TestStats stats;
};

// Inputs shared by all tests within a run.
struct GenerationInputs {
  const std::vector<SceneGraph>* corpus = nullptr;
  const std::vector<ImageView>* views = nullptr;
  GeneratorContext context;
  // Visual test only.
  std::optional<std::filesystem::path> images_dir;
  std::filesystem::path out_dir;
  std::array<double, 3> mean_pixel = {128.0, 128.0, 128.0};
};

// Originals, perturbations and selection for one test. Visual perturbed
// images are written under out_dir/images.
TestOutput GenerateTest(TestKind test, const GenerationInputs& inputs);

struct GenerateResult {
  nlohmann::json manifest;
  std::map<TestKind, TestOutput> tests;
};

// Loads every input, fits statistics and writes {test}.jsonl, images/,
// cooccurrence.json and manifest.json into config.out_dir.
GenerateResult RunGenerate(const RunConfig& config);

// Checks bundled data files and any dataset files; returns the problems.
struct ValidationReport {
  std::map<std::string, size_t> template_counts;
  std::vector<std::string> problems;
  std::vector<std::string> notes;
};
ValidationReport RunValidate(const std::filesystem::path& ontology_dir,
                             const std::filesystem::path& templates,
                             const std::filesystem::path& negated_templates,
                             const std::vector<std::filesystem::path>& datasets);

struct EvaluateResult {
  std::vector<EvalReport> reports;
  std::map<std::string, CoverageMatrix> coverage;  // per test, when >= 2 models
  std::vector<std::string> unresolved;             // prediction ids not in any dataset
  nlohmann::json ToJson() const;
  std::string ToText() const;
};

// datasets: {test}.jsonl files; throws Error if the share of prediction
// pair ids absent from every dataset exceeds max_unresolved.
EvaluateResult RunEvaluate(const std::vector<std::filesystem::path>& datasets,
                           const std::vector<std::filesystem::path>& predictions,
                           MissingPolicy policy, double max_unresolved = 0.0);

// Dataset files in a generate output directory, in test order.
std::vector<std::filesystem::path> DatasetFiles(const std::filesystem::path& dir);

}  // namespace vqaprobe

#endif  // VQAPROBE_PIPELINE_H_
