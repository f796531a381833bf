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

// Instances, instance pairs and their JSONL form.

#ifndef VQAPROBE_DATASET_H_
#define VQAPROBE_DATASET_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqaprobe/scene_graph.h"
#include "vqaprobe/templates.h"

namespace vqaprobe {

enum class TestKind { kRephrase, kOrder, kOntological, kVisual, kNegation, kAntonym };

inline constexpr std::array<TestKind, 6> kAllTests = {
    TestKind::kRephrase, TestKind::kOrder,    TestKind::kOntological,
    TestKind::kVisual,   TestKind::kNegation, TestKind::kAntonym};

std::string TestName(TestKind test);
TestKind ParseTest(std::string_view name);

enum class Relation { kInvariance, kDirectional };
Relation RelationOf(TestKind test);
std::string RelationName(Relation relation);

// Verification instances only: whether the expected answer is "yes".
enum class Polarity { kNone, kPositive, kNegative };
std::string PolarityName(Polarity polarity);

enum class OntologyDirection { kNone, kHypernym, kHyponym };
std::string DirectionName(OntologyDirection direction);

enum class PerturbationKind { kBlur3, kBlur6, kBlur9, kMask, kCrop };
inline constexpr std::array<PerturbationKind, 5> kAllPerturbations = {
    PerturbationKind::kBlur3, PerturbationKind::kBlur6, PerturbationKind::kBlur9,
    PerturbationKind::kMask, PerturbationKind::kCrop};
std::string PerturbationName(PerturbationKind kind);  // "blur3", "mask", ...
PerturbationKind ParsePerturbation(std::string_view name);
// 0 for mask and crop.
int BlurSigma(PerturbationKind kind);

struct Instance {
  std::string instance_id;
  std::string image_id;
  std::string question;
  std::string answer;
  QType qtype = QType::kQ1;
  std::string template_id;
  Binding bound_args;
  std::vector<std::string> choices_order;
  Polarity polarity = Polarity::kNone;
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct InstancePair {
  std::string pair_id;  // {test}-{image_id}-{sequence}
  TestKind test = TestKind::kRephrase;
  Relation relation = Relation::kInvariance;
  Instance original;
  Instance perturbed;
  // Visual test only.
  std::optional<std::string> perturbed_image_ref;
  std::optional<PerturbationKind> perturbation;
  std::vector<BoundingBox> foreground;
  std::string group_id;  // pairs sharing one original question
  // Ontological test only.
  OntologyDirection direction = OntologyDirection::kNone;
  friend bool operator==(const InstancePair&, const InstancePair&) = default;
};

nlohmann::json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const nlohmann::json& node);
nlohmann::json PairToJson(const InstancePair& pair);
InstancePair PairFromJson(const nlohmann::json& node);

// One compact JSON record per line with sorted keys.
std::string PairsToJsonl(const std::vector<InstancePair>& pairs);
void WritePairs(const std::filesystem::path& path, const std::vector<InstancePair>& pairs);
// Throws Error naming the line on malformed input.
std::vector<InstancePair> ReadPairs(const std::filesystem::path& path);

// Relation invariant and field consistency; empty when the pair is sound.
std::vector<std::string> CheckPair(const InstancePair& pair);

}  // namespace vqaprobe

#endif  // VQAPROBE_DATASET_H_
