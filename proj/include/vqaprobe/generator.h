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

// Original-question sampling: argument bindings for Q1-Q7, plausible
// negatives, and the configuration shared by the whole generation run.

#ifndef VQAPROBE_GENERATOR_H_
#define VQAPROBE_GENERATOR_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "vqaprobe/dataset.h"
#include "vqaprobe/ontology.h"
#include "vqaprobe/random.h"
#include "vqaprobe/sampling.h"
#include "vqaprobe/scene_graph.h"
#include "vqaprobe/templates.h"

namespace vqaprobe {

struct TestTargets {
  int64_t binary = 0;
  int64_t multi_choice = 0;
  int64_t total() const { return binary + multi_choice; }
  friend bool operator==(const TestTargets&, const TestTargets&) = default;
};

struct GenerationConfig {
  uint64_t seed = 0;
  // Original questions per test (the visual test emits one pair per
  // perturbation kind for each original).
  std::map<TestKind, TestTargets> targets;
  double three_choice_fraction = 0.5;
  double pool_multiplier = 4.0;
  double smoothing = 1.0;
  int max_hypernym_hops = 0;  // 0 = any ancestor
  double attribute_probability = 0.5;
  std::set<std::string> excluded_terms;
  int jobs = 1;

  static GenerationConfig Defaults();
  static std::map<TestKind, TestTargets> DefaultTargets();
  static std::set<std::string> DefaultExcludedTerms();
};

// Question types each test draws its originals from.
std::vector<QType> BinaryTypesFor(TestKind test);
std::vector<QType> MultiChoiceTypesFor(TestKind test);

enum class DropReason {
  kNoBinding,
  kNoFalseObject,
  kNoChoices,
  kNoSibling,
  kSameQuestion,
  kNoReorder,
  kNoHypernym,
  kNoHyponym,
  kRevalidationFailed,
  kNoNegatedTemplate,
  kNoAntonym,
  kNoForeground,
  kImageUnavailable,
  kDuplicate,
};
inline constexpr int kDropReasonCount = 14;
std::string DropReasonName(DropReason reason);

// Everything a sampler needs besides the image and the random stream.
struct GeneratorContext {
  const Ontology* ontology = nullptr;
  const CooccurrenceModel* coocc = nullptr;
  const TemplateLibrary* templates = nullptr;
  const GenerationConfig* config = nullptr;
  const FalseObjectSampler* sampler = nullptr;

  SamplerSettings Settings() const;
};

// Test-specific constraints on the original.
struct OriginalSpec {
  QType qtype = QType::kQ1;
  Polarity polarity = Polarity::kNone;  // verification types
  // Object filters (Q1 only): accept true / false object names.
  std::function<bool(const std::string&)> accept_true;
  std::function<bool(const std::string&)> accept_false;
  // Q4: the queried attribute must have an antonym usable for a flip.
  bool require_antonym = true;
};

using SampleResult = std::variant<Instance, DropReason>;

// One original instance: template drawn uniformly from the type, binding
// sampled from the graph, question rendered, answer set.
SampleResult SampleOriginal(const GeneratorContext& context, const ImageView& image,
                            const OriginalSpec& spec, Rng& rng);

// Hypernyms of `name` usable as an ontological replacement, nearest first.
std::vector<std::string> EligibleHypernyms(const std::string& name, const Ontology& ontology,
                                           const GenerationConfig& config);
// Hyponyms of `name` usable as an ontological replacement, sorted.
std::vector<std::string> EligibleHyponyms(const std::string& name, const Ontology& ontology,
                                          const GenerationConfig& config);

// Verification answers.
inline std::string YesNo(bool value) { return value ? "yes" : "no"; }

// Diversity class of a multi-choice instance (its category term).
std::string DiversityClass(const Instance& instance);

}  // namespace vqaprobe

#endif  // VQAPROBE_GENERATOR_H_
