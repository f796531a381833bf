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

// Plausible-negative sampling, choice generation and diversity subsampling.

#ifndef VQAPROBE_SAMPLING_H_
#define VQAPROBE_SAMPLING_H_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vqaprobe/ontology.h"
#include "vqaprobe/random.h"
#include "vqaprobe/scene_graph.h"

namespace vqaprobe {

// Per-image facts every filter needs.
struct ImageView {
  const SceneGraph* graph = nullptr;
  std::set<std::string> names;
  std::set<std::string> closure;

  static ImageView Of(const SceneGraph& graph, const Ontology& ontology);
};

struct SamplerSettings {
  double smoothing = 1.0;
  double attribute_probability = 0.5;
  // Generic terms never used as question objects.
  std::set<std::string> excluded_terms;
};

// True when asking about `name` in this image has an unambiguous "no": the
// name is outside the presence closure, is not a part of an annotated whole,
// and no annotated name is one of its hypernyms.
bool IsSafelyAbsent(const std::string& name, const ImageView& image,
                    const Ontology& ontology);

struct FalseObject {
  std::string name;
  std::string attribute;  // may be empty
};

class FalseObjectSampler {
 public:
  FalseObjectSampler(const Ontology& ontology, const CooccurrenceModel& coocc,
                     SamplerSettings settings);

  // Candidate vocabulary: ontology terms plus co-occurrence names the
  // ontology knows, minus excluded terms. Sorted.
  const std::vector<std::string>& Candidates() const { return candidates_; }

  // Unnormalized weights over Candidates(): sum of pair counts with the
  // image's names plus smoothing; zero for ineligible candidates.
  std::vector<double> Weights(const ImageView& image,
                              const std::function<bool(const std::string&)>& accept = {}) const;

  // nullopt when no candidate survives the filters.
  std::optional<FalseObject> Sample(const ImageView& image, Rng& rng,
                                    const std::function<bool(const std::string&)>& accept = {},
                                    bool allow_attribute = true) const;

  // Attribute for an object name drawn from its observed attribute counts;
  // restricted to attributes the ontology categorizes.
  std::string SampleAttribute(const std::string& name, Rng& rng) const;

  const SamplerSettings& settings() const { return settings_; }

 private:
  const Ontology& ontology_;
  const CooccurrenceModel& coocc_;
  SamplerSettings settings_;
  std::vector<std::string> candidates_;
  std::map<std::string, std::map<std::string, int64_t>> neighbors_;
};

enum class ChoiceClass { kHypernym, kAttributeCategory, kActionCategory };

struct ChoiceRequest {
  std::string truth;
  ChoiceClass klass = ChoiceClass::kHypernym;
  std::string category;  // hypernym term or attribute/action category
  int k = 2;
  const ImageView* image = nullptr;
  const SceneObject* object = nullptr;  // attribute/action classes
};

// k choices including the truth, in random order; nullopt if k valid choices
// cannot be assembled.
std::optional<std::vector<std::string>> GenerateChoices(const ChoiceRequest& request,
                                                        const Ontology& ontology,
                                                        const CooccurrenceModel& coocc,
                                                        const SamplerSettings& settings,
                                                        Rng& rng);

// Object choice validity: pairwise no shared hypernym path.
bool ObjectChoicesDistinct(const std::vector<std::string>& choices, const Ontology& ontology);

// Draws n indices without replacement; item i has weight
// 1 / (count of its class × count of its answer), renormalized after every
// draw. Returns the drawn indices in draw order. Throws Error if n exceeds
// the pool.
std::vector<size_t> DiversitySubsample(const std::vector<std::string>& classes,
                                       const std::vector<std::string>& answers, size_t n,
                                       Rng& rng);

}  // namespace vqaprobe

#endif  // VQAPROBE_SAMPLING_H_
