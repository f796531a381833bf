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

#include "vqaprobe/sampling.h"

#include <algorithm>
#include <map>

#include "vqaprobe/common.h"
#include "vqaprobe/nouns.h"

namespace vqaprobe {

ImageView ImageView::Of(const SceneGraph& graph, const Ontology& ontology) {
  ImageView view;
  view.graph = &graph;
  view.names = graph.Names();
  view.closure = PresenceClosure(graph, ontology);
  return view;
}

bool IsSafelyAbsent(const std::string& name, const ImageView& image,
                    const Ontology& ontology) {
  if (image.closure.contains(name)) return false;
  if (ontology.IsAnnotatedPart(name, image.closure)) return false;
  for (const auto& hypernym : ontology.Hypernyms(name)) {
    if (image.names.contains(hypernym)) return false;
  }
  return true;
}

FalseObjectSampler::FalseObjectSampler(const Ontology& ontology,
                                       const CooccurrenceModel& coocc,
                                       SamplerSettings settings)
    : ontology_(ontology), coocc_(coocc), settings_(std::move(settings)) {
  std::set<std::string> pool(ontology.Vocabulary().begin(), ontology.Vocabulary().end());
  for (const auto& [name, count] : coocc.object_counts) {
    if (ontology.Knows(name)) pool.insert(name);
  }
  for (const auto& term : settings_.excluded_terms) pool.erase(term);
  candidates_.assign(pool.begin(), pool.end());
  neighbors_ = coocc.Neighbors();
}

std::vector<double> FalseObjectSampler::Weights(
    const ImageView& image, const std::function<bool(const std::string&)>& accept) const {
  std::vector<double> weights(candidates_.size(), 0.0);
  for (size_t i = 0; i < candidates_.size(); ++i) {
    const std::string& candidate = candidates_[i];
    if (!IsSafelyAbsent(candidate, image, ontology_)) continue;
    if (accept && !accept(candidate)) continue;
    int64_t total = 0;
    auto it = neighbors_.find(candidate);
    if (it != neighbors_.end()) {
      for (const auto& name : image.names) {
        auto jt = it->second.find(name);
        if (jt != it->second.end()) total += jt->second;
      }
    }
    weights[i] = static_cast<double>(total) + settings_.smoothing;
  }
  return weights;
}

std::optional<FalseObject> FalseObjectSampler::Sample(
    const ImageView& image, Rng& rng, const std::function<bool(const std::string&)>& accept,
    bool allow_attribute) const {
  const auto weights = Weights(image, accept);
  const size_t index = rng.Weighted(weights);
  if (index >= candidates_.size()) return std::nullopt;
  FalseObject out{candidates_[index], ""};
  if (allow_attribute && rng.Bernoulli(settings_.attribute_probability)) {
    out.attribute = SampleAttribute(out.name, rng);
  }
  return out;
}

std::string FalseObjectSampler::SampleAttribute(const std::string& name, Rng& rng) const {
  auto it = coocc_.attr_given_object.find(name);
  if (it == coocc_.attr_given_object.end()) return "";
  std::vector<std::string> attributes;
  std::vector<double> weights;
  for (const auto& [attribute, count] : it->second) {
    if (!ontology_.CategoryOf(attribute)) continue;
    attributes.push_back(attribute);
    weights.push_back(static_cast<double>(count));
  }
  const size_t index = rng.Weighted(weights);
  return index < attributes.size() ? attributes[index] : "";
}

bool ObjectChoicesDistinct(const std::vector<std::string>& choices, const Ontology& ontology) {
  for (size_t i = 0; i < choices.size(); ++i) {
    for (size_t j = i + 1; j < choices.size(); ++j) {
      if (ontology.SharesHypernymPath(choices[i], choices[j])) return false;
    }
  }
  return true;
}

std::optional<std::vector<std::string>> GenerateChoices(const ChoiceRequest& request,
                                                        const Ontology& ontology,
                                                        const CooccurrenceModel& coocc,
                                                        const SamplerSettings& settings,
                                                        Rng& rng) {
  if (request.k < 2 || request.k > 3) throw Error("choice count must be 2 or 3");
  std::vector<std::string> pool;
  std::vector<double> weights;
  std::vector<std::string> held;
  if (request.klass == ChoiceClass::kHypernym) {
    const auto& path = ontology.Hypernyms(request.truth);
    if (std::find(path.begin(), path.end(), request.category) == path.end()) {
      return std::nullopt;
    }
    for (const auto& term : ontology.Hyponyms(request.category)) {
      if (term == request.truth || settings.excluded_terms.contains(term)) continue;
      if (IsPluralNoun(term) || ontology.SharesHypernymPath(term, request.truth)) continue;
      if (request.image && !IsSafelyAbsent(term, *request.image, ontology)) continue;
      pool.push_back(term);
      weights.push_back(static_cast<double>(coocc.ObjectCount(term)) + settings.smoothing);
    }
  } else {
    if (request.object == nullptr) throw Error("attribute choices need the object");
    if (ontology.CategoryOf(request.truth) != request.category) return std::nullopt;
    const bool actions = request.klass == ChoiceClass::kActionCategory;
    held = request.object->attributes;
    for (const auto& member : ontology.MembersOf(request.category)) {
      if (member == request.truth || actions != ontology.IsAction(member)) continue;
      if (request.object->HasAttribute(member)) continue;
      const bool clashes = std::any_of(held.begin(), held.end(), [&](const std::string& h) {
        return ontology.CoGrouped(member, h);
      });
      if (clashes || ontology.CoGrouped(member, request.truth)) continue;
      pool.push_back(member);
      weights.push_back(
          static_cast<double>(coocc.AttributeCount(request.object->name, member)) +
          settings.smoothing);
    }
  }

  std::vector<std::string> choices{request.truth};
  while (static_cast<int>(choices.size()) < request.k) {
    const size_t index = rng.Weighted(weights);
    if (index >= pool.size()) return std::nullopt;
    const std::string pick = pool[index];
    weights[index] = 0.0;
    choices.push_back(pick);
    // Drop pool members that now conflict with the new choice.
    for (size_t i = 0; i < pool.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const bool conflict = request.klass == ChoiceClass::kHypernym
                                ? ontology.SharesHypernymPath(pool[i], pick)
                                : ontology.CoGrouped(pool[i], pick);
      if (conflict) weights[i] = 0.0;
    }
  }
  rng.Shuffle(choices);
  return choices;
}

namespace {

// Fenwick tree over non-negative weights with prefix search.
class WeightTree {
 public:
  explicit WeightTree(const std::vector<double>& weights)
      : tree_(weights.size() + 1, 0.0), values_(weights) {
    for (size_t i = 0; i < weights.size(); ++i) Add(i, weights[i]);
  }

  void Remove(size_t index) {
    Add(index, -values_[index]);
    values_[index] = 0.0;
  }

  double Total() const {
    double sum = 0.0;
    for (size_t i = tree_.size() - 1; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  // Smallest index whose inclusive prefix sum exceeds target.
  size_t Find(double target) const {
    size_t pos = 0;
    size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;  // zero-based index of the next element
  }

  double Value(size_t index) const { return values_[index]; }
  size_t size() const { return values_.size(); }

 private:
  void Add(size_t index, double delta) {
    for (size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  std::vector<double> tree_;
  std::vector<double> values_;
};

}  // namespace

std::vector<size_t> DiversitySubsample(const std::vector<std::string>& classes,
                                       const std::vector<std::string>& answers, size_t n,
                                       Rng& rng) {
  if (classes.size() != answers.size()) throw Error("class/answer size mismatch");
  if (n > classes.size()) {
    throw Error("cannot subsample " + std::to_string(n) + " from a pool of " +
                std::to_string(classes.size()));
  }
  std::map<std::string, double> class_count;
  std::map<std::string, double> answer_count;
  for (size_t i = 0; i < classes.size(); ++i) {
    class_count[classes[i]] += 1.0;
    answer_count[answers[i]] += 1.0;
  }
  std::vector<double> weights(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) {
    weights[i] = 1.0 / (class_count[classes[i]] * answer_count[answers[i]]);
  }
  WeightTree tree(weights);
  std::vector<size_t> drawn;
  drawn.reserve(n);
  while (drawn.size() < n) {
    size_t index = tree.Find(rng.UniformReal() * tree.Total());
    // Rounding can land past the end or on a removed slot; step to the
    // nearest remaining item.
    if (index >= tree.size()) index = tree.size() - 1;
    while (tree.Value(index) == 0.0 && index > 0) --index;
    while (tree.Value(index) == 0.0) ++index;
    drawn.push_back(index);
    tree.Remove(index);
  }
  return drawn;
}

}  // namespace vqaprobe
