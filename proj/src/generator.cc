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

#include "vqaprobe/generator.h"

#include <algorithm>

#include "vqaprobe/common.h"
#include "vqaprobe/nouns.h"

namespace vqaprobe {

std::map<TestKind, TestTargets> GenerationConfig::DefaultTargets() {
  return {{TestKind::kRephrase, {10000, 9412}}, {TestKind::kOrder, {5000, 9412}},
          {TestKind::kOntological, {13952, 0}}, {TestKind::kVisual, {18000, 8272}},
          {TestKind::kNegation, {10000, 0}},    {TestKind::kAntonym, {5000, 0}}};
}

std::set<std::string> GenerationConfig::DefaultExcludedTerms() {
  return {"entity", "living thing", "object", "structure", "natural feature",
          "surface", "body part", "component", "thing"};
}

GenerationConfig GenerationConfig::Defaults() {
  GenerationConfig config;
  config.targets = DefaultTargets();
  config.excluded_terms = DefaultExcludedTerms();
  return config;
}

std::vector<QType> BinaryTypesFor(TestKind test) {
  switch (test) {
    case TestKind::kRephrase:
    case TestKind::kVisual:
    case TestKind::kNegation:
      return {QType::kQ1, QType::kQ2, QType::kQ3};
    case TestKind::kOrder:
      return {QType::kQ2, QType::kQ3};
    case TestKind::kOntological:
      return {QType::kQ1};
    case TestKind::kAntonym:
      return {QType::kQ4};
  }
  return {};
}

std::vector<QType> MultiChoiceTypesFor(TestKind test) {
  switch (test) {
    case TestKind::kRephrase:
    case TestKind::kOrder:
    case TestKind::kVisual:
      return {QType::kQ5, QType::kQ6, QType::kQ7};
    default:
      return {};
  }
}

std::string DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kNoBinding: return "no_binding";
    case DropReason::kNoFalseObject: return "no_false_object";
    case DropReason::kNoChoices: return "no_choices";
    case DropReason::kNoSibling: return "no_sibling";
    case DropReason::kSameQuestion: return "same_question";
    case DropReason::kNoReorder: return "no_reorder";
    case DropReason::kNoHypernym: return "no_hypernym";
    case DropReason::kNoHyponym: return "no_hyponym";
    case DropReason::kRevalidationFailed: return "revalidation_failed";
    case DropReason::kNoNegatedTemplate: return "no_negated_template";
    case DropReason::kNoAntonym: return "no_antonym";
    case DropReason::kNoForeground: return "no_foreground";
    case DropReason::kImageUnavailable: return "image_unavailable";
    case DropReason::kDuplicate: return "duplicate";
  }
  return "unknown";
}

SamplerSettings GeneratorContext::Settings() const {
  return SamplerSettings{config->smoothing, config->attribute_probability,
                         config->excluded_terms};
}

std::vector<std::string> EligibleHypernyms(const std::string& name, const Ontology& ontology,
                                           const GenerationConfig& config) {
  std::vector<std::string> out;
  const auto& path = ontology.Hypernyms(name);
  for (size_t i = 0; i < path.size(); ++i) {
    if (config.max_hypernym_hops > 0 && static_cast<int>(i) >= config.max_hypernym_hops) break;
    // A plural name's parent is its own singular form, not a hypernym.
    if (i == 0 && IsPluralNoun(name)) continue;
    if (config.excluded_terms.contains(path[i])) continue;
    out.push_back(path[i]);
  }
  return out;
}

std::vector<std::string> EligibleHyponyms(const std::string& name, const Ontology& ontology,
                                          const GenerationConfig& config) {
  std::vector<std::string> out;
  for (const auto& term : ontology.Hyponyms(name, config.max_hypernym_hops)) {
    if (config.excluded_terms.contains(term)) continue;
    const auto& path = ontology.Hypernyms(term);
    if (!path.empty() && path.front() == name && IsPluralNoun(term)) continue;
    out.push_back(term);
  }
  return out;
}

std::string DiversityClass(const Instance& instance) {
  return QTypeName(instance.qtype) + ":" + instance.bound_args.args[0].category;
}

namespace {

class Sampler {
 public:
  Sampler(const GeneratorContext& context, const ImageView& image, Rng& rng)
      : ctx_(context),
        ontology_(*context.ontology),
        config_(*context.config),
        image_(image),
        graph_(*image.graph),
        rng_(rng) {}

  SampleResult Run(const OriginalSpec& spec) {
    const auto& pool = ctx_.templates->OfType(spec.qtype);
    if (pool.empty()) return DropReason::kNoBinding;
    const Template& tmpl = *rng_.Pick(pool);

    Instance instance;
    instance.image_id = graph_.image_id;
    instance.qtype = spec.qtype;
    instance.template_id = tmpl.id;
    instance.polarity = spec.polarity;

    std::optional<DropReason> failure;
    switch (spec.qtype) {
      case QType::kQ1: failure = BindQ1(spec, instance); break;
      case QType::kQ2: failure = BindQ2(spec, instance); break;
      case QType::kQ3: failure = BindQ3(spec, instance); break;
      case QType::kQ4: failure = BindQ4(spec, instance); break;
      case QType::kQ5: failure = BindQ5(instance); break;
      case QType::kQ6: failure = BindCategory(instance, false); break;
      case QType::kQ7: failure = BindCategory(instance, true); break;
    }
    if (failure) return *failure;
    if (IsMultiChoice(spec.qtype)) instance.choices_order = instance.bound_args.choices;
    instance.question = Render(tmpl, instance.bound_args);
    return instance;
  }

 private:
  bool Usable(const std::string& name) const {
    return ontology_.Knows(name) && !config_.excluded_terms.contains(name);
  }

  bool Categorized(const std::string& attribute) const {
    return ontology_.CategoryOf(attribute).has_value();
  }

  std::vector<std::string> UsableNames(
      const std::function<bool(const std::string&)>& accept) const {
    std::vector<std::string> names;
    for (const auto& name : image_.names) {
      if (Usable(name) && (!accept || accept(name))) names.push_back(name);
    }
    return names;
  }

  const SceneObject& InstanceOf(const std::string& name) {
    std::vector<const SceneObject*> matches;
    for (const auto& [id, object] : graph_.objects) {
      if (object.name == name) matches.push_back(&object);
    }
    return *rng_.Pick(matches);
  }

  // Optional display attribute held by the object, skipping one category.
  std::string DisplayAttribute(const SceneObject& object, const std::string& skip_category = "") {
    if (!rng_.Bernoulli(config_.attribute_probability)) return "";
    std::vector<std::string> options;
    for (const auto& attribute : object.attributes) {
      auto category = ontology_.CategoryOf(attribute);
      if (!category || (!skip_category.empty() && *category == skip_category)) continue;
      options.push_back(attribute);
    }
    return options.empty() ? "" : rng_.Pick(options);
  }

  BoundArg TrueArg(const SceneObject& object, bool with_attribute) {
    BoundArg arg;
    arg.name = object.name;
    arg.plural = IsPluralNoun(object.name);
    arg.object_id = object.object_id;
    if (with_attribute) arg.attrs = DisplayAttribute(object);
    return arg;
  }

  static BoundArg FalseArg(const FalseObject& object) {
    BoundArg arg;
    arg.name = object.name;
    arg.attrs = object.attribute;
    arg.plural = IsPluralNoun(object.name);
    return arg;
  }

  std::optional<FalseObject> SampleFalse(const std::function<bool(const std::string&)>& accept) {
    return ctx_.sampler->Sample(image_, rng_, accept);
  }

  // Ordered name pairs present in the image that share no hypernym path.
  std::vector<std::pair<std::string, std::string>> TruePairs() const {
    const auto names = UsableNames({});
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& a : names) {
      for (const auto& b : names) {
        if (a != b && !ontology_.SharesHypernymPath(a, b)) pairs.emplace_back(a, b);
      }
    }
    return pairs;
  }

  void SetAnswer(Instance& instance, bool yes) { instance.answer = YesNo(yes); }

  std::optional<DropReason> BindQ1(const OriginalSpec& spec, Instance& instance) {
    Binding& b = instance.bound_args;
    if (spec.polarity == Polarity::kPositive) {
      const auto names = UsableNames(spec.accept_true);
      if (names.empty()) return DropReason::kNoBinding;
      b.args[0] = TrueArg(InstanceOf(rng_.Pick(names)), true);
    } else {
      auto object = SampleFalse(spec.accept_false);
      if (!object) return DropReason::kNoFalseObject;
      b.args[0] = FalseArg(*object);
    }
    SetAnswer(instance, spec.polarity == Polarity::kPositive);
    return std::nullopt;
  }

  // One present and one absent object, in random order.
  std::optional<DropReason> BindMixed(Binding& b) {
    const auto names = UsableNames({});
    if (names.empty()) return DropReason::kNoBinding;
    const std::string present = rng_.Pick(names);
    auto absent = SampleFalse([&](const std::string& candidate) {
      return !ontology_.SharesHypernymPath(candidate, present);
    });
    if (!absent) return DropReason::kNoFalseObject;
    BoundArg t = TrueArg(InstanceOf(present), true);
    BoundArg f = FalseArg(*absent);
    if (rng_.Bernoulli(0.5)) {
      b.args = {t, f};
    } else {
      b.args = {f, t};
    }
    return std::nullopt;
  }

  std::optional<DropReason> BindBothTrue(Binding& b) {
    const auto pairs = TruePairs();
    if (pairs.empty()) return DropReason::kNoBinding;
    const auto& [first, second] = rng_.Pick(pairs);
    b.args[0] = TrueArg(InstanceOf(first), true);
    b.args[1] = TrueArg(InstanceOf(second), true);
    return std::nullopt;
  }

  std::optional<DropReason> BindQ2(const OriginalSpec& spec, Instance& instance) {
    auto failure = spec.polarity == Polarity::kPositive ? BindBothTrue(instance.bound_args)
                                                        : BindMixed(instance.bound_args);
    if (failure) return failure;
    SetAnswer(instance, spec.polarity == Polarity::kPositive);
    return std::nullopt;
  }

  std::optional<DropReason> BindQ3(const OriginalSpec& spec, Instance& instance) {
    Binding& b = instance.bound_args;
    if (spec.polarity == Polarity::kPositive) {
      const bool both = rng_.Bernoulli(0.5);
      std::optional<DropReason> failure = both ? BindBothTrue(b) : BindMixed(b);
      if (failure && both) failure = BindMixed(b);
      if (failure) return failure;
    } else {
      auto first = SampleFalse({});
      if (!first) return DropReason::kNoFalseObject;
      auto second = SampleFalse([&](const std::string& candidate) {
        return !ontology_.SharesHypernymPath(candidate, first->name);
      });
      if (!second) return DropReason::kNoFalseObject;
      b.args = {FalseArg(*first), FalseArg(*second)};
    }
    SetAnswer(instance, spec.polarity == Polarity::kPositive);
    return std::nullopt;
  }

  // Relations from a uniquely named subject to a uniquely named, different
  // object, so "the X on the Y" refers to one thing.
  std::vector<const SceneRelation*> UsableRelations(const SceneObject& subject) const {
    std::vector<const SceneRelation*> out;
    for (const auto& relation : subject.relations) {
      const SceneObject* target = graph_.Find(relation.target_id);
      if (target == nullptr || target->name == subject.name) continue;
      if (!Usable(target->name) || graph_.CountName(target->name) != 1) continue;
      if (ontology_.SharesHypernymPath(target->name, subject.name)) continue;
      out.push_back(&relation);
    }
    return out;
  }

  // Fills arg1's relation and arg2 from a random usable relation.
  void BindRelation(Binding& b, const SceneObject& subject) {
    const auto relations = UsableRelations(subject);
    const SceneRelation& relation = *rng_.Pick(relations);
    b.args[0].relation = relation.predicate;
    b.args[1] = TrueArg(*graph_.Find(relation.target_id), true);
  }

  bool UniqueSubject(const SceneObject& object) const {
    return Usable(object.name) && graph_.CountName(object.name) == 1 &&
           !UsableRelations(object).empty();
  }

  bool HeldClashes(const SceneObject& object, const std::string& attribute) const {
    return std::any_of(object.attributes.begin(), object.attributes.end(),
                       [&](const std::string& held) {
                         return ontology_.CoGrouped(attribute, held);
                       });
  }

  // Attributes the yes/no attribute question may ask about.
  std::vector<std::string> Q4Options(const SceneObject& object, bool positive,
                                     bool require_antonym) const {
    std::vector<std::string> out;
    if (positive) {
      for (const auto& attribute : object.attributes) {
        if (!ontology_.AttributeCategory(attribute)) continue;
        auto antonym = ontology_.AntonymOf(attribute);
        if (antonym && object.HasAttribute(*antonym)) continue;
        if (require_antonym && !antonym) continue;
        out.push_back(attribute);
      }
      return out;
    }
    std::set<std::string> candidates;
    if (require_antonym) {
      for (const auto& held : object.attributes) {
        if (auto antonym = ontology_.AntonymOf(held)) candidates.insert(*antonym);
      }
    } else {
      for (const auto& held : object.attributes) {
        auto category = ontology_.AttributeCategory(held);
        if (!category) continue;
        for (const auto& member : ontology_.MembersOf(*category)) candidates.insert(member);
      }
    }
    for (const auto& candidate : candidates) {
      if (!ontology_.AttributeCategory(candidate) || object.HasAttribute(candidate)) continue;
      if (HeldClashes(object, candidate)) continue;
      // A "no" is only safe when the opposite is visibly annotated.
      auto antonym = ontology_.AntonymOf(candidate);
      if (antonym && !object.HasAttribute(*antonym)) continue;
      out.push_back(candidate);
    }
    return out;
  }

  std::optional<DropReason> BindQ4(const OriginalSpec& spec, Instance& instance) {
    const bool positive = spec.polarity == Polarity::kPositive;
    std::vector<const SceneObject*> subjects;
    for (const auto& [id, object] : graph_.objects) {
      if (UniqueSubject(object) && !Q4Options(object, positive, spec.require_antonym).empty()) {
        subjects.push_back(&object);
      }
    }
    if (subjects.empty()) return DropReason::kNoBinding;
    const SceneObject& subject = *rng_.Pick(subjects);
    const auto options = Q4Options(subject, positive, spec.require_antonym);
    std::string attribute;
    if (positive) {
      attribute = rng_.Pick(options);
    } else {
      std::vector<double> weights;
      for (const auto& option : options) {
        weights.push_back(static_cast<double>(ctx_.coocc->AttributeCount(subject.name, option)) +
                          config_.smoothing);
      }
      attribute = options[rng_.Weighted(weights)];
    }
    Binding& b = instance.bound_args;
    b.args[0] = TrueArg(subject, false);
    b.args[0].attrs = attribute;
    b.args[0].category = *ontology_.AttributeCategory(attribute);
    BindRelation(b, subject);
    SetAnswer(instance, positive);
    return std::nullopt;
  }

  int ChoiceCount() { return rng_.Bernoulli(config_.three_choice_fraction) ? 3 : 2; }

  std::optional<std::vector<std::string>> Choices(ChoiceRequest request) {
    const SamplerSettings settings = ctx_.Settings();
    auto choices = GenerateChoices(request, ontology_, *ctx_.coocc, settings, rng_);
    if (!choices && request.k == 3) {
      request.k = 2;
      choices = GenerateChoices(request, ontology_, *ctx_.coocc, settings, rng_);
    }
    return choices;
  }

  // Hypernym classes naming this object and no other object in the image.
  std::vector<std::string> UniqueClasses(const SceneObject& subject) const {
    std::vector<std::string> out;
    for (const auto& category : ontology_.Hypernyms(subject.name)) {
      if (config_.excluded_terms.contains(category)) continue;
      bool unique = true;
      for (const auto& [id, other] : graph_.objects) {
        if (other.object_id == subject.object_id) continue;
        const auto& path = ontology_.Hypernyms(other.name);
        if (other.name == category || other.name == subject.name ||
            std::find(path.begin(), path.end(), category) != path.end()) {
          unique = false;
          break;
        }
      }
      if (unique) out.push_back(category);
    }
    return out;
  }

  std::optional<DropReason> BindQ5(Instance& instance) {
    std::vector<const SceneObject*> subjects;
    for (const auto& [id, object] : graph_.objects) {
      if (IsPluralNoun(object.name) || IsMassNoun(object.name)) continue;
      if (UniqueSubject(object) && !UniqueClasses(object).empty()) subjects.push_back(&object);
    }
    if (subjects.empty()) return DropReason::kNoBinding;
    const SceneObject& subject = *rng_.Pick(subjects);
    const std::string category = rng_.Pick(UniqueClasses(subject));
    ChoiceRequest request{subject.name, ChoiceClass::kHypernym, category, ChoiceCount(),
                          &image_, &subject};
    auto choices = Choices(request);
    if (!choices) return DropReason::kNoChoices;
    Binding& b = instance.bound_args;
    b.args[0] = TrueArg(subject, true);
    b.args[0].category = category;
    b.choices = *choices;
    BindRelation(b, subject);
    instance.answer = subject.name;
    return std::nullopt;
  }

  // Categories in which the object holds exactly one term.
  std::map<std::string, std::string> SingleTermCategories(const SceneObject& object,
                                                          bool actions) const {
    std::map<std::string, std::vector<std::string>> held;
    for (const auto& attribute : object.attributes) {
      if (ontology_.IsAction(attribute) != actions) continue;
      auto category = ontology_.CategoryOf(attribute);
      if (category) held[*category].push_back(attribute);
    }
    std::map<std::string, std::string> out;
    for (const auto& [category, terms] : held) {
      if (terms.size() == 1) out[category] = terms.front();
    }
    return out;
  }

  std::optional<DropReason> BindCategory(Instance& instance, bool actions) {
    std::vector<const SceneObject*> subjects;
    for (const auto& [id, object] : graph_.objects) {
      if (UniqueSubject(object) && !SingleTermCategories(object, actions).empty()) {
        subjects.push_back(&object);
      }
    }
    if (subjects.empty()) return DropReason::kNoBinding;
    const SceneObject& subject = *rng_.Pick(subjects);
    const auto categories = SingleTermCategories(subject, actions);
    std::vector<std::string> keys;
    for (const auto& [category, term] : categories) keys.push_back(category);
    const std::string category = rng_.Pick(keys);
    const std::string truth = categories.at(category);
    ChoiceRequest request{truth,
                          actions ? ChoiceClass::kActionCategory : ChoiceClass::kAttributeCategory,
                          category, ChoiceCount(), &image_, &subject};
    auto choices = Choices(request);
    if (!choices) return DropReason::kNoChoices;
    Binding& b = instance.bound_args;
    b.args[0] = TrueArg(subject, false);
    b.args[0].attrs = DisplayAttribute(subject, category);
    if (ontology_.IsAction(b.args[0].attrs)) b.args[0].attrs.clear();
    b.args[0].category = category;
    b.choices = *choices;
    BindRelation(b, subject);
    instance.answer = truth;
    return std::nullopt;
  }

  const GeneratorContext& ctx_;
  const Ontology& ontology_;
  const GenerationConfig& config_;
  const ImageView& image_;
  const SceneGraph& graph_;
  Rng& rng_;
};

}  // namespace

SampleResult SampleOriginal(const GeneratorContext& context, const ImageView& image,
                            const OriginalSpec& spec, Rng& rng) {
  return Sampler(context, image, rng).Run(spec);
}

}  // namespace vqaprobe
