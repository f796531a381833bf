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

#include "vqaprobe/pairs.h"

#include <algorithm>

#include "vqaprobe/common.h"
#include "vqaprobe/nouns.h"

namespace vqaprobe {

std::string FlipYesNo(const std::string& answer) {
  if (answer == "yes") return "no";
  if (answer == "no") return "yes";
  throw Error("cannot flip non-binary answer '" + answer + "'");
}

OriginalSpec SpecFor(TestKind test, QType qtype, Polarity polarity,
                     const GeneratorContext& context) {
  OriginalSpec spec;
  spec.qtype = qtype;
  spec.polarity = polarity;
  if (test == TestKind::kOntological) {
    const Ontology* ontology = context.ontology;
    const GenerationConfig* config = context.config;
    spec.accept_true = [ontology, config](const std::string& name) {
      return !EligibleHypernyms(name, *ontology, *config).empty();
    };
    spec.accept_false = [ontology, config](const std::string& name) {
      return !EligibleHyponyms(name, *ontology, *config).empty();
    };
  }
  return spec;
}

namespace {

InstancePair Skeleton(TestKind test, const Instance& original) {
  InstancePair pair;
  pair.test = test;
  pair.relation = RelationOf(test);
  pair.original = original;
  pair.perturbed = original;
  return pair;
}

PairResult Rephrase(const Instance& original, const GeneratorContext& context, Rng& rng) {
  const TemplateLibrary& templates = *context.templates;
  const Template& source = templates.Get(original.template_id);
  if (templates.OfType(source.qtype).size() < 2) return DropReason::kNoSibling;
  InstancePair pair = Skeleton(TestKind::kRephrase, original);
  // A sibling can render identically when it differs only in unused slots.
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Template& sibling = templates.Sibling(source, rng);
    std::string question = Render(sibling, original.bound_args);
    if (question == original.question) continue;
    pair.perturbed.template_id = sibling.id;
    pair.perturbed.question = std::move(question);
    return pair;
  }
  return DropReason::kSameQuestion;
}

PairResult Reorder(const Instance& original, const GeneratorContext& context, Rng& rng) {
  const Template& tmpl = context.templates->Get(original.template_id);
  InstancePair pair = Skeleton(TestKind::kOrder, original);
  Binding& binding = pair.perturbed.bound_args;
  if (original.qtype == QType::kQ2 || original.qtype == QType::kQ3) {
    std::swap(binding.args[0], binding.args[1]);
  } else if (IsMultiChoice(original.qtype)) {
    std::vector<std::string> order = binding.choices;
    if (order.size() == 2) {
      std::swap(order[0], order[1]);
    } else {
      // Uniform over the permutations that differ from the original.
      std::vector<std::vector<std::string>> others;
      std::vector<std::string> perm = order;
      std::sort(perm.begin(), perm.end());
      do {
        if (perm != order) others.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (others.empty()) return DropReason::kNoReorder;
      order = rng.Pick(others);
    }
    binding.choices = order;
    pair.perturbed.choices_order = order;
  } else {
    return DropReason::kNoReorder;
  }
  pair.perturbed.question = Render(tmpl, binding);
  if (pair.perturbed.question == original.question) return DropReason::kNoReorder;
  return pair;
}

PairResult Ontological(const Instance& original, const ImageView& image,
                       const GeneratorContext& context, Rng& rng) {
  const Ontology& ontology = *context.ontology;
  const GenerationConfig& config = *context.config;
  if (original.qtype != QType::kQ1) return DropReason::kNoBinding;
  const BoundArg& arg = original.bound_args.args[0];
  const bool positive = original.polarity == Polarity::kPositive;
  const auto options = positive ? EligibleHypernyms(arg.name, ontology, config)
                                : EligibleHyponyms(arg.name, ontology, config);
  if (options.empty()) return positive ? DropReason::kNoHypernym : DropReason::kNoHyponym;
  const std::string replacement = rng.Pick(options);

  // The replacement must keep the answer: a hypernym of a present object is
  // present; a hyponym of an absent object must itself be safely absent.
  const bool valid = positive ? image.closure.contains(replacement)
                              : IsSafelyAbsent(replacement, image, ontology);
  if (!valid) return DropReason::kRevalidationFailed;

  InstancePair pair = Skeleton(TestKind::kOntological, original);
  BoundArg& changed = pair.perturbed.bound_args.args[0];
  changed.name = replacement;
  changed.plural = IsPluralNoun(replacement);
  pair.direction = positive ? OntologyDirection::kHypernym : OntologyDirection::kHyponym;
  pair.perturbed.question =
      Render(context.templates->Get(original.template_id), pair.perturbed.bound_args);
  if (pair.perturbed.question == original.question) return DropReason::kSameQuestion;
  return pair;
}

PairResult Negation(const Instance& original, const GeneratorContext& context) {
  const Template& tmpl = context.templates->Get(original.template_id);
  if (!tmpl.negated_pair_id || context.templates->Find(*tmpl.negated_pair_id) == nullptr) {
    return DropReason::kNoNegatedTemplate;
  }
  const Template& negated = context.templates->NegatedCounterpart(tmpl);
  InstancePair pair = Skeleton(TestKind::kNegation, original);
  pair.perturbed.template_id = negated.id;
  pair.perturbed.question = Render(negated, original.bound_args);
  pair.perturbed.answer = FlipYesNo(original.answer);
  pair.perturbed.polarity = original.polarity == Polarity::kPositive ? Polarity::kNegative
                                                                      : Polarity::kPositive;
  return pair;
}

PairResult Antonym(const Instance& original, const ImageView& image,
                   const GeneratorContext& context) {
  if (original.qtype != QType::kQ4) return DropReason::kNoAntonym;
  const Ontology& ontology = *context.ontology;
  const BoundArg& arg = original.bound_args.args[0];
  auto antonym = ontology.AntonymOf(arg.attrs);
  if (!antonym) return DropReason::kNoAntonym;
  const SceneObject* object = image.graph->Find(arg.object_id);
  if (object == nullptr) return DropReason::kRevalidationFailed;
  // Exactly one of the two attributes is held, so the answers differ.
  if (object->HasAttribute(arg.attrs) == object->HasAttribute(*antonym)) {
    return DropReason::kRevalidationFailed;
  }
  InstancePair pair = Skeleton(TestKind::kAntonym, original);
  pair.perturbed.bound_args.args[0].attrs = *antonym;
  pair.perturbed.question =
      Render(context.templates->Get(original.template_id), pair.perturbed.bound_args);
  pair.perturbed.answer = FlipYesNo(original.answer);
  pair.perturbed.polarity = original.polarity == Polarity::kPositive ? Polarity::kNegative
                                                                      : Polarity::kPositive;
  return pair;
}

}  // namespace

PairResult BuildPair(TestKind test, const Instance& original, const ImageView& image,
                     const GeneratorContext& context, Rng& rng) {
  switch (test) {
    case TestKind::kRephrase: return Rephrase(original, context, rng);
    case TestKind::kOrder: return Reorder(original, context, rng);
    case TestKind::kOntological: return Ontological(original, image, context, rng);
    case TestKind::kNegation: return Negation(original, context);
    case TestKind::kAntonym: return Antonym(original, image, context);
    case TestKind::kVisual: return Skeleton(TestKind::kVisual, original);
  }
  return DropReason::kNoBinding;
}

}  // namespace vqaprobe
