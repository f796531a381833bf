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

#include <gtest/gtest.h>

#include "test_env.h"
#include "vqaprobe/pairs.h"

namespace vqaprobe {
namespace {

std::vector<Polarity> PolaritiesFor(QType qtype) {
  if (IsVerification(qtype)) return {Polarity::kPositive, Polarity::kNegative};
  return {Polarity::kNone};
}

// Builds pairs for every original the fixture yields under one test.
std::vector<InstancePair> BuildAll(TestKind test, int per_image = 2) {
  const auto& env = testenv::Get();
  std::vector<QType> qtypes = BinaryTypesFor(test);
  for (auto q : MultiChoiceTypesFor(test)) qtypes.push_back(q);
  std::vector<InstancePair> pairs;
  for (size_t i = 0; i < env.corpus.size(); ++i) {
    for (QType qtype : qtypes) {
      for (Polarity polarity : PolaritiesFor(qtype)) {
        const OriginalSpec spec = SpecFor(test, qtype, polarity, env.context);
        Rng rng = Rng::Derive(51, {TestName(test), QTypeName(qtype), PolarityName(polarity),
                                   env.corpus[i].image_id});
        for (int k = 0; k < per_image; ++k) {
          auto original = SampleOriginal(env.context, env.views[i], spec, rng);
          if (!std::holds_alternative<Instance>(original)) continue;
          auto pair = BuildPair(test, std::get<Instance>(original), env.views[i], env.context, rng);
          if (std::holds_alternative<InstancePair>(pair)) {
            pairs.push_back(std::get<InstancePair>(pair));
          }
        }
      }
    }
  }
  return pairs;
}

void AuditBothSides(const std::vector<InstancePair>& pairs) {
  const auto& env = testenv::Get();
  for (const auto& pair : pairs) {
    for (const Instance* side : {&pair.original, &pair.perturbed}) {
      const auto problems = oracle::AuditInstance(InstanceToJson(*side),
                                                  env.raw.at(side->image_id), env.knowledge);
      EXPECT_TRUE(problems.empty()) << side->question << ": " << problems.front();
    }
    auto issues = CheckPair(pair);
    EXPECT_TRUE(issues.empty()) << pair.original.question << ": " << issues.front();
  }
}

TEST(PairsTest, RephraseKeepsBindingAndAnswer) {
  const auto pairs = BuildAll(TestKind::kRephrase);
  ASSERT_GT(pairs.size(), 100u);
  AuditBothSides(pairs);
  const auto& env = testenv::Get();
  for (const auto& pair : pairs) {
    EXPECT_EQ(pair.relation, Relation::kInvariance);
    EXPECT_NE(pair.original.question, pair.perturbed.question);
    EXPECT_NE(pair.original.template_id, pair.perturbed.template_id);
    EXPECT_EQ(env.templates.Get(pair.perturbed.template_id).qtype, pair.original.qtype);
    EXPECT_EQ(pair.original.bound_args, pair.perturbed.bound_args);
    EXPECT_EQ(pair.original.answer, pair.perturbed.answer);
  }
}

TEST(PairsTest, OrderSwapsArgumentsOrChoices) {
  const auto pairs = BuildAll(TestKind::kOrder);
  ASSERT_GT(pairs.size(), 100u);
  AuditBothSides(pairs);
  for (const auto& pair : pairs) {
    const auto& a = pair.original.bound_args;
    const auto& b = pair.perturbed.bound_args;
    EXPECT_EQ(pair.original.answer, pair.perturbed.answer);
    EXPECT_EQ(pair.original.template_id, pair.perturbed.template_id);
    if (IsMultiChoice(pair.original.qtype)) {
      EXPECT_NE(a.choices, b.choices);
      EXPECT_TRUE(std::is_permutation(a.choices.begin(), a.choices.end(), b.choices.begin()));
    } else {
      EXPECT_EQ(a.args[0], b.args[1]);
      EXPECT_EQ(a.args[1], b.args[0]);
    }
  }
}

TEST(PairsTest, ThreeChoiceReorderIsUniform) {
  const auto& env = testenv::Get();
  std::optional<Instance> three;
  OriginalSpec spec;
  spec.qtype = QType::kQ6;
  for (size_t i = 0; i < env.corpus.size() && !three; ++i) {
    Rng rng = Rng::Derive(52, {env.corpus[i].image_id});
    for (int k = 0; k < 6 && !three; ++k) {
      auto result = SampleOriginal(env.context, env.views[i], spec, rng);
      if (auto* inst = std::get_if<Instance>(&result); inst && inst->choices_order.size() == 3) {
        three = *inst;
      }
    }
  }
  ASSERT_TRUE(three.has_value());
  std::map<std::vector<std::string>, long> counts;
  Rng rng(53);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    auto pair = BuildPair(TestKind::kOrder, *three, env.views[0], env.context, rng);
    ++counts[std::get<InstancePair>(pair).perturbed.bound_args.choices];
  }
  ASSERT_EQ(counts.size(), 5u);
  std::vector<long> observed;
  for (const auto& [order, n] : counts) observed.push_back(n);
  EXPECT_LT(oracle::ChiSquare(observed, std::vector<double>(5, 0.2)),
            oracle::ChiSquareCritical(4));
}

TEST(PairsTest, OntologicalReplacementFollowsPolarity) {
  const auto pairs = BuildAll(TestKind::kOntological, 3);
  ASSERT_GT(pairs.size(), 100u);
  AuditBothSides(pairs);
  const auto& env = testenv::Get();
  int up = 0, down = 0;
  for (const auto& pair : pairs) {
    ASSERT_EQ(pair.original.qtype, QType::kQ1);
    const auto& before = pair.original.bound_args.args[0].name;
    const auto& after = pair.perturbed.bound_args.args[0].name;
    EXPECT_EQ(pair.original.answer, pair.perturbed.answer);
    if (pair.original.polarity == Polarity::kPositive) {
      EXPECT_EQ(pair.direction, OntologyDirection::kHypernym);
      EXPECT_TRUE(env.knowledge.taxonomy.IsAncestor(after, before)) << after << " / " << before;
      ++up;
    } else {
      EXPECT_EQ(pair.direction, OntologyDirection::kHyponym);
      EXPECT_TRUE(env.knowledge.taxonomy.IsAncestor(before, after)) << before << " / " << after;
      ++down;
    }
  }
  EXPECT_GT(up, 20);
  EXPECT_GT(down, 20);
}

TEST(PairsTest, NegationFlipsAnswer) {
  const auto pairs = BuildAll(TestKind::kNegation);
  ASSERT_GT(pairs.size(), 100u);
  AuditBothSides(pairs);
  const auto& env = testenv::Get();
  for (const auto& pair : pairs) {
    EXPECT_EQ(pair.relation, Relation::kDirectional);
    EXPECT_EQ(pair.perturbed.answer, FlipYesNo(pair.original.answer));
    EXPECT_NE(pair.original.polarity, pair.perturbed.polarity);
    EXPECT_FALSE(env.knowledge.negated_templates.contains(pair.original.template_id));
    EXPECT_TRUE(env.knowledge.negated_templates.contains(pair.perturbed.template_id));
    EXPECT_EQ(pair.original.bound_args, pair.perturbed.bound_args);
  }
}

TEST(PairsTest, AntonymSwapsQueriedAttribute) {
  const auto pairs = BuildAll(TestKind::kAntonym, 3);
  ASSERT_GT(pairs.size(), 50u);
  AuditBothSides(pairs);
  const auto& env = testenv::Get();
  for (const auto& pair : pairs) {
    const auto& before = pair.original.bound_args.args[0].attrs;
    const auto& after = pair.perturbed.bound_args.args[0].attrs;
    EXPECT_EQ(env.knowledge.antonym.at(before), after);
    EXPECT_EQ(pair.perturbed.answer, FlipYesNo(pair.original.answer));
    EXPECT_EQ(pair.original.template_id, pair.perturbed.template_id);
  }
}

TEST(PairsTest, WrongTypesAreDropped) {
  const auto& env = testenv::Get();
  OriginalSpec spec;
  spec.qtype = QType::kQ5;
  Rng rng(54);
  for (size_t i = 0; i < env.corpus.size(); ++i) {
    auto result = SampleOriginal(env.context, env.views[i], spec, rng);
    if (!std::holds_alternative<Instance>(result)) continue;
    const auto& inst = std::get<Instance>(result);
    EXPECT_EQ(std::get<DropReason>(BuildPair(TestKind::kAntonym, inst, env.views[i],
                                             env.context, rng)),
              DropReason::kNoAntonym);
    EXPECT_EQ(std::get<DropReason>(BuildPair(TestKind::kOntological, inst, env.views[i],
                                             env.context, rng)),
              DropReason::kNoBinding);
    EXPECT_EQ(std::get<DropReason>(BuildPair(TestKind::kNegation, inst, env.views[i],
                                             env.context, rng)),
              DropReason::kNoNegatedTemplate);
    return;
  }
  FAIL() << "no Q5 instance";
}

TEST(PairsTest, FlipYesNo) {
  EXPECT_EQ(FlipYesNo("yes"), "no");
  EXPECT_EQ(FlipYesNo("no"), "yes");
  EXPECT_THROW(FlipYesNo("red"), Error);
}

}  // namespace
}  // namespace vqaprobe
