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

// The reference checks must reject broken input, or passing audits mean
// nothing.

#include <gtest/gtest.h>

#include "test_env.h"

namespace vqaprobe {
namespace {

using nlohmann::json;

json FirstInstance(QType qtype, Polarity polarity, size_t* image = nullptr) {
  const auto& env = testenv::Get();
  OriginalSpec spec;
  spec.qtype = qtype;
  spec.polarity = polarity;
  for (size_t i = 0; i < env.corpus.size(); ++i) {
    Rng rng = Rng::Derive(81, {env.corpus[i].image_id});
    for (int k = 0; k < 6; ++k) {
      auto result = SampleOriginal(env.context, env.views[i], spec, rng);
      if (auto* inst = std::get_if<Instance>(&result)) {
        if (image) *image = i;
        return InstanceToJson(*inst);
      }
    }
  }
  ADD_FAILURE() << "no instance";
  return {};
}

bool Flagged(const json& instance) {
  const auto& env = testenv::Get();
  return !oracle::AuditInstance(instance, env.raw.at(instance.at("image_id")), env.knowledge)
              .empty();
}

TEST(OracleTest, AcceptsGeneratedInstances) {
  EXPECT_FALSE(Flagged(FirstInstance(QType::kQ1, Polarity::kPositive)));
  EXPECT_FALSE(Flagged(FirstInstance(QType::kQ6, Polarity::kNone)));
}

TEST(OracleTest, FlagsWrongVerificationAnswers) {
  for (QType q : {QType::kQ1, QType::kQ2, QType::kQ3, QType::kQ4}) {
    json inst = FirstInstance(q, Polarity::kPositive);
    inst["answer"] = "no";
    EXPECT_TRUE(Flagged(inst)) << QTypeName(q);
  }
}

TEST(OracleTest, FlagsPresentFalseObject) {
  size_t image = 0;
  json inst = FirstInstance(QType::kQ1, Polarity::kNegative, &image);
  const auto& graph = testenv::Get().corpus[image];
  inst["bound_args"]["args"][0]["name"] = graph.objects.begin()->second.name;
  EXPECT_TRUE(Flagged(inst));
}

TEST(OracleTest, FlagsHypernymOfPresentObject) {
  size_t image = 0;
  json inst = FirstInstance(QType::kQ1, Polarity::kNegative, &image);
  const auto& env = testenv::Get();
  for (const auto& [id, object] : env.corpus[image].objects) {
    const auto ancestors = env.knowledge.taxonomy.Ancestors(object.name);
    if (ancestors.empty()) continue;
    inst["bound_args"]["args"][0]["name"] = ancestors.front();
    EXPECT_TRUE(Flagged(inst)) << ancestors.front();
    return;
  }
  FAIL() << "no object with a hypernym";
}

TEST(OracleTest, FlagsBadChoices) {
  json inst = FirstInstance(QType::kQ6, Polarity::kNone);
  json outside = inst;
  outside["bound_args"]["choices"][1] = "giraffe";
  outside["choices_order"][1] = "giraffe";
  EXPECT_TRUE(Flagged(outside));

  json missing_answer = inst;
  for (auto* field : {&missing_answer["bound_args"]["choices"], &missing_answer["choices_order"]}) {
    for (auto& c : *field) {
      if (c == inst.at("answer")) c = "zzz";
    }
  }
  EXPECT_TRUE(Flagged(missing_answer));

  json duplicated = inst;
  duplicated["choices_order"][1] = duplicated["choices_order"][0];
  duplicated["bound_args"]["choices"] = duplicated["choices_order"];
  EXPECT_TRUE(Flagged(duplicated));
}

TEST(OracleTest, FlagsDanglingObjects) {
  json inst = FirstInstance(QType::kQ4, Polarity::kPositive);
  inst["bound_args"]["args"][0]["object_id"] = "no-such-object";
  EXPECT_TRUE(Flagged(inst));
  json q5 = FirstInstance(QType::kQ5, Polarity::kNone);
  q5["answer"] = q5["choices_order"][0] == q5["answer"] ? q5["choices_order"][1]
                                                        : q5["choices_order"][0];
  EXPECT_TRUE(Flagged(q5));
}

TEST(OracleTest, BruteTallyHandExample) {
  std::vector<json> pairs = {
      {{"pair_id", "a"}, {"relation", "invariance"},
       {"original", {{"answer", "yes"}}}, {"perturbed", {{"answer", "yes"}}}},
      {{"pair_id", "b"}, {"relation", "directional"},
       {"original", {{"answer", "yes"}}}, {"perturbed", {{"answer", "no"}}}}};
  const auto tally = oracle::BruteForceTally(
      pairs, {{{"a", "original"}, "yes"}, {{"a", "perturbed"}, "no"}, {{"b", "original"}, "no"},
              {{"b", "perturbed"}, "yes"}});
  EXPECT_EQ(tally.pairs, 2);
  EXPECT_EQ(tally.original_correct, 1);
  EXPECT_EQ(tally.perturbed_correct, 0);
  EXPECT_EQ(tally.consistent, 1);
  EXPECT_EQ(tally.comprehensive, 0);
}

TEST(OracleTest, ChiSquareCriticalValues) {
  EXPECT_NEAR(oracle::ChiSquareCritical(1), 10.83, 0.6);
  EXPECT_NEAR(oracle::ChiSquareCritical(10), 29.59, 0.2);
  EXPECT_NEAR(oracle::ChiSquareCritical(50), 86.66, 0.2);
  EXPECT_DOUBLE_EQ(oracle::ChiSquare({50, 50}, {0.5, 0.5}), 0.0);
  EXPECT_DOUBLE_EQ(oracle::ChiSquare({60, 40}, {0.5, 0.5}), 4.0);
}

}  // namespace
}  // namespace vqaprobe
