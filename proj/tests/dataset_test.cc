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

#include <filesystem>

#include "vqaprobe/common.h"
#include "vqaprobe/dataset.h"

namespace vqaprobe {
namespace {

namespace fs = std::filesystem;

InstancePair SamplePair() {
  InstancePair pair;
  pair.pair_id = "visual-2400001-3";
  pair.test = TestKind::kVisual;
  pair.relation = Relation::kInvariance;
  Instance& o = pair.original;
  o.instance_id = "visual-2400001-3-o";
  o.image_id = "2400001";
  o.question = "What color is the shirt, red or blue?";
  o.answer = "red";
  o.qtype = QType::kQ6;
  o.template_id = "q6_001";
  o.bound_args.args[0] = {"shirt", "color", "", "", false, "17"};
  o.bound_args.choices = {"red", "blue"};
  o.choices_order = {"red", "blue"};
  pair.perturbed = o;
  pair.perturbed.instance_id = "visual-2400001-3-p";
  pair.perturbed_image_ref = "images/2400001__visual-2400001-3__mask.png";
  pair.perturbation = PerturbationKind::kMask;
  pair.foreground = {{1, 2, 33, 34}};
  pair.group_id = "visual-2400001-o1";
  return pair;
}

TEST(DatasetTest, JsonRoundTrip) {
  const InstancePair pair = SamplePair();
  EXPECT_EQ(PairFromJson(PairToJson(pair)), pair);
  const auto node = PairToJson(pair);
  EXPECT_EQ(node.at("relation"), "invariance");
  EXPECT_EQ(node.at("foreground"), nlohmann::json::parse("[[1,2,33,34]]"));
  EXPECT_EQ(node.at("original").at("qtype"), "Q6");

  InstancePair negation;
  negation.pair_id = "negation-1-0";
  negation.test = TestKind::kNegation;
  negation.relation = Relation::kDirectional;
  negation.original.answer = "yes";
  negation.original.polarity = Polarity::kPositive;
  negation.perturbed.answer = "no";
  negation.perturbed.polarity = Polarity::kNegative;
  EXPECT_EQ(PairFromJson(PairToJson(negation)), negation);
  EXPECT_FALSE(PairToJson(negation).contains("perturbed_image_ref"));
}

TEST(DatasetTest, JsonlFileRoundTrip) {
  const fs::path path = fs::temp_directory_path() / "vqaprobe_dataset_test.jsonl";
  std::vector<InstancePair> pairs = {SamplePair(), SamplePair()};
  pairs[1].pair_id = "visual-2400001-4";
  WritePairs(path, pairs);
  EXPECT_EQ(ReadPairs(path), pairs);
  const std::string text = ReadFile(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text, PairsToJsonl(pairs));

  WriteFile(path, PairsToJsonl(pairs) + "{\"pair_id\": 3}\n");
  try {
    ReadPairs(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  fs::remove(path);
}

TEST(DatasetTest, CheckPairFlagsViolations) {
  EXPECT_TRUE(CheckPair(SamplePair()).empty());

  auto changed = SamplePair();
  changed.perturbed.answer = "blue";
  EXPECT_FALSE(CheckPair(changed).empty());

  auto wrong_relation = SamplePair();
  wrong_relation.relation = Relation::kDirectional;
  EXPECT_FALSE(CheckPair(wrong_relation).empty());

  auto no_ref = SamplePair();
  no_ref.perturbed_image_ref.reset();
  EXPECT_FALSE(CheckPair(no_ref).empty());

  auto outside = SamplePair();
  outside.original.answer = outside.perturbed.answer = "green";
  EXPECT_FALSE(CheckPair(outside).empty());

  auto four = SamplePair();
  four.original.choices_order = {"red", "blue", "green", "pink"};
  EXPECT_FALSE(CheckPair(four).empty());

  InstancePair negation;
  negation.test = TestKind::kNegation;
  negation.relation = Relation::kDirectional;
  negation.original.question = "Is there a cat?";
  negation.perturbed.question = "Is there no cat?";
  negation.original.answer = "yes";
  negation.perturbed.answer = "no";
  EXPECT_TRUE(CheckPair(negation).empty());
  negation.perturbed.answer = "yes";
  EXPECT_FALSE(CheckPair(negation).empty());
  negation.perturbed.answer = "maybe";
  EXPECT_FALSE(CheckPair(negation).empty());

  InstancePair rephrase;
  rephrase.test = TestKind::kRephrase;
  rephrase.original.answer = rephrase.perturbed.answer = "no";
  rephrase.original.question = rephrase.perturbed.question = "Is there a cat?";
  EXPECT_FALSE(CheckPair(rephrase).empty());
}

TEST(DatasetTest, NamesRoundTrip) {
  for (auto test : kAllTests) EXPECT_EQ(ParseTest(TestName(test)), test);
  for (auto kind : kAllPerturbations) EXPECT_EQ(ParsePerturbation(PerturbationName(kind)), kind);
  EXPECT_EQ(RelationOf(TestKind::kNegation), Relation::kDirectional);
  EXPECT_EQ(RelationOf(TestKind::kAntonym), Relation::kDirectional);
  EXPECT_EQ(RelationOf(TestKind::kOntological), Relation::kInvariance);
  EXPECT_EQ(BlurSigma(PerturbationKind::kBlur6), 6);
  EXPECT_EQ(BlurSigma(PerturbationKind::kCrop), 0);
  EXPECT_THROW(ParseTest("paraphrase"), Error);
}

}  // namespace
}  // namespace vqaprobe
