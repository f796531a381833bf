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
#include "vqaprobe/common.h"
#include "vqaprobe/config.h"

namespace vqaprobe {
namespace {

constexpr const char* kInputs = R"(
[inputs]
scene_graphs = "sg.json"
ontology = "/abs/ontology"
templates = "t/templates.tsv"
negated_templates = "t/negated.tsv"
)";

std::string WithInputs(const std::string& rest) { return std::string(kInputs) + rest; }

TEST(ConfigTest, DefaultsAndRelativePaths) {
  const RunConfig config = ParseConfig(kInputs, "/base");
  EXPECT_EQ(config.inputs.scene_graphs, "/base/sg.json");
  EXPECT_EQ(config.inputs.ontology, "/abs/ontology");
  EXPECT_EQ(config.inputs.templates, "/base/t/templates.tsv");
  EXPECT_FALSE(config.inputs.images.has_value());
  EXPECT_EQ(config.inputs.limit, 0u);
  EXPECT_EQ(config.generation.targets, GenerationConfig::DefaultTargets());
  EXPECT_EQ(config.generation.seed, 0u);
  EXPECT_EQ(config.generation.jobs, 1);
  EXPECT_EQ(config.generation.excluded_terms, GenerationConfig::DefaultExcludedTerms());
}

TEST(ConfigTest, DefaultTargetSizes) {
  const auto targets = GenerationConfig::DefaultTargets();
  EXPECT_EQ(targets.at(TestKind::kRephrase), (TestTargets{10000, 9412}));
  EXPECT_EQ(targets.at(TestKind::kOrder), (TestTargets{5000, 9412}));
  EXPECT_EQ(targets.at(TestKind::kOntological), (TestTargets{13952, 0}));
  EXPECT_EQ(targets.at(TestKind::kVisual), (TestTargets{18000, 8272}));
  EXPECT_EQ(targets.at(TestKind::kNegation), (TestTargets{10000, 0}));
  EXPECT_EQ(targets.at(TestKind::kAntonym), (TestTargets{5000, 0}));
  const RunConfig shipped = LoadConfig(oracle::ConfigDir() / "default.toml");
  EXPECT_EQ(shipped.generation.targets, targets);
}

TEST(ConfigTest, OverridesApply) {
  const RunConfig config = ParseConfig(WithInputs(R"(
images = "img"
limit = 12
[generation]
seed = 9
out_dir = "o"
three_choice_fraction = 0.25
pool_multiplier = 2.0
smoothing = 0.5
max_hypernym_hops = 2
attribute_probability = 0.0
excluded_terms = ["thing"]
jobs = 4
[negation]
binary = 7
[rephrase]
binary = 3
)"),
                                       "/b");
  EXPECT_EQ(config.inputs.images, std::filesystem::path("/b/img"));
  EXPECT_EQ(config.inputs.limit, 12u);
  const auto& g = config.generation;
  EXPECT_EQ(g.seed, 9u);
  EXPECT_EQ(config.out_dir, "/b/o");
  EXPECT_DOUBLE_EQ(g.three_choice_fraction, 0.25);
  EXPECT_DOUBLE_EQ(g.pool_multiplier, 2.0);
  EXPECT_DOUBLE_EQ(g.smoothing, 0.5);
  EXPECT_EQ(g.max_hypernym_hops, 2);
  EXPECT_DOUBLE_EQ(g.attribute_probability, 0.0);
  EXPECT_EQ(g.excluded_terms, std::set<std::string>{"thing"});
  EXPECT_EQ(g.jobs, 4);
  EXPECT_EQ(g.targets.at(TestKind::kNegation), (TestTargets{7, 0}));
  // An unset key in a given section keeps its default.
  EXPECT_EQ(g.targets.at(TestKind::kRephrase), (TestTargets{3, 9412}));
  const auto echo = ConfigEcho(config);
  EXPECT_EQ(echo.at("generation").at("seed"), 9);
}

TEST(ConfigTest, RejectsBadInput) {
  const std::vector<std::string> bad = {
      "[inputs]\nscene_graphs = \"x\"\n",
      WithInputs("[generation]\nseeed = 1\n"),
      WithInputs("[bogus]\n"),
      WithInputs("[generation]\nseed = \"one\"\n"),
      WithInputs("[generation]\nseed = -1\n"),
      WithInputs("[generation]\nthree_choice_fraction = 1.5\n"),
      WithInputs("[generation]\njobs = 0\n"),
      WithInputs("[generation]\npool_multiplier = 0.5\n"),
      WithInputs("[generation]\nexcluded_terms = [1]\n"),
      WithInputs("[negation]\nmulti_choice = 5\n"),
      WithInputs("[order]\nbinary = -2\n"),
      WithInputs("[inputs.extra]\n"),
      WithInputs("[generation\n"),
  };
  for (const auto& text : bad) EXPECT_THROW(ParseConfig(text, "/"), Error) << text;
  try {
    ParseConfig(WithInputs("[generation]\nseed = = 2\n"), "/");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos) << e.what();
  }
}

TEST(ConfigTest, ShippedConfigsResolve) {
  for (const char* name : {"default.toml", "fixture.toml"}) {
    const RunConfig config = LoadConfig(oracle::ConfigDir() / name);
    EXPECT_TRUE(std::filesystem::exists(config.inputs.ontology)) << name;
    EXPECT_TRUE(std::filesystem::exists(config.inputs.templates)) << name;
    EXPECT_TRUE(std::filesystem::exists(config.inputs.negated_templates)) << name;
  }
  const RunConfig fixture = LoadConfig(oracle::ConfigDir() / "fixture.toml");
  EXPECT_TRUE(std::filesystem::exists(fixture.inputs.scene_graphs));
  EXPECT_TRUE(std::filesystem::is_directory(*fixture.inputs.images));
}

}  // namespace
}  // namespace vqaprobe
