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

#include <random>

#include "test_env.h"
#include "vqaprobe/sampling.h"

namespace vqaprobe {
namespace {

// Pair counts by a direct loop over the raw fixture.
std::map<std::pair<std::string, std::string>, long> RawPairCounts(
    const std::map<std::string, oracle::RawGraph>& raw) {
  std::map<std::pair<std::string, std::string>, long> pairs;
  for (const auto& [id, graph] : raw) {
    std::set<std::string> names;
    for (const auto& [oid, o] : graph.objects) names.insert(o.name);
    for (const auto& a : names) {
      for (const auto& b : names) {
        if (a != b) ++pairs[{a, b}];
      }
    }
  }
  return pairs;
}

std::vector<double> ExpectedWeights(const testenv::Env& env, const SceneGraph& graph) {
  static const auto pairs = RawPairCounts(env.raw);
  const auto& raw = env.raw.at(graph.image_id);
  std::set<std::string> names;
  for (const auto& [oid, o] : raw.objects) names.insert(o.name);
  std::vector<double> weights;
  for (const auto& candidate : env.sampler->Candidates()) {
    if (!env.knowledge.SafelyAbsent(candidate, raw)) {
      weights.push_back(0.0);
      continue;
    }
    long total = 0;
    for (const auto& name : names) {
      auto it = pairs.find({candidate, name});
      if (it != pairs.end()) total += it->second;
    }
    weights.push_back(static_cast<double>(total) + env.config.smoothing);
  }
  return weights;
}

TEST(SamplingTest, CandidatesSkipExcludedTerms) {
  const auto& env = testenv::Get();
  for (const auto& term : env.config.excluded_terms) {
    EXPECT_EQ(std::count(env.sampler->Candidates().begin(), env.sampler->Candidates().end(), term),
              0)
        << term;
  }
}

TEST(SamplingTest, WeightsMatchOracle) {
  const auto& env = testenv::Get();
  for (size_t i = 0; i < env.corpus.size(); i += 5) {
    EXPECT_EQ(env.sampler->Weights(env.views[i]), ExpectedWeights(env, env.corpus[i]))
        << env.corpus[i].image_id;
  }
}

TEST(SamplingTest, FalseObjectsFollowConditionalDistribution) {
  const auto& env = testenv::Get();
  const size_t image = 3;
  const auto weights = ExpectedWeights(env, env.corpus[image]);
  double total = 0;
  for (double w : weights) total += w;
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < env.sampler->Candidates().size(); ++i) {
    index[env.sampler->Candidates()[i]] = i;
  }
  std::vector<long> counts(weights.size(), 0);
  Rng rng(31);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    auto sample = env.sampler->Sample(env.views[image], rng, {}, false);
    ASSERT_TRUE(sample.has_value());
    EXPECT_TRUE(sample->attribute.empty());
    ++counts[index.at(sample->name)];
  }
  // Pool cells with small expectations so the statistic stays valid.
  std::vector<long> observed;
  std::vector<double> probabilities;
  long pooled_obs = 0;
  double pooled_p = 0;
  int cells = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) {
      EXPECT_EQ(counts[i], 0) << env.sampler->Candidates()[i];
      continue;
    }
    const double p = weights[i] / total;
    if (p * draws < 10) {
      pooled_obs += counts[i];
      pooled_p += p;
    } else {
      observed.push_back(counts[i]);
      probabilities.push_back(p);
      ++cells;
    }
  }
  observed.push_back(pooled_obs);
  probabilities.push_back(pooled_p);
  EXPECT_LT(oracle::ChiSquare(observed, probabilities), oracle::ChiSquareCritical(cells));
}

TEST(SamplingTest, AcceptFilterAndAttributes) {
  const auto& env = testenv::Get();
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    auto sample = env.sampler->Sample(env.views[0], rng,
                                      [](const std::string& n) { return n.size() > 6; });
    ASSERT_TRUE(sample.has_value());
    EXPECT_GT(sample->name.size(), 6u);
    if (!sample->attribute.empty()) {
      EXPECT_TRUE(env.ontology.CategoryOf(sample->attribute).has_value());
      EXPECT_GT(env.coocc.AttributeCount(sample->name, sample->attribute), 0);
    }
  }
  EXPECT_FALSE(env.sampler->Sample(env.views[0], rng, [](const std::string&) { return false; }));
}

TEST(SamplingTest, AttributeChoicesRespectConstraints) {
  const auto& env = testenv::Get();
  Rng rng(33);
  int produced = 0;
  for (size_t i = 0; i < env.corpus.size(); ++i) {
    for (const auto& [id, object] : env.corpus[i].objects) {
      for (const auto& truth : object.attributes) {
        auto category = env.ontology.CategoryOf(truth);
        if (!category) continue;
        const bool action = env.ontology.IsAction(truth);
        for (int k : {2, 3}) {
          ChoiceRequest request{truth,
                                action ? ChoiceClass::kActionCategory
                                       : ChoiceClass::kAttributeCategory,
                                *category, k, &env.views[i], &object};
          auto choices = GenerateChoices(request, env.ontology, env.coocc,
                                         env.sampler->settings(), rng);
          if (!choices) continue;
          ++produced;
          ASSERT_EQ(choices->size(), static_cast<size_t>(k));
          EXPECT_EQ(std::count(choices->begin(), choices->end(), truth), 1);
          for (const auto& c : *choices) {
            EXPECT_EQ(env.knowledge.CategoryOf(c), *category);
            if (c != truth) EXPECT_FALSE(object.HasAttribute(c)) << c;
            for (const auto& d : *choices) {
              if (c != d) EXPECT_FALSE(env.knowledge.Excluded(c, d)) << c << "/" << d;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(produced, 100);
}

TEST(SamplingTest, HypernymChoicesRespectConstraints) {
  const auto& env = testenv::Get();
  Rng rng(34);
  int produced = 0;
  for (size_t i = 0; i < env.corpus.size(); ++i) {
    const auto& raw = env.raw.at(env.corpus[i].image_id);
    for (const auto& [id, object] : env.corpus[i].objects) {
      for (const auto& category : env.ontology.Hypernyms(object.name)) {
        ChoiceRequest request{object.name, ChoiceClass::kHypernym, category, 3, &env.views[i],
                              &object};
        auto choices =
            GenerateChoices(request, env.ontology, env.coocc, env.sampler->settings(), rng);
        if (!choices) continue;
        ++produced;
        for (const auto& c : *choices) {
          EXPECT_TRUE(env.knowledge.taxonomy.IsAncestor(category, c)) << c << " in " << category;
          if (c != object.name) EXPECT_TRUE(env.knowledge.SafelyAbsent(c, raw)) << c;
          for (const auto& d : *choices) {
            if (c != d) EXPECT_FALSE(env.knowledge.taxonomy.SamePath(c, d)) << c << "/" << d;
          }
        }
        EXPECT_TRUE(ObjectChoicesDistinct(*choices, env.ontology));
      }
    }
  }
  EXPECT_GT(produced, 50);
}

// Sequential weighted draws without replacement, written independently.
std::vector<size_t> ReferenceSubsample(const std::vector<double>& weights, size_t n,
                                       std::mt19937_64& engine) {
  std::vector<double> w = weights;
  std::vector<size_t> out;
  for (size_t i = 0; i < n; ++i) {
    std::discrete_distribution<size_t> pick(w.begin(), w.end());
    const size_t j = pick(engine);
    out.push_back(j);
    w[j] = 0.0;
  }
  return out;
}

TEST(SamplingTest, DiversitySubsampleMatchesReferenceSimulation) {
  std::vector<std::string> classes, answers;
  for (int i = 0; i < 60; ++i) {
    classes.push_back("common");
    answers.push_back(i % 2 ? "red" : "blue");
  }
  for (int i = 0; i < 12; ++i) {
    classes.push_back("medium");
    answers.push_back("red");
  }
  for (int i = 0; i < 4; ++i) {
    classes.push_back("rare");
    answers.push_back("green");
  }
  std::map<std::string, double> cc, ac;
  for (size_t i = 0; i < classes.size(); ++i) {
    cc[classes[i]] += 1;
    ac[answers[i]] += 1;
  }
  std::vector<double> weights;
  for (size_t i = 0; i < classes.size(); ++i) {
    weights.push_back(1.0 / (cc[classes[i]] * ac[answers[i]]));
  }
  const size_t n = 15;
  const int runs = 4000;
  std::map<std::string, double> got, want;
  Rng rng(35);
  std::mt19937_64 engine(35);
  for (int r = 0; r < runs; ++r) {
    const auto picks = DiversitySubsample(classes, answers, n, rng);
    ASSERT_EQ(std::set<size_t>(picks.begin(), picks.end()).size(), n);
    for (size_t i : picks) got[classes[i]] += 1.0 / runs;
    for (size_t i : ReferenceSubsample(weights, n, engine)) want[classes[i]] += 1.0 / runs;
  }
  for (const auto& [klass, mean] : want) {
    EXPECT_NEAR(got[klass], mean, 0.15) << klass;
  }
  // Rare classes are over-represented relative to their pool share.
  EXPECT_GT(got["rare"] / n, 4.0 / 76.0 * 2);
  EXPECT_THROW(DiversitySubsample(classes, answers, classes.size() + 1, rng), Error);
  EXPECT_EQ(DiversitySubsample(classes, answers, classes.size(), rng).size(), classes.size());
}

}  // namespace
}  // namespace vqaprobe
