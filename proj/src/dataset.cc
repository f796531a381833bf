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

#include "vqaprobe/dataset.h"

#include <algorithm>

#include "vqaprobe/common.h"

namespace vqaprobe {

using nlohmann::json;

std::string TestName(TestKind test) {
  switch (test) {
    case TestKind::kRephrase: return "rephrase";
    case TestKind::kOrder: return "order";
    case TestKind::kOntological: return "ontological";
    case TestKind::kVisual: return "visual";
    case TestKind::kNegation: return "negation";
    case TestKind::kAntonym: return "antonym";
  }
  return "?";
}

TestKind ParseTest(std::string_view name) {
  for (TestKind test : kAllTests) {
    if (TestName(test) == name) return test;
  }
  throw Error("unknown test '" + std::string(name) + "'");
}

Relation RelationOf(TestKind test) {
  return test == TestKind::kNegation || test == TestKind::kAntonym ? Relation::kDirectional
                                                                   : Relation::kInvariance;
}

std::string RelationName(Relation relation) {
  return relation == Relation::kInvariance ? "invariance" : "directional";
}

std::string PolarityName(Polarity polarity) {
  switch (polarity) {
    case Polarity::kNone: return "none";
    case Polarity::kPositive: return "positive";
    case Polarity::kNegative: return "negative";
  }
  return "none";
}

namespace {

Polarity ParsePolarity(std::string_view text) {
  if (text == "positive") return Polarity::kPositive;
  if (text == "negative") return Polarity::kNegative;
  if (text == "none") return Polarity::kNone;
  throw Error("unknown polarity '" + std::string(text) + "'");
}

OntologyDirection ParseDirection(std::string_view text) {
  if (text == "hypernym") return OntologyDirection::kHypernym;
  if (text == "hyponym") return OntologyDirection::kHyponym;
  if (text == "none") return OntologyDirection::kNone;
  throw Error("unknown direction '" + std::string(text) + "'");
}

}  // namespace

std::string DirectionName(OntologyDirection direction) {
  switch (direction) {
    case OntologyDirection::kNone: return "none";
    case OntologyDirection::kHypernym: return "hypernym";
    case OntologyDirection::kHyponym: return "hyponym";
  }
  return "none";
}

std::string PerturbationName(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kBlur3: return "blur3";
    case PerturbationKind::kBlur6: return "blur6";
    case PerturbationKind::kBlur9: return "blur9";
    case PerturbationKind::kMask: return "mask";
    case PerturbationKind::kCrop: return "crop";
  }
  return "?";
}

PerturbationKind ParsePerturbation(std::string_view name) {
  for (PerturbationKind kind : kAllPerturbations) {
    if (PerturbationName(kind) == name) return kind;
  }
  throw Error("unknown perturbation '" + std::string(name) + "'");
}

int BlurSigma(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kBlur3: return 3;
    case PerturbationKind::kBlur6: return 6;
    case PerturbationKind::kBlur9: return 9;
    default: return 0;
  }
}

json InstanceToJson(const Instance& instance) {
  return json{{"instance_id", instance.instance_id},
              {"image_id", instance.image_id},
              {"question", instance.question},
              {"answer", instance.answer},
              {"qtype", QTypeName(instance.qtype)},
              {"template_id", instance.template_id},
              {"bound_args", BindingToJson(instance.bound_args)},
              {"choices_order", instance.choices_order},
              {"polarity", PolarityName(instance.polarity)}};
}

Instance InstanceFromJson(const json& node) {
  Instance instance;
  instance.instance_id = node.at("instance_id").get<std::string>();
  instance.image_id = node.at("image_id").get<std::string>();
  instance.question = node.at("question").get<std::string>();
  instance.answer = node.at("answer").get<std::string>();
  instance.qtype = ParseQType(node.at("qtype").get<std::string>());
  instance.template_id = node.at("template_id").get<std::string>();
  instance.bound_args = BindingFromJson(node.at("bound_args"));
  instance.choices_order = node.value("choices_order", std::vector<std::string>{});
  instance.polarity = ParsePolarity(node.value("polarity", "none"));
  return instance;
}

json PairToJson(const InstancePair& pair) {
  json node{{"pair_id", pair.pair_id},
            {"test", TestName(pair.test)},
            {"relation", RelationName(pair.relation)},
            {"original", InstanceToJson(pair.original)},
            {"perturbed", InstanceToJson(pair.perturbed)}};
  if (pair.perturbed_image_ref) node["perturbed_image_ref"] = *pair.perturbed_image_ref;
  if (pair.perturbation) node["perturbation"] = PerturbationName(*pair.perturbation);
  if (!pair.foreground.empty()) {
    json boxes = json::array();
    for (const auto& box : pair.foreground) boxes.push_back({box.x, box.y, box.w, box.h});
    node["foreground"] = std::move(boxes);
  }
  if (!pair.group_id.empty()) node["group_id"] = pair.group_id;
  if (pair.direction != OntologyDirection::kNone) node["direction"] = DirectionName(pair.direction);
  return node;
}

InstancePair PairFromJson(const json& node) {
  InstancePair pair;
  pair.pair_id = node.at("pair_id").get<std::string>();
  pair.test = ParseTest(node.at("test").get<std::string>());
  const std::string relation = node.at("relation").get<std::string>();
  if (relation == "invariance") {
    pair.relation = Relation::kInvariance;
  } else if (relation == "directional") {
    pair.relation = Relation::kDirectional;
  } else {
    throw Error("unknown relation '" + relation + "'");
  }
  pair.original = InstanceFromJson(node.at("original"));
  pair.perturbed = InstanceFromJson(node.at("perturbed"));
  if (node.contains("perturbed_image_ref")) {
    pair.perturbed_image_ref = node["perturbed_image_ref"].get<std::string>();
  }
  if (node.contains("perturbation")) {
    pair.perturbation = ParsePerturbation(node["perturbation"].get<std::string>());
  }
  if (node.contains("foreground")) {
    for (const auto& box : node["foreground"]) {
      pair.foreground.push_back(
          {box.at(0).get<int>(), box.at(1).get<int>(), box.at(2).get<int>(), box.at(3).get<int>()});
    }
  }
  pair.group_id = node.value("group_id", "");
  pair.direction = ParseDirection(node.value("direction", "none"));
  return pair;
}

std::string PairsToJsonl(const std::vector<InstancePair>& pairs) {
  std::string out;
  for (const auto& pair : pairs) {
    out += PairToJson(pair).dump();
    out += '\n';
  }
  return out;
}

void WritePairs(const std::filesystem::path& path, const std::vector<InstancePair>& pairs) {
  WriteFile(path, PairsToJsonl(pairs));
}

std::vector<InstancePair> ReadPairs(const std::filesystem::path& path) {
  std::vector<InstancePair> pairs;
  const auto lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    try {
      pairs.push_back(PairFromJson(json::parse(lines[i])));
    } catch (const std::exception& e) {
      throw Error(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return pairs;
}

std::vector<std::string> CheckPair(const InstancePair& pair) {
  std::vector<std::string> problems;
  auto fail = [&](const std::string& message) {
    problems.push_back(pair.pair_id + ": " + message);
  };
  if (pair.relation != RelationOf(pair.test)) fail("relation does not match test");
  const bool same = pair.original.answer == pair.perturbed.answer;
  if (pair.relation == Relation::kInvariance && !same) fail("invariance pair with a1 != a2");
  if (pair.relation == Relation::kDirectional && same) fail("directional pair with a1 == a2");
  for (const Instance* instance : {&pair.original, &pair.perturbed}) {
    if (IsVerification(instance->qtype)) {
      if (instance->answer != "yes" && instance->answer != "no") {
        fail(instance->instance_id + ": verification answer is not yes/no");
      }
    } else {
      const auto& choices = instance->choices_order;
      if (choices.size() < 2 || choices.size() > 3) {
        fail(instance->instance_id + ": choice count out of range");
      }
      if (std::find(choices.begin(), choices.end(), instance->answer) == choices.end()) {
        fail(instance->instance_id + ": answer not among choices");
      }
    }
  }
  if (pair.test == TestKind::kVisual) {
    if (!pair.perturbed_image_ref || !pair.perturbation) fail("visual pair without image ref");
    if (pair.original.question != pair.perturbed.question) fail("visual pair changes question");
  } else {
    if (pair.perturbed_image_ref) fail("non-visual pair with image ref");
    if (pair.original.image_id != pair.perturbed.image_id) fail("image ids differ");
    if (pair.original.question == pair.perturbed.question) fail("question unchanged");
  }
  return problems;
}

}  // namespace vqaprobe
