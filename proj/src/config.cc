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

#include "vqaprobe/config.h"

#include <set>
#include <sstream>

#include "tomlplusplus/toml.hpp"
#include "vqaprobe/common.h"

namespace vqaprobe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void RejectUnknown(const toml::table& table, const std::string& section,
                   const std::set<std::string>& known) {
  for (const auto& [key, node] : table) {
    if (!known.contains(std::string(key.str()))) {
      throw Error("config: unknown key '" + std::string(key.str()) + "' in [" + section + "]");
    }
  }
}

fs::path Resolve(const fs::path& base, const std::string& value) {
  fs::path path(value);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::optional<std::string> GetString(const toml::table& table, const std::string& section,
                                     const char* key) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return std::nullopt;
  if (!node->is_string()) throw Error("config: [" + section + "] " + key + " must be a string");
  return node->as_string()->get();
}

std::optional<int64_t> GetInt(const toml::table& table, const std::string& section,
                              const char* key) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return std::nullopt;
  if (!node->is_integer()) throw Error("config: [" + section + "] " + key + " must be an integer");
  return node->as_integer()->get();
}

std::optional<double> GetNumber(const toml::table& table, const std::string& section,
                                const char* key) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return std::nullopt;
  if (node->is_integer()) return static_cast<double>(node->as_integer()->get());
  if (!node->is_floating_point()) throw Error("config: [" + section + "] " + key + " must be a number");
  return node->as_floating_point()->get();
}

const toml::table* Section(const toml::table& root, const std::string& name) {
  const toml::node* node = root.get(name);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) throw Error("config: [" + name + "] must be a table");
  return node->as_table();
}

}  // namespace

RunConfig ParseConfig(std::string_view text, const fs::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream message;
    message << "config: " << e.description() << " at line " << e.source().begin.line;
    throw Error(message.str());
  }
  std::set<std::string> sections = {"inputs", "generation"};
  for (TestKind test : kAllTests) sections.insert(TestName(test));
  RejectUnknown(root, "top level", sections);

  RunConfig config;
  if (const toml::table* inputs = Section(root, "inputs")) {
    RejectUnknown(*inputs, "inputs",
                  {"scene_graphs", "images", "ontology", "templates", "negated_templates",
                   "cooccurrence_scene_graphs", "mean_pixel_images", "limit"});
    auto path = [&](const char* key) -> std::optional<fs::path> {
      auto value = GetString(*inputs, "inputs", key);
      if (!value || value->empty()) return std::nullopt;
      return Resolve(base_dir, *value);
    };
    if (auto p = path("scene_graphs")) config.inputs.scene_graphs = *p;
    config.inputs.images = path("images");
    if (auto p = path("ontology")) config.inputs.ontology = *p;
    if (auto p = path("templates")) config.inputs.templates = *p;
    if (auto p = path("negated_templates")) config.inputs.negated_templates = *p;
    config.inputs.cooccurrence_scene_graphs = path("cooccurrence_scene_graphs");
    config.inputs.mean_pixel_images = path("mean_pixel_images");
    if (auto limit = GetInt(*inputs, "inputs", "limit")) {
      if (*limit < 0) throw Error("config: [inputs] limit must be >= 0");
      config.inputs.limit = static_cast<size_t>(*limit);
    }
  }
  for (auto [value, key] : {std::pair{&config.inputs.scene_graphs, "scene_graphs"},
                            std::pair{&config.inputs.ontology, "ontology"},
                            std::pair{&config.inputs.templates, "templates"},
                            std::pair{&config.inputs.negated_templates, "negated_templates"}}) {
    if (value->empty()) throw Error(std::string("config: [inputs] ") + key + " is required");
  }

  GenerationConfig& gen = config.generation;
  if (const toml::table* section = Section(root, "generation")) {
    const std::string name = "generation";
    RejectUnknown(*section, name,
                  {"seed", "out_dir", "three_choice_fraction", "pool_multiplier", "smoothing",
                   "max_hypernym_hops", "attribute_probability", "excluded_terms", "jobs"});
    if (auto seed = GetInt(*section, name, "seed")) {
      if (*seed < 0) throw Error("config: seed must be >= 0");
      gen.seed = static_cast<uint64_t>(*seed);
    }
    if (auto out = GetString(*section, name, "out_dir")) config.out_dir = Resolve(base_dir, *out);
    if (auto v = GetNumber(*section, name, "three_choice_fraction")) gen.three_choice_fraction = *v;
    if (auto v = GetNumber(*section, name, "pool_multiplier")) gen.pool_multiplier = *v;
    if (auto v = GetNumber(*section, name, "smoothing")) gen.smoothing = *v;
    if (auto v = GetInt(*section, name, "max_hypernym_hops")) gen.max_hypernym_hops = static_cast<int>(*v);
    if (auto v = GetNumber(*section, name, "attribute_probability")) gen.attribute_probability = *v;
    if (auto v = GetInt(*section, name, "jobs")) gen.jobs = static_cast<int>(*v);
    if (const toml::node* node = section->get("excluded_terms")) {
      const toml::array* terms = node->as_array();
      if (terms == nullptr) throw Error("config: excluded_terms must be an array of strings");
      gen.excluded_terms.clear();
      for (const auto& term : *terms) {
        if (!term.is_string()) throw Error("config: excluded_terms must be an array of strings");
        gen.excluded_terms.insert(NormalizeName(term.as_string()->get()));
      }
    }
  }
  if (gen.three_choice_fraction < 0 || gen.three_choice_fraction > 1) {
    throw Error("config: three_choice_fraction must be in [0, 1]");
  }
  if (gen.attribute_probability < 0 || gen.attribute_probability > 1) {
    throw Error("config: attribute_probability must be in [0, 1]");
  }
  if (gen.pool_multiplier < 1) throw Error("config: pool_multiplier must be >= 1");
  if (gen.smoothing < 0) throw Error("config: smoothing must be >= 0");
  if (gen.max_hypernym_hops < 0) throw Error("config: max_hypernym_hops must be >= 0");
  if (gen.jobs < 1) throw Error("config: jobs must be >= 1");

  for (TestKind test : kAllTests) {
    const std::string name = TestName(test);
    const toml::table* section = Section(root, name);
    if (section == nullptr) continue;
    RejectUnknown(*section, name, {"binary", "multi_choice"});
    TestTargets& targets = gen.targets[test];
    if (auto v = GetInt(*section, name, "binary")) targets.binary = *v;
    if (auto v = GetInt(*section, name, "multi_choice")) targets.multi_choice = *v;
    if (targets.binary < 0 || targets.multi_choice < 0) {
      throw Error("config: [" + name + "] targets must be >= 0");
    }
    if (BinaryTypesFor(test).empty() && targets.binary > 0) {
      throw Error("config: [" + name + "] has no binary question types");
    }
    if (MultiChoiceTypesFor(test).empty() && targets.multi_choice > 0) {
      throw Error("config: [" + name + "] has no multi-choice question types");
    }
  }
  return config;
}

RunConfig LoadConfig(const fs::path& path) {
  const std::string text = ReadFile(path);
  try {
    return ParseConfig(text, fs::absolute(path).parent_path());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

json ConfigEcho(const RunConfig& config) {
  auto opt = [](const std::optional<fs::path>& p) { return p ? json(p->string()) : json(nullptr); };
  json targets = json::object();
  for (const auto& [test, t] : config.generation.targets) {
    targets[TestName(test)] = {{"binary", t.binary}, {"multi_choice", t.multi_choice}};
  }
  const GenerationConfig& gen = config.generation;
  return json{{"inputs",
               {{"scene_graphs", config.inputs.scene_graphs.string()},
                {"images", opt(config.inputs.images)},
                {"ontology", config.inputs.ontology.string()},
                {"templates", config.inputs.templates.string()},
                {"negated_templates", config.inputs.negated_templates.string()},
                {"cooccurrence_scene_graphs", opt(config.inputs.cooccurrence_scene_graphs)},
                {"mean_pixel_images", opt(config.inputs.mean_pixel_images)},
                {"limit", config.inputs.limit}}},
              {"generation",
               {{"seed", gen.seed},
                {"three_choice_fraction", gen.three_choice_fraction},
                {"pool_multiplier", gen.pool_multiplier},
                {"smoothing", gen.smoothing},
                {"max_hypernym_hops", gen.max_hypernym_hops},
                {"attribute_probability", gen.attribute_probability},
                {"excluded_terms", gen.excluded_terms}}},
              {"targets", std::move(targets)}};
}

}  // namespace vqaprobe
