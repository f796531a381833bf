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

// Run configuration (TOML). Relative paths resolve against the config file.
//
//   [inputs]
//   scene_graphs = "scene_graphs.json"
//   images = "images"                  # optional; needed by the visual test
//   ontology = "../ontology"
//   templates = "../templates/templates.tsv"
//   negated_templates = "../templates/negated.tsv"
//   cooccurrence_scene_graphs = "..."  # optional; default: scene_graphs
//   mean_pixel_images = "..."          # optional; default: images
//   limit = 0                          # optional; 0 = all images
//
//   [generation]
//   seed = 0
//   out_dir = "out"
//   three_choice_fraction = 0.5
//   pool_multiplier = 4.0
//   smoothing = 1.0
//   max_hypernym_hops = 0
//   attribute_probability = 0.5
//   excluded_terms = ["entity", ...]
//   jobs = 1
//
//   [rephrase]                         # one table per test
//   binary = 10000
//   multi_choice = 9412

#ifndef VQAPROBE_CONFIG_H_
#define VQAPROBE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "vqaprobe/generator.h"
#include "vqaprobe/ontology.h"

namespace vqaprobe {

struct InputPaths {
  std::filesystem::path scene_graphs;
  std::optional<std::filesystem::path> images;
  std::filesystem::path ontology;
  std::filesystem::path templates;
  std::filesystem::path negated_templates;
  std::optional<std::filesystem::path> cooccurrence_scene_graphs;
  std::optional<std::filesystem::path> mean_pixel_images;
  size_t limit = 0;
};

struct RunConfig {
  InputPaths inputs;
  GenerationConfig generation = GenerationConfig::Defaults();
  std::filesystem::path out_dir = "out";
};

// Throws Error on syntax errors, unknown keys, wrong types or bad values.
RunConfig ParseConfig(std::string_view text, const std::filesystem::path& base_dir);
RunConfig LoadConfig(const std::filesystem::path& path);

// Effective configuration, for the manifest.
nlohmann::json ConfigEcho(const RunConfig& config);

}  // namespace vqaprobe

#endif  // VQAPROBE_CONFIG_H_
