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

// Scene-graph corpus loading (GQA JSON layout), presence queries and corpus
// co-occurrence statistics.

#ifndef VQAPROBE_SCENE_GRAPH_H_
#define VQAPROBE_SCENE_GRAPH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace vqaprobe {

class Ontology;

struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool Within(int width, int height) const {
    return x >= 0 && y >= 0 && w > 0 && h > 0 && right() <= width &&
           bottom() <= height;
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct SceneRelation {
  std::string predicate;  // raw phrase, e.g. "to the left of"
  std::string target_id;
  friend bool operator==(const SceneRelation&, const SceneRelation&) = default;
};

struct SceneObject {
  std::string object_id;
  std::string name;
  std::vector<std::string> attributes;  // sorted, unique
  std::vector<SceneRelation> relations;
  BoundingBox box;

  bool HasAttribute(std::string_view attribute) const;
  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

struct SceneGraph {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::map<std::string, SceneObject> objects;

  const SceneObject* Find(const std::string& object_id) const;
  // Distinct object names.
  std::set<std::string> Names() const;
  size_t CountName(std::string_view name) const;
  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

struct CorpusLoadResult {
  std::vector<SceneGraph> graphs;  // sorted by image_id
  std::vector<std::string> warnings;
  size_t skipped = 0;
};

// Parses a GQA scene-graph document: image_id -> {width, height, objects:
// {object_id -> {name, attributes, relations: [{name, object}], x, y, w, h}}}.
// Entries violating the schema are skipped with a warning; boxes overhanging
// the image are clamped and dangling relations dropped, also with warnings.
CorpusLoadResult ParseCorpus(const nlohmann::json& document,
                             std::optional<size_t> limit = std::nullopt);

// Throws Error if the file cannot be read or is not JSON.
CorpusLoadResult LoadCorpus(const std::filesystem::path& path,
                            std::optional<size_t> limit = std::nullopt);

// All object names in the graph plus every hypernym on their paths. Names the
// ontology does not know pass through unexpanded; they are appended to
// `unresolved` when it is given.
std::set<std::string> PresenceClosure(const SceneGraph& graph,
                                      const Ontology& ontology,
                                      std::vector<std::string>* unresolved = nullptr);

struct CooccurrenceModel {
  // Images containing the name (a name counts once per image).
  std::map<std::string, int64_t> object_counts;
  // Unordered distinct-name pairs, stored with first < second.
  std::map<std::pair<std::string, std::string>, int64_t> pair_counts;
  // object name -> attribute -> number of annotated objects carrying it.
  std::map<std::string, std::map<std::string, int64_t>> attr_given_object;
  std::array<double, 3> mean_pixel = {0.0, 0.0, 0.0};  // RGB, [0, 255]
  std::string mean_pixel_source;

  int64_t ObjectCount(const std::string& name) const;
  int64_t PairCount(const std::string& a, const std::string& b) const;
  int64_t AttributeCount(const std::string& object, const std::string& attribute) const;

  // name -> co-occurring name -> count, both directions.
  std::map<std::string, std::map<std::string, int64_t>> Neighbors() const;

  nlohmann::json ToJson() const;
  static CooccurrenceModel FromJson(const nlohmann::json& json);
  void Save(const std::filesystem::path& path) const;
  static CooccurrenceModel Load(const std::filesystem::path& path);

  friend bool operator==(const CooccurrenceModel&, const CooccurrenceModel&) = default;
};

// Single-pass tally. Throws Error on an empty corpus. mean_pixel is left
// for the caller to fill from image data.
CooccurrenceModel FitCooccurrence(std::span<const SceneGraph> corpus);

}  // namespace vqaprobe

#endif  // VQAPROBE_SCENE_GRAPH_H_
