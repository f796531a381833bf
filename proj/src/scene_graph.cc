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

#include "vqaprobe/scene_graph.h"

#include <algorithm>
#include <cmath>

#include "vqaprobe/common.h"
#include "vqaprobe/ontology.h"

namespace vqaprobe {

using nlohmann::json;

bool SceneObject::HasAttribute(std::string_view attribute) const {
  return std::binary_search(attributes.begin(), attributes.end(), attribute);
}

const SceneObject* SceneGraph::Find(const std::string& object_id) const {
  auto it = objects.find(object_id);
  return it == objects.end() ? nullptr : &it->second;
}

std::set<std::string> SceneGraph::Names() const {
  std::set<std::string> names;
  for (const auto& [id, object] : objects) names.insert(object.name);
  return names;
}

size_t SceneGraph::CountName(std::string_view name) const {
  size_t count = 0;
  for (const auto& [id, object] : objects) {
    if (object.name == name) ++count;
  }
  return count;
}

namespace {

// Numbers in GQA files are sometimes floats; accept any finite number.
std::optional<int> ReadInt(const json& node, const char* key) {
  auto it = node.find(key);
  if (it == node.end() || !it->is_number()) return std::nullopt;
  const double value = it->get<double>();
  if (!std::isfinite(value)) return std::nullopt;
  return static_cast<int>(std::lround(value));
}

// Returns an error message when the entry violates the schema.
std::optional<std::string> ParseImage(const std::string& image_id, const json& entry,
                                      SceneGraph& graph,
                                      std::vector<std::string>& warnings) {
  if (!entry.is_object()) return "entry is not an object";
  const auto width = ReadInt(entry, "width");
  const auto height = ReadInt(entry, "height");
  if (!width || !height || *width <= 0 || *height <= 0) {
    return "missing or invalid width/height";
  }
  auto objects_it = entry.find("objects");
  if (objects_it == entry.end() || !objects_it->is_object()) {
    return "missing objects map";
  }
  graph.image_id = image_id;
  graph.width = *width;
  graph.height = *height;

  for (const auto& [object_id, node] : objects_it->items()) {
    if (!node.is_object()) return "object " + object_id + " is not an object";
    auto name_it = node.find("name");
    if (name_it == node.end() || !name_it->is_string()) {
      return "object " + object_id + " has no name";
    }
    SceneObject object;
    object.object_id = object_id;
    object.name = NormalizeName(name_it->get<std::string>());
    if (object.name.empty()) return "object " + object_id + " has an empty name";

    const auto x = ReadInt(node, "x");
    const auto y = ReadInt(node, "y");
    const auto w = ReadInt(node, "w");
    const auto h = ReadInt(node, "h");
    if (!x || !y || !w || !h) return "object " + object_id + " has no bounding box";
    BoundingBox box{*x, *y, *w, *h};
    if (!box.Within(graph.width, graph.height)) {
      const int left = std::clamp(box.x, 0, graph.width);
      const int top = std::clamp(box.y, 0, graph.height);
      const int right = std::clamp(box.right(), 0, graph.width);
      const int bottom = std::clamp(box.bottom(), 0, graph.height);
      box = BoundingBox{left, top, right - left, bottom - top};
      if (box.w <= 0 || box.h <= 0) {
        warnings.push_back(image_id + ": object " + object_id +
                           " has an empty box after clamping; dropped");
        continue;
      }
      warnings.push_back(image_id + ": object " + object_id + " box clamped to image");
    }
    object.box = box;

    if (auto attrs = node.find("attributes"); attrs != node.end()) {
      if (!attrs->is_array()) return "object " + object_id + " attributes not a list";
      for (const auto& attribute : *attrs) {
        if (!attribute.is_string()) continue;
        std::string value = NormalizeName(attribute.get<std::string>());
        if (!value.empty()) object.attributes.push_back(std::move(value));
      }
      std::sort(object.attributes.begin(), object.attributes.end());
      object.attributes.erase(
          std::unique(object.attributes.begin(), object.attributes.end()),
          object.attributes.end());
    }
    if (auto rels = node.find("relations"); rels != node.end()) {
      if (!rels->is_array()) return "object " + object_id + " relations not a list";
      for (const auto& rel : *rels) {
        auto rel_name = rel.find("name");
        auto rel_target = rel.find("object");
        if (!rel.is_object() || rel_name == rel.end() || rel_target == rel.end() ||
            !rel_name->is_string() || !rel_target->is_string()) {
          return "object " + object_id + " has a malformed relation";
        }
        // Predicates are kept verbatim apart from whitespace normalization.
        object.relations.push_back(
            {NormalizeName(rel_name->get<std::string>()), rel_target->get<std::string>()});
      }
    }
    graph.objects.emplace(object_id, std::move(object));
  }

  for (auto& [object_id, object] : graph.objects) {
    auto& rels = object.relations;
    const size_t before = rels.size();
    rels.erase(std::remove_if(rels.begin(), rels.end(),
                              [&](const SceneRelation& r) {
                                return !graph.objects.contains(r.target_id);
                              }),
               rels.end());
    if (rels.size() != before) {
      warnings.push_back(image_id + ": object " + object_id +
                         " had relations to unknown objects; dropped");
    }
  }
  return std::nullopt;
}

}  // namespace

CorpusLoadResult ParseCorpus(const json& document, std::optional<size_t> limit) {
  CorpusLoadResult result;
  if (document.is_null()) return result;
  if (!document.is_object()) throw Error("scene-graph document must be a JSON object");

  // nlohmann::json objects iterate in key order, so image_ids come sorted.
  for (const auto& [image_id, entry] : document.items()) {
    if (limit && result.graphs.size() >= *limit) break;
    SceneGraph graph;
    std::vector<std::string> local_warnings;
    if (auto problem = ParseImage(image_id, entry, graph, local_warnings)) {
      ++result.skipped;
      result.warnings.push_back(image_id + ": skipped, " + *problem);
      continue;
    }
    result.warnings.insert(result.warnings.end(), local_warnings.begin(),
                           local_warnings.end());
    result.graphs.push_back(std::move(graph));
  }
  return result;
}

CorpusLoadResult LoadCorpus(const std::filesystem::path& path,
                            std::optional<size_t> limit) {
  const std::string text = ReadFile(path);
  json document;
  try {
    document = text.find_first_not_of(" \t\r\n") == std::string::npos
                   ? json()
                   : json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return ParseCorpus(document, limit);
}

std::set<std::string> PresenceClosure(const SceneGraph& graph, const Ontology& ontology,
                                      std::vector<std::string>* unresolved) {
  std::set<std::string> closure;
  for (const auto& [id, object] : graph.objects) {
    if (!closure.insert(object.name).second) continue;
    if (!ontology.Knows(object.name)) {
      if (unresolved) unresolved->push_back(object.name);
      continue;
    }
    for (const auto& hypernym : ontology.Hypernyms(object.name)) closure.insert(hypernym);
  }
  return closure;
}

int64_t CooccurrenceModel::ObjectCount(const std::string& name) const {
  auto it = object_counts.find(name);
  return it == object_counts.end() ? 0 : it->second;
}

int64_t CooccurrenceModel::PairCount(const std::string& a, const std::string& b) const {
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = pair_counts.find(key);
  return it == pair_counts.end() ? 0 : it->second;
}

int64_t CooccurrenceModel::AttributeCount(const std::string& object,
                                          const std::string& attribute) const {
  auto it = attr_given_object.find(object);
  if (it == attr_given_object.end()) return 0;
  auto jt = it->second.find(attribute);
  return jt == it->second.end() ? 0 : jt->second;
}

std::map<std::string, std::map<std::string, int64_t>> CooccurrenceModel::Neighbors() const {
  std::map<std::string, std::map<std::string, int64_t>> neighbors;
  for (const auto& [key, count] : pair_counts) {
    neighbors[key.first][key.second] = count;
    neighbors[key.second][key.first] = count;
  }
  return neighbors;
}

json CooccurrenceModel::ToJson() const {
  json pairs = json::array();
  for (const auto& [key, count] : pair_counts) {
    pairs.push_back(json::array({key.first, key.second, count}));
  }
  json attrs = json::object();
  for (const auto& [object, table] : attr_given_object) {
    attrs[object] = table;
  }
  return json{{"object_counts", object_counts},
              {"pair_counts", std::move(pairs)},
              {"attr_given_object", std::move(attrs)},
              {"mean_pixel", mean_pixel},
              {"mean_pixel_source", mean_pixel_source}};
}

CooccurrenceModel CooccurrenceModel::FromJson(const json& node) {
  CooccurrenceModel model;
  try {
    model.object_counts = node.at("object_counts").get<std::map<std::string, int64_t>>();
    for (const auto& entry : node.at("pair_counts")) {
      std::string a = entry.at(0).get<std::string>();
      std::string b = entry.at(1).get<std::string>();
      if (b < a) std::swap(a, b);
      model.pair_counts[{a, b}] = entry.at(2).get<int64_t>();
    }
    model.attr_given_object =
        node.at("attr_given_object")
            .get<std::map<std::string, std::map<std::string, int64_t>>>();
    model.mean_pixel = node.at("mean_pixel").get<std::array<double, 3>>();
    model.mean_pixel_source = node.value("mean_pixel_source", "");
  } catch (const json::exception& e) {
    throw Error(std::string("malformed co-occurrence model: ") + e.what());
  }
  return model;
}

void CooccurrenceModel::Save(const std::filesystem::path& path) const {
  WriteFile(path, ToJson().dump(1) + "\n");
}

CooccurrenceModel CooccurrenceModel::Load(const std::filesystem::path& path) {
  try {
    return FromJson(json::parse(ReadFile(path)));
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

CooccurrenceModel FitCooccurrence(std::span<const SceneGraph> corpus) {
  if (corpus.empty()) throw Error("cannot fit co-occurrence statistics on an empty corpus");
  CooccurrenceModel model;
  for (const SceneGraph& graph : corpus) {
    const std::set<std::string> names = graph.Names();
    for (auto a = names.begin(); a != names.end(); ++a) {
      ++model.object_counts[*a];
      for (auto b = std::next(a); b != names.end(); ++b) {
        ++model.pair_counts[{*a, *b}];
      }
    }
    for (const auto& [id, object] : graph.objects) {
      auto& table = model.attr_given_object[object.name];
      for (const auto& attribute : object.attributes) ++table[attribute];
    }
  }
  return model;
}

}  // namespace vqaprobe
