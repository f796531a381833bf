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

#include "vqaprobe/ontology.h"

#include <algorithm>

#include "vqaprobe/common.h"
#include "vqaprobe/scene_graph.h"

namespace vqaprobe {

namespace fs = std::filesystem;

OntologyFiles OntologyFiles::InDirectory(const fs::path& dir) {
  return OntologyFiles{dir / "hypernyms.tsv", dir / "antonyms.tsv",
                       dir / "exclusion.tsv", dir / "part_of.tsv",
                       dir / "attributes.tsv", dir / "actions.tsv"};
}

std::vector<fs::path> OntologyFiles::All() const {
  return {hypernyms, antonyms, exclusion, part_of, attributes, actions};
}

namespace {

// Tab-separated rows, skipping blanks and '#' comments. Fields are normalized.
std::vector<std::pair<size_t, std::vector<std::string>>> ReadRows(const fs::path& path) {
  std::vector<std::pair<size_t, std::vector<std::string>>> rows;
  const auto lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string line = Trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    for (const auto& field : Split(lines[i], '\t')) {
      fields.push_back(NormalizeName(field));
    }
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    rows.emplace_back(i + 1, std::move(fields));
  }
  return rows;
}

std::set<std::string> SplitList(const std::string& text) {
  std::set<std::string> members;
  for (const auto& item : Split(text, ',')) {
    std::string value = NormalizeName(item);
    if (!value.empty()) members.insert(std::move(value));
  }
  return members;
}

std::string Where(const fs::path& path, size_t line) {
  return path.string() + ":" + std::to_string(line);
}

const std::vector<std::string> kEmptyPath;

}  // namespace

Ontology Ontology::Load(const OntologyFiles& files) {
  Ontology ontology;
  for (auto& [line, fields] : ReadRows(files.hypernyms)) {
    if (fields.empty()) continue;
    std::string term = fields.front();
    ontology.AddHypernymPath(term, std::vector<std::string>(fields.begin() + 1, fields.end()));
  }
  for (auto& [line, fields] : ReadRows(files.attributes)) {
    if (fields.size() != 2) throw Error(Where(files.attributes, line) + ": expected 2 fields");
    ontology.AddAttribute(fields[0], fields[1]);
  }
  for (auto& [line, fields] : ReadRows(files.actions)) {
    if (fields.size() != 2) throw Error(Where(files.actions, line) + ": expected 2 fields");
    ontology.AddAction(fields[0], fields[1]);
  }
  for (auto& [line, fields] : ReadRows(files.antonyms)) {
    if (fields.size() != 2) throw Error(Where(files.antonyms, line) + ": expected 2 fields");
    ontology.AddAntonymPair(fields[0], fields[1]);
  }
  for (auto& [line, fields] : ReadRows(files.exclusion)) {
    if (fields.size() != 2) throw Error(Where(files.exclusion, line) + ": expected 2 fields");
    ontology.AddExclusionGroup(fields[0], SplitList(fields[1]));
  }
  for (auto& [line, fields] : ReadRows(files.part_of)) {
    if (fields.size() != 2) throw Error(Where(files.part_of, line) + ": expected 2 fields");
    ontology.AddPartOf(fields[0], SplitList(fields[1]));
  }
  return ontology;
}

void Ontology::AddHypernymPath(const std::string& term, std::vector<std::string> path) {
  auto [it, inserted] = paths_.insert_or_assign(term, std::move(path));
  auto pos = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), term);
  if (pos == vocabulary_.end() || *pos != term) vocabulary_.insert(pos, term);
}

void Ontology::AddAntonymPair(const std::string& a, const std::string& b) {
  for (const auto& [key, value] : {std::pair{a, b}, std::pair{b, a}}) {
    auto it = antonyms_.find(key);
    if (it != antonyms_.end() && it->second != value) {
      antonym_conflicts_.push_back("antonym conflict: " + key + " -> " + it->second +
                                   " and " + key + " -> " + value);
      continue;
    }
    antonyms_[key] = value;
  }
}

void Ontology::AddExclusionGroup(const std::string& category, std::set<std::string> members) {
  groups_[category].push_back(std::move(members));
}

void Ontology::AddPartOf(const std::string& part, std::set<std::string> wholes) {
  part_of_[part].insert(wholes.begin(), wholes.end());
}

void Ontology::AddAttribute(const std::string& attribute, const std::string& category) {
  attributes_[attribute] = category;
}

void Ontology::AddAction(const std::string& action, const std::string& category) {
  actions_[action] = category;
}

const std::vector<std::string>& Ontology::Hypernyms(const std::string& name) const {
  auto it = paths_.find(name);
  return it == paths_.end() ? kEmptyPath : it->second;
}

bool Ontology::SharesHypernymPath(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  const auto& pa = Hypernyms(a);
  const auto& pb = Hypernyms(b);
  return std::find(pa.begin(), pa.end(), b) != pa.end() ||
         std::find(pb.begin(), pb.end(), a) != pb.end();
}

std::vector<std::string> Ontology::Hyponyms(const std::string& name, int max_hops) const {
  std::vector<std::string> out;
  for (const auto& [term, path] : paths_) {
    auto it = std::find(path.begin(), path.end(), name);
    if (it == path.end()) continue;
    const int hops = static_cast<int>(it - path.begin()) + 1;
    if (max_hops > 0 && hops > max_hops) continue;
    out.push_back(term);
  }
  return out;
}

std::optional<std::string> Ontology::AntonymOf(const std::string& attribute) const {
  auto it = antonyms_.find(attribute);
  if (it == antonyms_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Ontology::AttributeCategory(const std::string& attribute) const {
  auto it = attributes_.find(attribute);
  if (it == attributes_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Ontology::ActionCategory(const std::string& action) const {
  auto it = actions_.find(action);
  if (it == actions_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Ontology::CategoryOf(const std::string& term) const {
  if (auto category = AttributeCategory(term)) return category;
  return ActionCategory(term);
}

std::vector<std::string> Ontology::MembersOf(const std::string& category) const {
  std::vector<std::string> out;
  for (const auto& [term, cat] : attributes_) {
    if (cat == category) out.push_back(term);
  }
  for (const auto& [term, cat] : actions_) {
    if (cat == category && !attributes_.contains(term)) out.push_back(term);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Ontology::Categories() const {
  std::set<std::string> all;
  for (const auto& [term, cat] : attributes_) all.insert(cat);
  for (const auto& [term, cat] : actions_) all.insert(cat);
  return {all.begin(), all.end()};
}

bool Ontology::MutuallyExclusive(std::span<const std::string> attributes) const {
  if (attributes.empty()) return true;
  std::optional<std::string> category;
  for (const auto& attribute : attributes) {
    auto cat = CategoryOf(attribute);
    if (!cat) return false;
    if (category && *category != *cat) return false;
    category = cat;
  }
  auto it = groups_.find(*category);
  if (it == groups_.end()) return true;
  for (const auto& group : it->second) {
    int hits = 0;
    for (const auto& attribute : attributes) hits += group.contains(attribute) ? 1 : 0;
    if (hits >= 2) return false;
  }
  return true;
}

bool Ontology::CoGrouped(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto cat = CategoryOf(a);
  if (!cat || cat != CategoryOf(b)) return false;
  auto it = groups_.find(*cat);
  if (it == groups_.end()) return false;
  for (const auto& group : it->second) {
    if (group.contains(a) && group.contains(b)) return true;
  }
  return false;
}

const std::set<std::string>* Ontology::WholesOf(const std::string& part) const {
  auto it = part_of_.find(part);
  return it == part_of_.end() ? nullptr : &it->second;
}

bool Ontology::IsAnnotatedPart(const std::string& candidate,
                               const std::set<std::string>& closure) const {
  const auto* wholes = WholesOf(candidate);
  if (wholes == nullptr) return false;
  for (const auto& whole : *wholes) {
    if (closure.contains(whole)) return true;
  }
  return false;
}

bool Ontology::IsAnnotatedPart(const std::string& candidate, const SceneGraph& graph) const {
  return IsAnnotatedPart(candidate, PresenceClosure(graph, *this));
}

std::vector<std::string> Ontology::Validate() const {
  std::vector<std::string> problems = antonym_conflicts_;
  for (const auto& [a, b] : antonyms_) {
    auto back = antonyms_.find(b);
    if (back == antonyms_.end() || back->second != a) {
      problems.push_back("one-way antonym pair: " + a + " -> " + b);
    }
    auto cat_a = CategoryOf(a);
    if (!cat_a) {
      problems.push_back("antonym without a category: " + a);
    } else if (auto cat_b = CategoryOf(b); cat_b && *cat_a != *cat_b) {
      problems.push_back("antonym pair across categories: " + a + " (" + *cat_a + ") / " +
                         b + " (" + *cat_b + ")");
    }
  }
  for (const auto& [term, path] : paths_) {
    std::set<std::string> seen{term};
    for (const auto& hypernym : path) {
      if (!seen.insert(hypernym).second) {
        problems.push_back("hypernym cycle or repeat on path of " + term + " at " + hypernym);
        break;
      }
    }
  }
  for (const auto& [category, groups] : groups_) {
    for (const auto& group : groups) {
      for (const auto& member : group) {
        auto cat = CategoryOf(member);
        if (!cat || *cat != category) {
          problems.push_back("exclusion group member " + member + " is not in category " +
                             category);
        }
      }
    }
  }
  return problems;
}

}  // namespace vqaprobe
