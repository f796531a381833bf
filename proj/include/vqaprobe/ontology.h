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

#ifndef VQAPROBE_ONTOLOGY_H_
#define VQAPROBE_ONTOLOGY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vqaprobe {

struct SceneGraph;

struct OntologyFiles {
  std::filesystem::path hypernyms;
  std::filesystem::path antonyms;
  std::filesystem::path exclusion;
  std::filesystem::path part_of;
  std::filesystem::path attributes;
  std::filesystem::path actions;

  // Conventional file names inside one directory.
  static OntologyFiles InDirectory(const std::filesystem::path& dir);
  std::vector<std::filesystem::path> All() const;
};

// Object hierarchy, part-of table, attribute/action categories, antonyms and
// exclusion groups. Immutable after loading.
class Ontology {
 public:
  Ontology() = default;

  static Ontology Load(const OntologyFiles& files);
  static Ontology LoadDirectory(const std::filesystem::path& dir) {
    return Load(OntologyFiles::InDirectory(dir));
  }

  // Builders used by Load and by tests.
  void AddHypernymPath(const std::string& term, std::vector<std::string> path);
  void AddAntonymPair(const std::string& a, const std::string& b);
  void AddExclusionGroup(const std::string& category, std::set<std::string> members);
  void AddPartOf(const std::string& part, std::set<std::string> wholes);
  void AddAttribute(const std::string& attribute, const std::string& category);
  void AddAction(const std::string& action, const std::string& category);

  bool Knows(const std::string& name) const { return paths_.contains(name); }
  // Nearest-first; empty for unknown names.
  const std::vector<std::string>& Hypernyms(const std::string& name) const;
  bool SharesHypernymPath(const std::string& a, const std::string& b) const;
  // Terms whose path contains `name` within `max_hops` steps (0 = any depth),
  // sorted.
  std::vector<std::string> Hyponyms(const std::string& name, int max_hops = 0) const;
  // Sorted object vocabulary.
  const std::vector<std::string>& Vocabulary() const { return vocabulary_; }

  std::optional<std::string> AntonymOf(const std::string& attribute) const;
  const std::map<std::string, std::string>& Antonyms() const { return antonyms_; }

  std::optional<std::string> AttributeCategory(const std::string& attribute) const;
  std::optional<std::string> ActionCategory(const std::string& action) const;
  // Attribute category, else action category.
  std::optional<std::string> CategoryOf(const std::string& term) const;
  bool IsAction(const std::string& term) const { return actions_.contains(term); }
  // Sorted members of an attribute or action category.
  std::vector<std::string> MembersOf(const std::string& category) const;
  std::vector<std::string> Categories() const;

  // False when categories differ or are unknown; otherwise true iff no
  // exclusion group holds two or more of the attributes.
  bool MutuallyExclusive(std::span<const std::string> attributes) const;
  // True when some exclusion group of the shared category holds both.
  bool CoGrouped(const std::string& a, const std::string& b) const;

  const std::set<std::string>* WholesOf(const std::string& part) const;
  bool IsAnnotatedPart(const std::string& candidate, const SceneGraph& graph) const;
  bool IsAnnotatedPart(const std::string& candidate,
                       const std::set<std::string>& closure) const;

  // Structural problems: antonym conflicts, antonym keys without a category,
  // cross-category antonyms, hypernym cycles, mixed-category exclusion groups.
  std::vector<std::string> Validate() const;

 private:
  std::map<std::string, std::vector<std::string>> paths_;
  std::vector<std::string> vocabulary_;
  std::map<std::string, std::string> antonyms_;
  std::vector<std::string> antonym_conflicts_;
  std::map<std::string, std::vector<std::set<std::string>>> groups_;
  std::map<std::string, std::set<std::string>> part_of_;
  std::map<std::string, std::string> attributes_;
  std::map<std::string, std::string> actions_;
};

}  // namespace vqaprobe

#endif  // VQAPROBE_ONTOLOGY_H_
