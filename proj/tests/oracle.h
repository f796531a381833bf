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

// Reference implementations used by the tests. They read the raw data files
// directly and share no logic with the library.

#ifndef VQAPROBE_TESTS_ORACLE_H_
#define VQAPROBE_TESTS_ORACLE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace vqaprobe::oracle {

std::filesystem::path DataDir();
std::filesystem::path TestDataDir();
std::filesystem::path CliPath();
std::filesystem::path ConfigDir();

// Tab-separated rows, comments and blank lines skipped.
std::vector<std::vector<std::string>> ReadTsv(const std::filesystem::path& path);

struct Taxonomy {
  std::map<std::string, std::string> parent;

  static Taxonomy Load(const std::filesystem::path& path);
  // Ancestors, nearest first.
  std::vector<std::string> Ancestors(const std::string& name) const;
  bool IsAncestor(const std::string& ancestor, const std::string& name) const;
  bool SamePath(const std::string& a, const std::string& b) const;
};

struct RawObject {
  std::string name;
  std::set<std::string> attributes;
  std::vector<std::pair<std::string, std::string>> relations;  // predicate, target id
  int x = 0, y = 0, w = 0, h = 0;
};

struct RawGraph {
  int width = 0;
  int height = 0;
  std::map<std::string, RawObject> objects;
};

std::map<std::string, RawGraph> LoadRawGraphs(const std::filesystem::path& path);

struct Knowledge {
  Taxonomy taxonomy;
  std::map<std::string, std::set<std::string>> wholes;           // part -> wholes
  std::vector<std::pair<std::string, std::set<std::string>>> exclusion;
  std::map<std::string, std::string> attribute_category;
  std::map<std::string, std::string> action_category;
  std::map<std::string, std::string> antonym;
  std::set<std::string> negated_templates;

  static Knowledge Load(const std::filesystem::path& data_dir);

  std::optional<std::string> CategoryOf(const std::string& term) const;
  // Object names plus all their ancestors.
  std::set<std::string> Closure(const RawGraph& graph) const;
  // Not present, not a part of a present whole, no hypernym annotated.
  bool SafelyAbsent(const std::string& name, const RawGraph& graph) const;
  // Same category and listed together in one exclusion row.
  bool Excluded(const std::string& a, const std::string& b) const;
};

// Everything wrong with one emitted instance; empty when it checks out.
std::vector<std::string> AuditInstance(const nlohmann::json& instance, const RawGraph& graph,
                                       const Knowledge& knowledge);

// Per-pair tally computed straight from the definitions.
struct BruteTally {
  long pairs = 0;
  long original_correct = 0;
  long perturbed_correct = 0;
  long consistent = 0;
  long comprehensive = 0;
};

// predictions: (pair_id, "original"/"perturbed") -> answer. A missing side
// is wrong and never consistent.
BruteTally BruteForceTally(const std::vector<nlohmann::json>& pairs,
                           const std::map<std::pair<std::string, std::string>, std::string>&
                               predictions);

// Pearson statistic of observed counts against expected probabilities.
double ChiSquare(const std::vector<long>& observed, const std::vector<double>& probabilities);
// Upper 0.1% point of the chi-square distribution (Wilson-Hilferty).
double ChiSquareCritical(int degrees_of_freedom);

}  // namespace vqaprobe::oracle

#endif  // VQAPROBE_TESTS_ORACLE_H_
