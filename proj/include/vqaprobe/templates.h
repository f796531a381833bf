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

// Question template grammar, library and rendering.
//
// Markers:
//   [N:Is]                  is/are agreeing with argument N
//   [N:DET]                 a/an/(nothing) for argument N's noun phrase
//   <objN> <attrsN>         object name and attribute text of argument N
//   <NrelM>                 relation phrase from argument M toward argument N
//   <obj-categoryN>         hypernym class of argument N's object
//   <categoryN>             attribute or action category of argument N
//   <obj-category-optionsN> choices with articles ("a van or a truck")
//   <category-optionsN>     bare choices ("wood, metal, or plastic")

#ifndef VQAPROBE_TEMPLATES_H_
#define VQAPROBE_TEMPLATES_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vqaprobe/random.h"

namespace vqaprobe {

enum class QType { kQ1 = 1, kQ2, kQ3, kQ4, kQ5, kQ6, kQ7 };

inline constexpr std::array<QType, 7> kAllQTypes = {QType::kQ1, QType::kQ2, QType::kQ3,
                                                    QType::kQ4, QType::kQ5, QType::kQ6,
                                                    QType::kQ7};

std::string QTypeName(QType qtype);  // "Q1"
QType ParseQType(std::string_view text);
// Yes/no questions (Q1-Q4).
bool IsVerification(QType qtype);
bool IsMultiChoice(QType qtype);

enum class SlotKind {
  kObj,
  kAttrs,
  kRel,
  kObjCategory,
  kCategory,
  kOptions,
  kCopula,
  kDeterminer,
};

struct Slot {
  SlotKind kind = SlotKind::kObj;
  int arg = 1;             // 1 or 2
  int rel_target = 0;      // REL only: the argument the relation points to
  bool object_options = false;  // OPTIONS only: render choices with articles
  friend bool operator==(const Slot&, const Slot&) = default;
};

using TemplateToken = std::variant<std::string, Slot>;

struct Template {
  std::string id;
  QType qtype = QType::kQ1;
  std::vector<TemplateToken> tokens;
  std::optional<std::string> negated_pair_id;
  bool negated = false;  // authored negation of another template

  std::vector<Slot> Slots() const;
  bool Uses(SlotKind kind, int arg) const;
  friend bool operator==(const Template&, const Template&) = default;
};

// Throws Error with the byte offset on an unknown marker, a missing or
// out-of-range argument index, a second OPTIONS slot, or empty input.
Template ParseTemplate(std::string_view surface);
std::string SerializeTemplate(const Template& tmpl);

struct BoundArg {
  std::string name;      // object name
  std::string category;  // hypernym class or attribute/action category
  std::string attrs;     // attribute text shown before the name (Q4: queried)
  std::string relation;  // relation phrase toward the other argument
  bool plural = false;
  std::string object_id;  // scene object, empty for absent objects
  friend bool operator==(const BoundArg&, const BoundArg&) = default;
};

struct Binding {
  std::array<BoundArg, 2> args;
  std::vector<std::string> choices;
  friend bool operator==(const Binding&, const Binding&) = default;
};

nlohmann::json BindingToJson(const Binding& binding);
Binding BindingFromJson(const nlohmann::json& node);

// Throws Error if a slot cannot be resolved or the choice count is not 2 or 3.
std::string Render(const Template& tmpl, const Binding& binding);

// "X or Y" / "X, Y, or Z".
std::string JoinChoices(const std::vector<std::string>& choices);

class TemplateLibrary {
 public:
  TemplateLibrary() = default;
  TemplateLibrary(TemplateLibrary&&) = default;
  TemplateLibrary& operator=(TemplateLibrary&&) = default;
  TemplateLibrary(const TemplateLibrary&) = delete;
  TemplateLibrary& operator=(const TemplateLibrary&) = delete;

  static TemplateLibrary Load(const std::filesystem::path& primary,
                              const std::filesystem::path& negated);
  static TemplateLibrary FromTemplates(std::vector<Template> primary,
                                       std::vector<Template> negated);

  const Template* Find(const std::string& id) const;
  const Template& Get(const std::string& id) const;
  // Primary templates of one type, in file order.
  const std::vector<const Template*>& OfType(QType qtype) const;
  std::map<QType, size_t> Counts() const;
  size_t NegatedCount() const { return negated_.size(); }

  // Uniform among the other primary templates of the same type.
  const Template& Sibling(const Template& tmpl, Rng& rng) const;
  const Template& NegatedCounterpart(const Template& tmpl) const;

  // Structural rules per type and negation pairing; empty when valid.
  std::vector<std::string> Validate() const;

 private:
  void Index();

  std::vector<Template> primary_;
  std::vector<Template> negated_;
  std::map<std::string, const Template*> by_id_;
  std::map<QType, std::vector<const Template*>> by_type_;
};

}  // namespace vqaprobe

#endif  // VQAPROBE_TEMPLATES_H_
