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

#include "vqaprobe/templates.h"

#include <algorithm>
#include <cctype>

#include "vqaprobe/common.h"
#include "vqaprobe/nouns.h"

namespace vqaprobe {

using nlohmann::json;

std::string QTypeName(QType qtype) {
  return "Q" + std::to_string(static_cast<int>(qtype));
}

QType ParseQType(std::string_view text) {
  const std::string t = Trim(text);
  if (t.size() == 2 && (t[0] == 'Q' || t[0] == 'q') && t[1] >= '1' && t[1] <= '7') {
    return static_cast<QType>(t[1] - '0');
  }
  throw Error("unknown question type '" + t + "'");
}

bool IsVerification(QType qtype) { return static_cast<int>(qtype) <= 4; }
bool IsMultiChoice(QType qtype) { return !IsVerification(qtype); }

std::vector<Slot> Template::Slots() const {
  std::vector<Slot> slots;
  for (const auto& token : tokens) {
    if (const auto* slot = std::get_if<Slot>(&token)) slots.push_back(*slot);
  }
  return slots;
}

bool Template::Uses(SlotKind kind, int arg) const {
  for (const auto& token : tokens) {
    const auto* slot = std::get_if<Slot>(&token);
    if (slot && slot->kind == kind && slot->arg == arg) return true;
  }
  return false;
}

namespace {

[[noreturn]] void ParseFail(size_t offset, const std::string& message,
                            std::string_view surface) {
  throw Error("template parse error at byte " + std::to_string(offset) + ": " + message +
              " in \"" + std::string(surface) + "\"");
}

int ParseArgIndex(std::string_view digits, size_t offset, std::string_view surface) {
  if (digits.empty()) ParseFail(offset, "missing argument index", surface);
  if (digits.size() != 1 || (digits[0] != '1' && digits[0] != '2')) {
    ParseFail(offset, "argument index must be 1 or 2", surface);
  }
  return digits[0] - '0';
}

bool AllDigits(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Slot ParseAngle(std::string_view body, size_t offset, std::string_view surface) {
  struct Prefix {
    std::string_view name;
    SlotKind kind;
    bool object_options;
  };
  // Longest names first so "obj-category-options" is not read as "obj".
  static constexpr Prefix kPrefixes[] = {
      {"obj-category-options", SlotKind::kOptions, true},
      {"category-options", SlotKind::kOptions, false},
      {"obj-category", SlotKind::kObjCategory, false},
      {"category", SlotKind::kCategory, false},
      {"attrs", SlotKind::kAttrs, false},
      {"obj", SlotKind::kObj, false},
  };
  for (const auto& prefix : kPrefixes) {
    if (!StartsWith(body, prefix.name)) continue;
    std::string_view rest = body.substr(prefix.name.size());
    if (!AllDigits(rest)) continue;
    Slot slot;
    slot.kind = prefix.kind;
    slot.object_options = prefix.object_options;
    slot.arg = ParseArgIndex(rest, offset, surface);
    return slot;
  }
  const size_t rel = body.find("rel");
  if (rel != std::string_view::npos) {
    std::string_view left = body.substr(0, rel);
    std::string_view right = body.substr(rel + 3);
    if (AllDigits(left) && AllDigits(right)) {
      Slot slot;
      slot.kind = SlotKind::kRel;
      slot.rel_target = ParseArgIndex(left, offset, surface);
      slot.arg = ParseArgIndex(right, offset, surface);
      if (slot.rel_target == slot.arg) ParseFail(offset, "relation to itself", surface);
      return slot;
    }
  }
  ParseFail(offset, "unknown marker <" + std::string(body) + ">", surface);
}

Slot ParseBracket(std::string_view body, size_t offset, std::string_view surface) {
  const size_t colon = body.find(':');
  if (colon == std::string_view::npos) {
    ParseFail(offset, "unknown marker [" + std::string(body) + "]", surface);
  }
  std::string_view name = body.substr(colon + 1);
  Slot slot;
  if (name == "Is") {
    slot.kind = SlotKind::kCopula;
  } else if (name == "DET") {
    slot.kind = SlotKind::kDeterminer;
  } else {
    ParseFail(offset, "unknown marker [" + std::string(body) + "]", surface);
  }
  slot.arg = ParseArgIndex(body.substr(0, colon), offset, surface);
  return slot;
}

std::string SlotText(const Slot& slot) {
  const std::string n = std::to_string(slot.arg);
  switch (slot.kind) {
    case SlotKind::kObj: return "<obj" + n + ">";
    case SlotKind::kAttrs: return "<attrs" + n + ">";
    case SlotKind::kRel: return "<" + std::to_string(slot.rel_target) + "rel" + n + ">";
    case SlotKind::kObjCategory: return "<obj-category" + n + ">";
    case SlotKind::kCategory: return "<category" + n + ">";
    case SlotKind::kOptions:
      return slot.object_options ? "<obj-category-options" + n + ">"
                                 : "<category-options" + n + ">";
    case SlotKind::kCopula: return "[" + n + ":Is]";
    case SlotKind::kDeterminer: return "[" + n + ":DET]";
  }
  return {};
}

}  // namespace

Template ParseTemplate(std::string_view surface) {
  if (Trim(surface).empty()) ParseFail(0, "empty template", surface);
  Template tmpl;
  std::string literal;
  bool has_options = false;
  size_t i = 0;
  while (i < surface.size()) {
    const char c = surface[i];
    if (c != '<' && c != '[') {
      literal.push_back(c);
      ++i;
      continue;
    }
    const char close = c == '<' ? '>' : ']';
    const size_t end = surface.find(close, i + 1);
    if (end == std::string_view::npos) ParseFail(i, "unterminated marker", surface);
    std::string_view body = surface.substr(i + 1, end - i - 1);
    Slot slot = c == '<' ? ParseAngle(body, i, surface) : ParseBracket(body, i, surface);
    if (slot.kind == SlotKind::kOptions) {
      if (has_options) ParseFail(i, "duplicate options slot", surface);
      has_options = true;
    }
    if (!literal.empty()) tmpl.tokens.emplace_back(std::move(literal));
    literal.clear();
    tmpl.tokens.emplace_back(slot);
    i = end + 1;
  }
  if (!literal.empty()) tmpl.tokens.emplace_back(std::move(literal));
  return tmpl;
}

std::string SerializeTemplate(const Template& tmpl) {
  std::string out;
  for (const auto& token : tmpl.tokens) {
    if (const auto* text = std::get_if<std::string>(&token)) {
      out += *text;
    } else {
      out += SlotText(std::get<Slot>(token));
    }
  }
  return out;
}

json BindingToJson(const Binding& binding) {
  json args = json::array();
  for (const auto& arg : binding.args) {
    args.push_back({{"name", arg.name},
                    {"category", arg.category},
                    {"attrs", arg.attrs},
                    {"relation", arg.relation},
                    {"plural", arg.plural},
                    {"object_id", arg.object_id}});
  }
  return json{{"args", std::move(args)}, {"choices", binding.choices}};
}

Binding BindingFromJson(const json& node) {
  Binding binding;
  const auto& args = node.at("args");
  if (!args.is_array() || args.size() != 2) throw Error("binding needs two args");
  for (size_t i = 0; i < 2; ++i) {
    BoundArg& arg = binding.args[i];
    arg.name = args[i].value("name", "");
    arg.category = args[i].value("category", "");
    arg.attrs = args[i].value("attrs", "");
    arg.relation = args[i].value("relation", "");
    arg.plural = args[i].value("plural", false);
    arg.object_id = args[i].value("object_id", "");
  }
  binding.choices = node.value("choices", std::vector<std::string>{});
  return binding;
}

std::string JoinChoices(const std::vector<std::string>& choices) {
  if (choices.size() == 2) return choices[0] + " or " + choices[1];
  std::string out;
  for (size_t i = 0; i < choices.size(); ++i) {
    if (i > 0) out += i + 1 == choices.size() ? ", or " : ", ";
    out += choices[i];
  }
  return out;
}

namespace {

// Collapses whitespace, drops spaces before punctuation, capitalizes and
// terminates with a question mark.
std::string Tidy(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (space) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      continue;
    }
    if ((c == ',' || c == '?' || c == '.') && !out.empty() && out.back() == ' ') {
      out.pop_back();
    }
    if (c == ',' && !out.empty() && out.back() == ',') continue;
    out.push_back(c);
  }
  while (!out.empty() && (out.back() == ' ' || out.back() == ',')) out.pop_back();
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  if (out.empty() || out.back() != '?') out.push_back('?');
  return out;
}

[[noreturn]] void Unresolved(const Template& tmpl, const Slot& slot) {
  throw Error("template " + tmpl.id + ": unresolved slot " + SlotText(slot));
}

}  // namespace

std::string Render(const Template& tmpl, const Binding& binding) {
  // Determiners depend on the next rendered word, so render into pieces and
  // resolve them in a second pass.
  struct Piece {
    std::string text;
    std::optional<int> determiner_arg;
  };
  std::vector<Piece> pieces;
  for (const auto& token : tmpl.tokens) {
    if (const auto* text = std::get_if<std::string>(&token)) {
      pieces.push_back({*text, std::nullopt});
      continue;
    }
    const Slot& slot = std::get<Slot>(token);
    const BoundArg& arg = binding.args[slot.arg - 1];
    switch (slot.kind) {
      case SlotKind::kObj:
        if (arg.name.empty()) Unresolved(tmpl, slot);
        pieces.push_back({arg.name, std::nullopt});
        break;
      case SlotKind::kAttrs:
        pieces.push_back({arg.attrs, std::nullopt});
        break;
      case SlotKind::kRel:
        if (arg.relation.empty()) Unresolved(tmpl, slot);
        pieces.push_back({arg.relation, std::nullopt});
        break;
      case SlotKind::kObjCategory:
      case SlotKind::kCategory:
        if (arg.category.empty()) Unresolved(tmpl, slot);
        pieces.push_back({arg.category, std::nullopt});
        break;
      case SlotKind::kOptions: {
        if (binding.choices.size() != 2 && binding.choices.size() != 3) {
          throw Error("template " + tmpl.id + ": expected 2 or 3 choices, got " +
                      std::to_string(binding.choices.size()));
        }
        std::vector<std::string> shown;
        for (const auto& choice : binding.choices) {
          if (choice.empty()) Unresolved(tmpl, slot);
          shown.push_back(slot.object_options
                              ? WithIndefiniteArticle(choice, IsPluralNoun(choice),
                                                      IsMassNoun(choice))
                              : choice);
        }
        pieces.push_back({JoinChoices(shown), std::nullopt});
        break;
      }
      case SlotKind::kCopula:
        pieces.push_back({arg.plural ? "are" : "is", std::nullopt});
        break;
      case SlotKind::kDeterminer:
        pieces.push_back({"", slot.arg});
        break;
    }
  }
  std::string raw;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (!pieces[i].determiner_arg) {
      raw += pieces[i].text;
      continue;
    }
    const BoundArg& arg = binding.args[*pieces[i].determiner_arg - 1];
    if (arg.plural || IsMassNoun(arg.name)) continue;
    std::string next;
    for (size_t j = i + 1; j < pieces.size() && Trim(next).empty(); ++j) {
      next += pieces[j].text;
    }
    raw += std::string(IndefiniteArticle(Trim(next)));
  }
  return Tidy(raw);
}

TemplateLibrary TemplateLibrary::FromTemplates(std::vector<Template> primary,
                                               std::vector<Template> negated) {
  TemplateLibrary library;
  library.primary_ = std::move(primary);
  library.negated_ = std::move(negated);
  for (auto& tmpl : library.negated_) tmpl.negated = true;
  library.Index();
  return library;
}

namespace {

std::vector<Template> ReadTemplateFile(const std::filesystem::path& path) {
  std::vector<Template> out;
  const auto lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty() || Trim(lines[i])[0] == '#') continue;
    const auto fields = Split(lines[i], '\t');
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    if (fields.size() != 4) throw Error(where + ": expected 4 tab-separated fields");
    Template tmpl;
    try {
      tmpl = ParseTemplate(fields[3]);
      tmpl.qtype = ParseQType(fields[0]);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    tmpl.id = Trim(fields[1]);
    const std::string pair = Trim(fields[2]);
    if (!pair.empty() && pair != "-") tmpl.negated_pair_id = pair;
    out.push_back(std::move(tmpl));
  }
  return out;
}

}  // namespace

TemplateLibrary TemplateLibrary::Load(const std::filesystem::path& primary,
                                      const std::filesystem::path& negated) {
  return FromTemplates(ReadTemplateFile(primary), ReadTemplateFile(negated));
}

void TemplateLibrary::Index() {
  by_id_.clear();
  by_type_.clear();
  for (const auto* list : {&primary_, &negated_}) {
    for (const auto& tmpl : *list) {
      if (!by_id_.emplace(tmpl.id, &tmpl).second) {
        throw Error("duplicate template id " + tmpl.id);
      }
    }
  }
  for (const auto& tmpl : primary_) by_type_[tmpl.qtype].push_back(&tmpl);
}

const Template* TemplateLibrary::Find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : it->second;
}

const Template& TemplateLibrary::Get(const std::string& id) const {
  const Template* tmpl = Find(id);
  if (tmpl == nullptr) throw Error("unknown template id " + id);
  return *tmpl;
}

const std::vector<const Template*>& TemplateLibrary::OfType(QType qtype) const {
  static const std::vector<const Template*> kNone;
  auto it = by_type_.find(qtype);
  return it == by_type_.end() ? kNone : it->second;
}

std::map<QType, size_t> TemplateLibrary::Counts() const {
  std::map<QType, size_t> counts;
  for (QType qtype : kAllQTypes) counts[qtype] = OfType(qtype).size();
  return counts;
}

const Template& TemplateLibrary::Sibling(const Template& tmpl, Rng& rng) const {
  const auto& pool = OfType(tmpl.qtype);
  const auto self = std::find_if(pool.begin(), pool.end(),
                                 [&](const Template* t) { return t->id == tmpl.id; });
  const size_t others = pool.size() - (self == pool.end() ? 0 : 1);
  if (others == 0) {
    throw Error("no sibling template for " + tmpl.id + " (" + QTypeName(tmpl.qtype) + ")");
  }
  size_t index = rng.Uniform(others);
  if (self != pool.end() && index >= static_cast<size_t>(self - pool.begin())) ++index;
  return *pool[index];
}

const Template& TemplateLibrary::NegatedCounterpart(const Template& tmpl) const {
  if (!tmpl.negated_pair_id) throw Error("template " + tmpl.id + " has no negated pair");
  const Template* pair = Find(*tmpl.negated_pair_id);
  if (pair == nullptr) {
    throw Error("template " + tmpl.id + " pairs with unknown id " + *tmpl.negated_pair_id);
  }
  return *pair;
}

namespace {

size_t CountSlots(const Template& tmpl, SlotKind kind, std::optional<int> arg = {}) {
  size_t n = 0;
  for (const auto& slot : tmpl.Slots()) {
    if (slot.kind == kind && (!arg || slot.arg == *arg)) ++n;
  }
  return n;
}

void CheckStructure(const Template& tmpl, std::vector<std::string>& problems) {
  const std::string who = tmpl.id + " (" + QTypeName(tmpl.qtype) + "): ";
  const size_t obj1 = CountSlots(tmpl, SlotKind::kObj, 1);
  const size_t obj2 = CountSlots(tmpl, SlotKind::kObj, 2);
  const size_t options = CountSlots(tmpl, SlotKind::kOptions);
  switch (tmpl.qtype) {
    case QType::kQ1:
      if (obj1 != 1 || obj2 != 0) problems.push_back(who + "needs exactly one object");
      if (tmpl.Uses(SlotKind::kAttrs, 2) || CountSlots(tmpl, SlotKind::kRel) > 0) {
        problems.push_back(who + "must reference argument 1 only");
      }
      break;
    case QType::kQ2:
    case QType::kQ3:
      if (obj1 != 1 || obj2 != 1) problems.push_back(who + "needs exactly two objects");
      break;
    case QType::kQ4:
      if (obj1 != 1 || !tmpl.Uses(SlotKind::kAttrs, 1)) {
        problems.push_back(who + "needs <obj1> and <attrs1>");
      }
      break;
    case QType::kQ5:
      if (!tmpl.Uses(SlotKind::kObjCategory, 1)) problems.push_back(who + "needs <obj-category1>");
      if (obj1 != 0) problems.push_back(who + "must not name the answer object");
      break;
    case QType::kQ6:
    case QType::kQ7:
      if (!tmpl.Uses(SlotKind::kCategory, 1) || obj1 != 1) {
        problems.push_back(who + "needs <category1> and <obj1>");
      }
      break;
  }
  if (IsMultiChoice(tmpl.qtype)) {
    if (options != 1) problems.push_back(who + "needs exactly one options slot");
  } else if (options != 0) {
    problems.push_back(who + "verification template with options");
  }
  for (const auto& slot : tmpl.Slots()) {
    if (slot.kind == SlotKind::kRel && !tmpl.Uses(SlotKind::kObj, slot.rel_target)) {
      problems.push_back(who + "relation points to an argument with no object");
    }
  }
}

}  // namespace

std::vector<std::string> TemplateLibrary::Validate() const {
  std::vector<std::string> problems;
  for (QType qtype : kAllQTypes) {
    if (OfType(qtype).empty()) problems.push_back(QTypeName(qtype) + ": no templates");
  }
  for (const auto& tmpl : primary_) {
    CheckStructure(tmpl, problems);
    const bool pairable = tmpl.qtype <= QType::kQ3;
    if (tmpl.negated_pair_id && !pairable) {
      problems.push_back(tmpl.id + ": negated pair on " + QTypeName(tmpl.qtype));
    }
    if (pairable && !tmpl.negated_pair_id) {
      problems.push_back(tmpl.id + ": missing negated pair");
    }
    if (!tmpl.negated_pair_id) continue;
    const Template* pair = Find(*tmpl.negated_pair_id);
    if (pair == nullptr || !pair->negated) {
      problems.push_back(tmpl.id + ": negated pair " + *tmpl.negated_pair_id + " not found");
    } else if (pair->qtype != tmpl.qtype ||
               pair->negated_pair_id.value_or("") != tmpl.id) {
      problems.push_back(tmpl.id + ": negated pair " + pair->id + " does not point back");
    }
  }
  for (const auto& tmpl : negated_) {
    CheckStructure(tmpl, problems);
    if (!tmpl.negated_pair_id || Find(*tmpl.negated_pair_id) == nullptr) {
      problems.push_back(tmpl.id + ": negated template without an original");
    }
  }
  return problems;
}

}  // namespace vqaprobe
