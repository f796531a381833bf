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

#include "vqaprobe/metrics.h"

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "vqaprobe/common.h"

namespace vqaprobe {

using nlohmann::json;

std::string NormalizeAnswer(std::string_view raw) {
  std::string text = NormalizeName(raw);
  while (!text.empty() && std::ispunct(static_cast<unsigned char>(text.back()))) {
    text.pop_back();
  }
  text = Trim(text);
  for (std::string_view article : {"a ", "an ", "the "}) {
    if (StartsWith(text, article)) {
      text = Trim(text.substr(article.size()));
      break;
    }
  }
  return text;
}

std::string SideName(Side side) { return side == Side::kOriginal ? "original" : "perturbed"; }

Side ParseSide(std::string_view text) {
  if (text == "original") return Side::kOriginal;
  if (text == "perturbed") return Side::kPerturbed;
  throw Error("unknown side '" + std::string(text) + "'");
}

std::string MissingPolicyName(MissingPolicy policy) {
  return policy == MissingPolicy::kCountAsWrong ? "count-as-wrong" : "exclude";
}

MissingPolicy ParseMissingPolicy(std::string_view text) {
  if (text == "count-as-wrong") return MissingPolicy::kCountAsWrong;
  if (text == "exclude") return MissingPolicy::kExclude;
  throw Error("unknown missing-answer policy '" + std::string(text) + "'");
}

void PredictionSet::Set(const std::string& pair_id, Side side, std::string answer) {
  if (!answers_.emplace(std::make_pair(pair_id, side), std::move(answer)).second) {
    throw Error("duplicate prediction for " + pair_id + "/" + SideName(side));
  }
}

const std::string* PredictionSet::Get(const std::string& pair_id, Side side) const {
  auto it = answers_.find({pair_id, side});
  return it == answers_.end() ? nullptr : &it->second;
}

PredictionSet PredictionSet::Load(const std::filesystem::path& path) {
  PredictionSet set;
  set.model_name = path.stem().string();
  const auto lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    try {
      const json record = json::parse(lines[i]);
      if (record.contains("model") && !record.contains("pair_id")) {
        set.model_name = record["model"].get<std::string>();
        continue;
      }
      set.Set(record.at("pair_id").get<std::string>(),
              ParseSide(record.at("side").get<std::string>()),
              record.at("answer").get<std::string>());
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return set;
}

void PredictionSet::Save(const std::filesystem::path& path) const {
  std::string out = json{{"model", model_name}}.dump() + "\n";
  for (const auto& [key, answer] : answers_) {
    out += json{{"pair_id", key.first}, {"side", SideName(key.second)}, {"answer", answer}}
               .dump();
    out += '\n';
  }
  WriteFile(path, out);
}

void Tally::Add(bool original_ok, bool perturbed_ok, bool consistent_ok) {
  ++pairs;
  original_correct += original_ok ? 1 : 0;
  perturbed_correct += perturbed_ok ? 1 : 0;
  consistent += consistent_ok ? 1 : 0;
  comprehensive += original_ok && perturbed_ok ? 1 : 0;
}

namespace {

double Percent(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double Tally::Acc() const { return Percent(original_correct + perturbed_correct, 2 * pairs); }
double Tally::Cons() const { return Percent(consistent, pairs); }
double Tally::CAcc() const { return Percent(comprehensive, pairs); }
double Tally::OriginalAcc() const { return Percent(original_correct, pairs); }
double Tally::PerturbedAcc() const { return Percent(perturbed_correct, pairs); }

json Tally::ToJson() const {
  return json{{"pairs", pairs},
              {"acc", Acc()},
              {"cons", Cons()},
              {"c_acc", CAcc()},
              {"original_acc", OriginalAcc()},
              {"perturbed_acc", PerturbedAcc()},
              {"tallies",
               {{"original_correct", original_correct},
                {"perturbed_correct", perturbed_correct},
                {"consistent", consistent},
                {"comprehensive", comprehensive}}}};
}

json AnswerRates::ToJson() const {
  return json{{"answers", total()},
              {"yes", Percent(yes, total())},
              {"no", Percent(no, total())},
              {"other", Percent(other, total())}};
}

std::string FormatPercent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

namespace {

std::string ConnectiveOf(QType qtype) {
  switch (qtype) {
    case QType::kQ2: return "conjunctive";
    case QType::kQ3: return "disjunctive";
    default: return "";
  }
}

void CountAnswer(AnswerRates& rates, const std::string& normalized) {
  if (normalized == "yes") {
    ++rates.yes;
  } else if (normalized == "no") {
    ++rates.no;
  } else {
    ++rates.other;
  }
}

}  // namespace

EvalReport Score(const std::vector<InstancePair>& pairs, const PredictionSet& predictions,
                 MissingPolicy policy) {
  EvalReport report;
  report.model = predictions.model_name;
  report.policy = policy;
  if (pairs.empty()) throw Error("no pairs to score");
  report.test = TestName(pairs.front().test);
  report.relation = RelationOf(pairs.front().test);

  std::set<std::string> seen;
  bool any_prediction = false;
  for (const auto& pair : pairs) {
    if (!seen.insert(pair.pair_id).second) throw Error("duplicate pair id " + pair.pair_id);
    if (TestName(pair.test) != report.test) {
      throw Error("pairs from more than one test (" + report.test + ", " +
                  TestName(pair.test) + ")");
    }
    const std::string* raw1 = predictions.Get(pair.pair_id, Side::kOriginal);
    const std::string* raw2 = predictions.Get(pair.pair_id, Side::kPerturbed);
    any_prediction = any_prediction || raw1 != nullptr || raw2 != nullptr;
    report.missing_answers += (raw1 == nullptr ? 1 : 0) + (raw2 == nullptr ? 1 : 0);
    if ((raw1 == nullptr || raw2 == nullptr) && policy == MissingPolicy::kExclude) {
      ++report.excluded_pairs;
      continue;
    }
    const std::optional<std::string> a1 =
        raw1 ? std::optional(NormalizeAnswer(*raw1)) : std::nullopt;
    const std::optional<std::string> a2 =
        raw2 ? std::optional(NormalizeAnswer(*raw2)) : std::nullopt;
    const bool ok1 = a1 && *a1 == NormalizeAnswer(pair.original.answer);
    const bool ok2 = a2 && *a2 == NormalizeAnswer(pair.perturbed.answer);
    // Consistency reads predictions only; a missing side is never consistent.
    bool consistent = false;
    if (a1 && a2) {
      consistent = report.relation == Relation::kInvariance ? *a1 == *a2 : *a1 != *a2;
    }

    report.overall.Add(ok1, ok2, consistent);
    const QType qtype = pair.original.qtype;
    report.by_qtype[QTypeName(qtype)].Add(ok1, ok2, consistent);
    if (IsVerification(qtype)) {
      report.by_answer_type["binary"].Add(ok1, ok2, consistent);
    } else {
      report.by_answer_type["multi-choice"].Add(ok1, ok2, consistent);
      report.by_choice_count[std::to_string(pair.original.choices_order.size()) + "-choice"]
          .Add(ok1, ok2, consistent);
    }
    if (const std::string connective = ConnectiveOf(qtype); !connective.empty()) {
      for (const auto& answer : {a1, a2}) {
        if (answer) CountAnswer(report.yno[connective], *answer);
      }
    }
    if (pair.direction != OntologyDirection::kNone) {
      report.by_direction[DirectionName(pair.direction)].Add(ok1, ok2, consistent);
    }
    if (pair.perturbation) {
      report.by_perturbation[PerturbationName(*pair.perturbation)].Add(ok1, ok2, consistent);
    }
  }
  if (!any_prediction) {
    throw Error("no predictions match the " + report.test + " pairs");
  }
  return report;
}

bool ComprehensivelyCorrect(const InstancePair& pair, const PredictionSet& predictions) {
  const std::string* a1 = predictions.Get(pair.pair_id, Side::kOriginal);
  const std::string* a2 = predictions.Get(pair.pair_id, Side::kPerturbed);
  return a1 && a2 && NormalizeAnswer(*a1) == NormalizeAnswer(pair.original.answer) &&
         NormalizeAnswer(*a2) == NormalizeAnswer(pair.perturbed.answer);
}

namespace {

json TallyTable(const std::map<std::string, Tally>& table) {
  json out = json::object();
  for (const auto& [key, tally] : table) out[key] = tally.ToJson();
  return out;
}

void TextTable(std::ostringstream& out, const std::string& title,
               const std::map<std::string, Tally>& table) {
  if (table.empty()) return;
  out << "\n" << title << " (percent of pairs in each row)\n";
  out << "  " << std::string(14, ' ') << "     K     ACC    CONS   C-ACC   ACC-o   ACC-p\n";
  for (const auto& [key, t] : table) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %-14s %5lld %7s %7s %7s %7s %7s\n", key.c_str(),
                  static_cast<long long>(t.pairs), FormatPercent(t.Acc()).c_str(),
                  FormatPercent(t.Cons()).c_str(), FormatPercent(t.CAcc()).c_str(),
                  FormatPercent(t.OriginalAcc()).c_str(), FormatPercent(t.PerturbedAcc()).c_str());
    out << line;
  }
}

}  // namespace

json EvalReport::ToJson() const {
  json yno_json = json::object();
  for (const auto& [key, rates] : yno) yno_json[key] = rates.ToJson();
  return json{{"test", test},
              {"model", model},
              {"relation", RelationName(relation)},
              {"missing_policy", MissingPolicyName(policy)},
              {"missing_answers", missing_answers},
              {"excluded_pairs", excluded_pairs},
              {"denominators",
               {{"acc", "instances (2K)"},
                {"cons", "pairs (K)"},
                {"c_acc", "pairs (K)"},
                {"yno", "answered instances per connective"}}},
              {"overall", overall.ToJson()},
              {"by_answer_type", TallyTable(by_answer_type)},
              {"by_choice_count", TallyTable(by_choice_count)},
              {"by_qtype", TallyTable(by_qtype)},
              {"yno", std::move(yno_json)},
              {"by_direction", TallyTable(by_direction)},
              {"by_perturbation", TallyTable(by_perturbation)}};
}

std::string EvalReport::ToText() const {
  std::ostringstream out;
  out << "== " << test << " (" << RelationName(relation) << ") model=" << model << "\n";
  out << "pairs K=" << overall.pairs << "  missing answers=" << missing_answers
      << "  policy=" << MissingPolicyName(policy);
  if (policy == MissingPolicy::kExclude) out << "  excluded pairs=" << excluded_pairs;
  out << "\n";
  out << "ACC " << FormatPercent(overall.Acc()) << " (of 2K instances)  CONS "
      << FormatPercent(overall.Cons()) << " (of K pairs)  C-ACC "
      << FormatPercent(overall.CAcc()) << " (of K pairs)\n";
  out << "original ACC " << FormatPercent(overall.OriginalAcc()) << "  perturbed ACC "
      << FormatPercent(overall.PerturbedAcc()) << "\n";
  TextTable(out, "by answer type", by_answer_type);
  TextTable(out, "by choice count", by_choice_count);
  TextTable(out, "by question type", by_qtype);
  TextTable(out, "by ontological direction", by_direction);
  TextTable(out, "by perturbation", by_perturbation);
  if (!yno.empty()) {
    out << "\nanswer rates (percent of answered instances in each row)\n";
    out << "                       N       Y       N       O\n";
    for (const auto& [key, rates] : yno) {
      char line[160];
      std::snprintf(line, sizeof(line), "  %-14s %7lld %7s %7s %7s\n", key.c_str(),
                    static_cast<long long>(rates.total()),
                    FormatPercent(Percent(rates.yes, rates.total())).c_str(),
                    FormatPercent(Percent(rates.no, rates.total())).c_str(),
                    FormatPercent(Percent(rates.other, rates.total())).c_str());
      out << line;
    }
  }
  return out.str();
}

CoverageMatrix ComputeCoverage(const std::vector<InstancePair>& pairs,
                               const std::vector<PredictionSet>& predictions) {
  CoverageMatrix matrix;
  const size_t n = predictions.size();
  std::vector<std::vector<char>> correct(n, std::vector<char>(pairs.size(), 0));
  matrix.correct.assign(n, 0);
  for (size_t m = 0; m < n; ++m) {
    matrix.models.push_back(predictions[m].model_name);
    for (size_t p = 0; p < pairs.size(); ++p) {
      correct[m][p] = ComprehensivelyCorrect(pairs[p], predictions[m]) ? 1 : 0;
      matrix.correct[m] += correct[m][p];
    }
  }
  matrix.cells.assign(n, std::vector<std::optional<double>>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j || matrix.correct[j] == 0) continue;
      int64_t both = 0;
      for (size_t p = 0; p < pairs.size(); ++p) both += correct[i][p] && correct[j][p];
      matrix.cells[i][j] = Percent(both, matrix.correct[j]);
    }
  }
  return matrix;
}

json CoverageMatrix::ToJson() const {
  json cells_json = json::array();
  for (const auto& row : cells) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell ? json(*cell) : json(nullptr));
    cells_json.push_back(std::move(r));
  }
  return json{{"models", models},
              {"correct_pairs", correct},
              {"denominator", "pairs comprehensively correct under the column model"},
              {"cells", std::move(cells_json)}};
}

std::string CoverageMatrix::ToText() const {
  std::ostringstream out;
  out << "coverage: row model's share of the column model's comprehensively correct pairs\n";
  out << std::string(16, ' ');
  for (const auto& model : models) {
    char cell[32];
    std::snprintf(cell, sizeof(cell), " %10.10s", model.c_str());
    out << cell;
  }
  out << "\n";
  for (size_t i = 0; i < models.size(); ++i) {
    char head[32];
    std::snprintf(head, sizeof(head), "%-16.16s", models[i].c_str());
    out << head;
    for (size_t j = 0; j < models.size(); ++j) {
      char cell[32];
      std::snprintf(cell, sizeof(cell), " %10s",
                    cells[i][j] ? FormatPercent(*cells[i][j]).c_str() : "-");
      out << cell;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace vqaprobe
