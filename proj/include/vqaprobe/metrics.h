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

// Paired accuracy (ACC), self-consistency (CONS) and comprehensive accuracy
// (C-ACC) over prediction files, with per-table breakdowns.

#ifndef VQAPROBE_METRICS_H_
#define VQAPROBE_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vqaprobe/dataset.h"

namespace vqaprobe {

// Lowercase, trim, drop one leading article and trailing punctuation.
std::string NormalizeAnswer(std::string_view raw);

enum class Side { kOriginal, kPerturbed };
std::string SideName(Side side);
Side ParseSide(std::string_view text);

enum class MissingPolicy { kCountAsWrong, kExclude };
std::string MissingPolicyName(MissingPolicy policy);
MissingPolicy ParseMissingPolicy(std::string_view text);

class PredictionSet {
 public:
  std::string model_name;

  // Throws Error on a duplicate (pair_id, side).
  void Set(const std::string& pair_id, Side side, std::string answer);
  const std::string* Get(const std::string& pair_id, Side side) const;
  size_t size() const { return answers_.size(); }
  const std::map<std::pair<std::string, Side>, std::string>& answers() const { return answers_; }

  // JSONL records {pair_id, side, answer}; an optional {"model": name}
  // record names the model, otherwise the file stem does.
  static PredictionSet Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

 private:
  std::map<std::pair<std::string, Side>, std::string> answers_;
};

// Integer tallies over K scored pairs; percentages are derived at the end.
struct Tally {
  int64_t pairs = 0;
  int64_t original_correct = 0;
  int64_t perturbed_correct = 0;
  int64_t consistent = 0;
  int64_t comprehensive = 0;

  void Add(bool original_ok, bool perturbed_ok, bool consistent_ok);
  double Acc() const;
  double Cons() const;
  double CAcc() const;
  double OriginalAcc() const;
  double PerturbedAcc() const;
  nlohmann::json ToJson() const;
  friend bool operator==(const Tally&, const Tally&) = default;
};

// Answer-type rates across both sides of verification pairs.
struct AnswerRates {
  int64_t yes = 0;
  int64_t no = 0;
  int64_t other = 0;
  int64_t total() const { return yes + no + other; }
  nlohmann::json ToJson() const;
};

struct EvalReport {
  std::string test;
  std::string model;
  Relation relation = Relation::kInvariance;
  MissingPolicy policy = MissingPolicy::kCountAsWrong;
  int64_t missing_answers = 0;  // sides without a prediction
  int64_t excluded_pairs = 0;   // under the exclude policy
  Tally overall;
  std::map<std::string, Tally> by_answer_type;   // binary / multi-choice
  std::map<std::string, Tally> by_choice_count;  // 2-choice / 3-choice
  std::map<std::string, Tally> by_qtype;
  std::map<std::string, AnswerRates> yno;        // conjunctive / disjunctive
  std::map<std::string, Tally> by_direction;     // hypernym / hyponym
  std::map<std::string, Tally> by_perturbation;  // visual kinds

  nlohmann::json ToJson() const;
  std::string ToText() const;
};

// Throws Error on duplicate pair ids, mixed tests, or when no pair has a
// prediction.
EvalReport Score(const std::vector<InstancePair>& pairs, const PredictionSet& predictions,
                 MissingPolicy policy = MissingPolicy::kCountAsWrong);

// Per-pair outcome under count-as-wrong: both sides correct.
bool ComprehensivelyCorrect(const InstancePair& pair, const PredictionSet& predictions);

struct CoverageMatrix {
  std::vector<std::string> models;
  std::vector<int64_t> correct;  // |S_j|
  // cells[i][j] = 100 |S_i ∩ S_j| / |S_j|; nullopt on the diagonal or when
  // |S_j| = 0.
  std::vector<std::vector<std::optional<double>>> cells;

  nlohmann::json ToJson() const;
  std::string ToText() const;
};

CoverageMatrix ComputeCoverage(const std::vector<InstancePair>& pairs,
                               const std::vector<PredictionSet>& predictions);

// Two decimals.
std::string FormatPercent(double value);

}  // namespace vqaprobe

#endif  // VQAPROBE_METRICS_H_
