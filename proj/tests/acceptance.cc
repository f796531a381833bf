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

// End-to-end acceptance run over the bundled fixture. Prints one
// PASS / FAIL / SKIP line per criterion; exits 1 if any line fails.
//
// VQAPROBE_GQA_CONFIG=<config.toml> additionally runs the full-scale check.

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unistd.h>
#include <vector>

#include "oracle.h"
#include "vqaprobe/common.h"
#include "vqaprobe/metrics.h"
#include "vqaprobe/pipeline.h"
#include "vqaprobe/templates.h"
#include "vqaprobe/visual.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vqaprobe;

namespace {

int failures = 0;

void Report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void Skip(const std::string& name, const std::string& detail) {
  std::printf("SKIP  %s: %s\n", name.c_str(), detail.c_str());
}

std::vector<json> ReadJsonl(const fs::path& path) {
  std::vector<json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), dir).string()] = Sha256File(entry.path());
    }
  }
  return files;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c);
  return buffer;
}

bool IsBinary(const json& pair) {
  const std::string a = pair["original"]["answer"];
  return a == "yes" || a == "no";
}

PredictionSet Constant(const std::vector<json>& pairs, const std::string& answer) {
  PredictionSet set;
  set.model_name = "constant";
  for (const auto& pair : pairs) {
    set.Set(pair["pair_id"], Side::kOriginal, answer);
    set.Set(pair["pair_id"], Side::kPerturbed, answer);
  }
  return set;
}

PredictionSet Oracle(const std::vector<json>& pairs) {
  PredictionSet set;
  set.model_name = "oracle";
  for (const auto& pair : pairs) {
    set.Set(pair["pair_id"], Side::kOriginal, pair["original"]["answer"]);
    set.Set(pair["pair_id"], Side::kPerturbed, pair["perturbed"]["answer"]);
  }
  return set;
}

std::vector<InstancePair> ToPairs(const std::vector<json>& rows) {
  std::vector<InstancePair> pairs;
  for (const auto& row : rows) pairs.push_back(PairFromJson(row));
  return pairs;
}

bool Near(double a, double b) { return std::fabs(a - b) < 1e-9; }

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const fs::path config_path = fs::path(VQAPROBE_CONFIG_DIR) / "fixture.toml";
  const fs::path work = fs::temp_directory_path() / ("vqaprobe_acceptance_" + std::to_string(getpid()));
  fs::remove_all(work);

  RunConfig config = LoadConfig(config_path);
  config.out_dir = work / "a";
  const auto start = std::chrono::steady_clock::now();
  GenerateResult first;
  try {
    first = RunGenerate(config);
  } catch (const std::exception& e) {
    Report("generation", false, e.what());
    return 1;
  }
  const double runtime = Seconds(start);

  std::map<std::string, std::vector<json>> datasets;
  for (TestKind test : kAllTests) {
    datasets[TestName(test)] = ReadJsonl(config.out_dir / (TestName(test) + ".jsonl"));
  }

  {
    long checked = 0, violations = 0;
    size_t smallest = SIZE_MAX;
    for (const auto& [test, pairs] : datasets) {
      smallest = std::min(smallest, pairs.size());
      for (const auto& pair : pairs) {
        const bool same = pair["original"]["answer"] == pair["perturbed"]["answer"];
        const bool invariance = pair["relation"] == "invariance";
        violations += (invariance != same) ? 1 : 0;
        ++checked;
      }
    }
    Report("pair invariants", violations == 0 && smallest >= 500 && runtime < 60.0,
           std::to_string(checked) + " pairs, " + std::to_string(violations) +
               " violations, smallest test " + std::to_string(smallest) + " pairs, " +
               Fmt("%.1fs", runtime));
  }

  {
    bool pass = true;
    std::string detail;
    for (const auto& [test, pairs] : datasets) {
      long yes = 0, no = 0;
      std::set<std::string> groups;
      for (const auto& pair : pairs) {
        // Visual originals repeat across their five perturbations.
        if (pair.contains("group_id") && !groups.insert(pair["group_id"]).second) continue;
        const std::string a = pair["original"]["answer"];
        yes += a == "yes";
        no += a == "no";
      }
      const json& balance = first.manifest["tests"][test]["balance"];
      const long target = first.manifest["tests"][test]["target"]["binary"];
      const bool ok = (target % 2 == 1 ? std::labs(yes - no) <= 1 : yes == no) &&
                      balance["yes"] == yes && balance["no"] == no;
      pass = pass && ok;
      detail += test + " " + std::to_string(yes) + "/" + std::to_string(no) + " ";
    }
    Report("yes/no balance", pass, detail + "(manifest agrees)");
  }

  {
    const auto knowledge = oracle::Knowledge::Load(oracle::DataDir());
    const auto graphs = oracle::LoadRawGraphs(config.inputs.scene_graphs);
    long instances = 0;
    std::vector<std::string> problems;
    for (const auto& [test, pairs] : datasets) {
      for (const auto& pair : pairs) {
        for (const char* side : {"original", "perturbed"}) {
          const json& instance = pair[side];
          ++instances;
          for (const auto& p : oracle::AuditInstance(instance, graphs.at(instance["image_id"]),
                                                     knowledge)) {
            problems.push_back(instance["instance_id"].get<std::string>() + ": " + p);
          }
        }
      }
    }
    std::string detail = std::to_string(instances) + " instances audited, " +
                         std::to_string(problems.size()) + " problems";
    for (size_t i = 0; i < std::min<size_t>(problems.size(), 5); ++i) {
      detail += "\n      " + problems[i];
    }
    Report("refinement filters", problems.empty(), detail);
  }

  {
    bool pass = true;
    long trials = 0;
    std::mt19937_64 engine(20260101);
    for (const char* test : {"rephrase", "negation"}) {
      std::vector<json> subset(datasets[test].begin(),
                               datasets[test].begin() + std::min<size_t>(50, datasets[test].size()));
      const auto pairs = ToPairs(subset);
      for (int trial = 0; trial < 500; ++trial, ++trials) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double skill = unit(engine);
        const double missing = unit(engine) * 0.1;
        PredictionSet set;
        set.model_name = "random";
        std::map<std::pair<std::string, std::string>, std::string> raw;
        for (const auto& pair : subset) {
          for (const char* side : {"original", "perturbed"}) {
            if (unit(engine) < missing) continue;
            const json& instance = pair[side];
            std::string answer = instance["answer"];
            if (unit(engine) > skill) {
              std::vector<std::string> wrong = {"maybe", answer == "yes" ? "no" : "yes"};
              for (const auto& c : instance["choices_order"]) wrong.push_back(c);
              answer = wrong[engine() % wrong.size()];
            }
            raw[{pair["pair_id"], side}] = answer;
            set.Set(pair["pair_id"], std::string(side) == "original" ? Side::kOriginal
                                                                     : Side::kPerturbed,
                    answer);
          }
        }
        if (set.size() == 0) continue;
        const auto brute = oracle::BruteForceTally(subset, raw);
        const Tally t = Score(pairs, set).overall;
        const bool equal = t.pairs == brute.pairs && t.original_correct == brute.original_correct &&
                           t.perturbed_correct == brute.perturbed_correct &&
                           t.consistent == brute.consistent && t.comprehensive == brute.comprehensive;
        const bool identities = t.CAcc() <= t.Cons() &&
                                Near(t.Acc(), (t.OriginalAcc() + t.PerturbedAcc()) / 2.0);
        pass = pass && equal && identities;
      }
    }
    Report("metric oracle", pass, std::to_string(trials) + " randomized predictors on 50-pair sets");
  }

  {
    bool pass = true;
    std::string detail;
    for (const auto& [test, rows] : datasets) {
      const auto r = Score(ToPairs(rows), Oracle(rows)).overall;
      const bool ok = r.Acc() == 100.0 && r.Cons() == 100.0 && r.CAcc() == 100.0;
      pass = pass && ok;
      if (!ok) detail += "oracle " + test + " " + Fmt("%.2f/%.2f/%.2f ", r.Acc(), r.Cons(), r.CAcc());
    }
    for (const char* test : {"rephrase", "order", "ontological", "visual", "negation",
                             "antonym"}) {
      std::vector<json> binary;
      for (const auto& row : datasets[test]) {
        if (IsBinary(row)) binary.push_back(row);
      }
      const auto r = Score(ToPairs(binary), Constant(binary, "yes")).overall;
      const bool directional =
          std::string(test) == "negation" || std::string(test) == "antonym";
      const bool ok = directional ? (r.Acc() == 50.0 && r.Cons() == 0.0 && r.CAcc() == 0.0)
                                  : (r.Acc() == 50.0 && r.Cons() == 100.0 && r.CAcc() == 50.0);
      pass = pass && ok;
      detail += std::string(test) + Fmt(" %.2f/%.2f/%.2f  ", r.Acc(), r.Cons(), r.CAcc());
    }
    Report("analytic predictors", pass, "oracle 100/100/100 on six tests; constant yes: " + detail);
  }

  {
    std::string detail;
    bool pass = true;
    try {
      const auto library = TemplateLibrary::Load(config.inputs.templates, config.inputs.negated_templates);
      const std::vector<size_t> expected = {54, 18, 18, 25, 25, 39, 28};
      const auto counts = library.Counts();
      for (size_t i = 0; i < kAllQTypes.size(); ++i) {
        auto it = counts.find(kAllQTypes[i]);
        const size_t n = it == counts.end() ? 0 : it->second;
        pass = pass && n == expected[i];
        detail += QTypeName(kAllQTypes[i]) + "=" + std::to_string(n) + " ";
      }
      pass = pass && library.Validate().empty();
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    Report("template counts", pass, detail);
  }

  {
    // First perturbation group of each of the first 20 images with one.
    std::map<std::string, std::map<std::string, json>> groups;
    std::vector<std::string> chosen;
    std::set<std::string> images;
    for (const auto& pair : datasets["visual"]) {
      const std::string group = pair["group_id"];
      const std::string image = pair["original"]["image_id"];
      if (!groups.contains(group) && !images.contains(image) && chosen.size() < 20) {
        chosen.push_back(group);
        images.insert(image);
      }
      groups[group][pair["perturbation"]] = pair;
    }
    const auto coocc = CooccurrenceModel::Load(config.out_dir / "cooccurrence.json");
    const auto fill = RoundedMean(coocc.mean_pixel);
    long fg_bad = 0, bg_bad = 0, crop_bad = 0, monotone_bad = 0, all_monotone_bad = 0;
    auto check_group = [&](const std::string& group, bool full) {
      auto& members = groups[group];
      const json& any = members.begin()->second;
      const Image source =
          ReadImage(*FindImage(*config.inputs.images, any["original"]["image_id"]));
      std::vector<std::vector<bool>> fg(source.height, std::vector<bool>(source.width, false));
      std::vector<BoundingBox> boxes;
      for (const auto& b : any["foreground"]) {
        BoundingBox box{b[0], b[1], b[2], b[3]};
        boxes.push_back(box);
        for (int y = box.y; y < box.bottom(); ++y) {
          for (int x = box.x; x < box.right(); ++x) fg[y][x] = true;
        }
      }
      auto load = [&](const char* kind) {
        return ReadImage(config.out_dir / members.at(kind)["perturbed_image_ref"].get<std::string>());
      };
      std::vector<double> mse;
      for (const char* kind : {"blur3", "blur6", "blur9"}) {
        const Image image = load(kind);
        double sum = 0;
        long n = 0;
        for (int y = 0; y < source.height; ++y) {
          for (int x = 0; x < source.width; ++x) {
            if (fg[y][x]) continue;
            for (int c = 0; c < 3; ++c) {
              const double d = double(image.at(x, y, c)) - source.at(x, y, c);
              sum += d * d;
            }
            ++n;
          }
        }
        mse.push_back(n == 0 ? 0.0 : sum / (3.0 * n));
      }
      const bool monotone = mse[0] <= mse[1] && mse[1] <= mse[2];
      if (!full) {
        all_monotone_bad += !monotone;
        return;
      }
      monotone_bad += !monotone;
      all_monotone_bad += !monotone;
      const Image masked = load("mask");
      for (int y = 0; y < source.height; ++y) {
        for (int x = 0; x < source.width; ++x) {
          for (int c = 0; c < 3; ++c) {
            if (fg[y][x]) {
              fg_bad += masked.at(x, y, c) != source.at(x, y, c);
            } else {
              bg_bad += masked.at(x, y, c) != fill[c];
            }
          }
        }
      }
      const Image cropped = load("crop");
      int x0 = source.width, y0 = source.height, x1 = 0, y1 = 0;
      for (const auto& b : boxes) {
        x0 = std::min(x0, b.x);
        y0 = std::min(y0, b.y);
        x1 = std::max(x1, b.right());
        y1 = std::max(y1, b.bottom());
      }
      if (cropped.width != x1 - x0 || cropped.height != y1 - y0) {
        ++crop_bad;
        return;
      }
      for (int y = 0; y < cropped.height; ++y) {
        for (int x = 0; x < cropped.width; ++x) {
          for (int c = 0; c < 3; ++c) crop_bad += cropped.at(x, y, c) != source.at(x0 + x, y0 + y, c);
        }
      }
    };
    for (const auto& group : chosen) check_group(group, true);
    for (const auto& [group, members] : groups) {
      if (std::find(chosen.begin(), chosen.end(), group) == chosen.end()) check_group(group, false);
    }
    Report("visual pixel contracts",
           chosen.size() == 20 && fg_bad == 0 && bg_bad == 0 && crop_bad == 0 && monotone_bad == 0,
           std::to_string(chosen.size()) + " images: fg mismatches " + std::to_string(fg_bad) +
               ", mask bg mismatches " + std::to_string(bg_bad) + ", crop mismatches " +
               std::to_string(crop_bad) + ", non-monotone " + std::to_string(monotone_bad) +
               " (all " + std::to_string(groups.size()) + " groups: " +
               std::to_string(all_monotone_bad) + " non-monotone)");
  }

  {
    RunConfig again = config;
    again.out_dir = work / "b";
    again.generation.jobs = 2;
    RunGenerate(again);
    const auto a = Snapshot(config.out_dir);
    const auto b = Snapshot(again.out_dir);
    Report("determinism", a == b && !a.empty(),
           std::to_string(a.size()) + " files compared byte for byte (1 vs 2 threads)");
  }

  if (const char* gqa = std::getenv("VQAPROBE_GQA_CONFIG")) {
    RunConfig full = LoadConfig(gqa);
    full.out_dir = work / "gqa";
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = RunGenerate(full);
    const double seconds = Seconds(t0);
    const std::map<std::string, long> expected = {{"rephrase", 19412}, {"order", 14412},
                                                  {"ontological", 13952}, {"visual", 26272},
                                                  {"negation", 10000}, {"antonym", 5000}};
    bool pass = seconds < 1800;
    std::string detail;
    for (const auto& [test, want] : expected) {
      const long got = result.manifest["tests"][test]["originals"]["total"];
      pass = pass && std::labs(got - want) <= want / 20;
      detail += test + " " + std::to_string(got) + "/" + std::to_string(want) + " ";
    }
    Report("full-scale shape", pass, detail + Fmt("%.0fs", seconds));
  } else {
    Skip("full-scale shape", "set VQAPROBE_GQA_CONFIG to a config over the GQA validation split");
  }

  fs::remove_all(work);
  std::printf("%s\n", failures == 0 ? "acceptance: all run criteria pass"
                                    : "acceptance: failures present");
  return failures == 0 ? 0 : 1;
}
