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

#include "vqaprobe/pipeline.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "vqaprobe/common.h"
#include "vqaprobe/pairs.h"
#include "vqaprobe/visual.h"

namespace vqaprobe {

namespace fs = std::filesystem;
using nlohmann::json;

void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  const size_t workers = std::min<size_t>(std::max(1, jobs), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& thread : threads) thread.join();
  if (error) std::rethrow_exception(error);
}

json TestStats::ToJson() const {
  const int64_t binary_total = yes + no;
  return json{{"target", {{"binary", target.binary}, {"multi_choice", target.multi_choice}}},
              {"originals", {{"binary", binary}, {"multi_choice", multi_choice},
                             {"total", originals()}}},
              {"pairs", pairs},
              {"shortfall", {{"binary", target.binary - binary},
                             {"multi_choice", target.multi_choice - multi_choice}}},
              {"balance", {{"yes", yes},
                           {"no", no},
                           {"yes_fraction", binary_total == 0 ? json(nullptr)
                                                              : json(static_cast<double>(yes) /
                                                                     binary_total)}}},
              {"by_qtype", by_qtype},
              {"choice_counts", choice_counts},
              {"drops", drops}};
}

namespace {

struct Candidate {
  InstancePair pair;
  size_t image = 0;
  QType qtype = QType::kQ1;
  size_t ordinal = 0;
};

struct ImageYield {
  std::vector<Candidate> positive;
  std::vector<Candidate> negative;
  std::vector<Candidate> multi;
  std::array<int64_t, kDropReasonCount> drops{};
};

struct Quota {
  QType qtype;
  int64_t positive = 0;  // verification types
  int64_t negative = 0;
  int64_t multi = 0;     // multi-choice types
};

// Splits per-test targets evenly over the test's question types; binary
// targets are split as yes/no halves so every type is balanced.
std::vector<Quota> SplitTargets(TestKind test, const TestTargets& targets) {
  std::vector<Quota> quotas;
  const auto binary = BinaryTypesFor(test);
  if (!binary.empty() && targets.binary > 0) {
    const int64_t half = targets.binary / 2;
    const int64_t n = static_cast<int64_t>(binary.size());
    for (int64_t i = 0; i < n; ++i) {
      const int64_t share = half / n + (i < half % n ? 1 : 0);
      quotas.push_back({binary[i], share, share, 0});
    }
    if (targets.binary % 2 == 1) ++quotas.front().positive;
  }
  const auto multi = MultiChoiceTypesFor(test);
  if (!multi.empty() && targets.multi_choice > 0) {
    const int64_t n = static_cast<int64_t>(multi.size());
    for (int64_t i = 0; i < n; ++i) {
      const int64_t share = targets.multi_choice / n + (i < targets.multi_choice % n ? 1 : 0);
      quotas.push_back({multi[i], 0, 0, share});
    }
  }
  return quotas;
}

ImageYield SampleImage(TestKind test, const Quota& quota, size_t image,
                       const GenerationInputs& inputs, size_t corpus_size) {
  const GenerationConfig& config = *inputs.context.config;
  const SceneGraph& graph = (*inputs.corpus)[image];
  const ImageView& view = (*inputs.views)[image];
  Rng rng = Rng::Derive(config.seed, {TestName(test), QTypeName(quota.qtype), graph.image_id});
  ImageYield yield;
  std::set<std::string> questions;
  size_t ordinal = 0;

  auto per_image = [&](int64_t need) -> int64_t {
    if (need <= 0) return 0;
    return static_cast<int64_t>(std::ceil(config.pool_multiplier * static_cast<double>(need) /
                                          static_cast<double>(corpus_size)));
  };
  auto fill = [&](Polarity polarity, int64_t want, std::vector<Candidate>& out) {
    const OriginalSpec spec = SpecFor(test, quota.qtype, polarity, inputs.context);
    const int64_t attempts = 2 * want + 2;
    for (int64_t a = 0; a < attempts && static_cast<int64_t>(out.size()) < want; ++a) {
      SampleResult sample = SampleOriginal(inputs.context, view, spec, rng);
      if (auto* reason = std::get_if<DropReason>(&sample)) {
        ++yield.drops[static_cast<size_t>(*reason)];
        // A failed binding usually means the image cannot support the type.
        if (*reason == DropReason::kNoBinding || *reason == DropReason::kNoFalseObject) break;
        continue;
      }
      Instance& original = std::get<Instance>(sample);
      if (!questions.insert(original.question).second) {
        ++yield.drops[static_cast<size_t>(DropReason::kDuplicate)];
        continue;
      }
      PairResult built = BuildPair(test, original, view, inputs.context, rng);
      if (auto* reason = std::get_if<DropReason>(&built)) {
        ++yield.drops[static_cast<size_t>(*reason)];
        continue;
      }
      out.push_back({std::move(std::get<InstancePair>(built)), image, quota.qtype, ordinal++});
    }
  };
  if (IsVerification(quota.qtype)) {
    fill(Polarity::kPositive, per_image(quota.positive), yield.positive);
    fill(Polarity::kNegative, per_image(quota.negative), yield.negative);
  } else {
    fill(Polarity::kNone, per_image(quota.multi), yield.multi);
  }
  return yield;
}

std::vector<Candidate> TakeUniform(std::vector<Candidate> pool, int64_t k, Rng rng) {
  std::vector<size_t> order(pool.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);
  order.resize(static_cast<size_t>(std::min<int64_t>(k, static_cast<int64_t>(order.size()))));
  std::sort(order.begin(), order.end());
  std::vector<Candidate> out;
  for (size_t i : order) out.push_back(std::move(pool[i]));
  return out;
}

void AssignIds(InstancePair& pair, const std::string& pair_id) {
  pair.pair_id = pair_id;
  pair.original.instance_id = pair_id + "-o";
  pair.perturbed.instance_id = pair_id + "-p";
}

std::string ImageRef(const std::string& image_id, const std::string& pair_id,
                     PerturbationKind kind) {
  return "images/" + image_id + "__" + pair_id + "__" + PerturbationName(kind) + ".png";
}

}  // namespace

TestOutput GenerateTest(TestKind test, const GenerationInputs& inputs) {
  const GenerationConfig& config = *inputs.context.config;
  TestOutput output;
  TestStats& stats = output.stats;
  auto target_it = config.targets.find(test);
  stats.target = target_it == config.targets.end() ? TestTargets{} : target_it->second;
  const size_t corpus_size = inputs.corpus->size();
  std::array<int64_t, kDropReasonCount> drops{};
  std::vector<Candidate> selected;

  for (const Quota& quota : SplitTargets(test, stats.target)) {
    if (corpus_size == 0) break;
    std::vector<ImageYield> yields(corpus_size);
    ParallelFor(corpus_size, config.jobs, [&](size_t i) {
      yields[i] = SampleImage(test, quota, i, inputs, corpus_size);
    });
    std::vector<Candidate> positive, negative, multi;
    for (auto& yield : yields) {
      for (size_t r = 0; r < drops.size(); ++r) drops[r] += yield.drops[r];
      for (auto& c : yield.positive) positive.push_back(std::move(c));
      for (auto& c : yield.negative) negative.push_back(std::move(c));
      for (auto& c : yield.multi) multi.push_back(std::move(c));
    }
    const std::string label = QTypeName(quota.qtype);
    if (IsVerification(quota.qtype)) {
      int64_t take_pos = std::min<int64_t>(quota.positive, positive.size());
      int64_t take_neg = std::min<int64_t>(quota.negative, negative.size());
      if (take_pos < quota.positive || take_neg < quota.negative) {
        take_pos = take_neg = std::min(take_pos, take_neg);
      }
      auto pos = TakeUniform(std::move(positive), take_pos,
                             Rng::Derive(config.seed, {TestName(test), label, "select", "yes"}));
      auto neg = TakeUniform(std::move(negative), take_neg,
                             Rng::Derive(config.seed, {TestName(test), label, "select", "no"}));
      for (auto& c : pos) selected.push_back(std::move(c));
      for (auto& c : neg) selected.push_back(std::move(c));
    } else {
      const size_t n = std::min<size_t>(quota.multi, multi.size());
      std::vector<std::string> classes, answers;
      for (const auto& c : multi) {
        classes.push_back(DiversityClass(c.pair.original));
        answers.push_back(c.pair.original.answer);
      }
      Rng rng = Rng::Derive(config.seed, {TestName(test), label, "select"});
      auto picks = DiversitySubsample(classes, answers, n, rng);
      std::sort(picks.begin(), picks.end());
      for (size_t i : picks) selected.push_back(std::move(multi[i]));
    }
  }
  std::sort(selected.begin(), selected.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.image, a.qtype, a.ordinal) < std::tie(b.image, b.qtype, b.ordinal);
  });

  std::map<size_t, int> next_seq;
  if (test != TestKind::kVisual) {
    for (auto& c : selected) {
      const std::string& image_id = (*inputs.corpus)[c.image].image_id;
      AssignIds(c.pair, TestName(test) + "-" + image_id + "-" + std::to_string(next_seq[c.image]++));
      output.pairs.push_back(std::move(c.pair));
    }
  } else {
    // Foregrounds first, so dropped originals leave no gaps in the ids.
    struct Job {
      size_t image;
      std::vector<BoundingBox> boxes;
      std::vector<size_t> pair_indices;
    };
    std::vector<Job> jobs;
    std::map<size_t, int> next_group;
    for (auto& c : selected) {
      const SceneGraph& graph = (*inputs.corpus)[c.image];
      if (!inputs.images_dir || !FindImage(*inputs.images_dir, graph.image_id)) {
        ++drops[static_cast<size_t>(DropReason::kImageUnavailable)];
        continue;
      }
      Rng rng = Rng::Derive(config.seed, {"visual", "foreground", graph.image_id,
                                          QTypeName(c.qtype), std::to_string(c.ordinal)});
      auto foreground = SelectForeground(c.pair.original, graph, rng);
      if (!foreground) {
        ++drops[static_cast<size_t>(DropReason::kNoForeground)];
        continue;
      }
      Job job{c.image, foreground->boxes, {}};
      const std::string group =
          "visual-" + graph.image_id + "-o" + std::to_string(next_group[c.image]++);
      for (PerturbationKind kind : kAllPerturbations) {
        InstancePair pair = c.pair;
        const std::string pair_id =
            "visual-" + graph.image_id + "-" + std::to_string(next_seq[c.image]++);
        AssignIds(pair, pair_id);
        pair.group_id = group;
        pair.perturbation = kind;
        pair.foreground = foreground->boxes;
        pair.perturbed_image_ref = ImageRef(graph.image_id, pair_id, kind);
        job.pair_indices.push_back(output.pairs.size());
        output.pairs.push_back(std::move(pair));
      }
      jobs.push_back(std::move(job));
      // Counted as an original only once it survives the foreground step.
      if (IsVerification(c.qtype)) {
        ++stats.binary;
        ++(c.pair.original.answer == "yes" ? stats.yes : stats.no);
      } else {
        ++stats.multi_choice;
        ++stats.choice_counts[std::to_string(c.pair.original.choices_order.size())];
      }
      ++stats.by_qtype[QTypeName(c.qtype)];
    }
    // Group jobs by image so each source image is decoded once.
    std::vector<std::pair<size_t, size_t>> ranges;
    for (size_t i = 0; i < jobs.size();) {
      size_t j = i;
      while (j < jobs.size() && jobs[j].image == jobs[i].image) ++j;
      ranges.emplace_back(i, j);
      i = j;
    }
    ParallelFor(ranges.size(), config.jobs, [&](size_t r) {
      const SceneGraph& graph = (*inputs.corpus)[jobs[ranges[r].first].image];
      const Image source = ReadImage(*FindImage(*inputs.images_dir, graph.image_id));
      if (source.width != graph.width || source.height != graph.height) {
        throw Error("image " + graph.image_id + " is " + std::to_string(source.width) + "x" +
                    std::to_string(source.height) + " but its scene graph says " +
                    std::to_string(graph.width) + "x" + std::to_string(graph.height));
      }
      for (size_t j = ranges[r].first; j < ranges[r].second; ++j) {
        for (size_t index : jobs[j].pair_indices) {
          const InstancePair& pair = output.pairs[index];
          const Image perturbed =
              ApplyPerturbation(source, jobs[j].boxes, *pair.perturbation, inputs.mean_pixel);
          WritePng(inputs.out_dir / *pair.perturbed_image_ref, perturbed);
        }
      }
    });
  }

  if (test != TestKind::kVisual) {
    for (const auto& pair : output.pairs) {
      const QType qtype = pair.original.qtype;
      if (IsVerification(qtype)) {
        ++stats.binary;
        ++(pair.original.answer == "yes" ? stats.yes : stats.no);
      } else {
        ++stats.multi_choice;
        ++stats.choice_counts[std::to_string(pair.original.choices_order.size())];
      }
      ++stats.by_qtype[QTypeName(qtype)];
    }
  }
  stats.pairs = static_cast<int64_t>(output.pairs.size());
  for (size_t r = 0; r < drops.size(); ++r) {
    if (drops[r] > 0) stats.drops[DropReasonName(static_cast<DropReason>(r))] = drops[r];
  }
  return output;
}

namespace {

bool IsImageFile(const fs::path& path) {
  const std::string ext = ToLower(path.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> ImageFilesIn(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && IsImageFile(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Digest over "name sha256" lines of the given files.
std::string CombinedDigest(const std::vector<fs::path>& files) {
  std::string listing;
  for (const auto& file : files) {
    listing += file.filename().string() + " " + Sha256File(file) + "\n";
  }
  return Sha256(listing);
}

void LogWarnings(const std::vector<std::string>& warnings, const std::string& what) {
  if (warnings.empty()) return;
  spdlog::warn("{}: {} warnings", what, warnings.size());
  for (size_t i = 0; i < std::min<size_t>(warnings.size(), 10); ++i) {
    spdlog::warn("  {}", warnings[i]);
  }
}

}  // namespace

GenerateResult RunGenerate(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const GenerationConfig& gen = config.generation;
  const InputPaths& in = config.inputs;
  json digests = json::object();
  auto digest = [&](const std::string& key, const fs::path& path) {
    digests[key] = Sha256File(path);
  };

  spdlog::info("loading scene graphs from {}", in.scene_graphs.string());
  CorpusLoadResult corpus = LoadCorpus(
      in.scene_graphs, in.limit > 0 ? std::optional<size_t>(in.limit) : std::nullopt);
  LogWarnings(corpus.warnings, "scene graphs");
  digest("scene_graphs", in.scene_graphs);
  spdlog::info("{} images loaded, {} skipped", corpus.graphs.size(), corpus.skipped);

  const OntologyFiles ontology_files = OntologyFiles::InDirectory(in.ontology);
  Ontology ontology = Ontology::Load(ontology_files);
  for (const auto& path : ontology_files.All()) digest("ontology/" + path.filename().string(), path);
  if (auto problems = ontology.Validate(); !problems.empty()) {
    throw Error("ontology invalid: " + problems.front());
  }
  TemplateLibrary templates = TemplateLibrary::Load(in.templates, in.negated_templates);
  digest("templates", in.templates);
  digest("negated_templates", in.negated_templates);
  if (auto problems = templates.Validate(); !problems.empty()) {
    throw Error("template library invalid: " + problems.front());
  }

  CooccurrenceModel coocc;
  std::string coocc_source = "scene_graphs";
  if (in.cooccurrence_scene_graphs) {
    CorpusLoadResult reference = LoadCorpus(*in.cooccurrence_scene_graphs);
    LogWarnings(reference.warnings, "co-occurrence scene graphs");
    digest("cooccurrence_scene_graphs", *in.cooccurrence_scene_graphs);
    coocc = FitCooccurrence(reference.graphs);
    coocc_source = "cooccurrence_scene_graphs";
  } else {
    coocc = FitCooccurrence(corpus.graphs);
  }

  std::vector<fs::path> corpus_images;
  if (in.images) {
    for (const auto& graph : corpus.graphs) {
      if (auto path = FindImage(*in.images, graph.image_id)) corpus_images.push_back(*path);
    }
    digests["images"] = CombinedDigest(corpus_images);
  }
  if (in.mean_pixel_images) {
    const auto files = ImageFilesIn(*in.mean_pixel_images);
    digests["mean_pixel_images"] = CombinedDigest(files);
    coocc.mean_pixel = ComputeMeanPixel(files);
    coocc.mean_pixel_source = "mean_pixel_images";
  } else if (!corpus_images.empty()) {
    coocc.mean_pixel = ComputeMeanPixel(corpus_images);
    coocc.mean_pixel_source = "images";
  } else {
    spdlog::warn("no images for the mean pixel; using 128 gray");
    coocc.mean_pixel = {128.0, 128.0, 128.0};
    coocc.mean_pixel_source = "fallback";
  }

  std::vector<ImageView> views(corpus.graphs.size());
  ParallelFor(views.size(), gen.jobs,
              [&](size_t i) { views[i] = ImageView::Of(corpus.graphs[i], ontology); });

  GenerationInputs inputs;
  inputs.corpus = &corpus.graphs;
  inputs.views = &views;
  FalseObjectSampler sampler(ontology, coocc,
                             SamplerSettings{gen.smoothing, gen.attribute_probability,
                                             gen.excluded_terms});
  inputs.context = GeneratorContext{&ontology, &coocc, &templates, &gen, &sampler};
  inputs.images_dir = in.images;
  inputs.out_dir = config.out_dir;
  inputs.mean_pixel = coocc.mean_pixel;

  fs::create_directories(config.out_dir);
  if (fs::exists(config.out_dir / "images")) fs::remove_all(config.out_dir / "images");

  GenerateResult result;
  json tests = json::object();
  json outputs = json::object();
  int64_t originals_total = 0;
  int64_t pairs_total = 0;
  for (TestKind test : kAllTests) {
    spdlog::info("generating {}", TestName(test));
    TestOutput output = GenerateTest(test, inputs);
    const std::string file = TestName(test) + ".jsonl";
    const std::string jsonl = PairsToJsonl(output.pairs);
    WriteFile(config.out_dir / file, jsonl);
    outputs[file] = {{"records", output.pairs.size()}, {"sha256", Sha256(jsonl)}};
    const TestStats& stats = output.stats;
    spdlog::info("{}: {} originals, {} pairs (target {})", TestName(test), stats.originals(),
                 stats.pairs, stats.target.total());
    if (stats.originals() < stats.target.total()) {
      spdlog::warn("{}: shortfall of {} originals", TestName(test),
                   stats.target.total() - stats.originals());
    }
    tests[TestName(test)] = stats.ToJson();
    originals_total += stats.originals();
    pairs_total += stats.pairs;
    result.tests.emplace(test, std::move(output));
  }
  coocc.Save(config.out_dir / "cooccurrence.json");

  result.manifest = json{
      {"tool_version", std::string(kToolVersion)},
      {"seed", gen.seed},
      {"config", ConfigEcho(config)},
      {"inputs_sha256", std::move(digests)},
      {"corpus", {{"images", corpus.graphs.size()},
                  {"skipped", corpus.skipped},
                  {"warnings", corpus.warnings.size()}}},
      {"tests", std::move(tests)},
      {"pair_accounting",
       {{"one_pair_per_original", originals_total},
        {"one_pair_per_perturbation", pairs_total}}},
      {"outputs", std::move(outputs)},
      {"decisions",
       {{"rephrase_sibling_sampling", "uniform over the other templates of the same type"},
        {"soft_mask", "binary foreground mask blurred with the image sigma; stand-in blend"},
        {"cooccurrence_source", coocc_source},
        {"mean_pixel_source", coocc.mean_pixel_source},
        {"max_hypernym_hops", gen.max_hypernym_hops},
        {"binary_balance", "yes and no originals selected in lockstep"}}}};
  WriteFile(config.out_dir / "manifest.json", result.manifest.dump(2) + "\n");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  spdlog::info("done: {} originals, {} pairs in {:.1f}s", originals_total, pairs_total, seconds);
  return result;
}

ValidationReport RunValidate(const fs::path& ontology_dir, const fs::path& templates_path,
                             const fs::path& negated_path, const std::vector<fs::path>& datasets) {
  ValidationReport report;
  try {
    Ontology ontology = Ontology::LoadDirectory(ontology_dir);
    for (auto& problem : ontology.Validate()) report.problems.push_back("ontology: " + problem);
    report.notes.push_back("ontology: " + std::to_string(ontology.Vocabulary().size()) +
                           " object terms, " + std::to_string(ontology.Antonyms().size()) +
                           " antonym entries");
  } catch (const Error& e) {
    report.problems.push_back(std::string("ontology: ") + e.what());
  }
  try {
    TemplateLibrary library = TemplateLibrary::Load(templates_path, negated_path);
    for (const auto& [qtype, count] : library.Counts()) {
      report.template_counts[QTypeName(qtype)] = count;
    }
    report.notes.push_back("templates: " + std::to_string(library.NegatedCount()) +
                           " negated templates");
    for (auto& problem : library.Validate()) report.problems.push_back("templates: " + problem);
  } catch (const Error& e) {
    report.problems.push_back(std::string("templates: ") + e.what());
  }
  for (const auto& path : datasets) {
    try {
      const auto pairs = ReadPairs(path);
      std::set<std::string> ids;
      for (const auto& pair : pairs) {
        if (!ids.insert(pair.pair_id).second) {
          report.problems.push_back(path.string() + ": duplicate pair id " + pair.pair_id);
        }
        for (auto& problem : CheckPair(pair)) {
          report.problems.push_back(path.string() + ": " + problem);
        }
      }
      report.notes.push_back(path.string() + ": " + std::to_string(pairs.size()) + " pairs");
    } catch (const Error& e) {
      report.problems.push_back(e.what());
    }
  }
  return report;
}

std::vector<fs::path> DatasetFiles(const fs::path& dir) {
  std::vector<fs::path> files;
  for (TestKind test : kAllTests) {
    fs::path file = dir / (TestName(test) + ".jsonl");
    if (fs::exists(file)) files.push_back(file);
  }
  return files;
}

EvaluateResult RunEvaluate(const std::vector<fs::path>& datasets,
                           const std::vector<fs::path>& prediction_files, MissingPolicy policy,
                           double max_unresolved) {
  EvaluateResult result;
  std::vector<std::pair<std::string, std::vector<InstancePair>>> tests;
  std::set<std::string> known;
  for (const auto& path : datasets) {
    auto pairs = ReadPairs(path);
    if (pairs.empty()) {
      spdlog::warn("{}: no pairs", path.string());
      continue;
    }
    for (const auto& pair : pairs) known.insert(pair.pair_id);
    tests.emplace_back(TestName(pairs.front().test), std::move(pairs));
  }
  if (tests.empty()) throw Error("no dataset pairs to evaluate");

  std::vector<PredictionSet> models;
  for (const auto& path : prediction_files) models.push_back(PredictionSet::Load(path));

  for (const auto& model : models) {
    size_t unresolved = 0;
    std::set<std::string> ids;
    for (const auto& [key, answer] : model.answers()) ids.insert(key.first);
    for (const auto& id : ids) {
      if (!known.contains(id)) {
        ++unresolved;
        if (result.unresolved.size() < 20) result.unresolved.push_back(model.model_name + ": " + id);
      }
    }
    if (!ids.empty() &&
        static_cast<double>(unresolved) / static_cast<double>(ids.size()) > max_unresolved) {
      std::ostringstream message;
      message << model.model_name << ": " << unresolved << " of " << ids.size()
              << " predicted pair ids are not in the datasets, e.g.";
      size_t shown = 0;
      for (const auto& id : ids) {
        if (known.contains(id)) continue;
        message << " " << id;
        if (++shown == 5) break;
      }
      throw Error(message.str());
    }
    bool scored = false;
    for (const auto& [name, pairs] : tests) {
      try {
        result.reports.push_back(Score(pairs, model, policy));
        scored = true;
      } catch (const Error& e) {
        spdlog::warn("{} on {}: {}", model.model_name, name, e.what());
      }
    }
    if (!scored) throw Error(model.model_name + ": no predictions match any dataset pair");
  }
  if (models.size() >= 2) {
    for (const auto& [name, pairs] : tests) result.coverage.emplace(name, ComputeCoverage(pairs, models));
  }
  return result;
}

json EvaluateResult::ToJson() const {
  json reports_json = json::array();
  for (const auto& report : reports) reports_json.push_back(report.ToJson());
  json coverage_json = json::object();
  for (const auto& [test, matrix] : coverage) coverage_json[test] = matrix.ToJson();
  return json{{"reports", std::move(reports_json)},
              {"coverage", std::move(coverage_json)},
              {"unresolved_samples", unresolved}};
}

std::string EvaluateResult::ToText() const {
  std::string out;
  for (const auto& report : reports) out += report.ToText() + "\n";
  for (const auto& [test, matrix] : coverage) out += "== " + test + " " + matrix.ToText() + "\n";
  return out;
}

}  // namespace vqaprobe
