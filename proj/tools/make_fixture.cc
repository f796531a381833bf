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

// Writes a small synthetic corpus in the GQA scene-graph format plus one
// textured PNG per scene:
//
//   make_fixture <out_dir> [--images N] [--seed S]

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqaprobe/common.h"
#include "vqaprobe/random.h"
#include "vqaprobe/visual.h"

namespace fs = std::filesystem;
using nlohmann::json;
using vqaprobe::Rng;

namespace {

struct Kind {
  std::string name;
  std::vector<std::vector<std::string>> attribute_slots;  // one draw per slot, may be skipped
  std::vector<std::string> actions;
  int min_side;
  int max_side;
};

const std::vector<std::string> kColors = {"white", "black", "blue", "green", "red", "brown",
                                          "yellow", "gray", "orange", "pink", "purple", "silver"};
const std::vector<std::string> kSize = {"large", "small", "big", "little", "tall", "tiny"};
const std::vector<std::string> kAge = {"old", "new", "young"};
const std::vector<std::string> kClean = {"clean", "dirty"};
const std::vector<std::string> kWet = {"wet", "dry"};
const std::vector<std::string> kOpen = {"open", "closed"};
const std::vector<std::string> kFull = {"empty", "full"};
const std::vector<std::string> kMaterial = {"wooden", "metal", "plastic", "glass", "stone",
                                            "leather", "ceramic", "wicker"};
const std::vector<std::string> kPattern = {"striped", "plain", "checkered", "floral", "spotted",
                                           "plaid"};
const std::vector<std::string> kShape = {"round", "square", "rectangular", "oval"};
const std::vector<std::string> kLength = {"long", "short"};
const std::vector<std::string> kTemp = {"hot", "cold", "warm"};
const std::vector<std::string> kTexture = {"smooth", "rough", "soft", "hard", "fluffy"};
const std::vector<std::string> kHair = {"curly", "straight"};
const std::vector<std::string> kHeight = {"high", "low"};
const std::vector<std::string> kPower = {"on", "off"};
const std::vector<std::string> kBright = {"bright", "dim", "light", "dark"};
const std::vector<std::string> kThick = {"thick", "thin"};
const std::vector<std::string> kFoliage = {"leafy", "bare"};

const std::vector<std::string> kPersonActions = {
    "walking", "running", "standing", "sitting", "lying", "kneeling", "crouching",
    "eating",  "drinking", "reading", "talking", "sleeping", "jumping"};
const std::vector<std::string> kAnimalActions = {"walking", "running", "standing", "lying",
                                                 "sitting", "eating", "sleeping", "grazing"};

std::vector<Kind> Persons() {
  return {{"man", {kAge, kHair, kSize}, kPersonActions, 40, 90},
          {"woman", {kAge, kHair, kSize}, kPersonActions, 40, 90},
          {"boy", {kHair, kSize}, kPersonActions, 36, 70},
          {"girl", {kHair, kSize}, kPersonActions, 36, 70},
          {"child", {kHair}, kPersonActions, 34, 60},
          {"chef", {kAge}, {"standing", "talking", "walking"}, 40, 90}};
}

struct Scene {
  std::string label;
  std::vector<Kind> kinds;
  std::vector<std::string> backdrop;  // large surface objects
};

std::vector<Scene> Scenes() {
  const auto clothing = std::vector<Kind>{
      {"shirt", {kColors, kPattern, kClean}, {}, 20, 40},
      {"jacket", {kColors, kMaterial, kThick, kLength}, {}, 22, 44},
      {"hat", {kColors, kMaterial, kSize}, {}, 12, 24},
      {"pants", {kColors, kLength, kClean}, {}, 20, 44},
      {"shoe", {kColors, kMaterial, kClean}, {}, 10, 20},
      {"backpack", {kColors, kOpen, kFull, kSize}, {}, 16, 32},
      {"glasses", {kColors, kShape}, {}, 10, 18}};
  Scene street{"street",
               {{"car", {kColors, kClean, kAge, kSize, kWet}, {}, 40, 90},
                {"bus", {kColors, kAge, kSize, kClean}, {}, 60, 110},
                {"bicycle", {kColors, kAge, kMaterial}, {}, 30, 60},
                {"truck", {kColors, kSize, kAge, kClean}, {}, 50, 100},
                {"dog", {kColors, kSize, kWet, kTexture}, kAnimalActions, 24, 50},
                {"bench", {kColors, kMaterial, kWet, kAge}, {}, 30, 70},
                {"street light", {kColors, kPower, kHeight, kMaterial}, {}, 20, 80},
                {"sign", {kColors, kShape, kMaterial, kSize}, {}, 16, 40},
                {"tree", {kFoliage, kSize, kThick}, {}, 40, 110},
                {"fire hydrant", {kColors, kMaterial, kSize}, {}, 16, 34},
                {"building", {kColors, kMaterial, kAge, kHeight}, {}, 70, 140},
                {"umbrella", {kColors, kOpen, kPattern, kWet}, {}, 20, 50},
                {"window", {kOpen, kClean, kShape}, {}, 16, 40},
                {"door", {kOpen, kMaterial, kColors}, {}, 20, 50}},
               {"road", "sidewalk", "sky"}};
  Scene kitchen{"kitchen",
                {{"table", {kMaterial, kColors, kShape, kClean}, {}, 50, 110},
                 {"chair", {kMaterial, kColors, kAge}, {}, 30, 60},
                 {"cup", {kColors, kMaterial, kFull, kTemp}, {}, 12, 24},
                 {"bowl", {kColors, kMaterial, kFull, kShape}, {}, 14, 30},
                 {"plate", {kColors, kShape, kClean, kFull}, {}, 16, 36},
                 {"bottle", {kColors, kMaterial, kFull, kSize}, {}, 10, 30},
                 {"refrigerator", {kColors, kOpen, kClean, kSize}, {}, 50, 100},
                 {"oven", {kColors, kOpen, kPower, kTemp}, {}, 40, 80},
                 {"pizza", {kShape, kTemp, kSize}, {}, 20, 44},
                 {"banana", {kColors, kLength}, {}, 12, 26},
                 {"apple", {kColors, kSize, kShape}, {}, 10, 20},
                 {"cabinet", {kMaterial, kColors, kOpen}, {}, 40, 80},
                 {"lamp", {kPower, kColors, kBright}, {}, 16, 40},
                 {"knife", {kMaterial, kLength, kClean}, {}, 10, 24},
                 {"cat", {kColors, kSize, kTexture}, kAnimalActions, 22, 44}},
                {"floor", "wall", "countertop"}};
  Scene park{"park",
             {{"dog", {kColors, kSize, kWet, kTexture}, kAnimalActions, 24, 50},
              {"horse", {kColors, kSize, kAge}, kAnimalActions, 50, 100},
              {"bench", {kColors, kMaterial, kWet, kAge}, {}, 30, 70},
              {"tree", {kFoliage, kSize, kThick}, {}, 40, 110},
              {"kite", {kColors, kPattern, kShape, kHeight}, {"flying"}, 16, 36},
              {"frisbee", {kColors, kShape, kMaterial}, {"flying"}, 10, 20},
              {"bush", {kFoliage, kSize, kColors}, {}, 30, 60},
              {"flower", {kColors, kSize}, {}, 10, 20},
              {"bird", {kColors, kSize, kWet}, {"flying", "standing", "sitting", "eating"}, 10, 24},
              {"ball", {kColors, kSize, kShape, kWet}, {}, 10, 20},
              {"fence", {kMaterial, kColors, kHeight, kAge}, {}, 40, 120},
              {"sheep", {kColors, kSize, kTexture, kClean}, kAnimalActions, 30, 60},
              {"cow", {kColors, kSize, kClean}, kAnimalActions, 40, 80}},
             {"grass", "sky", "ground"}};
  Scene beach{"beach",
              {{"surfboard", {kColors, kPattern, kLength, kWet}, {}, 20, 60},
               {"umbrella", {kColors, kOpen, kPattern}, {}, 30, 60},
               {"boat", {kColors, kSize, kAge, kMaterial}, {}, 40, 100},
               {"blanket", {kColors, kPattern, kWet}, {}, 20, 44},
               {"chair", {kMaterial, kColors, kWet}, {}, 24, 50},
               {"bird", {kColors, kSize, kWet}, {"flying", "standing", "eating"}, 10, 24},
               {"dog", {kColors, kSize, kWet, kTexture}, kAnimalActions, 24, 50},
               {"bag", {kColors, kMaterial, kOpen, kFull}, {}, 16, 34},
               {"bottle", {kColors, kMaterial, kFull}, {}, 10, 26},
               {"rock", {kSize, kTexture, kWet, kColors}, {}, 20, 60}},
              {"sand", "water", "sky"}};
  Scene living{"living room",
               {{"couch", {kColors, kMaterial, kTexture, kSize}, {}, 60, 120},
                {"television", {kPower, kSize, kColors}, {}, 30, 70},
                {"lamp", {kPower, kColors, kBright}, {}, 16, 40},
                {"pillow", {kColors, kPattern, kTexture}, {}, 14, 30},
                {"book", {kColors, kOpen, kThick, kAge}, {}, 10, 24},
                {"laptop", {kColors, kOpen, kPower}, {}, 20, 40},
                {"rug", {kColors, kPattern, kTexture}, {}, 60, 120},
                {"vase", {kColors, kMaterial, kFull, kShape}, {}, 12, 30},
                {"clock", {kColors, kShape, kSize}, {}, 12, 26},
                {"curtain", {kColors, kOpen, kPattern, kLength}, {}, 30, 90},
                {"cat", {kColors, kSize, kTexture}, kAnimalActions, 22, 44},
                {"remote control", {kColors, kSize}, {}, 10, 18},
                {"cabinet", {kMaterial, kColors, kOpen}, {}, 40, 80},
                {"window", {kOpen, kClean, kShape}, {}, 20, 50}},
               {"floor", "wall", "ceiling"}};
  Scene snow{"ski slope",
             {{"skis", {kColors, kLength}, {}, 24, 60},
              {"ski pole", {kColors, kMaterial}, {}, 16, 44},
              {"snowboard", {kColors, kPattern}, {}, 24, 50},
              {"helmet", {kColors, kShape}, {}, 12, 22},
              {"tree", {kFoliage, kSize, kThick}, {}, 40, 110},
              {"sign", {kColors, kShape, kMaterial}, {}, 16, 40},
              {"fence", {kMaterial, kColors, kHeight}, {}, 40, 120},
              {"mountain", {kSize, kHeight}, {}, 80, 150}},
             {"snow", "sky"}};
  Scene court{"tennis court",
              {{"tennis racket", {kColors, kMaterial}, {}, 16, 36},
               {"tennis ball", {kColors, kWet}, {}, 10, 14},
               {"pole", {kColors, kMaterial, kHeight}, {}, 16, 80},
               {"fence", {kMaterial, kColors, kHeight}, {}, 40, 120},
               {"bench", {kColors, kMaterial, kWet}, {}, 30, 70},
               {"bottle", {kColors, kMaterial, kFull}, {}, 10, 26},
               {"bag", {kColors, kMaterial, kOpen, kFull}, {}, 16, 34},
               {"cap", {kColors, kMaterial}, {}, 12, 22}},
              {"ground", "sky"}};
  std::vector<Scene> scenes = {street, kitchen, park, beach, living, snow, court};
  for (auto& scene : scenes) {
    for (const auto& kind : clothing) scene.kinds.push_back(kind);
    for (const auto& person : Persons()) scene.kinds.push_back(person);
  }
  return scenes;
}

const std::vector<std::string> kRelations = {"on",      "next to", "behind",   "near",
                                             "in front of", "to the left of",
                                             "to the right of", "above", "below"};

std::array<uint8_t, 3> Hue(const std::string& name) {
  const uint64_t h = vqaprobe::Fnv1a64(name);
  return {static_cast<uint8_t>(40 + h % 200), static_cast<uint8_t>(40 + (h >> 8) % 200),
          static_cast<uint8_t>(40 + (h >> 16) % 200)};
}

void Paint(vqaprobe::Image& image, const vqaprobe::BoundingBox& box, const std::string& name,
           Rng& rng) {
  const auto base = Hue(name);
  const int period = 3 + static_cast<int>(rng.Uniform(6));
  const bool vertical = rng.Bernoulli(0.5);
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) {
      const int phase = (vertical ? x : y) / period;
      const int shade = (phase % 2 == 0 ? 30 : -30) + static_cast<int>(rng.Uniform(31)) - 15;
      for (int c = 0; c < 3; ++c) {
        image.at(x, y, c) = static_cast<uint8_t>(std::clamp(base[c] + shade, 0, 255));
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic fixture corpus."};
  std::string out_dir;
  int images = 50;
  uint64_t seed = 7;
  int width = 192, height = 144;
  app.add_option("out_dir", out_dir)->required();
  app.add_option("--images", images)->check(CLI::PositiveNumber);
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  const auto scenes = Scenes();
  json corpus = json::object();
  fs::create_directories(fs::path(out_dir) / "images");
  int next_object = 1;
  for (int i = 0; i < images; ++i) {
    Rng rng = Rng::Derive(seed, {"fixture", std::to_string(i)});
    const Scene& scene = scenes[i % scenes.size()];
    const std::string image_id = std::to_string(2400000 + i);
    vqaprobe::Image image(width, height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const int noise = static_cast<int>(rng.Uniform(41)) - 20;
        image.at(x, y, 0) = static_cast<uint8_t>(std::clamp(60 + x / 2 + noise, 0, 255));
        image.at(x, y, 1) = static_cast<uint8_t>(std::clamp(90 + y + noise, 0, 255));
        image.at(x, y, 2) = static_cast<uint8_t>(std::clamp(140 - y / 2 + (x * y) % 23 + noise, 0, 255));
      }
    }
    json objects = json::object();
    std::vector<std::string> ids;
    std::vector<std::string> used;
    auto add = [&](const std::string& name, vqaprobe::BoundingBox box, json attributes) {
      const std::string id = std::to_string(next_object++);
      Paint(image, box, name, rng);
      objects[id] = {{"name", name}, {"x", box.x}, {"y", box.y}, {"w", box.w},
                     {"h", box.h},   {"attributes", std::move(attributes)},
                     {"relations", json::array()}};
      ids.push_back(id);
      used.push_back(name);
    };
    for (const auto& surface : scene.backdrop) {
      const int h = height / 3;
      const int y = surface == "sky" || surface == "ceiling" || surface == "wall" ? 0 : height - h;
      add(surface, {0, y, width, h}, json::array());
    }
    const int count = 7 + static_cast<int>(rng.Uniform(6));
    for (int k = 0; k < count; ++k) {
      const Kind& kind = scene.kinds[rng.Uniform(scene.kinds.size())];
      if (std::count(used.begin(), used.end(), kind.name) >= (rng.Bernoulli(0.8) ? 1 : 2)) continue;
      const int side = kind.min_side + static_cast<int>(rng.Uniform(kind.max_side - kind.min_side + 1));
      const int w = std::min(width, side);
      const int h = std::min(height, std::max(8, side * (6 + static_cast<int>(rng.Uniform(7))) / 9));
      const int x = static_cast<int>(rng.Uniform(width - w + 1));
      const int y = static_cast<int>(rng.Uniform(height - h + 1));
      json attributes = json::array();
      for (const auto& slot : kind.attribute_slots) {
        if (rng.Bernoulli(0.6)) attributes.push_back(slot[rng.Uniform(slot.size())]);
      }
      if (!kind.actions.empty() && rng.Bernoulli(0.8)) {
        attributes.push_back(kind.actions[rng.Uniform(kind.actions.size())]);
      }
      add(kind.name, {x, y, w, h}, std::move(attributes));
    }
    // Relations between random object pairs.
    const size_t relation_count = ids.size() + rng.Uniform(ids.size());
    for (size_t r = 0; r < relation_count; ++r) {
      const std::string& from = ids[rng.Uniform(ids.size())];
      const std::string& to = ids[rng.Uniform(ids.size())];
      if (from == to) continue;
      objects[from]["relations"].push_back(
          {{"name", kRelations[rng.Uniform(kRelations.size())]}, {"object", to}});
    }
    corpus[image_id] = {{"width", width}, {"height", height}, {"objects", std::move(objects)}};
    vqaprobe::WritePng(fs::path(out_dir) / "images" / (image_id + ".png"), image);
  }
  vqaprobe::WriteFile(fs::path(out_dir) / "scene_graphs.json", corpus.dump(1) + "\n");
  std::cout << "wrote " << images << " scenes to " << out_dir << "\n";
  return 0;
}
