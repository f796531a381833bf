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

#include "vqaprobe/nouns.h"

#include <algorithm>
#include <array>

#include "vqaprobe/common.h"

namespace vqaprobe {
namespace {

constexpr std::array<std::string_view, 22> kIrregularPlurals = {
    "people", "men", "women", "children", "feet", "teeth", "mice", "geese",
    "sheep", "fish", "deer", "cattle", "police", "jeans", "pants", "shorts",
    "trousers", "glasses", "sunglasses", "scissors", "clothes", "skis"};

// Singular nouns with a plural-looking ending.
constexpr std::array<std::string_view, 16> kSingularInS = {
    "bus", "glass", "grass", "dress", "mattress", "cactus", "octopus", "canvas",
    "lens", "tennis", "news", "gas", "bass", "compass", "christmas", "asparagus"};

constexpr std::array<std::string_view, 37> kMassNouns = {
    "water", "grass", "snow", "sand", "dirt", "mud", "rice", "bread", "meat",
    "cheese", "sauce", "milk", "coffee", "tea", "juice", "ice", "foliage",
    "hair", "fur", "furniture", "gravel", "smoke", "steam", "sky", "luggage",
    "broccoli", "lettuce", "pasta", "soup", "traffic", "clothing", "headwear",
    "footwear", "equipment", "tableware", "signage", "food"};

// Words whose spelling misleads the vowel-letter rule.
constexpr std::array<std::string_view, 12> kAnBeforeConsonantLetter = {
    "hour", "hours", "honest", "honor", "heir", "herb", "hourglass", "x-ray",
    "fbi", "mp3", "heirloom", "hors d'oeuvre"};
constexpr std::array<std::string_view, 14> kABeforeVowelLetter = {
    "one", "once", "uniform", "university", "unicorn", "unit", "united",
    "utensil", "user", "usb", "european", "ukulele", "unicycle", "ewe"};

template <size_t N>
bool Contains(const std::array<std::string_view, N>& list, std::string_view word) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

std::string_view LastWord(std::string_view phrase) {
  const size_t pos = phrase.rfind(' ');
  return pos == std::string_view::npos ? phrase : phrase.substr(pos + 1);
}

std::string_view FirstWord(std::string_view phrase) {
  const size_t pos = phrase.find(' ');
  return pos == std::string_view::npos ? phrase : phrase.substr(0, pos);
}

}  // namespace

bool IsPluralNoun(std::string_view name) {
  const std::string lowered = ToLower(Trim(name));
  std::string_view word = LastWord(lowered);
  if (word.empty()) return false;
  if (Contains(kIrregularPlurals, word)) return true;
  if (Contains(kSingularInS, word)) return false;
  if (word.size() < 3 || word.back() != 's') return false;
  return !(EndsWith(word, "ss") || EndsWith(word, "us") || EndsWith(word, "is"));
}

bool IsMassNoun(std::string_view name) {
  const std::string lowered = ToLower(Trim(name));
  return Contains(kMassNouns, lowered) || Contains(kMassNouns, LastWord(lowered));
}

std::string_view IndefiniteArticle(std::string_view word) {
  const std::string lowered = ToLower(FirstWord(Trim(word)));
  if (lowered.empty()) return "a";
  if (Contains(kAnBeforeConsonantLetter, lowered)) return "an";
  if (Contains(kABeforeVowelLetter, lowered)) return "a";
  switch (lowered.front()) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return "an";
    default:
      return "a";
  }
}

std::string WithIndefiniteArticle(std::string_view phrase, bool plural, bool mass) {
  if (plural || mass) return std::string(phrase);
  return std::string(IndefiniteArticle(phrase)) + " " + std::string(phrase);
}

}  // namespace vqaprobe
