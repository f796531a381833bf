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

// English surface heuristics for noun number and indefinite articles.

#ifndef VQAPROBE_NOUNS_H_
#define VQAPROBE_NOUNS_H_

#include <string>
#include <string_view>

namespace vqaprobe {

// Plural by surface form: a curated list of irregular plurals, else a
// trailing "s" that is not "ss", "us" or "is" (plus a list of singular
// nouns ending in "s"). Multiword names are decided by their last word.
bool IsPluralNoun(std::string_view name);

// Uncountable nouns that take no indefinite article ("water", "grass").
bool IsMassNoun(std::string_view name);

// "a" or "an" for the given following word.
std::string_view IndefiniteArticle(std::string_view word);

// Article phrase for a noun phrase: "a red cup", "an apple", "apples", "water".
std::string WithIndefiniteArticle(std::string_view phrase, bool plural, bool mass);

}  // namespace vqaprobe

#endif  // VQAPROBE_NOUNS_H_
