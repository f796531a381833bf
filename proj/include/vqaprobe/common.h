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

#ifndef VQAPROBE_COMMON_H_
#define VQAPROBE_COMMON_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vqaprobe {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Base error for every recoverable failure raised by the library. The CLI maps
// it to a nonzero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ToLower(std::string_view text);
std::string Trim(std::string_view text);

// Lowercases, trims and collapses internal whitespace runs to one space.
std::string NormalizeName(std::string_view text);

std::vector<std::string> Split(std::string_view text, char sep);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

bool StartsWith(std::string_view text, std::string_view prefix);
bool EndsWith(std::string_view text, std::string_view suffix);

// Reads a text file as lines with trailing '\r' removed. Throws Error when the
// file cannot be opened.
std::vector<std::string> ReadLines(const std::filesystem::path& path);
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Hex-encoded SHA-256 of the file content.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256(std::string_view data);

}  // namespace vqaprobe

#endif  // VQAPROBE_COMMON_H_
