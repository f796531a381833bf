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

#include <gtest/gtest.h>

#include "oracle.h"
#include "vqaprobe/nouns.h"

namespace vqaprobe {
namespace {

TEST(NounsTest, AgreementFixture) {
  const auto rows = oracle::ReadTsv(oracle::TestDataDir() / "agreement.tsv");
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& row : rows) {
    const bool plural = row[1] == "1";
    const bool mass = row[2] == "1";
    EXPECT_EQ(IsPluralNoun(row[0]), plural) << row[0];
    EXPECT_EQ(IsMassNoun(row[0]), mass) << row[0];
    EXPECT_EQ(WithIndefiniteArticle(row[0], plural, mass), row[3]) << row[0];
  }
}

TEST(NounsTest, ArticleFollowsFirstWord) {
  EXPECT_EQ(IndefiniteArticle("elephant"), "an");
  EXPECT_EQ(IndefiniteArticle("Elephant"), "an");
  EXPECT_EQ(IndefiniteArticle("large elephant"), "a");
  EXPECT_EQ(IndefiniteArticle("honest man"), "an");
  EXPECT_EQ(IndefiniteArticle("university"), "a");
  EXPECT_EQ(IndefiniteArticle(""), "a");
}

}  // namespace
}  // namespace vqaprobe
