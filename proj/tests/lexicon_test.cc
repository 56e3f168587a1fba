// Copyright 2026 The Fairlens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairlens/lexicon.h"

#include <functional>
#include <random>
#include <string>

#include "fairlens/disco.h"
#include "fairlens/mlmprobe.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

TEST(LexiconTest, LoadsReligionTerms) {
  testing::TempDir dir;
  const auto path = dir.Write("religion.txt", "Hindu\nMuslim\nChristian\nSikh\nBuddhist\nJain");
  const IdentityLexicon lex = LoadLexicon(path, Axis::kReligion);
  EXPECT_EQ(lex.axis, Axis::kReligion);
  EXPECT_EQ(lex.terms, (std::vector<std::string>{"hindu", "muslim", "christian", "sikh",
                                                 "buddhist", "jain"}));
}

TEST(LexiconTest, CaseVariantsCollapseWithWarning) {
  Warnings warnings;
  const IdentityLexicon lex = ParseLexicon("Dalit\ndalit\n", Axis::kCaste, "mem", &warnings);
  EXPECT_EQ(lex.terms, std::vector<std::string>{"dalit"});
  EXPECT_TRUE(HasWarning(warnings, WarningCode::kDuplicateEntry));
}

TEST(LexiconTest, EmptyInputIsAnError) {
  EXPECT_EQ(CodeOf([] { ParseLexicon("", Axis::kRegion, "mem"); }), ErrorCode::kEmptyLexicon);
  EXPECT_EQ(CodeOf([] { ParseLexicon("# only a comment\n\n  \n", Axis::kRegion, "mem"); }),
            ErrorCode::kEmptyLexicon);
}

TEST(LexiconTest, MultiWordTermsAreNormalized) {
  const IdentityLexicon lex = ParseLexicon("  Scheduled   Caste \r\n", Axis::kCaste, "mem");
  EXPECT_EQ(lex.terms, std::vector<std::string>{"scheduled caste"});
}

TEST(LexiconTest, RoundTripsThroughWriter) {
  const IdentityLexicon lex = ParseLexicon("B\na\nC\n", Axis::kRegion, "mem");
  EXPECT_EQ(ParseLexicon(WriteLexicon(lex), Axis::kRegion, "mem").terms, lex.terms);
}

TEST(AxisTest, ParsesKnownNamesOnly) {
  EXPECT_EQ(ParseAxis("Religion"), Axis::kReligion);
  EXPECT_EQ(ParseAxis("region"), Axis::kRegion);
  EXPECT_EQ(CodeOf([] { ParseAxis("planet"); }), ErrorCode::kInvalidArgument);
}

TEST(TupleTest, ParsesAnnotatorCount) {
  const auto tuples =
      ParseTuples("axis,identity,token,s_count\nreligion,jain,vegetarian,5\n", "mem");
  ASSERT_EQ(tuples.size(), 1u);
  EXPECT_EQ(tuples[0], (StereotypeTuple{Axis::kReligion, "jain", "vegetarian", 5}));
}

TEST(TupleTest, RejectsOutOfRangeCountWithRow) {
  try {
    ParseTuples("axis,identity,token,s_count\nregion,bihari,poor,1\nregion,tamil,rice,7\n",
                "mem");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRange);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(CodeOf([] { ParseTuples("axis,identity,token,s_count\nregion,a,b,-1\n", "m"); }),
            ErrorCode::kRange);
}

TEST(TupleTest, RejectsDuplicatesAndBadHeaders) {
  EXPECT_EQ(CodeOf([] {
              ParseTuples("axis,identity,token,s_count\nregion,a,b,1\nregion,A,b,2\n", "m");
            }),
            ErrorCode::kDuplicate);
  EXPECT_EQ(CodeOf([] { ParseTuples("identity,token\na,b\n", "m"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseTuples("axis,identity,token,s_count\nregion,a,b,x\n", "m"); }),
            ErrorCode::kParse);
}

TEST(TupleTest, TrailingColumnsWarn) {
  Warnings warnings;
  const auto tuples = ParseTuples(
      "axis,identity,token,s_count,notes\nregion,tamil,rice,2,seen often\n", "m", &warnings);
  ASSERT_EQ(tuples.size(), 1u);
  EXPECT_EQ(tuples[0].s_count, 2);
  EXPECT_TRUE(HasWarning(warnings, WarningCode::kIgnoredColumns));
}

TEST(BucketTest, MembershipNests) {
  EXPECT_TRUE(InBucket(3, Bucket::kAtLeast1));
  EXPECT_TRUE(InBucket(3, Bucket::kAtLeast2));
  EXPECT_TRUE(InBucket(3, Bucket::kAtLeast3));
  EXPECT_FALSE(InBucket(3, Bucket::kNone));
  EXPECT_TRUE(InBucket(0, Bucket::kNone));
  for (Bucket b : {Bucket::kAtLeast1, Bucket::kAtLeast2, Bucket::kAtLeast3}) {
    EXPECT_FALSE(InBucket(0, b));
  }
  EXPECT_EQ(ParseBucket("S≥2"), Bucket::kAtLeast2);
  EXPECT_EQ(ParseBucket(BucketName(Bucket::kNone)), Bucket::kNone);
}

std::vector<StereotypeTuple> RandomTuples(std::mt19937& rng, int n) {
  std::vector<StereotypeTuple> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({Axis::kRegion, "id" + std::to_string(i % 7),
                   "tok" + std::to_string(i), static_cast<int>(rng() % 7)});
  }
  return out;
}

TEST(BucketTest, CardinalitiesAreConsistentOnRandomSets) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    const auto tuples = RandomTuples(rng, static_cast<int>(rng() % 200));
    const auto buckets = BucketTuples(tuples);
    EXPECT_EQ(buckets.at(Bucket::kNone).size() + buckets.at(Bucket::kAtLeast1).size(),
              tuples.size());
    EXPECT_GE(buckets.at(Bucket::kAtLeast1).size(), buckets.at(Bucket::kAtLeast2).size());
    EXPECT_GE(buckets.at(Bucket::kAtLeast2).size(), buckets.at(Bucket::kAtLeast3).size());
  }
}

TEST(TupleTest, WriteThenLoadIsIdempotent) {
  std::mt19937 rng(5);
  testing::TempDir dir;
  for (int iter = 0; iter < 20; ++iter) {
    auto tuples = RandomTuples(rng, 1 + static_cast<int>(rng() % 50));
    tuples.push_back({Axis::kReligion, "jain", "pure, \"vegetarian\"", 6});
    const auto path = dir.Write("t.csv", WriteTuples(tuples));
    const auto loaded = LoadTuples(path);
    EXPECT_EQ(loaded, tuples);
    EXPECT_EQ(WriteTuples(loaded), WriteTuples(tuples));
  }
}

TEST(NameListTest, RequiresBothGenders) {
  const NameList names = ParseNameList("name,gender\nAarav,male\nDiya,female\n", "in", "m");
  EXPECT_EQ(names.CountOf(Gender::kMale), 1u);
  EXPECT_EQ(names.CountOf(Gender::kFemale), 1u);
  EXPECT_EQ(CodeOf([] { ParseNameList("name,gender\nAarav,male\n", "in", "m"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] {
              ParseNameList("name,gender\nAarav,male\naarav,female\nDiya,female\n", "in", "m");
            }),
            ErrorCode::kDuplicate);
  EXPECT_EQ(CodeOf([] { ParseNameList("name,gender\nAarav,other\n", "in", "m"); }),
            ErrorCode::kParse);
}

TEST(MinimalPairTest, ParsesQuotedSentences) {
  const auto pairs = ParseMinimalPairs(
      "feature,with_feature,without_feature\n"
      "focus 'only',\"He only, not me, came.\",\"He came, not me.\"\n",
      "m");
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].feature, "focus 'only'");
  EXPECT_EQ(pairs[0].with_feature, "He only, not me, came.");
  EXPECT_EQ(ParseMinimalPairs(WriteMinimalPairs(pairs), "m")[0].without_feature,
            "He came, not me.");
}

TEST(MinimalPairTest, RejectsIdenticalSentences) {
  EXPECT_EQ(CodeOf([] {
              ParseMinimalPairs("feature,with_feature,without_feature\nf,same,same\n", "m");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] {
              ParseMinimalPairs("feature,with_feature,without_feature\nf,,x\n", "m");
            }),
            ErrorCode::kParse);
}

TEST(TokenLexiconTest, GroupsByCategory) {
  Warnings warnings;
  const auto lexicons = ParseTokenLexicons(
      "category,token\noccupation,Farmer\nfood,rice\noccupation,doctor\noccupation,farmer\n",
      "m", &warnings);
  ASSERT_EQ(lexicons.size(), 2u);
  EXPECT_EQ(lexicons[0].category, "occupation");
  EXPECT_EQ(lexicons[0].tokens, (std::vector<std::string>{"farmer", "doctor"}));
  EXPECT_TRUE(HasWarning(warnings, WarningCode::kDuplicateEntry));
  EXPECT_EQ(TokenCategories(lexicons).at("rice"), std::vector<std::string>{"food"});
}

TEST(ShippedDataTest, AllFilesLoadCleanly) {
  const std::string data = std::string(FAIRLENS_SOURCE_DIR) + "/data/";
  Warnings warnings;
  EXPECT_EQ(LoadLexicon(data + "lexicons/religion.txt", Axis::kReligion, &warnings).terms,
            (std::vector<std::string>{"hindu", "muslim", "christian", "sikh", "buddhist", "jain"}));
  EXPECT_EQ(LoadLexicon(data + "lexicons/caste.txt", Axis::kCaste, &warnings).terms.size(), 7u);
  EXPECT_GE(LoadLexicon(data + "lexicons/region.txt", Axis::kRegion, &warnings).terms.size(), 30u);
  const auto tuples = LoadTuples(data + "fixtures/example_tuples.csv", &warnings);
  EXPECT_EQ(tuples.size(), 16u);
  EXPECT_EQ(BucketTuples(tuples).at(Bucket::kAtLeast3).size(), 16u);
  const auto tokens = LoadTokenLexicons(data + "fixtures/tokens.csv", &warnings);
  for (const auto& t : tuples) EXPECT_TRUE(TokenCategories(tokens).contains(t.token)) << t.token;
  EXPECT_EQ(LoadProbeTemplates(data + "templates/mlm.csv").size(), 7u);
  EXPECT_EQ(LoadDiscoTemplates(data + "templates/disco.txt").size(), 8u);
  EXPECT_EQ(LoadNameList(data + "fixtures/names_indian.csv", "indian").entries.size(), 10u);
  EXPECT_EQ(LoadNameList(data + "fixtures/names_american.csv", "american").entries.size(), 10u);
  EXPECT_TRUE(warnings.empty());
}

}  // namespace
}  // namespace fairlens
