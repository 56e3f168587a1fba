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

#include "fairlens/corpus.h"

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace fairlens {
namespace {

using Forms = std::set<std::string>;

StereotypeTuple T(std::string identity, std::string token, int s = 0) {
  return {Axis::kReligion, std::move(identity), std::move(token), s};
}

TEST(ExpandTest, IdentityPlurals) {
  EXPECT_EQ(ExpandIdentity("bihari"), (Forms{"bihari", "biharis", "biharies"}));
  EXPECT_EQ(ExpandIdentity("sikh"), (Forms{"sikh", "sikhs", "sikhes"}));
  EXPECT_EQ(ExpandIdentity("Tamil Nadu"), (Forms{"tamil nadu", "tamil nadus", "tamil nadues"}));
  EXPECT_TRUE(ExpandIdentity("konkany").contains("konkanies"));
  EXPECT_FALSE(ExpandIdentity("bombay").contains("bombaies"));
  EXPECT_THROW(ExpandIdentity(""), Error);
  EXPECT_THROW(ExpandIdentity(" ,"), Error);
}

TEST(ExpandTest, TokenInflections) {
  EXPECT_EQ(ExpandToken("farm"),
            (Forms{"farm", "farms", "farmes", "farmed", "farming", "farmer", "farmers"}));
  const auto calm = ExpandToken("calm");
  EXPECT_TRUE(calm.contains("calm"));
  EXPECT_TRUE(calm.contains("calms"));
  const auto carry = ExpandToken("carry");
  for (const char* f : {"carries", "carried", "carrier", "carriers", "carrying"}) {
    EXPECT_TRUE(carry.contains(f)) << f;
  }
  const auto dance = ExpandToken("dance");
  for (const char* f : {"dances", "danced", "dancing", "dancer", "dancers"}) {
    EXPECT_TRUE(dance.contains(f)) << f;
  }
  EXPECT_TRUE(ExpandToken("hard working").contains("hard workings"));
}

TEST(ExpandTest, AlwaysContainsTheTerm) {
  for (const char* t : {"jain", "tea", "fly", "be", "x", "north east"}) {
    EXPECT_TRUE(ExpandIdentity(t).contains(t)) << t;
    EXPECT_TRUE(ExpandToken(t).contains(t)) << t;
  }
}

const std::vector<std::string> kJainCorpus = {"jains are vegetarian people", "the jain monk ate",
                                              "vegetarian food is common"};

TEST(CoocTest, SentenceAndWindowCounts) {
  const auto index = CountCooccurrence(kJainCorpus, {T("jain", "vegetarian")}, 2);
  EXPECT_EQ(index.n_sentences, 3);
  EXPECT_EQ(index.pairs.at({"jain", "vegetarian"}).sentence_cooc, 1);
  EXPECT_EQ(index.pairs.at({"jain", "vegetarian"}).window_cooc, 1);
  EXPECT_EQ(index.identity_counts.at("jain"), 2);
  EXPECT_EQ(index.token_counts.at("vegetarian"), 2);
  const auto narrow = CountCooccurrence(kJainCorpus, {T("jain", "vegetarian")}, 1);
  EXPECT_EQ(narrow.pairs.at({"jain", "vegetarian"}).window_cooc, 0);
}

TEST(CoocTest, AbsentTokenCountsZero) {
  const auto index = CountCooccurrence(kJainCorpus, {T("jain", "pilot")}, std::nullopt);
  EXPECT_EQ(index.pairs.at({"jain", "pilot"}), PairCounts{});
  EXPECT_EQ(index.token_counts.at("pilot"), 0);
}

TEST(CoocTest, RepeatsCountOncePerSentence) {
  const auto index = CountCooccurrence({"Jain jain JAINS vegetarian vegetarians"},
                                       {T("jain", "vegetarian")}, 0);
  EXPECT_EQ(index.pairs.at({"jain", "vegetarian"}).sentence_cooc, 1);
  EXPECT_EQ(index.pairs.at({"jain", "vegetarian"}).window_cooc, 0);
  const auto adj = CountCooccurrence({"jains vegetarian"}, {T("jain", "vegetarian")}, 1);
  EXPECT_EQ(adj.pairs.at({"jain", "vegetarian"}).window_cooc, 1);
}

TEST(CoocTest, MultiWordAndOverlappingTerms) {
  const std::vector<StereotypeTuple> tuples = {T("north east", "tea"), T("east", "tea")};
  const auto index = CountCooccurrence({"North-East teas are good", "east of here"}, tuples, 2);
  EXPECT_EQ(index.pairs.at({"north east", "tea"}).window_cooc, 1);
  EXPECT_EQ(index.pairs.at({"east", "tea"}).window_cooc, 1);
  EXPECT_EQ(index.identity_counts.at("east"), 2);
  EXPECT_EQ(index.identity_counts.at("north east"), 1);
}

TEST(CoocTest, BlankAndInvalidLines) {
  const auto index = CountCooccurrence({"", "   ", "jain \xff vegetarian", "jain vegetarian"},
                                       {T("jain", "vegetarian")}, std::nullopt);
  EXPECT_EQ(index.n_sentences, 1);
  EXPECT_EQ(index.skipped_lines, 1);
}

TEST(CoocTest, MatchesNaiveOracleAcrossShards) {
  std::mt19937_64 rng(1);
  const std::vector<std::string> identities = {"jain", "sikh", "bihari", "north east", "goan"};
  const std::vector<std::string> tokens = {"farm", "dance", "carry", "tea", "kind", "people"};
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<std::string> terms = identities;
    terms.insert(terms.end(), tokens.begin(), tokens.end());
    const auto corpus = oracle::RandomCorpus(rng, terms, 1 + rng() % 300);
    std::vector<StereotypeTuple> tuples;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& i : identities) {
      for (const auto& t : tokens) {
        if (rng() % 2) continue;
        tuples.push_back(T(i, t));
        pairs.push_back({i, t});
      }
    }
    if (tuples.empty()) continue;
    for (std::optional<int> window : {std::optional<int>{}, std::optional<int>{2}}) {
      const auto expected = oracle::NaiveCount(corpus, pairs, window);
      for (size_t k : {1, 2, 4, 8}) {
        EXPECT_EQ(CountCooccurrence(corpus, tuples, window, k), expected)
            << "iter " << iter << " k " << k;
      }
    }
  }
}

TEST(CoocTest, FileCountingMatchesInMemory) {
  std::mt19937_64 rng(4);
  const auto corpus = oracle::RandomCorpus(rng, {"jain", "tea", "sikh", "farm"}, 2000);
  testing::TempDir dir;
  std::string contents;
  for (const auto& line : corpus) contents += line + "\r\n";
  const auto path = dir.Write("c.txt", contents);
  const std::vector<StereotypeTuple> tuples = {T("jain", "tea"), T("sikh", "farm")};
  const auto counter = CoocCounter::ForTuples(tuples, 2);
  const auto expected = counter.CountSharded(corpus, 1);
  EXPECT_EQ(counter.CountFile(path, 1, 97), expected);
  EXPECT_EQ(counter.CountFile(path, 3, 128), expected);
  EXPECT_THROW(counter.CountFile(dir.Path("missing.txt")), Error);
}

TEST(NpmiTest, ArithmeticExamples) {
  EXPECT_NEAR(*Npmi(10, 4, 5, 2), 0.0, 1e-12);
  EXPECT_NEAR(*Npmi(10, 4, 5, 4), std::log(2.0) / std::log(2.5), 1e-9);
  EXPECT_NEAR(*Npmi(10, 4, 5, 4), 0.7565, 1e-4);
  for (int k = 1; k < 10; ++k) EXPECT_NEAR(*Npmi(10, k, k, k), 1.0, 1e-12);
  EXPECT_FALSE(Npmi(10, 4, 5, 0).has_value());
  EXPECT_FALSE(Npmi(10, 10, 10, 10).has_value());
}

TEST(NpmiTest, StaysInRangeOnRandomCorpora) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 30; ++iter) {
    const auto corpus = oracle::RandomCorpus(rng, {"jain", "tea", "sikh", "farm"}, 50);
    const auto index = CountCooccurrence(
        corpus, {T("jain", "tea"), T("sikh", "farm"), T("jain", "farm")}, std::nullopt);
    for (const auto& [key, counts] : index.pairs) {
      const auto v = Npmi(key.first, key.second, index);
      if (v) {
        EXPECT_GE(*v, -1.0);
        EXPECT_LE(*v, 1.0);
      }
    }
  }
}

TEST(CandidateTest, TwoRulePruning) {
  const IdentityLexicon ids{Axis::kReligion, {"hindu", "jain"}};
  const std::vector<TokenLexicon> tokens = {{"trait", {"vegetarian", "kind"}}};
  const std::vector<std::string> corpus = {"hindus are kind", "the jain was kind",
                                           "jains are vegetarian", "vegetarian food"};
  const auto out = GenerateCandidates(ids, tokens, corpus);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (CandidateTuple{Axis::kReligion, "jain", "vegetarian", "trait", 1}));
  EXPECT_EQ(WriteCandidates(out),
            "axis,identity,token,category,sentence_cooc\nreligion,jain,vegetarian,trait,1\n");
}

TEST(CandidateTest, DegenerateInputs) {
  const std::vector<TokenLexicon> tokens = {{"trait", {"vegetarian", "kind"}}};
  EXPECT_TRUE(GenerateCandidates({Axis::kReligion, {"hindu", "jain"}}, tokens, {}).empty());
  EXPECT_TRUE(
      GenerateCandidates({Axis::kReligion, {"jain"}}, tokens, {"jain vegetarian kind"}).empty());
}

TEST(CandidateTest, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(12);
  const std::vector<std::string> pool_ids = {"jain", "sikh", "goan", "bihari", "parsi"};
  const std::vector<std::string> pool_tokens = {"tea", "farm", "kind", "dance", "rich", "carry"};
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<std::string> ids;
    for (const auto& i : pool_ids) {
      if (rng() % 2 || ids.empty()) ids.push_back(i);
    }
    std::vector<TokenLexicon> tokens = {{"a", {}}, {"b", {}}};
    for (const auto& t : pool_tokens) tokens[rng() % 2].tokens.push_back(t);
    std::erase_if(tokens, [](const auto& l) { return l.tokens.empty(); });
    std::vector<std::string> terms = ids;
    terms.insert(terms.end(), pool_tokens.begin(), pool_tokens.end());
    const auto corpus = oracle::RandomCorpus(rng, terms, 20 + rng() % 60);
    std::set<oracle::NaiveCandidate> got;
    for (const auto& c : GenerateCandidates({Axis::kRegion, ids}, tokens, corpus)) {
      got.insert({c.identity, c.token, c.category, c.sentence_cooc});
    }
    EXPECT_EQ(got, oracle::NaiveCandidates(ids, tokens, corpus)) << "iter " << iter;
  }
}

TEST(BucketCoocTest, MeansPerBucket) {
  CorpusIndex index;
  index.n_sentences = 20;
  index.pairs[{"a", "x"}] = {1, 0};
  index.pairs[{"b", "y"}] = {9, 3};
  const auto means = BucketCoocReport({T("a", "x", 0), T("b", "y", 4)}, index);
  EXPECT_EQ(means.at(Bucket::kNone).mean_sentence_cooc, 1.0);
  EXPECT_EQ(means.at(Bucket::kAtLeast3).mean_sentence_cooc, 9.0);
  EXPECT_EQ(means.at(Bucket::kAtLeast1).tuples, 1);
  EXPECT_FALSE(means.at(Bucket::kNone).mean_window_cooc.has_value());
  EXPECT_THROW(BucketCoocReport({T("c", "z", 1)}, index), Error);
}

TEST(BucketCoocTest, StereotypicalTuplesCoOccurMore) {
  // Tuple with annotator count s appears together in 2 + 3s sentences.
  std::vector<std::string> corpus;
  std::vector<StereotypeTuple> tuples;
  const std::vector<std::string> ids = {"jain", "sikh", "goan", "parsi", "bihari", "tamil", "naga"};
  for (int s = 0; s <= 6; ++s) {
    tuples.push_back(T(ids[s], "tok" + std::to_string(s), s));
    for (int k = 0; k < 2 + 3 * s; ++k) corpus.push_back(ids[s] + " and tok" + std::to_string(s));
    corpus.push_back(ids[s] + " alone");
  }
  const auto means = BucketCoocReport(tuples, CountCooccurrence(corpus, tuples, std::nullopt));
  double previous = -1;
  for (Bucket b : kAllBuckets) {
    ASSERT_TRUE(means.at(b).mean_sentence_cooc.has_value());
    EXPECT_GT(*means.at(b).mean_sentence_cooc, previous);
    previous = *means.at(b).mean_sentence_cooc;
  }
}

TEST(IndexJsonTest, RoundTrips) {
  const auto index = CountCooccurrence(kJainCorpus, {T("jain", "vegetarian"), T("jain", "x")}, 2);
  const auto j = IndexToJson(index);
  EXPECT_EQ(IndexFromJson(nlohmann::json::parse(j.dump())), index);
  EXPECT_TRUE(j["pairs"][1]["npmi"].is_null());
  EXPECT_THROW(IndexFromJson(nlohmann::json::parse("{}")), Error);
}

TEST(IndexTest, MergeRejectsDifferentWindows) {
  CorpusIndex a, b;
  a.window = 2;
  EXPECT_THROW(MergeIndices(a, b), Error);
}

}  // namespace
}  // namespace fairlens
