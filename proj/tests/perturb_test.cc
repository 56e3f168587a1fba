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

#include "fairlens/perturb.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fairlens/adapter.h"
#include "fairlens/model.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens {
namespace {

IdentityLexicon Lex(std::vector<std::string> terms, Axis axis = Axis::kRegion) {
  return {axis, std::move(terms)};
}

TEST(PerturbSetTest, ReplacesSpanAndRepairsCapital) {
  const auto lex = Lex({"gujarati", "kashmiri", "tamil"});
  const auto set = PerturbSet({0, "gujarati", "Gujarati people love food.", {}}, lex);
  ASSERT_EQ(set.variants.size(), 3u);
  EXPECT_EQ(set.variants.at("kashmiri"), "Kashmiri people love food.");
  EXPECT_EQ(set.variants.at("tamil"), "Tamil people love food.");
  EXPECT_EQ(set.variants.at("gujarati"), "Gujarati people love food.");
}

TEST(PerturbSetTest, LowercaseSpanStaysLowercase) {
  const auto set =
      PerturbSet({0, "gujarati", "I LOVE gujarati food!", {}}, Lex({"gujarati", "kashmiri"}));
  EXPECT_EQ(set.variants.at("kashmiri"), "I LOVE kashmiri food!");
}

TEST(PerturbSetTest, SingleTermLexiconIsIdentity) {
  const auto set = PerturbSet({4, "jain", "Jain temples are old.", {}}, Lex({"jain"}));
  ASSERT_EQ(set.variants.size(), 1u);
  EXPECT_EQ(set.variants.at("jain"), "Jain temples are old.");
}

TEST(PerturbSetTest, WholeTokenMatchOnly) {
  const auto set =
      PerturbSet({0, "jain", "jainism vs jain values", {}}, Lex({"jain", "sikh"}));
  EXPECT_EQ(set.variants.at("sikh"), "jainism vs sikh values");
}

TEST(PerturbSetTest, MultiWordTermsAndRepeats) {
  const auto set = PerturbSet({0, "north east", "North East food. The north  east hills.", {}},
                              Lex({"north east", "goan"}));
  EXPECT_EQ(set.variants.at("goan"), "Goan food. The goan hills.");
}

TEST(PerturbSetTest, MissingTermIsInternalError) {
  try {
    PerturbSet({0, "jain", "jainism only", {}}, Lex({"jain", "sikh"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInternal);
  }
}

TEST(ExtractTest, TakesAllWhenScarce) {
  std::vector<std::string> corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back("The jain family number " + std::to_string(i));
  corpus.push_back("nothing here");
  Warnings warnings;
  const auto sets = ExtractSentences(corpus, Lex({"jain", "sikh"}, Axis::kReligion), 10, 1,
                                     &warnings);
  ASSERT_EQ(sets.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(sets[i].set_id, i);
    EXPECT_EQ(sets[i].original_term, "jain");
    EXPECT_EQ(sets[i].sentence, corpus[i]);
  }
  EXPECT_TRUE(HasWarning(warnings, WarningCode::kNoMatches));
}

std::vector<std::string> BigCorpus() {
  std::vector<std::string> corpus;
  const std::vector<std::string> terms = {"Punjabi", "Bengali", "Tamil", "Goan"};
  for (int i = 0; i < 2000; ++i) {
    corpus.push_back("line " + std::to_string(i) + " about " + terms[i % 4] + " culture");
  }
  corpus.push_back("Punjabi and Tamil together");  // ambiguous, never sampled
  return corpus;
}

TEST(ExtractTest, SeededSampleIsDeterministic) {
  const auto corpus = BigCorpus();
  const auto lex = Lex({"punjabi", "bengali", "tamil", "goan"});
  const auto a = ExtractSentences(corpus, lex, 10, 42);
  const auto b = ExtractSentences(corpus, lex, 10, 42);
  const auto c = ExtractSentences(corpus, lex, 10, 43);
  ASSERT_EQ(a.size(), 40u);
  std::vector<std::string> sa, sb, sc;
  for (const auto& s : a) sa.push_back(s.sentence);
  for (const auto& s : b) sb.push_back(s.sentence);
  for (const auto& s : c) sc.push_back(s.sentence);
  EXPECT_EQ(sa, sb);
  EXPECT_NE(sa, sc);
  for (const auto& s : sa) EXPECT_EQ(s.find("together"), std::string::npos);
}

TEST(ExtractTest, LexiconOrderDoesNotChangeSample) {
  const auto corpus = BigCorpus();
  const auto a = ExtractSentences(corpus, Lex({"punjabi", "bengali", "tamil", "goan"}), 7, 5);
  const auto b = ExtractSentences(corpus, Lex({"goan", "tamil", "bengali", "punjabi"}), 7, 5);
  std::multiset<std::string> sa, sb;
  for (const auto& s : a) sa.insert(s.sentence);
  for (const auto& s : b) sb.insert(s.sentence);
  EXPECT_EQ(sa, sb);
}

TEST(ExtractTest, SampleIsRoughlyUniform) {
  std::vector<std::string> corpus;
  for (int i = 0; i < 20; ++i) corpus.push_back("sikh item " + std::to_string(i));
  std::vector<int> hits(20, 0);
  for (uint64_t seed = 0; seed < 2000; ++seed) {
    for (const auto& s : ExtractSentences(corpus, Lex({"sikh"}), 5, seed)) {
      ++hits[std::stoi(s.sentence.substr(10))];
    }
  }
  // Each line is kept with probability 1/4: 500 expected, sd ~19.
  for (int h : hits) {
    EXPECT_GT(h, 400);
    EXPECT_LT(h, 600);
  }
}

TEST(ExtractTest, FileReaderSkipsInvalidLines) {
  testing::TempDir dir;
  const auto path = dir.Write("c.txt", "Jain food\r\nbad \xff jain\nJain art\n");
  Warnings warnings;
  const auto sets = ExtractSentencesFromFile(path, Lex({"jain"}), 10, 0, &warnings);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].sentence, "Jain food");
  EXPECT_TRUE(HasWarning(warnings, WarningCode::kSkippedLine));
}

TEST(ShiftTest, TwoSetWorkedExample) {
  const auto report = ComputePerturbationShifts({{{"A", 0.8}, {"B", 0.6}},
                                                 {{"A", 0.4}, {"B", 0.2}}});
  EXPECT_NEAR(report.per_unit.at("A").mean_raw_shift, 0.1, 1e-12);
  EXPECT_NEAR(report.per_unit.at("B").mean_raw_shift, -0.1, 1e-12);
  EXPECT_NEAR(report.sigma, 0.1, 1e-12);
  EXPECT_NEAR(report.per_unit.at("A").normalized_shift, 1.0, 1e-9);
  EXPECT_NEAR(report.per_unit.at("B").normalized_shift, -1.0, 1e-9);
  EXPECT_EQ(report.per_unit.at("A").n, 2);
  EXPECT_FALSE(report.degenerate);
}

TEST(ShiftTest, SingleSetDeviationsFromMean) {
  const auto shifts = SetShifts({{"A", 0.9}, {"B", 0.6}, {"C", 0.6}});
  EXPECT_NEAR(shifts.at("A"), 0.2, 1e-12);
  EXPECT_NEAR(shifts.at("B"), -0.1, 1e-12);
  EXPECT_NEAR(shifts.at("C"), -0.1, 1e-12);
  EXPECT_NEAR(shifts.at("A") + shifts.at("B") + shifts.at("C"), 0.0, 1e-12);
}

TEST(ShiftTest, ConstantScoresAreDegenerate) {
  Warnings warnings;
  const auto report = ComputePerturbationShifts(
      {{{"A", 0.3}, {"B", 0.3}}, {{"A", 0.7}, {"B", 0.7}, {"C", 0.7}}}, &warnings);
  EXPECT_TRUE(report.degenerate);
  EXPECT_TRUE(HasWarning(warnings, WarningCode::kDegenerateVariance));
  for (const auto& [unit, u] : report.per_unit) {
    EXPECT_EQ(u.mean_raw_shift, 0.0);
    EXPECT_EQ(u.normalized_shift, 0.0);
  }
}

TEST(ShiftTest, DialectHandExample) {
  const auto report = ComputeDialectShifts({{"f1", 0.2}, {"f1", 0.2}, {"f2", -0.2}, {"f2", -0.2}});
  EXPECT_NEAR(report.sigma, 0.2, 1e-12);
  EXPECT_NEAR(report.per_unit.at("f1").normalized_shift, 1.0, 1e-9);
  EXPECT_NEAR(report.per_unit.at("f2").normalized_shift, -1.0, 1e-9);
}

TEST(ShiftTest, DialectThroughClient) {
  const std::vector<MinimalPair> pairs = {{"habitual be", "she be working", "she is working"},
                                          {"copula drop", "he tall", "he is tall"}};
  auto client = MakeInProcessClient(std::make_shared<MockScorer>(
      std::map<std::string, double>{}, 0.5,
      std::map<std::string, double>{{"she be working", 0.3},
                                    {"she is working", 0.5},
                                    {"he tall", 0.6},
                                    {"he is tall", 0.4}}));
  const auto report = DialectShifts(pairs, *client);
  EXPECT_NEAR(report.per_unit.at("habitual be").mean_raw_shift, -0.2, 1e-12);
  EXPECT_NEAR(report.per_unit.at("copula drop").normalized_shift, 1.0, 1e-9);
}

TEST(ShiftTest, ConstantScorerThroughClientGivesZero) {
  const auto lex = Lex({"punjabi", "bengali", "tamil"});
  std::vector<PerturbationSet> sets;
  for (const auto& s : ExtractSentences(BigCorpus(), lex, 4, 9)) sets.push_back(PerturbSet(s, lex));
  auto client = MakeInProcessClient(std::make_shared<MockScorer>());
  Warnings warnings;
  const auto report = ScoreShifts(sets, *client, &warnings);
  EXPECT_TRUE(report.degenerate);
  ASSERT_EQ(report.per_unit.size(), 3u);
  for (const auto& [unit, u] : report.per_unit) EXPECT_EQ(u.normalized_shift, 0.0);
}

std::vector<std::map<std::string, double>> RandomSets(std::mt19937_64& rng,
                                                     const std::vector<std::string>& terms,
                                                     int n) {
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<std::map<std::string, double>> sets(n);
  for (auto& s : sets) {
    for (const auto& t : terms) s[t] = score(rng);
  }
  return sets;
}

TEST(ShiftPropertyTest, ZeroSumPerSetAndOverall) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> terms = {"a", "b", "c", "d", "e"};
  const auto sets = RandomSets(rng, terms, 200);
  for (const auto& s : sets) {
    double sum = 0;
    for (const auto& [t, d] : SetShifts(s)) sum += d;
    EXPECT_LT(std::abs(sum), 1e-12);
  }
  const auto report = ComputePerturbationShifts(sets);
  double total = 0;
  int64_t n = 0;
  for (const auto& [unit, u] : report.per_unit) {
    total += static_cast<double>(u.n) * u.mean_raw_shift;
    n += u.n;
  }
  EXPECT_LT(std::abs(total), 1e-9 * static_cast<double>(n));
}

TEST(ShiftPropertyTest, SetOrderDoesNotChangeNumbers) {
  std::mt19937_64 rng(23);
  auto sets = RandomSets(rng, {"x", "y", "z"}, 300);
  const auto before = ComputePerturbationShifts(sets);
  std::shuffle(sets.begin(), sets.end(), rng);
  const auto after = ComputePerturbationShifts(sets);
  EXPECT_EQ(before.per_unit, after.per_unit);
  EXPECT_EQ(before.sigma, after.sigma);
}

TEST(ShiftPropertyTest, AddingConstantShiftsOneIdentity) {
  std::mt19937_64 rng(29);
  const std::vector<std::string> terms = {"p", "q", "r", "s"};
  auto sets = RandomSets(rng, terms, 100);
  const auto before = ComputePerturbationShifts(sets);
  const double c = 0.05;
  for (auto& s : sets) s["q"] += c;
  const auto after = ComputePerturbationShifts(sets);
  const double expected = c * (1.0 - 1.0 / static_cast<double>(terms.size()));
  EXPECT_NEAR(after.per_unit.at("q").mean_raw_shift - before.per_unit.at("q").mean_raw_shift,
              expected, 1e-12);
  EXPECT_NEAR(after.per_unit.at("p").mean_raw_shift - before.per_unit.at("p").mean_raw_shift,
              -c / static_cast<double>(terms.size()), 1e-12);
}

TEST(ShiftPropertyTest, ClientDeliveryOrderDoesNotMatter) {
  const auto lex = Lex({"punjabi", "bengali", "tamil", "goan"});
  std::vector<PerturbationSet> sets;
  for (const auto& s : ExtractSentences(BigCorpus(), lex, 6, 3)) sets.push_back(PerturbSet(s, lex));
  const auto model = std::make_shared<MockScorer>(
      std::map<std::string, double>{{"tamil", 0.2}, {"goan", -0.1}, {"line", 0.01}}, 0.4);
  auto ordered = MakeInProcessClient(model);
  auto shuffled = MakeInProcessClient(model, {std::chrono::milliseconds(100), 5},
                                      DeliveryOrder::kShuffled, 77);
  const auto a = ScoreShifts(sets, *ordered);
  const auto b = ScoreShifts(sets, *shuffled);
  EXPECT_EQ(a.per_unit, b.per_unit);
  EXPECT_GT(a.per_unit.at("tamil").normalized_shift, 0.0);
  EXPECT_LT(a.per_unit.at("goan").normalized_shift, 0.0);
}

}  // namespace
}  // namespace fairlens
