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

#include "fairlens/report.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "dialect_fixture.h"
#include "fairlens/adapter.h"
#include "fairlens/model.h"
#include "fairlens/perturb.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens {
namespace {

RunManifest FixedManifest() {
  RunManifest m;
  m.command_line = "probe dialect --pairs p.csv";
  m.seed = 7;
  m.adapter = "mock:spec.json";
  m.input_digests = {{"p.csv", Sha256Hex("abc")}};
  m.timestamp = "2026-01-01T00:00:00Z";
  return m;
}

ShiftReport FixtureReport() {
  const auto fx = fixture::MakeDialectFixture();
  auto client = MakeInProcessClient(
      std::make_shared<MockScorer>(std::map<std::string, double>{}, 0.5, fx.scores));
  return DialectShifts(fx.pairs, *client);
}

TEST(FormatTest, SixSignificantDigits) {
  EXPECT_EQ(FormatNumber(-0.908), "-0.908");
  EXPECT_EQ(FormatNumber(0.7564707973660301), "0.756471");
  EXPECT_EQ(FormatNumber(1234567.0), "1.23457e+06");
  EXPECT_EQ(FormatNumber(1e-17), "0");
  EXPECT_EQ(FormatNumber(-1e-15), "0");
  EXPECT_EQ(FormatNumber(2.0), "2");
  EXPECT_EQ(FormatOptional(std::nullopt), "null");
}

TEST(FormatTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(DialectTableTest, ReproducesTargetRanking) {
  const auto rows = RenderShiftTable(FixtureReport(), SortOrder::kAscending);
  const auto& targets = fixture::DialectTargets();
  ASSERT_EQ(rows.size(), targets.size());
  EXPECT_EQ(rows.front().unit, "focus 'only'");
  EXPECT_EQ(rows.back().unit, "left dislocation");
  for (const auto& row : rows) {
    double target = 0;
    for (const auto& [f, v] : targets) {
      if (f == row.unit) target = v;
    }
    double rendered = 0;
    ASSERT_TRUE(ParseDouble(FormatNumber(row.normalized_shift), rendered));
    EXPECT_NEAR(rendered, target, 1e-6) << row.unit;
    EXPECT_EQ(row.n, 2);
  }
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i - 1].normalized_shift, rows[i].normalized_shift);
  }
}

TEST(DialectTableTest, TiedFeaturesSortByName) {
  const auto rows = RenderShiftTable(FixtureReport());
  size_t mass = 0, resumptive = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].unit == "mass nouns as count nouns") mass = i;
    if (rows[i].unit == "resumptive subject pronoun") resumptive = i;
  }
  EXPECT_EQ(rows[mass].normalized_shift, rows[resumptive].normalized_shift);
  EXPECT_EQ(resumptive, mass + 1);
}

TEST(DialectTableTest, DescendingReversesAllButTies) {
  const auto rows = RenderShiftTable(FixtureReport(), SortOrder::kDescending);
  EXPECT_EQ(rows.front().unit, "left dislocation");
  EXPECT_EQ(rows.back().unit, "focus 'only'");
}

TEST(ShiftTableTest, EqualShiftsAreAlphabetical) {
  ShiftReport report;
  report.per_unit["zeta"] = {1, 0.1, 0.5};
  report.per_unit["alpha"] = {1, 0.1, 0.5};
  report.per_unit["mid"] = {1, -0.1, -0.5};
  for (SortOrder order : {SortOrder::kAscending, SortOrder::kDescending}) {
    const auto rows = RenderShiftTable(report, order);
    std::vector<std::string> units;
    for (const auto& r : rows) units.push_back(r.unit);
    if (order == SortOrder::kAscending) {
      EXPECT_EQ(units, (std::vector<std::string>{"mid", "alpha", "zeta"}));
    } else {
      EXPECT_EQ(units, (std::vector<std::string>{"alpha", "zeta", "mid"}));
    }
  }
}

TEST(ShiftTableTest, EmptyReportIsRejected) {
  try {
    RenderShiftTable(ShiftReport{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(ShiftTableTest, CsvRoundTripAndManifest) {
  const auto rows = RenderShiftTable(FixtureReport());
  const std::string csv = ShiftTableCsv(rows, FixedManifest());
  EXPECT_EQ(csv.rfind("# manifest ", 0), 0u);
  const auto parsed = ParseShiftCsv(csv, "mem");
  ASSERT_EQ(parsed.size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(parsed[i].unit, rows[i].unit);
    EXPECT_NEAR(parsed[i].normalized_shift, rows[i].normalized_shift, 1e-5);
  }
  EXPECT_EQ(ManifestFromComment(csv), FixedManifest());
}

TEST(ShiftJsonTest, RoundTripsExactly) {
  auto report = FixtureReport();
  report.sampled = {{"goan", 3}};
  const auto j = ShiftReportToJson(report, "dialect", FixedManifest());
  const auto back = ShiftReportFromJson(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.per_unit, report.per_unit);
  EXPECT_EQ(back.sigma, report.sigma);
  EXPECT_EQ(back.sampled, report.sampled);
  EXPECT_EQ(j["normalization"], "global-population-zscore");
  EXPECT_EQ(ManifestFromJson(j["manifest"]), FixedManifest());
}

TEST(ShiftJsonTest, IdenticalInputsGiveIdenticalBytes) {
  const auto a = ShiftReportToJson(FixtureReport(), "dialect", FixedManifest()).dump(2);
  const auto b = ShiftReportToJson(FixtureReport(), "dialect", FixedManifest()).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(TableCsv(ReportTable(nlohmann::json::parse(a))),
            TableCsv(ReportTable(nlohmann::json::parse(b))));
}

TEST(BucketChartTest, FixedOrderWithNulls) {
  const auto full = RenderBucketChartData({{Bucket::kAtLeast3, 4.0},
                                           {Bucket::kNone, 1.0},
                                           {Bucket::kAtLeast2, 3.0},
                                           {Bucket::kAtLeast1, 2.0}});
  ASSERT_EQ(full.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(full[i].bucket, kAllBuckets[i]);
    EXPECT_EQ(full[i].value, static_cast<double>(i + 1));
  }
  const auto missing = RenderBucketChartData({{Bucket::kNone, 1.0}, {Bucket::kAtLeast1, 2.0},
                                              {Bucket::kAtLeast2, 3.0}});
  EXPECT_FALSE(missing[3].value.has_value());
  EXPECT_NE(BucketChartCsv(missing).find("S>=3,null,null"), std::string::npos);
}

TEST(BucketChartTest, CarriesCardinalities) {
  const std::map<Bucket, int64_t> sizes = {{Bucket::kNone, 2083},
                                           {Bucket::kAtLeast1, 473},
                                           {Bucket::kAtLeast2, 86},
                                           {Bucket::kAtLeast3, 15}};
  const auto rows = RenderBucketChartData({{Bucket::kNone, 0.5}}, sizes);
  EXPECT_EQ(rows[0].tuples, 2083);
  EXPECT_EQ(rows[3].tuples, 15);
  const auto parsed = ParseBucketChartCsv(BucketChartCsv(rows, FixedManifest()), "mem");
  EXPECT_EQ(parsed, rows);
}

TEST(BucketJsonTest, RoundTrips) {
  std::map<Bucket, BucketMean> report;
  report[Bucket::kNone] = {3, 1.5, 0.5};
  report[Bucket::kAtLeast1] = {0, std::nullopt, std::nullopt};
  report[Bucket::kAtLeast2] = {1, 9.0, 2.0};
  report[Bucket::kAtLeast3] = {1, 9.0, 2.0};
  const auto j = nlohmann::json::parse(BucketReportToJson(report, FixedManifest()).dump());
  const auto back = BucketReportFromJson(j);
  for (Bucket b : kAllBuckets) {
    EXPECT_EQ(back.at(b).tuples, report.at(b).tuples);
    EXPECT_EQ(back.at(b).mean_sentence_cooc, report.at(b).mean_sentence_cooc);
    EXPECT_EQ(back.at(b).mean_window_cooc, report.at(b).mean_window_cooc);
  }
  const auto table = ReportTable(j);
  EXPECT_EQ(table.rows[1], (std::vector<std::string>{"S>=1", "0", "null", "null"}));
}

TEST(DiscoJsonTest, RoundTripsAndRenders) {
  DiscoResult r;
  r.per_template["[NAME] is a <MASK>."] = {1, 2, 3, {"doctor"}};
  r.average = 1.0;
  const auto j = nlohmann::json::parse(
      DiscoReportToJson({{"indian", r}}, DiscoConfig{}, FixedManifest()).dump());
  const auto back = DiscoReportFromJson(j);
  EXPECT_EQ(back.at("indian").per_template, r.per_template);
  EXPECT_EQ(back.at("indian").average, 1.0);
  const std::string md = TableMarkdown(ReportTable(j));
  EXPECT_NE(md.find("| indian | (average) | 1 |"), std::string::npos) << md;
}

TEST(ProbeJsonTest, RoundTrips) {
  ProbeResult r;
  r.k = 5;
  r.per_tuple = {{{Axis::kRegion, "punjabi", "farmer", 3}, true, 1},
                 {{Axis::kRegion, "punjabi", "poet", 0}, false, std::nullopt}};
  r.skipped = {{{Axis::kRegion, "goan", "fish", 0}, "no template"}};
  r.per_bucket[Bucket::kNone] = {1, 0, 0.0};
  r.per_bucket[Bucket::kAtLeast1] = {1, 1, 100.0};
  r.per_bucket[Bucket::kAtLeast2] = {1, 1, 100.0};
  r.per_bucket[Bucket::kAtLeast3] = {1, 1, 100.0};
  const auto j = nlohmann::json::parse(ProbeReportToJson({{5, r}}, FixedManifest()).dump());
  EXPECT_EQ(ProbeReportFromJson(j).at(5), r);
  EXPECT_EQ(ReportTable(j).rows.size(), 4u);
}

TEST(ReportTableTest, RejectsUnknownOrMalformed) {
  EXPECT_THROW(ReportTable(nlohmann::json::parse(R"({"kind":"pie"})")), Error);
  EXPECT_THROW(ReportTable(nlohmann::json::parse(R"({"kind":"shift"})")), Error);
  EXPECT_THROW(ReportTable(nlohmann::json::parse("[1]")), Error);
}

TEST(ReportTableTest, MarkdownEscapesPipes) {
  Table t{{"a|b"}, {{"x|y"}}};
  EXPECT_EQ(TableMarkdown(t), "| a\\|b |\n| --- |\n| x\\|y |\n");
}

TEST(ManifestTest, TimestampHonorsSourceDateEpoch) {
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  EXPECT_EQ(CurrentTimestamp(), "1970-01-01T00:00:00Z");
  ::setenv("SOURCE_DATE_EPOCH", "1767225600", 1);
  EXPECT_EQ(CurrentTimestamp(), "2026-01-01T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
}

TEST(ManifestTest, DigestsInputs) {
  testing::TempDir dir;
  const auto path = dir.Write("in.txt", "abc");
  const auto m = MakeManifest({"probe", "perturb"}, {path}, 3, "mock:x");
  EXPECT_EQ(m.command_line, "probe perturb");
  EXPECT_EQ(m.input_digests.at(path), Sha256Hex("abc"));
  EXPECT_EQ(m.tool_version, std::string(kToolVersion));
  EXPECT_EQ(ManifestFromJson(ManifestToJson(m)), m);
}

}  // namespace
}  // namespace fairlens
