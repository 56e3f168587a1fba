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

#ifndef FAIRLENS_REPORT_H_
#define FAIRLENS_REPORT_H_

// Report serialization and rendering. JSON reports keep full double
// precision and round-trip exactly; rendered tables (CSV, Markdown) print six
// significant digits. Every emitted report embeds its RunManifest.

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairlens/corpus.h"
#include "fairlens/csv.h"
#include "fairlens/disco.h"
#include "fairlens/error.h"
#include "fairlens/lexicon.h"
#include "fairlens/mlmprobe.h"
#include "fairlens/perturb.h"
#include "json.hpp"

namespace fairlens {

inline constexpr std::string_view kToolVersion = "0.3.0";

// Six significant digits, '.' decimal point, no grouping. Magnitudes below
// 1e-12 print as 0 so accumulated rounding noise does not leak into tables.
inline std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::abs(value) < 1e-12) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

inline std::string FormatOptional(const std::optional<double>& value) {
  return value ? FormatNumber(*value) : std::string("null");
}

inline std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string command_line;
  std::optional<uint64_t> seed;
  std::string adapter;
  std::map<std::string, std::string> input_digests;  // path -> sha256
  std::string timestamp;                             // ISO 8601, UTC

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

// Honors SOURCE_DATE_EPOCH so runs can be made byte-reproducible.
inline std::string CurrentTimestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch) {
    int64_t v = 0;
    if (!ParseInt(epoch, v)) throw Error(ErrorCode::kInvalidArgument, "bad SOURCE_DATE_EPOCH");
    t = static_cast<std::time_t>(v);
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline RunManifest MakeManifest(const std::vector<std::string>& argv,
                                const std::vector<std::string>& inputs,
                                std::optional<uint64_t> seed = std::nullopt,
                                std::string adapter = {}) {
  RunManifest m;
  for (size_t i = 0; i < argv.size(); ++i) {
    if (i > 0) m.command_line.push_back(' ');
    m.command_line += argv[i];
  }
  m.seed = seed;
  m.adapter = std::move(adapter);
  for (const auto& path : inputs) m.input_digests[path] = Sha256Hex(ReadFile(path));
  m.timestamp = CurrentTimestamp();
  return m;
}

inline nlohmann::json ManifestToJson(const RunManifest& m) {
  nlohmann::json j;
  j["tool_version"] = m.tool_version;
  j["command_line"] = m.command_line;
  j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
  j["adapter"] = m.adapter;
  j["input_digests"] = m.input_digests;
  j["timestamp"] = m.timestamp;
  return j;
}

inline RunManifest ManifestFromJson(const nlohmann::json& j) {
  RunManifest m;
  m.tool_version = j.value("tool_version", std::string());
  m.command_line = j.value("command_line", std::string());
  if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<uint64_t>();
  m.adapter = j.value("adapter", std::string());
  m.input_digests = j.value("input_digests", std::map<std::string, std::string>{});
  m.timestamp = j.value("timestamp", std::string());
  return m;
}

// Manifest as a single comment line for delimited outputs.
inline std::string ManifestComment(const RunManifest& m) {
  return "# manifest " + ManifestToJson(m).dump() + "\n";
}

inline std::optional<RunManifest> ManifestFromComment(std::string_view contents) {
  constexpr std::string_view kPrefix = "# manifest ";
  for (std::string_view line : SplitLines(contents)) {
    if (line.rfind(kPrefix, 0) == 0) {
      auto j = nlohmann::json::parse(line.substr(kPrefix.size()), nullptr, false);
      if (!j.is_discarded()) return ManifestFromJson(j);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shift reports

enum class SortOrder { kAscending, kDescending };

struct ShiftRow {
  std::string unit;
  int64_t n = 0;
  double mean_raw_shift = 0.0;
  double normalized_shift = 0.0;

  friend bool operator==(const ShiftRow&, const ShiftRow&) = default;
};

// Rows sorted by normalized shift; ties broken by unit name (ascending) in
// either order.
inline std::vector<ShiftRow> RenderShiftTable(const ShiftReport& report,
                                              SortOrder order = SortOrder::kAscending) {
  if (report.per_unit.empty()) throw Error(ErrorCode::kInvalidArgument, "empty shift report");
  std::vector<ShiftRow> rows;
  for (const auto& [unit, u] : report.per_unit) {
    rows.push_back({unit, u.n, u.mean_raw_shift, u.normalized_shift});
  }
  std::stable_sort(rows.begin(), rows.end(), [order](const ShiftRow& a, const ShiftRow& b) {
    if (a.normalized_shift != b.normalized_shift) {
      return order == SortOrder::kAscending ? a.normalized_shift < b.normalized_shift
                                            : a.normalized_shift > b.normalized_shift;
    }
    return a.unit < b.unit;
  });
  return rows;
}

inline std::string ShiftTableCsv(const std::vector<ShiftRow>& rows,
                                 const std::optional<RunManifest>& manifest = std::nullopt) {
  std::string out;
  if (manifest) out += ManifestComment(*manifest);
  out += "unit,n,mean_raw_shift,normalized_shift\n";
  for (const auto& r : rows) {
    out += CsvLine({r.unit, std::to_string(r.n), FormatNumber(r.mean_raw_shift),
                    FormatNumber(r.normalized_shift)});
  }
  return out;
}

inline std::vector<ShiftRow> ParseShiftCsv(std::string_view contents, const std::string& source) {
  const CsvTable table = ParseCsv(contents, source);
  if (table.header != std::vector<std::string>{"unit", "n", "mean_raw_shift", "normalized_shift"}) {
    throw Error(ErrorCode::kParse, source + ": not a shift table");
  }
  std::vector<ShiftRow> rows;
  for (const auto& row : table.rows) {
    ShiftRow r;
    if (row.fields.size() != 4 || !ParseInt(row.fields[1], r.n) ||
        !ParseDouble(row.fields[2], r.mean_raw_shift) ||
        !ParseDouble(row.fields[3], r.normalized_shift)) {
      throw Error(ErrorCode::kParse, source + ":" + std::to_string(row.line) + ": bad row");
    }
    r.unit = row.fields[0];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json ShiftReportToJson(const ShiftReport& report, std::string_view mode,
                                        const RunManifest& manifest) {
  nlohmann::json j;
  j["kind"] = "shift";
  j["mode"] = mode;
  j["manifest"] = ManifestToJson(manifest);
  j["normalization"] = report.normalization;
  j["sigma"] = report.sigma;
  j["degenerate"] = report.degenerate;
  j["units"] = nlohmann::json::array();
  for (const auto& [unit, u] : report.per_unit) {
    j["units"].push_back({{"unit", unit},
                          {"n", u.n},
                          {"mean_raw_shift", u.mean_raw_shift},
                          {"normalized_shift", u.normalized_shift}});
  }
  if (!report.sampled.empty()) j["sampled"] = report.sampled;
  return j;
}

inline ShiftReport ShiftReportFromJson(const nlohmann::json& j) {
  ShiftReport report;
  report.normalization = j.value("normalization", report.normalization);
  report.sigma = j.value("sigma", 0.0);
  report.degenerate = j.value("degenerate", false);
  for (const auto& u : j.at("units")) {
    report.per_unit[u.at("unit").get<std::string>()] = {
        u.at("n").get<int64_t>(), u.at("mean_raw_shift").get<double>(),
        u.at("normalized_shift").get<double>()};
  }
  if (j.contains("sampled")) report.sampled = j["sampled"].get<std::map<std::string, int64_t>>();
  return report;
}

// ---------------------------------------------------------------------------
// Bucket series

struct BucketRow {
  Bucket bucket = Bucket::kNone;
  std::optional<double> value;
  std::optional<int64_t> tuples;  // bucket cardinality, when known

  friend bool operator==(const BucketRow&, const BucketRow&) = default;
};

// Fixed S=0, S>=1, S>=2, S>=3 order; missing buckets become null rows.
inline std::vector<BucketRow> RenderBucketChartData(
    const std::map<Bucket, std::optional<double>>& means,
    const std::map<Bucket, int64_t>& cardinalities = {}) {
  std::vector<BucketRow> rows;
  for (Bucket b : kAllBuckets) {
    BucketRow row{b, std::nullopt, std::nullopt};
    if (auto it = means.find(b); it != means.end()) row.value = it->second;
    if (auto it = cardinalities.find(b); it != cardinalities.end()) row.tuples = it->second;
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<BucketRow> BucketRowsFromReport(const std::map<Bucket, BucketMean>& report) {
  std::map<Bucket, std::optional<double>> means;
  std::map<Bucket, int64_t> sizes;
  for (const auto& [b, m] : report) {
    means[b] = m.mean_sentence_cooc;
    sizes[b] = m.tuples;
  }
  return RenderBucketChartData(means, sizes);
}

inline std::string BucketChartCsv(const std::vector<BucketRow>& rows,
                                  const std::optional<RunManifest>& manifest = std::nullopt) {
  std::string out;
  if (manifest) out += ManifestComment(*manifest);
  out += "bucket,tuples,mean_cooc\n";
  for (const auto& r : rows) {
    out += CsvLine({std::string(BucketName(r.bucket)),
                    r.tuples ? std::to_string(*r.tuples) : std::string("null"),
                    FormatOptional(r.value)});
  }
  return out;
}

inline std::vector<BucketRow> ParseBucketChartCsv(std::string_view contents,
                                                  const std::string& source) {
  const CsvTable table = ParseCsv(contents, source);
  std::vector<BucketRow> rows;
  for (const auto& row : table.rows) {
    if (row.fields.size() != 3) throw Error(ErrorCode::kParse, source + ": bad bucket row");
    BucketRow r{ParseBucket(row.fields[0]), std::nullopt, std::nullopt};
    int64_t n = 0;
    double v = 0;
    if (row.fields[1] != "null") {
      if (!ParseInt(row.fields[1], n)) throw Error(ErrorCode::kParse, source + ": bad count");
      r.tuples = n;
    }
    if (row.fields[2] != "null") {
      if (!ParseDouble(row.fields[2], v)) throw Error(ErrorCode::kParse, source + ": bad mean");
      r.value = v;
    }
    rows.push_back(r);
  }
  return rows;
}

inline nlohmann::json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::optional<double> OptionalFromJson(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

inline nlohmann::json BucketReportToJson(const std::map<Bucket, BucketMean>& report,
                                         const RunManifest& manifest) {
  nlohmann::json j;
  j["kind"] = "cooc_buckets";
  j["manifest"] = ManifestToJson(manifest);
  j["buckets"] = nlohmann::json::array();
  for (Bucket b : kAllBuckets) {
    const auto it = report.find(b);
    const BucketMean m = it == report.end() ? BucketMean{} : it->second;
    j["buckets"].push_back({{"bucket", BucketName(b)},
                            {"tuples", m.tuples},
                            {"mean_sentence_cooc", OptionalJson(m.mean_sentence_cooc)},
                            {"mean_window_cooc", OptionalJson(m.mean_window_cooc)}});
  }
  return j;
}

inline std::map<Bucket, BucketMean> BucketReportFromJson(const nlohmann::json& j) {
  std::map<Bucket, BucketMean> out;
  for (const auto& b : j.at("buckets")) {
    out[ParseBucket(b.at("bucket").get<std::string>())] = {
        b.at("tuples").get<int64_t>(), OptionalFromJson(b.at("mean_sentence_cooc")),
        OptionalFromJson(b.at("mean_window_cooc"))};
  }
  return out;
}

// ---------------------------------------------------------------------------
// DisCo

inline nlohmann::json DiscoReportToJson(const std::map<std::string, DiscoResult>& results,
                                        const DiscoConfig& cfg, const RunManifest& manifest) {
  nlohmann::json j;
  j["kind"] = "disco";
  j["manifest"] = ManifestToJson(manifest);
  j["config"] = {{"top_k_fills", cfg.top_k_fills},
                 {"alpha", cfg.alpha},
                 {"correction", CorrectionName(cfg.correction)},
                 {"min_cell_expected", cfg.min_cell_expected}};
  j["lists"] = nlohmann::json::array();
  for (const auto& [label, r] : results) {
    nlohmann::json list;
    list["label"] = label;
    list["average"] = r.average;
    list["templates"] = nlohmann::json::array();
    for (const auto& [tmpl, o] : r.per_template) {
      list["templates"].push_back({{"template", tmpl},
                                   {"significant_count", o.significant_count},
                                   {"tested_count", o.tested_count},
                                   {"skipped_count", o.skipped_count},
                                   {"significant_words", o.significant_words}});
    }
    j["lists"].push_back(std::move(list));
  }
  return j;
}

inline std::map<std::string, DiscoResult> DiscoReportFromJson(const nlohmann::json& j) {
  std::map<std::string, DiscoResult> out;
  for (const auto& list : j.at("lists")) {
    DiscoResult r;
    r.average = list.at("average").get<double>();
    for (const auto& t : list.at("templates")) {
      r.per_template[t.at("template").get<std::string>()] = {
          t.at("significant_count").get<int64_t>(), t.at("tested_count").get<int64_t>(),
          t.value("skipped_count", int64_t{0}),
          t.value("significant_words", std::vector<std::string>{})};
    }
    out[list.at("label").get<std::string>()] = std::move(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// MLM probe

inline nlohmann::json ProbeReportToJson(const std::map<int, ProbeResult>& results,
                                        const RunManifest& manifest) {
  nlohmann::json j;
  j["kind"] = "mlm";
  j["manifest"] = ManifestToJson(manifest);
  j["results"] = nlohmann::json::array();
  for (const auto& [k, r] : results) {
    nlohmann::json rj;
    rj["k"] = k;
    rj["buckets"] = nlohmann::json::array();
    for (Bucket b : kAllBuckets) {
      const auto& bp = r.per_bucket.at(b);
      rj["buckets"].push_back({{"bucket", BucketName(b)},
                               {"tuples", bp.tuples},
                               {"hits", bp.hits},
                               {"percentage", OptionalJson(bp.percentage)}});
    }
    rj["tuples"] = nlohmann::json::array();
    for (const auto& th : r.per_tuple) {
      rj["tuples"].push_back({{"axis", AxisName(th.tuple.axis)},
                              {"identity", th.tuple.identity},
                              {"token", th.tuple.token},
                              {"s_count", th.tuple.s_count},
                              {"hit", th.hit},
                              {"best_rank", th.best_rank ? nlohmann::json(*th.best_rank)
                                                         : nlohmann::json(nullptr)}});
    }
    rj["skipped"] = nlohmann::json::array();
    for (const auto& s : r.skipped) {
      rj["skipped"].push_back({{"axis", AxisName(s.tuple.axis)},
                               {"identity", s.tuple.identity},
                               {"token", s.tuple.token},
                               {"s_count", s.tuple.s_count},
                               {"reason", s.reason}});
    }
    j["results"].push_back(std::move(rj));
  }
  return j;
}

inline std::map<int, ProbeResult> ProbeReportFromJson(const nlohmann::json& j) {
  const auto tuple_of = [](const nlohmann::json& t) {
    return StereotypeTuple{ParseAxis(t.at("axis").get<std::string>()),
                           t.at("identity").get<std::string>(), t.at("token").get<std::string>(),
                           t.at("s_count").get<int>()};
  };
  std::map<int, ProbeResult> out;
  for (const auto& rj : j.at("results")) {
    ProbeResult r;
    r.k = rj.at("k").get<int>();
    for (const auto& b : rj.at("buckets")) {
      r.per_bucket[ParseBucket(b.at("bucket").get<std::string>())] = {
          b.at("tuples").get<int64_t>(), b.at("hits").get<int64_t>(),
          OptionalFromJson(b.at("percentage"))};
    }
    for (const auto& t : rj.at("tuples")) {
      std::optional<int> rank;
      if (!t.at("best_rank").is_null()) rank = t["best_rank"].get<int>();
      r.per_tuple.push_back({tuple_of(t), t.at("hit").get<bool>(), rank});
    }
    for (const auto& s : rj.at("skipped")) {
      r.skipped.push_back({tuple_of(s), s.at("reason").get<std::string>()});
    }
    out[r.k] = std::move(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic table rendering for `report render`.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline Table ReportTable(const nlohmann::json& report, SortOrder order = SortOrder::kAscending) {
  if (!report.is_object()) throw Error(ErrorCode::kParse, "report is not a JSON object");
  const std::string kind = report.value("kind", std::string());
  Table t;
  try {
    if (kind == "shift") {
      t.header = {"unit", "n", "mean_raw_shift", "normalized_shift"};
      for (const auto& r : RenderShiftTable(ShiftReportFromJson(report), order)) {
        t.rows.push_back({r.unit, std::to_string(r.n), FormatNumber(r.mean_raw_shift),
                          FormatNumber(r.normalized_shift)});
      }
    } else if (kind == "cooc_buckets") {
      t.header = {"bucket", "tuples", "mean_sentence_cooc", "mean_window_cooc"};
      const auto buckets = BucketReportFromJson(report);
      for (Bucket b : kAllBuckets) {
        const auto it = buckets.find(b);
        const BucketMean m = it == buckets.end() ? BucketMean{} : it->second;
        t.rows.push_back({std::string(BucketName(b)), std::to_string(m.tuples),
                          FormatOptional(m.mean_sentence_cooc),
                          FormatOptional(m.mean_window_cooc)});
      }
    } else if (kind == "disco") {
      t.header = {"list", "template", "significant_count", "tested_count"};
      for (const auto& [label, r] : DiscoReportFromJson(report)) {
        for (const auto& [tmpl, o] : r.per_template) {
          t.rows.push_back({label, tmpl, std::to_string(o.significant_count),
                            std::to_string(o.tested_count)});
        }
        t.rows.push_back({label, "(average)", FormatNumber(r.average), ""});
      }
    } else if (kind == "mlm") {
      t.header = {"k", "bucket", "tuples", "hits", "percentage"};
      for (const auto& [k, r] : ProbeReportFromJson(report)) {
        for (Bucket b : kAllBuckets) {
          const auto& bp = r.per_bucket.at(b);
          t.rows.push_back({std::to_string(k), std::string(BucketName(b)),
                            std::to_string(bp.tuples),
                            std::to_string(bp.hits), FormatOptional(bp.percentage)});
        }
      }
    } else {
      throw Error(ErrorCode::kParse, "unknown report kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "malformed " + kind + " report: " + e.what());
  }
  return t;
}

inline std::string TableCsv(const Table& t) {
  std::string out = CsvLine(t.header);
  for (const auto& r : t.rows) out += CsvLine(r);
  return out;
}

inline std::string TableMarkdown(const Table& t) {
  const auto cell = [](std::string s) {
    std::string out;
    for (char c : s) {
      if (c == '|') out += "\\|";
      else out.push_back(c);
    }
    return out;
  };
  std::string out = "|";
  for (const auto& h : t.header) out += " " + cell(h) + " |";
  out += "\n|";
  for (size_t i = 0; i < t.header.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& r : t.rows) {
    out += "|";
    for (const auto& c : r) out += " " + cell(c) + " |";
    out += "\n";
  }
  return out;
}

}  // namespace fairlens

#endif  // FAIRLENS_REPORT_H_
