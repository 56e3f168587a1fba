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

#ifndef FAIRLENS_LEXICON_H_
#define FAIRLENS_LEXICON_H_

// Data model and loaders for identity lexicons, name lists, token lexicons,
// stereotype tuples and dialect minimal pairs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "fairlens/csv.h"
#include "fairlens/error.h"
#include "fairlens/text.h"

namespace fairlens {

enum class Axis { kRegion, kReligion, kCaste, kGender };

inline std::string_view AxisName(Axis axis) {
  switch (axis) {
    case Axis::kRegion: return "region";
    case Axis::kReligion: return "religion";
    case Axis::kCaste: return "caste";
    case Axis::kGender: return "gender";
  }
  return "unknown";
}

inline Axis ParseAxis(std::string_view name) {
  const std::string folded = text::CaseFold(text::Trim(name));
  if (folded == "region") return Axis::kRegion;
  if (folded == "religion") return Axis::kReligion;
  if (folded == "caste") return Axis::kCaste;
  if (folded == "gender") return Axis::kGender;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown axis '" + std::string(name) + "'");
}

// Folds, trims and collapses internal whitespace runs to a single space.
inline std::string NormalizeTerm(std::string_view raw) {
  const std::string folded = text::CaseFold(text::Trim(raw));
  std::string out;
  out.reserve(folded.size());
  bool space = false;
  for (char c : folded) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

struct IdentityLexicon {
  Axis axis = Axis::kRegion;
  std::vector<std::string> terms;  // folded, unique, first-seen order

  bool Contains(std::string_view term) const {
    for (const auto& t : terms) {
      if (t == term) return true;
    }
    return false;
  }
};

// Parses one-term-per-line text. Duplicates after folding keep the first
// occurrence and emit a warning.
inline IdentityLexicon ParseLexicon(std::string_view contents, Axis axis,
                                    const std::string& source,
                                    Warnings* warnings = nullptr) {
  IdentityLexicon lexicon{axis, {}};
  std::set<std::string, std::less<>> seen;
  size_t line_no = 0;
  for (std::string_view line : SplitLines(contents)) {
    ++line_no;
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!text::IsValidUtf8(trimmed)) {
      throw Error(ErrorCode::kParse,
                  source + ":" + std::to_string(line_no) + ": invalid UTF-8");
    }
    std::string term = NormalizeTerm(trimmed);
    if (!seen.insert(term).second) {
      Warn(warnings, WarningCode::kDuplicateEntry,
           source + ":" + std::to_string(line_no) + ": duplicate term '" +
               term + "' ignored");
      continue;
    }
    lexicon.terms.push_back(std::move(term));
  }
  if (lexicon.terms.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, source + " contains no terms");
  }
  return lexicon;
}

inline IdentityLexicon LoadLexicon(const std::string& path, Axis axis,
                                   Warnings* warnings = nullptr) {
  return ParseLexicon(ReadFile(path), axis, path, warnings);
}

inline std::string WriteLexicon(const IdentityLexicon& lexicon) {
  std::string out;
  for (const auto& t : lexicon.terms) out += t + "\n";
  return out;
}

enum class Gender { kMale, kFemale };

struct NameEntry {
  std::string name;
  Gender gender = Gender::kMale;
};

struct NameList {
  std::string label;
  std::vector<NameEntry> entries;

  size_t CountOf(Gender g) const {
    size_t n = 0;
    for (const auto& e : entries) n += e.gender == g;
    return n;
  }
};

inline void ValidateNameList(const NameList& names) {
  std::set<std::string> seen;
  for (const auto& e : names.entries) {
    if (!seen.insert(text::CaseFold(e.name)).second) {
      throw Error(ErrorCode::kDuplicate,
                  "name list '" + names.label + "': duplicate name '" +
                      e.name + "'");
    }
  }
  if (names.CountOf(Gender::kMale) == 0 || names.CountOf(Gender::kFemale) == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "name list '" + names.label +
                    "' needs at least one male and one female name");
  }
}

// CSV with header `name,gender`; gender is `male` or `female`.
inline NameList ParseNameList(std::string_view contents, std::string label,
                              const std::string& source) {
  const CsvTable table = ParseCsv(contents, source);
  const int name_col = table.Column("name");
  const int gender_col = table.Column("gender");
  if (name_col < 0 || gender_col < 0) {
    throw Error(ErrorCode::kParse, source + ": expected header name,gender");
  }
  NameList names{std::move(label), {}};
  for (const auto& row : table.rows) {
    if (row.fields.size() <= static_cast<size_t>(std::max(name_col, gender_col))) {
      throw Error(ErrorCode::kParse,
                  source + ":" + std::to_string(row.line) + ": missing column");
    }
    const std::string gender = text::CaseFold(text::Trim(row.fields[gender_col]));
    NameEntry entry{std::string(text::Trim(row.fields[name_col])), Gender::kMale};
    if (gender == "female" || gender == "f") {
      entry.gender = Gender::kFemale;
    } else if (gender != "male" && gender != "m") {
      throw Error(ErrorCode::kParse, source + ":" + std::to_string(row.line) +
                                         ": gender must be male or female");
    }
    if (entry.name.empty()) {
      throw Error(ErrorCode::kParse,
                  source + ":" + std::to_string(row.line) + ": empty name");
    }
    names.entries.push_back(std::move(entry));
  }
  ValidateNameList(names);
  return names;
}

inline NameList LoadNameList(const std::string& path, std::string label) {
  return ParseNameList(ReadFile(path), std::move(label), path);
}

struct StereotypeTuple {
  Axis axis = Axis::kRegion;
  std::string identity;
  std::string token;
  int s_count = 0;  // annotators (of six) who marked the tuple stereotypical

  friend bool operator==(const StereotypeTuple&, const StereotypeTuple&) = default;
};

inline constexpr int kMaxAnnotators = 6;

// Header `axis,identity,token,s_count`; extra trailing columns are ignored
// with a warning.
inline std::vector<StereotypeTuple> ParseTuples(std::string_view contents,
                                                const std::string& source,
                                                Warnings* warnings = nullptr) {
  const CsvTable table = ParseCsv(contents, source);
  static constexpr std::array<std::string_view, 4> kColumns = {
      "axis", "identity", "token", "s_count"};
  if (table.header.size() < kColumns.size()) {
    throw Error(ErrorCode::kParse,
                source + ": expected header axis,identity,token,s_count");
  }
  for (size_t i = 0; i < kColumns.size(); ++i) {
    if (text::Trim(table.header[i]) != kColumns[i]) {
      throw Error(ErrorCode::kParse,
                  source + ": expected header axis,identity,token,s_count");
    }
  }
  if (table.header.size() > kColumns.size()) {
    Warn(warnings, WarningCode::kIgnoredColumns,
         source + ": ignoring " +
             std::to_string(table.header.size() - kColumns.size()) +
             " trailing column(s)");
  }
  std::vector<StereotypeTuple> tuples;
  std::set<std::tuple<Axis, std::string, std::string>> seen;
  for (const auto& row : table.rows) {
    const std::string where = source + ":" + std::to_string(row.line);
    if (row.fields.size() < kColumns.size()) {
      throw Error(ErrorCode::kParse, where + ": expected 4 columns");
    }
    StereotypeTuple t;
    t.axis = ParseAxis(row.fields[0]);
    t.identity = NormalizeTerm(row.fields[1]);
    t.token = NormalizeTerm(row.fields[2]);
    if (t.identity.empty() || t.token.empty()) {
      throw Error(ErrorCode::kParse, where + ": empty identity or token");
    }
    int64_t s = 0;
    if (!ParseInt(text::Trim(row.fields[3]), s)) {
      throw Error(ErrorCode::kParse, where + ": s_count is not an integer");
    }
    if (s < 0 || s > kMaxAnnotators) {
      throw Error(ErrorCode::kRange, where + " (row " +
                                         std::to_string(row.line) +
                                         "): s_count " + std::to_string(s) +
                                         " outside [0,6]");
    }
    t.s_count = static_cast<int>(s);
    if (!seen.emplace(t.axis, t.identity, t.token).second) {
      throw Error(ErrorCode::kDuplicate, where + ": duplicate tuple (" +
                                             t.identity + ", " + t.token + ")");
    }
    tuples.push_back(std::move(t));
  }
  return tuples;
}

inline std::vector<StereotypeTuple> LoadTuples(const std::string& path,
                                               Warnings* warnings = nullptr) {
  return ParseTuples(ReadFile(path), path, warnings);
}

inline std::string WriteTuples(const std::vector<StereotypeTuple>& tuples) {
  std::string out = "axis,identity,token,s_count\n";
  for (const auto& t : tuples) {
    out += CsvLine({std::string(AxisName(t.axis)), t.identity, t.token,
                    std::to_string(t.s_count)});
  }
  return out;
}

enum class Bucket { kNone, kAtLeast1, kAtLeast2, kAtLeast3 };

inline constexpr std::array<Bucket, 4> kAllBuckets = {
    Bucket::kNone, Bucket::kAtLeast1, Bucket::kAtLeast2, Bucket::kAtLeast3};

inline std::string_view BucketName(Bucket b) {
  switch (b) {
    case Bucket::kNone: return "S=0";
    case Bucket::kAtLeast1: return "S>=1";
    case Bucket::kAtLeast2: return "S>=2";
    case Bucket::kAtLeast3: return "S>=3";
  }
  return "?";
}

inline Bucket ParseBucket(std::string_view name) {
  for (Bucket b : kAllBuckets) {
    if (BucketName(b) == name) return b;
  }
  if (name == "S≥1") return Bucket::kAtLeast1;
  if (name == "S≥2") return Bucket::kAtLeast2;
  if (name == "S≥3") return Bucket::kAtLeast3;
  throw Error(ErrorCode::kParse, "unknown bucket '" + std::string(name) + "'");
}

// S>=k buckets nest; S=0 is disjoint from all of them.
inline bool InBucket(int s_count, Bucket b) {
  switch (b) {
    case Bucket::kNone: return s_count == 0;
    case Bucket::kAtLeast1: return s_count >= 1;
    case Bucket::kAtLeast2: return s_count >= 2;
    case Bucket::kAtLeast3: return s_count >= 3;
  }
  return false;
}

inline std::map<Bucket, std::vector<StereotypeTuple>> BucketTuples(
    const std::vector<StereotypeTuple>& tuples) {
  std::map<Bucket, std::vector<StereotypeTuple>> buckets;
  for (Bucket b : kAllBuckets) buckets[b];
  for (const auto& t : tuples) {
    for (Bucket b : kAllBuckets) {
      if (InBucket(t.s_count, b)) buckets[b].push_back(t);
    }
  }
  return buckets;
}

struct MinimalPair {
  std::string feature;
  std::string with_feature;
  std::string without_feature;
};

// Header `feature,with_feature,without_feature`.
inline std::vector<MinimalPair> ParseMinimalPairs(std::string_view contents,
                                                  const std::string& source) {
  const CsvTable table = ParseCsv(contents, source);
  const int f = table.Column("feature");
  const int w = table.Column("with_feature");
  const int wo = table.Column("without_feature");
  if (f < 0 || w < 0 || wo < 0) {
    throw Error(ErrorCode::kParse,
                source + ": expected header feature,with_feature,without_feature");
  }
  const size_t needed = static_cast<size_t>(std::max({f, w, wo})) + 1;
  std::vector<MinimalPair> pairs;
  for (const auto& row : table.rows) {
    const std::string where = source + ":" + std::to_string(row.line);
    if (row.fields.size() < needed) {
      throw Error(ErrorCode::kParse, where + ": missing column");
    }
    MinimalPair p{std::string(text::Trim(row.fields[f])),
                  std::string(text::Trim(row.fields[w])),
                  std::string(text::Trim(row.fields[wo]))};
    if (p.feature.empty() || p.with_feature.empty() || p.without_feature.empty()) {
      throw Error(ErrorCode::kParse, where + ": empty field");
    }
    if (p.with_feature == p.without_feature) {
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": sentences of a minimal pair must differ");
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

inline std::vector<MinimalPair> LoadMinimalPairs(const std::string& path) {
  return ParseMinimalPairs(ReadFile(path), path);
}

inline std::string WriteMinimalPairs(const std::vector<MinimalPair>& pairs) {
  std::string out = "feature,with_feature,without_feature\n";
  for (const auto& p : pairs) {
    out += CsvLine({p.feature, p.with_feature, p.without_feature});
  }
  return out;
}

struct TokenLexicon {
  std::string category;
  std::vector<std::string> tokens;
};

// CSV with header `category,token`. Categories keep first-seen order.
inline std::vector<TokenLexicon> ParseTokenLexicons(std::string_view contents,
                                                    const std::string& source,
                                                    Warnings* warnings = nullptr) {
  const CsvTable table = ParseCsv(contents, source);
  const int c = table.Column("category");
  const int t = table.Column("token");
  if (c < 0 || t < 0) {
    throw Error(ErrorCode::kParse, source + ": expected header category,token");
  }
  std::vector<TokenLexicon> lexicons;
  std::map<std::string, size_t> index;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : table.rows) {
    const std::string where = source + ":" + std::to_string(row.line);
    if (row.fields.size() <= static_cast<size_t>(std::max(c, t))) {
      throw Error(ErrorCode::kParse, where + ": missing column");
    }
    std::string category = NormalizeTerm(row.fields[c]);
    std::string token = NormalizeTerm(row.fields[t]);
    if (category.empty() || token.empty()) {
      throw Error(ErrorCode::kParse, where + ": empty category or token");
    }
    if (!seen.emplace(category, token).second) {
      Warn(warnings, WarningCode::kDuplicateEntry,
           where + ": duplicate token '" + token + "' ignored");
      continue;
    }
    auto [it, inserted] = index.emplace(category, lexicons.size());
    if (inserted) lexicons.push_back({category, {}});
    lexicons[it->second].tokens.push_back(std::move(token));
  }
  if (lexicons.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, source + " contains no tokens");
  }
  return lexicons;
}

inline std::vector<TokenLexicon> LoadTokenLexicons(const std::string& path,
                                                   Warnings* warnings = nullptr) {
  return ParseTokenLexicons(ReadFile(path), path, warnings);
}

// token -> categories it belongs to.
inline std::map<std::string, std::vector<std::string>> TokenCategories(
    const std::vector<TokenLexicon>& lexicons) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& lex : lexicons) {
    for (const auto& t : lex.tokens) out[t].push_back(lex.category);
  }
  return out;
}

}  // namespace fairlens

#endif  // FAIRLENS_LEXICON_H_
