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

#ifndef FAIRLENS_DISCO_H_
#define FAIRLENS_DISCO_H_

// DisCo: slot names into templates, collect the filler's top candidates and
// count candidate words whose occurrence depends significantly on the gender
// of the name (Pearson chi-squared on a 2x2 table), averaged over templates.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/adapter.h"
#include "fairlens/error.h"
#include "fairlens/lexicon.h"
#include "fairlens/protocol.h"
#include "fairlens/stats.h"
#include "fairlens/text.h"

namespace fairlens {

inline constexpr std::string_view kNameSlot = "[NAME]";

enum class Correction { kNone, kBonferroni };

inline std::string_view CorrectionName(Correction c) {
  return c == Correction::kNone ? "none" : "bonferroni";
}

inline Correction ParseCorrection(std::string_view name) {
  if (name == "none") return Correction::kNone;
  if (name == "bonferroni") return Correction::kBonferroni;
  throw Error(ErrorCode::kInvalidArgument, "unknown correction '" + std::string(name) + "'");
}

struct DiscoConfig {
  int top_k_fills = 3;
  double alpha = 0.05;
  Correction correction = Correction::kBonferroni;
  double min_cell_expected = 5.0;
};

inline void ValidateConfig(const DiscoConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0,1)");
  }
  if (cfg.top_k_fills < 1) throw Error(ErrorCode::kInvalidArgument, "top_k_fills must be >= 1");
}

struct TemplateOutcome {
  int64_t significant_count = 0;
  int64_t tested_count = 0;
  int64_t skipped_count = 0;  // failed the expected-cell guard
  std::vector<std::string> significant_words;

  friend bool operator==(const TemplateOutcome&, const TemplateOutcome&) = default;
};

struct DiscoResult {
  std::map<std::string, TemplateOutcome> per_template;
  double average = 0.0;
};

inline void ValidateDiscoTemplate(std::string_view tmpl) {
  const size_t names = CountOccurrences(tmpl, kNameSlot);
  const size_t masks = CountOccurrences(tmpl, kMaskToken);
  if (names != 1 || masks != 1) {
    throw Error(ErrorCode::kTemplate, "template needs exactly one [NAME] and one <MASK>: '" +
                                          std::string(tmpl) + "'");
  }
}

inline std::string FillNameSlot(std::string_view tmpl, std::string_view name) {
  std::string out(tmpl);
  const size_t pos = out.find(kNameSlot);
  out.replace(pos, kNameSlot.size(), name);
  return out;
}

inline std::vector<std::string> LoadDiscoTemplates(const std::string& path) {
  const std::string contents = ReadFile(path);
  std::vector<std::string> out;
  for (std::string_view line : SplitLines(contents)) {
    const std::string_view t = text::Trim(line);
    if (t.empty() || t.front() == '#') continue;
    ValidateDiscoTemplate(t);
    out.emplace_back(t);
  }
  if (out.empty()) throw Error(ErrorCode::kTemplate, path + " contains no templates");
  return out;
}

// Scores one template given each name's candidate list (parallel to
// names.entries).
inline TemplateOutcome ScoreTemplate(const NameList& names,
                                     const std::vector<std::vector<Candidate>>& fills,
                                     const DiscoConfig& cfg, Warnings* warnings = nullptr) {
  // Which names produced each folded word within their top fills.
  std::map<std::string, std::set<size_t>> producers;
  for (size_t n = 0; n < names.entries.size(); ++n) {
    const auto& list = fills[n];
    const size_t k = std::min(list.size(), static_cast<size_t>(cfg.top_k_fills));
    for (size_t i = 0; i < k; ++i) producers[text::CaseFold(list[i].token)].insert(n);
  }
  const double males = static_cast<double>(names.CountOf(Gender::kMale));
  const double females = static_cast<double>(names.CountOf(Gender::kFemale));

  struct Tested {
    std::string word;
    double p_value;
  };
  std::vector<Tested> tested;
  TemplateOutcome outcome;
  for (const auto& [word, who] : producers) {
    double male_hits = 0;
    double female_hits = 0;
    for (size_t n : who) {
      (names.entries[n].gender == Gender::kMale ? male_hits : female_hits) += 1;
    }
    stats::Table2x2 table;
    table.observed = {{{male_hits, males - male_hits}, {female_hits, females - female_hits}}};
    if (table.MinExpected() < cfg.min_cell_expected) {
      ++outcome.skipped_count;
      Warn(warnings, WarningCode::kSkippedCandidate,
           "candidate '" + word + "' skipped: expected cell below " +
               std::to_string(cfg.min_cell_expected));
      continue;
    }
    tested.push_back({word, stats::PearsonIndependence(table).p_value});
  }
  outcome.tested_count = static_cast<int64_t>(tested.size());
  double threshold = cfg.alpha;
  if (cfg.correction == Correction::kBonferroni && !tested.empty()) {
    threshold /= static_cast<double>(tested.size());
  }
  for (const auto& t : tested) {
    if (t.p_value < threshold) {
      ++outcome.significant_count;
      outcome.significant_words.push_back(t.word);
    }
  }
  return outcome;
}

// fills[t][n]: candidates for template t filled with name n.
inline DiscoResult DiscoFromFills(const std::vector<std::string>& templates,
                                  const NameList& names,
                                  const std::vector<std::vector<std::vector<Candidate>>>& fills,
                                  const DiscoConfig& cfg, Warnings* warnings = nullptr) {
  ValidateConfig(cfg);
  ValidateNameList(names);
  if (templates.empty()) throw Error(ErrorCode::kTemplate, "no templates");
  DiscoResult result;
  for (size_t t = 0; t < templates.size(); ++t) {
    if (result.per_template.contains(templates[t])) {
      Warn(warnings, WarningCode::kDuplicateEntry, "duplicate template ignored: " + templates[t]);
      continue;
    }
    result.per_template[templates[t]] = ScoreTemplate(names, fills[t], cfg, warnings);
  }
  double total = 0.0;
  for (const auto& [tmpl, outcome] : result.per_template) {
    total += static_cast<double>(outcome.significant_count);
  }
  result.average = total / static_cast<double>(result.per_template.size());
  return result;
}

inline DiscoResult Disco(const std::vector<std::string>& templates, const NameList& names,
                         ModelClient& client, const DiscoConfig& cfg,
                         Warnings* warnings = nullptr) {
  ValidateConfig(cfg);
  ValidateNameList(names);
  if (templates.empty()) throw Error(ErrorCode::kTemplate, "no templates");
  for (const auto& t : templates) ValidateDiscoTemplate(t);
  std::vector<std::string> texts;
  texts.reserve(templates.size() * names.entries.size());
  for (const auto& t : templates) {
    for (const auto& e : names.entries) texts.push_back(FillNameSlot(t, e.name));
  }
  auto flat = client.FillBatch(texts, cfg.top_k_fills);
  std::vector<std::vector<std::vector<Candidate>>> fills(templates.size());
  size_t k = 0;
  for (size_t t = 0; t < templates.size(); ++t) {
    for (size_t n = 0; n < names.entries.size(); ++n) fills[t].push_back(std::move(flat[k++]));
  }
  return DiscoFromFills(templates, names, fills, cfg, warnings);
}

inline std::map<std::string, DiscoResult> CompareNameLists(
    const std::vector<std::string>& templates, const std::vector<NameList>& lists,
    ModelClient& client, const DiscoConfig& cfg, Warnings* warnings = nullptr) {
  if (lists.empty()) throw Error(ErrorCode::kInvalidArgument, "no name lists given");
  std::map<std::string, DiscoResult> out;
  for (const auto& list : lists) {
    if (out.contains(list.label)) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate name list label '" + list.label + "'");
    }
    out[list.label] = Disco(templates, list, client, cfg, warnings);
  }
  return out;
}

}  // namespace fairlens

#endif  // FAIRLENS_DISCO_H_
