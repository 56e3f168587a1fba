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

#ifndef FAIRLENS_MLMPROBE_H_
#define FAIRLENS_MLMPROBE_H_

// Masked-token stereotype probe. Each tuple (identity, token) is checked by
// slotting the identity into every template of the token's category and
// asking the filler for its top-k predictions; the tuple hits when the token
// or one of its inflections appears among them for any template.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairlens/adapter.h"
#include "fairlens/corpus.h"
#include "fairlens/csv.h"
#include "fairlens/error.h"
#include "fairlens/lexicon.h"
#include "fairlens/protocol.h"
#include "fairlens/text.h"

namespace fairlens {

inline constexpr std::string_view kIdentitySlot = "[IDENTITY]";

struct ProbeTemplate {
  std::string category;
  std::string pattern;
  bool plural = true;  // slot takes the +s plural of the identity term
};

inline void ValidateProbeTemplate(const ProbeTemplate& t) {
  if (CountOccurrences(t.pattern, kIdentitySlot) != 1 ||
      CountOccurrences(t.pattern, kMaskToken) != 1) {
    throw Error(ErrorCode::kTemplate,
                "template needs exactly one [IDENTITY] and one <MASK>: '" + t.pattern + "'");
  }
  if (t.category.empty()) throw Error(ErrorCode::kTemplate, "template without category");
}

// CSV with header `category,pattern,plural`; plural defaults to true.
inline std::vector<ProbeTemplate> ParseProbeTemplates(std::string_view contents,
                                                      const std::string& source) {
  const CsvTable table = ParseCsv(contents, source);
  const int c = table.Column("category");
  const int p = table.Column("pattern");
  const int pl = table.Column("plural");
  if (c < 0 || p < 0) {
    throw Error(ErrorCode::kParse, source + ": expected header category,pattern,plural");
  }
  std::vector<ProbeTemplate> out;
  for (const auto& row : table.rows) {
    const std::string where = source + ":" + std::to_string(row.line);
    if (row.fields.size() <= static_cast<size_t>(std::max(c, p))) {
      throw Error(ErrorCode::kParse, where + ": missing column");
    }
    ProbeTemplate t{NormalizeTerm(row.fields[c]), std::string(text::Trim(row.fields[p])), true};
    if (pl >= 0 && static_cast<size_t>(pl) < row.fields.size() &&
        !text::Trim(row.fields[pl]).empty() &&
        !ParseBool(text::Trim(row.fields[pl]), t.plural)) {
      throw Error(ErrorCode::kParse, where + ": plural must be true or false");
    }
    ValidateProbeTemplate(t);
    out.push_back(std::move(t));
  }
  if (out.empty()) throw Error(ErrorCode::kTemplate, source + " contains no templates");
  return out;
}

inline std::vector<ProbeTemplate> LoadProbeTemplates(const std::string& path) {
  return ParseProbeTemplates(ReadFile(path), path);
}

// Surface form placed in the [IDENTITY] slot.
inline std::string IdentitySurface(std::string_view identity, bool plural) {
  std::string out(identity);
  if (plural) out += "s";
  return out;
}

// Capitalizes the identity when the slot opens the sentence.
inline std::string FillIdentitySlot(std::string_view pattern, std::string_view identity,
                                    bool plural) {
  std::string surface = IdentitySurface(identity, plural);
  std::string out(pattern);
  const size_t pos = out.find(kIdentitySlot);
  if (text::Trim(std::string_view(out).substr(0, pos)).empty()) {
    surface = text::CapitalizeFirst(surface);
  }
  out.replace(pos, kIdentitySlot.size(), surface);
  return out;
}

struct TupleHit {
  StereotypeTuple tuple;
  bool hit = false;
  std::optional<int> best_rank;  // 1-based rank of the first matching fill

  friend bool operator==(const TupleHit&, const TupleHit&) = default;
};

struct BucketPercentage {
  int64_t tuples = 0;
  int64_t hits = 0;
  std::optional<double> percentage;  // nullopt for an empty bucket

  friend bool operator==(const BucketPercentage&, const BucketPercentage&) = default;
};

struct SkippedTuple {
  StereotypeTuple tuple;
  std::string reason;

  friend bool operator==(const SkippedTuple&, const SkippedTuple&) = default;
};

struct ProbeResult {
  int k = 0;
  std::vector<TupleHit> per_tuple;  // probed tuples in input order
  std::map<Bucket, BucketPercentage> per_bucket;
  std::vector<SkippedTuple> skipped;

  friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
};

namespace mlmprobe_internal {

struct Plan {
  std::vector<StereotypeTuple> probed;
  std::vector<std::vector<size_t>> requests_of;  // per probed tuple
  std::vector<std::string> texts;                // unique fill requests
  std::vector<SkippedTuple> skipped;
};

inline Plan MakePlan(const std::vector<StereotypeTuple>& tuples,
                     const std::vector<ProbeTemplate>& templates,
                     const std::map<std::string, std::vector<std::string>>& token_categories,
                     Warnings* warnings) {
  std::map<std::string, std::vector<const ProbeTemplate*>> by_category;
  for (const auto& t : templates) {
    ValidateProbeTemplate(t);
    by_category[t.category].push_back(&t);
  }
  Plan plan;
  std::map<std::string, size_t> request_index;
  for (const auto& tuple : tuples) {
    auto cats = token_categories.find(tuple.token);
    std::vector<const ProbeTemplate*> applicable;
    std::string reason;
    if (cats == token_categories.end()) {
      reason = "token '" + tuple.token + "' has no category";
    } else {
      for (const auto& cat : cats->second) {
        auto it = by_category.find(cat);
        if (it != by_category.end()) {
          applicable.insert(applicable.end(), it->second.begin(), it->second.end());
        }
      }
      if (applicable.empty()) reason = "no template for the categories of '" + tuple.token + "'";
    }
    if (applicable.empty()) {
      Warn(warnings, WarningCode::kSkippedTuple,
           "(" + tuple.identity + ", " + tuple.token + "): " + reason);
      plan.skipped.push_back({tuple, reason});
      continue;
    }
    std::vector<size_t> reqs;
    for (const ProbeTemplate* t : applicable) {
      std::string text = FillIdentitySlot(t->pattern, tuple.identity, t->plural);
      auto [it, inserted] = request_index.emplace(text, plan.texts.size());
      if (inserted) plan.texts.push_back(std::move(text));
      reqs.push_back(it->second);
    }
    plan.probed.push_back(tuple);
    plan.requests_of.push_back(std::move(reqs));
  }
  return plan;
}

inline std::vector<std::optional<int>> BestRanks(const Plan& plan,
                                                 const std::vector<std::vector<Candidate>>& fills) {
  std::vector<std::optional<int>> ranks;
  for (size_t i = 0; i < plan.probed.size(); ++i) {
    const std::set<std::string> forms = ExpandToken(plan.probed[i].token);
    std::optional<int> best;
    for (size_t r : plan.requests_of[i]) {
      const auto& list = fills[r];
      for (size_t pos = 0; pos < list.size(); ++pos) {
        if (forms.contains(NormalizeTerm(list[pos].token))) {
          const int rank = static_cast<int>(pos) + 1;
          if (!best || rank < *best) best = rank;
          break;
        }
      }
    }
    ranks.push_back(best);
  }
  return ranks;
}

inline ProbeResult Summarize(const Plan& plan, const std::vector<std::optional<int>>& ranks,
                             int k) {
  ProbeResult result;
  result.k = k;
  result.skipped = plan.skipped;
  for (Bucket b : kAllBuckets) result.per_bucket[b];
  for (size_t i = 0; i < plan.probed.size(); ++i) {
    TupleHit th{plan.probed[i], ranks[i].has_value() && *ranks[i] <= k, ranks[i]};
    for (Bucket b : kAllBuckets) {
      if (!InBucket(th.tuple.s_count, b)) continue;
      auto& bp = result.per_bucket[b];
      ++bp.tuples;
      bp.hits += th.hit;
    }
    result.per_tuple.push_back(std::move(th));
  }
  for (auto& [b, bp] : result.per_bucket) {
    if (bp.tuples > 0) {
      bp.percentage = 100.0 * static_cast<double>(bp.hits) / static_cast<double>(bp.tuples);
    }
  }
  return result;
}

}  // namespace mlmprobe_internal

// One ProbeResult per k from a single fill pass at max(ks).
inline std::map<int, ProbeResult> KSweep(
    const std::vector<StereotypeTuple>& tuples, const std::vector<ProbeTemplate>& templates,
    const std::map<std::string, std::vector<std::string>>& token_categories,
    ModelClient& client, const std::vector<int>& ks, Warnings* warnings = nullptr) {
  if (ks.empty()) throw Error(ErrorCode::kInvalidArgument, "k sweep needs at least one k");
  for (int k : ks) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  }
  const int k_max = *std::max_element(ks.begin(), ks.end());
  const auto plan = mlmprobe_internal::MakePlan(tuples, templates, token_categories, warnings);
  const auto fills = client.FillBatch(plan.texts, k_max);
  const auto ranks = mlmprobe_internal::BestRanks(plan, fills);
  std::map<int, ProbeResult> out;
  for (int k : ks) out[k] = mlmprobe_internal::Summarize(plan, ranks, k);
  return out;
}

inline ProbeResult Probe(const std::vector<StereotypeTuple>& tuples,
                         const std::vector<ProbeTemplate>& templates,
                         const std::map<std::string, std::vector<std::string>>& token_categories,
                         ModelClient& client, int k, Warnings* warnings = nullptr) {
  return KSweep(tuples, templates, token_categories, client, {k}, warnings).at(k);
}

}  // namespace fairlens

#endif  // FAIRLENS_MLMPROBE_H_
