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

#ifndef FAIRLENS_PERTURB_H_
#define FAIRLENS_PERTURB_H_

// Perturbation sensitivity: sample natural sentences mentioning identity
// terms, substitute every other term of the same axis, score all variants and
// aggregate per-identity score shifts. Dialect minimal pairs reuse the same
// aggregation with (with - without) as the per-pair shift.
//
// Shift definition: for set s and identity i, delta(i,s) = score_i - mean of
// all variant scores of s. Per-unit values are means over observations; the
// normalized shift divides by the population standard deviation of every
// observation in the run.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairlens/adapter.h"
#include "fairlens/csv.h"
#include "fairlens/error.h"
#include "fairlens/lexicon.h"
#include "fairlens/text.h"

namespace fairlens {

struct PerturbationSet {
  int set_id = 0;
  std::string original_term;
  std::string sentence;
  std::map<std::string, std::string> variants;  // identity term -> sentence
};

struct UnitShift {
  int64_t n = 0;
  double mean_raw_shift = 0.0;
  double normalized_shift = 0.0;

  friend bool operator==(const UnitShift&, const UnitShift&) = default;
};

struct ShiftReport {
  std::map<std::string, UnitShift> per_unit;
  double sigma = 0.0;
  bool degenerate = false;
  std::string normalization = "global-population-zscore";
  // Source sentences sampled per identity term (perturbation mode only).
  std::map<std::string, int64_t> sampled;
};

// Standard deviations at or below this are treated as zero; scores live in
// [0,1] so an absolute threshold is meaningful.
inline constexpr double kDegenerateSigma = 1e-12;

// Byte spans of whole-token occurrences of `term_words` in `tokens`.
inline std::vector<std::pair<size_t, size_t>> FindTermSpans(
    const std::vector<text::Token>& tokens, const std::vector<std::string>& term_words) {
  std::vector<std::pair<size_t, size_t>> spans;
  if (term_words.empty() || tokens.size() < term_words.size()) return spans;
  for (size_t i = 0; i + term_words.size() <= tokens.size(); ++i) {
    bool match = true;
    for (size_t k = 0; k < term_words.size(); ++k) {
      if (tokens[i + k].folded != term_words[k]) {
        match = false;
        break;
      }
    }
    if (match) {
      spans.emplace_back(tokens[i].begin, tokens[i + term_words.size() - 1].end);
      i += term_words.size() - 1;
    }
  }
  return spans;
}

// Uniform integer in [0, bound) from a 64-bit engine, without the
// implementation-defined behavior of std::uniform_int_distribution.
inline uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Streams a corpus once, keeping a seeded reservoir of up to n sentences per
// lexicon term. Sentences naming two different lexicon terms are skipped.
class SentenceSampler {
 public:
  SentenceSampler(const IdentityLexicon& lexicon, int n_per_term, uint64_t seed)
      : lexicon_(lexicon), n_per_term_(n_per_term) {
    if (n_per_term < 1) {
      throw Error(ErrorCode::kInvalidArgument, "n_per_term must be >= 1");
    }
    for (size_t i = 0; i < lexicon.terms.size(); ++i) {
      words_.push_back(text::Words(lexicon.terms[i]));
      if (!words_.back().empty()) by_first_word_[words_.back().front()].push_back(i);
      // Per-term streams keep the sample independent of lexicon order.
      rngs_.emplace_back(seed ^ Fnv1a64(lexicon.terms[i]));
    }
    reservoirs_.resize(lexicon.terms.size());
    seen_.resize(lexicon.terms.size(), 0);
  }

  void Add(std::string_view sentence) {
    const uint64_t line = line_++;
    auto tokens = text::Tokenize(sentence);
    if (!tokens) {
      ++unreadable_;
      return;
    }
    int found = -1;
    for (size_t pos = 0; pos < tokens->size(); ++pos) {
      auto it = by_first_word_.find((*tokens)[pos].folded);
      if (it == by_first_word_.end()) continue;
      for (size_t term : it->second) {
        const auto& w = words_[term];
        if (pos + w.size() > tokens->size()) continue;
        bool match = true;
        for (size_t k = 1; k < w.size(); ++k) {
          if ((*tokens)[pos + k].folded != w[k]) {
            match = false;
            break;
          }
        }
        if (!match) continue;
        if (found >= 0 && static_cast<size_t>(found) != term) return;  // ambiguous
        found = static_cast<int>(term);
      }
    }
    if (found < 0) return;
    auto& reservoir = reservoirs_[found];
    const uint64_t count = ++seen_[found];
    if (reservoir.size() < static_cast<size_t>(n_per_term_)) {
      reservoir.emplace_back(line, std::string(sentence));
    } else {
      const uint64_t slot = UniformBelow(rngs_[found], count);
      if (slot < static_cast<uint64_t>(n_per_term_)) {
        reservoir[slot] = {line, std::string(sentence)};
      }
    }
  }

  // Sets ordered by lexicon term, then corpus position; ids are sequential.
  std::vector<PerturbationSet> Finish(Warnings* warnings = nullptr) const {
    std::vector<PerturbationSet> sets;
    int next_id = 0;
    for (size_t t = 0; t < lexicon_.terms.size(); ++t) {
      auto sample = reservoirs_[t];
      std::sort(sample.begin(), sample.end());
      if (sample.empty()) {
        Warn(warnings, WarningCode::kNoMatches,
             "identity term '" + lexicon_.terms[t] + "' matched no sentences (n=0)");
      }
      for (auto& [line, sentence] : sample) {
        sets.push_back({next_id++, lexicon_.terms[t], sentence, {}});
      }
    }
    return sets;
  }

  // Matching sentences seen per term (before sampling).
  std::map<std::string, int64_t> MatchCounts() const {
    std::map<std::string, int64_t> out;
    for (size_t t = 0; t < lexicon_.terms.size(); ++t) {
      out[lexicon_.terms[t]] = static_cast<int64_t>(seen_[t]);
    }
    return out;
  }

  uint64_t unreadable() const { return unreadable_; }

 private:
  const IdentityLexicon& lexicon_;
  int n_per_term_;
  std::vector<std::vector<std::string>> words_;
  std::map<std::string, std::vector<size_t>, std::less<>> by_first_word_;
  std::vector<std::mt19937_64> rngs_;
  std::vector<std::vector<std::pair<uint64_t, std::string>>> reservoirs_;
  std::vector<uint64_t> seen_;
  uint64_t line_ = 0;
  uint64_t unreadable_ = 0;
};

inline std::vector<PerturbationSet> ExtractSentences(
    const std::vector<std::string>& corpus, const IdentityLexicon& lexicon, int n_per_term,
    uint64_t seed, Warnings* warnings = nullptr) {
  SentenceSampler sampler(lexicon, n_per_term, seed);
  for (const auto& line : corpus) sampler.Add(line);
  return sampler.Finish(warnings);
}

inline std::vector<PerturbationSet> ExtractSentencesFromFile(
    const std::string& path, const IdentityLexicon& lexicon, int n_per_term, uint64_t seed,
    Warnings* warnings = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  SentenceSampler sampler(lexicon, n_per_term, seed);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    sampler.Add(line);
  }
  if (sampler.unreadable() > 0) {
    Warn(warnings, WarningCode::kSkippedLine,
         std::to_string(sampler.unreadable()) + " unreadable line(s) skipped");
  }
  return sampler.Finish(warnings);
}

// Builds one variant per lexicon term by replacing every whole-token
// occurrence of the set's original term. A replacement is capitalized when
// the span it replaces starts with a capital letter.
inline PerturbationSet PerturbSet(const PerturbationSet& set, const IdentityLexicon& lexicon) {
  auto tokens = text::Tokenize(set.sentence);
  if (!tokens) throw Error(ErrorCode::kInternal, "set sentence is not valid UTF-8");
  const auto spans = FindTermSpans(*tokens, text::Words(set.original_term));
  if (spans.empty()) {
    throw Error(ErrorCode::kInternal, "term '" + set.original_term +
                                          "' not found in set " + std::to_string(set.set_id));
  }
  PerturbationSet out = set;
  out.variants.clear();
  for (const auto& term : lexicon.terms) {
    if (term == set.original_term) continue;
    std::string variant;
    size_t cursor = 0;
    for (const auto& [begin, end] : spans) {
      variant.append(set.sentence, cursor, begin - cursor);
      const std::string_view original_span =
          std::string_view(set.sentence).substr(begin, end - begin);
      variant += text::StartsCapitalized(original_span) ? text::CapitalizeFirst(term) : term;
      cursor = end;
    }
    variant.append(set.sentence, cursor, std::string::npos);
    out.variants[term] = std::move(variant);
  }
  out.variants[set.original_term] = set.sentence;
  return out;
}

namespace perturb_internal {

// Order-independent sum: values are summed in ascending order so a
// permutation of the inputs reproduces the same bits.
inline double StableSum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

inline double StableMean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  // Offsetting by the minimum makes a constant input produce its value exactly.
  const double lo = values.front();
  double total = 0.0;
  for (double v : values) total += v - lo;
  return lo + total / static_cast<double>(values.size());
}

inline double PopulationSigma(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const double mean = StableMean(values);
  std::vector<double> squares;
  squares.reserve(values.size());
  for (double v : values) squares.push_back((v - mean) * (v - mean));
  return std::sqrt(StableSum(std::move(squares)) / static_cast<double>(values.size()));
}

inline ShiftReport Aggregate(const std::map<std::string, std::vector<double>>& observations,
                             Warnings* warnings) {
  ShiftReport report;
  std::vector<double> all;
  for (const auto& [unit, values] : observations) {
    if (values.empty()) continue;
    all.insert(all.end(), values.begin(), values.end());
    UnitShift u;
    u.n = static_cast<int64_t>(values.size());
    u.mean_raw_shift = StableSum(values) / static_cast<double>(values.size());
    report.per_unit[unit] = u;
  }
  report.sigma = PopulationSigma(all);
  if (report.sigma <= kDegenerateSigma) {
    report.degenerate = true;
    Warn(warnings, WarningCode::kDegenerateVariance,
         "all raw shifts are identical; normalized shifts set to 0");
    for (auto& [unit, u] : report.per_unit) u.normalized_shift = 0.0;
  } else {
    for (auto& [unit, u] : report.per_unit) u.normalized_shift = u.mean_raw_shift / report.sigma;
  }
  return report;
}

}  // namespace perturb_internal

// Raw per-set shifts delta(i,s) for one set's variant scores.
inline std::map<std::string, double> SetShifts(const std::map<std::string, double>& scores) {
  std::vector<double> values;
  for (const auto& [term, s] : scores) values.push_back(s);
  const double mean = perturb_internal::StableMean(values);
  std::map<std::string, double> shifts;
  for (const auto& [term, s] : scores) shifts[term] = s - mean;
  return shifts;
}

// Aggregation over already-scored sets (one identity -> score map per set).
inline ShiftReport ComputePerturbationShifts(
    const std::vector<std::map<std::string, double>>& set_scores, Warnings* warnings = nullptr) {
  std::map<std::string, std::vector<double>> observations;
  for (const auto& scores : set_scores) {
    for (const auto& [term, delta] : SetShifts(scores)) observations[term].push_back(delta);
  }
  return perturb_internal::Aggregate(observations, warnings);
}

// (feature, with - without) per pair.
inline ShiftReport ComputeDialectShifts(
    const std::vector<std::pair<std::string, double>>& pair_shifts,
    Warnings* warnings = nullptr) {
  std::map<std::string, std::vector<double>> observations;
  for (const auto& [feature, shift] : pair_shifts) observations[feature].push_back(shift);
  return perturb_internal::Aggregate(observations, warnings);
}

// Scores every variant of every set through `client` and aggregates.
inline ShiftReport ScoreShifts(const std::vector<PerturbationSet>& sets, ModelClient& client,
                               Warnings* warnings = nullptr) {
  std::vector<std::string> texts;
  for (const auto& set : sets) {
    if (!set.variants.contains(set.original_term)) {
      throw Error(ErrorCode::kInternal,
                  "set " + std::to_string(set.set_id) + " lacks its original term variant");
    }
    for (const auto& [term, sentence] : set.variants) texts.push_back(sentence);
  }
  const std::vector<double> scores = client.ScoreBatch(texts);
  std::vector<std::map<std::string, double>> set_scores;
  size_t k = 0;
  for (const auto& set : sets) {
    auto& m = set_scores.emplace_back();
    for (const auto& [term, sentence] : set.variants) m[term] = scores[k++];
  }
  return ComputePerturbationShifts(set_scores, warnings);
}

inline ShiftReport DialectShifts(const std::vector<MinimalPair>& pairs, ModelClient& client,
                                 Warnings* warnings = nullptr) {
  std::vector<std::string> texts;
  texts.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    texts.push_back(p.with_feature);
    texts.push_back(p.without_feature);
  }
  const std::vector<double> scores = client.ScoreBatch(texts);
  std::vector<std::pair<std::string, double>> shifts;
  for (size_t i = 0; i < pairs.size(); ++i) {
    shifts.emplace_back(pairs[i].feature, scores[2 * i] - scores[2 * i + 1]);
  }
  return ComputeDialectShifts(shifts, warnings);
}

}  // namespace fairlens

#endif  // FAIRLENS_PERTURB_H_
