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

#ifndef FAIRLENS_CORPUS_H_
#define FAIRLENS_CORPUS_H_

// Corpus statistics for stereotype tuples: per-sentence co-occurrence (and
// windowed co-occurrence) of identity terms and attribute tokens, nPMI, and
// candidate tuple generation.
//
// A sentence contributes at most 1 to any count. Identity terms match with
// their plural forms and tokens with their inflections (see ExpandIdentity /
// ExpandToken), always as whole words. Counting is sharded by line ranges;
// shard results merge by addition, so the outcome is independent of the
// shard count and order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairlens/aho_corasick.h"
#include "fairlens/error.h"
#include "fairlens/lexicon.h"
#include "fairlens/text.h"
#include "json.hpp"

namespace fairlens {

namespace corpus_internal {

inline bool IsAsciiVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool EndsConsonantY(std::string_view w) {
  return w.size() >= 2 && w.back() == 'y' && !IsAsciiVowel(w[w.size() - 2]) &&
         static_cast<unsigned char>(w[w.size() - 2]) < 0x80;
}

// Splits a term into folded words; the last word is the one inflected.
inline std::vector<std::string> TermWords(std::string_view term) {
  std::vector<std::string> words = text::Words(term);
  if (words.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "term '" + std::string(term) + "' has no words");
  }
  return words;
}

inline std::string JoinWithLast(const std::vector<std::string>& words, std::string_view last) {
  std::string out;
  for (size_t i = 0; i + 1 < words.size(); ++i) out += words[i] + " ";
  out += last;
  return out;
}

}  // namespace corpus_internal

// {term, term+s, term+es} plus term[:-1]+ies after consonant+y. Multi-word
// terms pluralize their final word. Forms are space-joined folded words.
inline std::set<std::string> ExpandIdentity(std::string_view term) {
  using namespace corpus_internal;
  const auto words = TermWords(term);
  const std::string& w = words.back();
  std::set<std::string> forms = {JoinWithLast(words, w), JoinWithLast(words, w + "s"),
                                 JoinWithLast(words, w + "es")};
  if (EndsConsonantY(w)) forms.insert(JoinWithLast(words, w.substr(0, w.size() - 1) + "ies"));
  return forms;
}

// token plus {s, es, ed, ing, er, ers}; a final e is dropped before
// ing/ed/er/ers, and consonant+y becomes ies/ied/ier/iers.
inline std::set<std::string> ExpandToken(std::string_view token) {
  using namespace corpus_internal;
  const auto words = TermWords(token);
  const std::string& w = words.back();
  std::set<std::string> forms = {w, w + "s"};
  const bool final_e = w.size() >= 2 && w.back() == 'e';
  const bool cons_y = EndsConsonantY(w);
  const std::string stem_e = final_e ? w.substr(0, w.size() - 1) : w;
  const std::string stem_y = cons_y ? w.substr(0, w.size() - 1) + "i" : w;
  forms.insert(cons_y ? stem_y + "es" : w + "es");
  forms.insert(stem_e + "ing");
  for (std::string_view suffix : {"ed", "er", "ers"}) {
    if (cons_y) {
      forms.insert(stem_y + std::string(suffix));
    } else {
      forms.insert(stem_e + std::string(suffix));
    }
  }
  std::set<std::string> out;
  for (const auto& f : forms) out.insert(JoinWithLast(words, f));
  return out;
}

struct PairCounts {
  int64_t sentence_cooc = 0;
  int64_t window_cooc = 0;

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

struct CorpusIndex {
  int64_t n_sentences = 0;
  int64_t skipped_lines = 0;
  std::optional<int> window;
  std::map<std::string, int64_t> identity_counts;  // sentences with any plural form
  std::map<std::string, int64_t> token_counts;     // sentences with any inflection
  std::map<std::pair<std::string, std::string>, PairCounts> pairs;

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;
};

inline CorpusIndex MergeIndices(const CorpusIndex& a, const CorpusIndex& b) {
  if (a.window != b.window) {
    throw Error(ErrorCode::kInvalidArgument, "cannot merge indices with different windows");
  }
  CorpusIndex out = a;
  out.n_sentences += b.n_sentences;
  out.skipped_lines += b.skipped_lines;
  for (const auto& [k, v] : b.identity_counts) out.identity_counts[k] += v;
  for (const auto& [k, v] : b.token_counts) out.token_counts[k] += v;
  for (const auto& [k, v] : b.pairs) {
    auto& p = out.pairs[k];
    p.sentence_cooc += v.sentence_cooc;
    p.window_cooc += v.window_cooc;
  }
  return out;
}

struct CoocPair {
  std::string identity;
  std::string token;
};

// Raw per-shard counters, indexed by the counter's internal term/pair ids.
struct ShardCounts {
  int64_t n_sentences = 0;
  int64_t skipped_lines = 0;
  std::vector<int64_t> identity;
  std::vector<int64_t> token;
  std::vector<int64_t> sentence_cooc;
  std::vector<int64_t> window_cooc;

  void Merge(const ShardCounts& other) {
    n_sentences += other.n_sentences;
    skipped_lines += other.skipped_lines;
    for (size_t i = 0; i < identity.size(); ++i) identity[i] += other.identity[i];
    for (size_t i = 0; i < token.size(); ++i) token[i] += other.token[i];
    for (size_t i = 0; i < sentence_cooc.size(); ++i) sentence_cooc[i] += other.sentence_cooc[i];
    for (size_t i = 0; i < window_cooc.size(); ++i) window_cooc[i] += other.window_cooc[i];
  }
};

// Compiles a pair list into a word automaton once; counting then runs over
// any number of shards concurrently (the counter itself is immutable).
class CoocCounter {
 public:
  CoocCounter(const std::vector<CoocPair>& pairs, std::optional<int> window)
      : window_(window) {
    if (window && *window < 0) throw Error(ErrorCode::kInvalidArgument, "window must be >= 0");
    std::map<std::string, uint32_t> identity_ids;
    std::map<std::string, uint32_t> token_ids;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> pair_ids;
    for (const auto& p : pairs) {
      const uint32_t i = Intern(identity_ids, identities_, p.identity);
      const uint32_t t = Intern(token_ids, tokens_, p.token);
      if (pair_ids.emplace(std::make_pair(i, t), static_cast<uint32_t>(pairs_.size())).second) {
        pairs_.push_back({i, t});
      }
    }
    pairs_of_identity_.resize(identities_.size());
    for (uint32_t k = 0; k < pairs_.size(); ++k) {
      pairs_of_identity_[pairs_[k].first].push_back({pairs_[k].second, k});
      pair_lookup_[Key(pairs_[k].first, pairs_[k].second)] = k;
    }
    // Surface forms become automaton patterns tagged with their owning term.
    std::map<std::string, uint32_t> pattern_of_form;
    auto add_forms = [&](const std::set<std::string>& forms, bool is_identity, uint32_t term) {
      for (const auto& form : forms) {
        auto [it, inserted] = pattern_of_form.emplace(form, 0);
        if (inserted) {
          std::vector<uint32_t> ids;
          for (const auto& w : text::Words(form)) ids.push_back(InternWord(w));
          it->second = automaton_.Add(ids);
          pattern_owners_.emplace_back();
        }
        pattern_owners_[it->second].push_back({is_identity, term});
      }
    };
    for (uint32_t i = 0; i < identities_.size(); ++i) {
      add_forms(ExpandIdentity(identities_[i]), true, i);
    }
    for (uint32_t t = 0; t < tokens_.size(); ++t) add_forms(ExpandToken(tokens_[t]), false, t);
    automaton_.Build(static_cast<uint32_t>(vocabulary_.size()));
  }

  static CoocCounter ForTuples(const std::vector<StereotypeTuple>& tuples,
                               std::optional<int> window) {
    std::vector<CoocPair> pairs;
    pairs.reserve(tuples.size());
    for (const auto& t : tuples) pairs.push_back({t.identity, t.token});
    return CoocCounter(pairs, window);
  }

  // Per-thread working memory.
  class Scratch {
   public:
    explicit Scratch(const CoocCounter& c)
        : identity_stamp(c.identities_.size(), 0),
          token_stamp(c.tokens_.size(), 0),
          identity_spans(c.window_ ? c.identities_.size() : 0),
          token_spans(c.window_ ? c.tokens_.size() : 0) {}

   private:
    friend class CoocCounter;
    text::WordScanner scanner;
    std::vector<uint32_t> word_ids;
    std::vector<uint64_t> identity_stamp;
    std::vector<uint64_t> token_stamp;
    std::vector<uint32_t> present_identities;
    std::vector<uint32_t> present_tokens;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> identity_spans;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> token_spans;
    uint64_t epoch = 0;
  };

  ShardCounts NewShard() const {
    ShardCounts s;
    s.identity.assign(identities_.size(), 0);
    s.token.assign(tokens_.size(), 0);
    s.sentence_cooc.assign(pairs_.size(), 0);
    s.window_cooc.assign(pairs_.size(), 0);
    return s;
  }

  // Blank lines are not sentences; malformed UTF-8 lines are skipped.
  void CountSentence(std::string_view line, ShardCounts& out, Scratch& s) const {
    if (text::Trim(line).empty()) return;
    if (!s.scanner.Scan(line)) {
      ++out.skipped_lines;
      return;
    }
    ++out.n_sentences;
    const size_t n = s.scanner.size();
    if (n == 0) return;
    const uint64_t epoch = ++s.epoch;
    s.present_identities.clear();
    s.present_tokens.clear();
    uint32_t state = WordAutomaton::kRoot;
    for (size_t j = 0; j < n; ++j) {
      auto it = vocabulary_.find(s.scanner[j]);
      state = automaton_.Step(state, it == vocabulary_.end() ? WordAutomaton::kUnknownWord
                                                             : it->second);
      for (uint32_t pattern : automaton_.Outputs(state)) {
        const uint32_t end = static_cast<uint32_t>(j);
        const uint32_t begin = end + 1 - automaton_.PatternLength(pattern);
        for (const auto& [is_identity, term] : pattern_owners_[pattern]) {
          auto& stamp = is_identity ? s.identity_stamp[term] : s.token_stamp[term];
          if (stamp != epoch) {
            stamp = epoch;
            (is_identity ? s.present_identities : s.present_tokens).push_back(term);
            if (window_) (is_identity ? s.identity_spans : s.token_spans)[term].clear();
          }
          if (window_) (is_identity ? s.identity_spans : s.token_spans)[term].push_back({begin, end});
        }
      }
    }
    for (uint32_t i : s.present_identities) ++out.identity[i];
    for (uint32_t t : s.present_tokens) ++out.token[t];
    if (s.present_tokens.empty()) return;
    for (uint32_t i : s.present_identities) {
      const auto& candidates = pairs_of_identity_[i];
      if (candidates.size() <= 4 * s.present_tokens.size()) {
        for (const auto& [t, pair] : candidates) {
          if (s.token_stamp[t] == epoch) Hit(i, t, pair, out, s);
        }
      } else {
        for (uint32_t t : s.present_tokens) {
          auto it = pair_lookup_.find(Key(i, t));
          if (it != pair_lookup_.end()) Hit(i, t, it->second, out, s);
        }
      }
    }
  }

  template <typename Lines>
  ShardCounts CountLines(const Lines& lines) const {
    ShardCounts out = NewShard();
    Scratch scratch(*this);
    for (const auto& line : lines) CountSentence(line, out, scratch);
    return out;
  }

  CorpusIndex ToIndex(const ShardCounts& counts) const {
    CorpusIndex index;
    index.n_sentences = counts.n_sentences;
    index.skipped_lines = counts.skipped_lines;
    index.window = window_;
    for (size_t i = 0; i < identities_.size(); ++i) {
      index.identity_counts[identities_[i]] = counts.identity[i];
    }
    for (size_t t = 0; t < tokens_.size(); ++t) index.token_counts[tokens_[t]] = counts.token[t];
    for (size_t k = 0; k < pairs_.size(); ++k) {
      index.pairs[{identities_[pairs_[k].first], tokens_[pairs_[k].second]}] = {
          counts.sentence_cooc[k], counts.window_cooc[k]};
    }
    return index;
  }

  // Splits `lines` into `shards` contiguous ranges, counts each on its own
  // and merges the resulting indices.
  CorpusIndex CountSharded(const std::vector<std::string>& lines, size_t shards) const {
    if (shards == 0) shards = 1;
    CorpusIndex total = ToIndex(NewShard());
    const size_t per = (lines.size() + shards - 1) / shards;
    for (size_t s = 0; s < shards; ++s) {
      const size_t begin = std::min(lines.size(), s * per);
      const size_t end = std::min(lines.size(), begin + per);
      const std::span<const std::string> range(lines.data() + begin, end - begin);
      total = MergeIndices(total, ToIndex(CountLines(range)));
    }
    return total;
  }

  // Streams a file in chunks of `chunk_lines`, counting up to `threads`
  // chunks concurrently.
  CorpusIndex CountFile(const std::string& path, unsigned threads = 1,
                        size_t chunk_lines = 1 << 16) const {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
    if (threads == 0) threads = 1;
    ShardCounts total = NewShard();
    std::vector<std::future<ShardCounts>> running;
    auto drain_one = [&] {
      total.Merge(running.front().get());
      running.erase(running.begin());
    };
    while (in) {
      std::vector<std::string> chunk;
      chunk.reserve(chunk_lines);
      std::string line;
      while (chunk.size() < chunk_lines && std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        chunk.push_back(std::move(line));
      }
      if (chunk.empty()) break;
      if (threads == 1) {
        total.Merge(CountLines(chunk));
        continue;
      }
      if (running.size() >= threads) drain_one();
      running.push_back(std::async(std::launch::async,
                                   [this, c = std::move(chunk)] { return CountLines(c); }));
    }
    while (!running.empty()) drain_one();
    return ToIndex(total);
  }

  std::optional<int> window() const { return window_; }
  const std::vector<std::string>& identities() const { return identities_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  struct WordHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  static uint64_t Key(uint32_t i, uint32_t t) { return (uint64_t{i} << 32) | t; }

  static uint32_t Intern(std::map<std::string, uint32_t>& ids, std::vector<std::string>& names,
                         const std::string& name) {
    auto [it, inserted] = ids.emplace(name, static_cast<uint32_t>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  }

  uint32_t InternWord(const std::string& w) {
    auto [it, inserted] = vocabulary_.emplace(w, static_cast<uint32_t>(vocabulary_.size()));
    return it->second;
  }

  void Hit(uint32_t i, uint32_t t, uint32_t pair, ShardCounts& out, const Scratch& s) const {
    ++out.sentence_cooc[pair];
    if (!window_) return;
    const int64_t w = *window_;
    for (const auto& [ib, ie] : s.identity_spans[i]) {
      for (const auto& [tb, te] : s.token_spans[t]) {
        int64_t distance = 0;
        if (tb > ie) {
          distance = int64_t{tb} - ie;
        } else if (ib > te) {
          distance = int64_t{ib} - te;
        }
        if (distance <= w) {
          ++out.window_cooc[pair];
          return;
        }
      }
    }
  }

  std::optional<int> window_;
  std::vector<std::string> identities_;
  std::vector<std::string> tokens_;
  std::vector<std::pair<uint32_t, uint32_t>> pairs_;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> pairs_of_identity_;
  std::unordered_map<uint64_t, uint32_t> pair_lookup_;
  std::unordered_map<std::string, uint32_t, WordHash, std::equal_to<>> vocabulary_;
  WordAutomaton automaton_;
  std::vector<std::vector<std::pair<bool, uint32_t>>> pattern_owners_;
};

inline CorpusIndex CountCooccurrence(const std::vector<std::string>& corpus,
                                     const std::vector<StereotypeTuple>& tuples,
                                     std::optional<int> window, size_t shards = 1) {
  return CoocCounter::ForTuples(tuples, window).CountSharded(corpus, shards);
}

// Normalized PMI from raw sentence counts. nullopt when the pair never
// co-occurs or co-occurs in every sentence.
inline std::optional<double> Npmi(int64_t n, int64_t count_x, int64_t count_y,
                                  int64_t count_xy) {
  if (n <= 0 || count_xy <= 0 || count_xy >= n || count_x <= 0 || count_y <= 0) {
    return std::nullopt;
  }
  const double N = static_cast<double>(n);
  const double pxy = static_cast<double>(count_xy) / N;
  const double px = static_cast<double>(count_x) / N;
  const double py = static_cast<double>(count_y) / N;
  const double value = std::log(pxy / (px * py)) / -std::log(pxy);
  return std::clamp(value, -1.0, 1.0);
}

inline std::optional<double> Npmi(const std::string& identity, const std::string& token,
                                  const CorpusIndex& index) {
  auto p = index.pairs.find({identity, token});
  auto ci = index.identity_counts.find(identity);
  auto ct = index.token_counts.find(token);
  if (p == index.pairs.end() || ci == index.identity_counts.end() ||
      ct == index.token_counts.end()) {
    return std::nullopt;
  }
  return Npmi(index.n_sentences, ci->second, ct->second, p->second.sentence_cooc);
}

struct CandidateTuple {
  Axis axis = Axis::kRegion;
  std::string identity;
  std::string token;
  std::string category;
  int64_t sentence_cooc = 0;

  friend bool operator==(const CandidateTuple&, const CandidateTuple&) = default;
};

namespace corpus_internal {

inline std::vector<CandidateTuple> PruneCandidates(const IdentityLexicon& identities,
                                                   const std::vector<TokenLexicon>& tokens,
                                                   const CorpusIndex& index) {
  std::vector<CandidateTuple> out;
  std::set<std::string> emitted_tokens;
  for (const auto& lex : tokens) {
    for (const auto& token : lex.tokens) {
      if (!emitted_tokens.insert(token).second) continue;
      std::vector<CandidateTuple> kept;
      for (const auto& identity : identities.terms) {
        auto it = index.pairs.find({identity, token});
        if (it != index.pairs.end() && it->second.sentence_cooc >= 1) {
          kept.push_back({identities.axis, identity, token, lex.category,
                          it->second.sentence_cooc});
        }
      }
      // Tokens seen with every identity of the axis carry no signal.
      if (kept.size() == identities.terms.size()) continue;
      out.insert(out.end(), kept.begin(), kept.end());
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    const auto pos = [&](const std::string& term) {
      return std::find(identities.terms.begin(), identities.terms.end(), term) -
             identities.terms.begin();
    };
    return pos(a.identity) < pos(b.identity);
  });
  return out;
}

inline std::vector<CoocPair> CrossProduct(const IdentityLexicon& identities,
                                          const std::vector<TokenLexicon>& tokens) {
  std::vector<CoocPair> pairs;
  for (const auto& identity : identities.terms) {
    for (const auto& lex : tokens) {
      for (const auto& token : lex.tokens) pairs.push_back({identity, token});
    }
  }
  return pairs;
}

}  // namespace corpus_internal

// Keeps (identity, token) pairs that share at least one sentence, then drops
// every token that co-occurs with all identity terms of the axis.
inline std::vector<CandidateTuple> GenerateCandidates(const IdentityLexicon& identities,
                                                      const std::vector<TokenLexicon>& tokens,
                                                      const std::vector<std::string>& corpus) {
  const CoocCounter counter(corpus_internal::CrossProduct(identities, tokens), std::nullopt);
  return corpus_internal::PruneCandidates(identities, tokens,
                                          counter.ToIndex(counter.CountLines(corpus)));
}

inline std::vector<CandidateTuple> GenerateCandidatesFromFile(
    const IdentityLexicon& identities, const std::vector<TokenLexicon>& tokens,
    const std::string& corpus_path, unsigned threads = 1) {
  const CoocCounter counter(corpus_internal::CrossProduct(identities, tokens), std::nullopt);
  return corpus_internal::PruneCandidates(identities, tokens,
                                          counter.CountFile(corpus_path, threads));
}

inline std::string WriteCandidates(const std::vector<CandidateTuple>& candidates) {
  std::string out = "axis,identity,token,category,sentence_cooc\n";
  for (const auto& c : candidates) {
    out += CsvLine({std::string(AxisName(c.axis)), c.identity, c.token, c.category,
                    std::to_string(c.sentence_cooc)});
  }
  return out;
}

struct BucketMean {
  int64_t tuples = 0;
  std::optional<double> mean_sentence_cooc;
  std::optional<double> mean_window_cooc;  // only when the index is windowed
};

// Mean co-occurrence per S-bucket; empty buckets carry nullopt.
inline std::map<Bucket, BucketMean> BucketCoocReport(const std::vector<StereotypeTuple>& tuples,
                                                     const CorpusIndex& index) {
  std::map<Bucket, BucketMean> out;
  std::map<Bucket, std::pair<double, double>> sums;
  for (Bucket b : kAllBuckets) out[b];
  for (const auto& t : tuples) {
    auto it = index.pairs.find({t.identity, t.token});
    if (it == index.pairs.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "index has no counts for (" + t.identity + ", " + t.token + ")");
    }
    for (Bucket b : kAllBuckets) {
      if (!InBucket(t.s_count, b)) continue;
      ++out[b].tuples;
      sums[b].first += static_cast<double>(it->second.sentence_cooc);
      sums[b].second += static_cast<double>(it->second.window_cooc);
    }
  }
  for (Bucket b : kAllBuckets) {
    auto& m = out[b];
    if (m.tuples == 0) continue;
    m.mean_sentence_cooc = sums[b].first / static_cast<double>(m.tuples);
    if (index.window) m.mean_window_cooc = sums[b].second / static_cast<double>(m.tuples);
  }
  return out;
}

inline nlohmann::json NpmiJson(const std::string& identity, const std::string& token,
                               const CorpusIndex& index) {
  const auto v = Npmi(identity, token, index);
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

// `npmi` is derived on output and ignored on input.
inline nlohmann::json IndexToJson(const CorpusIndex& index) {
  nlohmann::json j;
  j["n_sentences"] = index.n_sentences;
  j["skipped_lines"] = index.skipped_lines;
  j["window"] = index.window ? nlohmann::json(*index.window) : nlohmann::json(nullptr);
  j["identity_counts"] = index.identity_counts;
  j["token_counts"] = index.token_counts;
  j["pairs"] = nlohmann::json::array();
  for (const auto& [key, counts] : index.pairs) {
    j["pairs"].push_back({{"identity", key.first},
                          {"token", key.second},
                          {"sentence_cooc", counts.sentence_cooc},
                          {"window_cooc", counts.window_cooc},
                          {"npmi", NpmiJson(key.first, key.second, index)}});
  }
  return j;
}

inline CorpusIndex IndexFromJson(const nlohmann::json& j) {
  try {
    CorpusIndex index;
    index.n_sentences = j.at("n_sentences").get<int64_t>();
    index.skipped_lines = j.value("skipped_lines", int64_t{0});
    if (j.contains("window") && !j["window"].is_null()) index.window = j["window"].get<int>();
    index.identity_counts = j.at("identity_counts").get<std::map<std::string, int64_t>>();
    index.token_counts = j.at("token_counts").get<std::map<std::string, int64_t>>();
    for (const auto& p : j.at("pairs")) {
      index.pairs[{p.at("identity").get<std::string>(), p.at("token").get<std::string>()}] = {
          p.at("sentence_cooc").get<int64_t>(), p.value("window_cooc", int64_t{0})};
    }
    return index;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("corpus index: ") + e.what());
  }
}

}  // namespace fairlens

#endif  // FAIRLENS_CORPUS_H_
