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

#ifndef FAIRLENS_MODEL_H_
#define FAIRLENS_MODEL_H_

// In-process model peers. MockScorer and MockFiller are the deterministic
// test doubles; HandleRequestLine turns any Model into a protocol peer.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairlens/csv.h"
#include "fairlens/error.h"
#include "fairlens/protocol.h"
#include "fairlens/text.h"
#include "json.hpp"

namespace fairlens {

class Model {
 public:
  virtual ~Model() = default;

  virtual double Score(std::string_view /*text*/) const {
    throw Error(ErrorCode::kInvalidArgument, "model does not support score");
  }
  virtual std::vector<Candidate> Fill(std::string_view /*text*/, int /*top_k*/) const {
    throw Error(ErrorCode::kInvalidArgument, "model does not support fill");
  }
};

// Answers one request line. Failures become error lines carrying the request
// id (empty when the id itself could not be read).
inline std::string HandleRequestLine(const Model& model, std::string_view line) {
  std::string id;
  try {
    const nlohmann::json probe = nlohmann::json::parse(line, nullptr, false);
    if (probe.is_object() && probe.contains("id") && probe["id"].is_string()) {
      id = probe["id"].get<std::string>();
    }
    const Request request = DecodeRequest(line);
    if (request.op == Op::kScore) {
      return EncodeScoreResponse(request.id, model.Score(request.text));
    }
    if (CountOccurrences(request.text, kMaskToken) != 1) {
      throw Error(ErrorCode::kMaskCount, "expected exactly one <MASK>");
    }
    auto candidates = model.Fill(request.text, request.top_k);
    if (candidates.size() > static_cast<size_t>(request.top_k)) {
      candidates.resize(request.top_k);
    }
    return EncodeFillResponse(request.id, candidates);
  } catch (const std::exception& e) {
    return EncodeErrorResponse(id, e.what());
  }
}

// score(text) = clamp(base + sum of weights of matched words, 0, 1). Exact
// text entries in `table` override the lexicon, which is how recorded scores
// are replayed.
class MockScorer : public Model {
 public:
  explicit MockScorer(std::map<std::string, double> lexicon = {}, double base = 0.5,
                      std::map<std::string, double> table = {})
      : base_(base), table_(std::move(table)) {
    for (auto& [word, weight] : lexicon) lexicon_[text::CaseFold(word)] = weight;
  }

  double Score(std::string_view sentence) const override {
    if (auto it = table_.find(std::string(sentence)); it != table_.end()) {
      return it->second;
    }
    double total = base_;
    for (const auto& word : text::Words(sentence)) {
      if (auto it = lexicon_.find(word); it != lexicon_.end()) total += it->second;
    }
    return std::clamp(total, 0.0, 1.0);
  }

 private:
  std::map<std::string, double> lexicon_;
  double base_;
  std::map<std::string, double> table_;
};

inline uint64_t Fnv1a64(std::string_view s, uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline const std::vector<std::string>& DefaultFillerVocabulary() {
  static const std::vector<std::string> kVocab = {
      "farmer",  "doctor",   "teacher", "engineer", "poet",     "soldier",
      "trader",  "lawyer",   "nurse",   "artist",   "driver",   "cook",
      "priest",  "banker",   "writer",  "singer",   "dancer",   "clerk",
      "tailor",  "labourer", "pilot",   "scientist", "student", "manager",
      "kind",    "calm",     "angry",   "rich",     "poor",     "happy",
      "rice",    "bread",    "tea",     "fish",     "saree",    "turban",
      "music",   "cricket",  "business", "politics", "religion", "history"};
  return kVocab;
}

// Table lookup on the exact masked sentence; unknown sentences get
// candidates derived from a seeded hash of the text.
class MockFiller : public Model {
 public:
  explicit MockFiller(std::map<std::string, std::vector<Candidate>> table = {},
                      uint64_t seed = 0,
                      std::vector<std::string> vocabulary = DefaultFillerVocabulary())
      : table_(std::move(table)), seed_(seed), vocabulary_(std::move(vocabulary)) {}

  std::vector<Candidate> Fill(std::string_view sentence, int top_k) const override {
    if (auto it = table_.find(std::string(text::Trim(sentence))); it != table_.end()) {
      std::vector<Candidate> out = it->second;
      if (out.size() > static_cast<size_t>(top_k)) out.resize(top_k);
      return out;
    }
    return Fallback(sentence, top_k);
  }

 private:
  std::vector<Candidate> Fallback(std::string_view sentence, int top_k) const {
    uint64_t state = Fnv1a64(sentence) ^ (seed_ * 0x9e3779b97f4a7c15ULL);
    std::vector<size_t> order(vocabulary_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Partial Fisher-Yates; the first top_k slots are the picks.
    const size_t n = std::min(order.size(), static_cast<size_t>(top_k));
    std::vector<double> weights;
    for (size_t i = 0; i < n; ++i) {
      const size_t j = i + SplitMix64(state) % (order.size() - i);
      std::swap(order[i], order[j]);
      weights.push_back(0.01 + static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53);
    }
    std::sort(weights.begin(), weights.end(), std::greater<>());
    double total = 1.0;
    for (double w : weights) total += w;
    std::vector<Candidate> out;
    for (size_t i = 0; i < n; ++i) {
      out.push_back({vocabulary_[order[i]], weights[i] / total});
    }
    return out;
  }

  std::map<std::string, std::vector<Candidate>> table_;
  uint64_t seed_;
  std::vector<std::string> vocabulary_;
};

// Routes score and fill to separate models (either may be null).
class CompositeModel : public Model {
 public:
  CompositeModel(std::shared_ptr<const Model> scorer, std::shared_ptr<const Model> filler)
      : scorer_(std::move(scorer)), filler_(std::move(filler)) {}

  double Score(std::string_view text) const override {
    if (!scorer_) return Model::Score(text);
    return scorer_->Score(text);
  }
  std::vector<Candidate> Fill(std::string_view text, int top_k) const override {
    if (!filler_) return Model::Fill(text, top_k);
    return filler_->Fill(text, top_k);
  }

 private:
  std::shared_ptr<const Model> scorer_;
  std::shared_ptr<const Model> filler_;
};

// Adapts callables; mostly for tests that need engineered behavior.
class FunctionModel : public Model {
 public:
  using ScoreFn = std::function<double(std::string_view)>;
  using FillFn = std::function<std::vector<Candidate>(std::string_view, int)>;

  FunctionModel(ScoreFn score, FillFn fill)
      : score_(std::move(score)), fill_(std::move(fill)) {}

  double Score(std::string_view text) const override {
    if (!score_) return Model::Score(text);
    return score_(text);
  }
  std::vector<Candidate> Fill(std::string_view text, int top_k) const override {
    if (!fill_) return Model::Fill(text, top_k);
    return fill_(text, top_k);
  }

 private:
  ScoreFn score_;
  FillFn fill_;
};

// Mock spec file (JSON):
//   {"scorer": {"base": 0.5, "lexicon": {"love": 0.3}, "table": {"text": 0.7}},
//    "filler": {"seed": 1, "vocabulary": [...],
//               "table": {"X works as <MASK>": [["farmer", 0.4], ...]}}}
inline std::shared_ptr<const Model> ParseMockSpec(std::string_view contents,
                                                  const std::string& source) {
  const nlohmann::json spec = nlohmann::json::parse(contents, nullptr, false);
  if (spec.is_discarded() || !spec.is_object()) {
    throw Error(ErrorCode::kParse, source + ": mock spec is not a JSON object");
  }
  std::shared_ptr<const Model> scorer;
  std::shared_ptr<const Model> filler;
  try {
    if (spec.contains("scorer")) {
      const auto& s = spec["scorer"];
      scorer = std::make_shared<MockScorer>(
          s.value("lexicon", std::map<std::string, double>{}), s.value("base", 0.5),
          s.value("table", std::map<std::string, double>{}));
    }
    if (spec.contains("filler")) {
      const auto& f = spec["filler"];
      std::map<std::string, std::vector<Candidate>> table;
      if (f.contains("table")) {
        for (const auto& [pattern, list] : f["table"].items()) {
          auto& out = table[std::string(text::Trim(pattern))];
          for (const auto& c : list) {
            if (c.is_array()) {
              out.push_back({c.at(0).get<std::string>(), c.at(1).get<double>()});
            } else {
              out.push_back({c.at("token").get<std::string>(), c.at("prob").get<double>()});
            }
          }
        }
      }
      filler = std::make_shared<MockFiller>(
          std::move(table), f.value("seed", uint64_t{0}),
          f.value("vocabulary", DefaultFillerVocabulary()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
  if (!scorer && !filler) {
    scorer = std::make_shared<MockScorer>();
    filler = std::make_shared<MockFiller>();
  }
  return std::make_shared<CompositeModel>(std::move(scorer), std::move(filler));
}

inline std::shared_ptr<const Model> LoadMockSpec(const std::string& path) {
  return ParseMockSpec(ReadFile(path), path);
}

}  // namespace fairlens

#endif  // FAIRLENS_MODEL_H_
