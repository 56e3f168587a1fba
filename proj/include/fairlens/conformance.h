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

#ifndef FAIRLENS_CONFORMANCE_H_
#define FAIRLENS_CONFORMANCE_H_

// Randomized protocol conformance check for any scorer/filler peer: sends a
// mix of score and fill requests (unicode, quotes, escapes included), relies
// on ModelClient to validate every response, and repeats the run to check
// that the peer answers deterministically.

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fairlens/adapter.h"
#include "fairlens/error.h"
#include "fairlens/perturb.h"
#include "fairlens/protocol.h"

namespace fairlens {

struct ConformanceOptions {
  size_t requests = 1000;
  uint64_t seed = 0;
  size_t batch = 50;
  int max_top_k = 10;
};

struct ConformanceReport {
  size_t score_requests = 0;
  size_t fill_requests = 0;
  bool deterministic = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace conformance_internal {

inline std::string RandomSentence(std::mt19937_64& rng, bool with_mask) {
  static const std::vector<std::string> kWords = {
      "people", "love",   "food",  "Gujarati", "Kashmiri", "the",   "work",    "as",
      "\"quoted\"", "back\\slash", "tab\there", "naïve", "café", "कृपया", "नमस्ते", "emoji🙂",
      "jain",   "vegetarian", "Mizo", "ok,", "it's", "{json}", "[x]", "new\nline"};
  const size_t n = 1 + UniformBelow(rng, 12);
  const size_t mask_at = with_mask ? UniformBelow(rng, n + 1) : n + 1;
  std::string out;
  for (size_t i = 0; i <= n; ++i) {
    if (i == mask_at) {
      if (!out.empty()) out.push_back(' ');
      out += kMaskToken;
    }
    if (i == n) break;
    if (!out.empty()) out.push_back(' ');
    out += kWords[UniformBelow(rng, kWords.size())];
  }
  return out;
}

}  // namespace conformance_internal

// `connect` must return a fresh client each call; it is called twice.
inline ConformanceReport RunConformance(const std::function<std::unique_ptr<ModelClient>()>& connect,
                                        const ConformanceOptions& options = {}) {
  ConformanceReport report;
  std::mt19937_64 rng(options.seed);
  struct Batch {
    bool fill;
    int top_k;
    std::vector<std::string> texts;
  };
  std::vector<Batch> batches;
  for (size_t done = 0; done < options.requests;) {
    Batch b;
    b.fill = UniformBelow(rng, 2) == 1;
    b.top_k = 1 + static_cast<int>(UniformBelow(rng, options.max_top_k));
    const size_t size = std::min(options.batch, options.requests - done);
    for (size_t i = 0; i < size; ++i) {
      b.texts.push_back(conformance_internal::RandomSentence(rng, b.fill));
    }
    (b.fill ? report.fill_requests : report.score_requests) += size;
    done += size;
    batches.push_back(std::move(b));
  }

  std::vector<std::vector<double>> scores[2];
  std::vector<std::vector<std::vector<Candidate>>> fills[2];
  for (int run = 0; run < 2; ++run) {
    try {
      auto client = connect();
      for (const auto& b : batches) {
        if (b.fill) {
          fills[run].push_back(client->FillBatch(b.texts, b.top_k));
        } else {
          scores[run].push_back(client->ScoreBatch(b.texts));
        }
      }
      const auto& stats = client->stats();
      if (stats.requests_sent != stats.responses_consumed) {
        report.failures.push_back("request/response count mismatch");
      }
    } catch (const std::exception& e) {
      report.failures.push_back("run " + std::to_string(run + 1) + ": " + e.what());
      report.deterministic = false;
      return report;
    }
  }
  if (scores[0] != scores[1] || fills[0] != fills[1]) {
    report.deterministic = false;
    report.failures.push_back("responses differ between two identical runs");
  }
  return report;
}

}  // namespace fairlens

#endif  // FAIRLENS_CONFORMANCE_H_
