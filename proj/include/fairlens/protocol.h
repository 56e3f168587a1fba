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

#ifndef FAIRLENS_PROTOCOL_H_
#define FAIRLENS_PROTOCOL_H_

// Line-delimited JSON messages exchanged with scorer/filler peers.
//
//   request:  {"id": "...", "op": "score"|"fill", "text": "...", "top_k": N}
//   response: {"id": "...", "score": x}
//             {"id": "...", "candidates": [{"token": "...", "prob": p}, ...]}
//             {"id": "...", "error": "..."}

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/error.h"
#include "json.hpp"

namespace fairlens {

inline constexpr std::string_view kMaskToken = "<MASK>";

inline size_t CountOccurrences(std::string_view haystack, std::string_view needle) {
  size_t n = 0;
  for (size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

struct Candidate {
  std::string token;
  double prob = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

enum class Op { kScore, kFill };

struct Request {
  std::string id;
  Op op = Op::kScore;
  std::string text;
  int top_k = 0;
};

struct Response {
  std::string id;
  std::optional<double> score;
  std::optional<std::vector<Candidate>> candidates;
  std::optional<std::string> error;
};

namespace protocol_internal {

inline std::string Dump(const nlohmann::json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline std::string Truncated(std::string_view line) {
  constexpr size_t kMax = 200;
  if (line.size() <= kMax) return std::string(line);
  return std::string(line.substr(0, kMax)) + "...";
}

}  // namespace protocol_internal

inline std::string EncodeRequest(const Request& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["op"] = r.op == Op::kScore ? "score" : "fill";
  j["text"] = r.text;
  if (r.op == Op::kFill) j["top_k"] = r.top_k;
  return protocol_internal::Dump(j);
}

inline Request DecodeRequest(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  const auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kProtocol,
                 why + " in request line: " + protocol_internal::Truncated(line));
  };
  if (j.is_discarded() || !j.is_object()) throw fail("malformed JSON");
  Request r;
  if (!j.contains("id") || !j["id"].is_string()) throw fail("missing string id");
  r.id = j["id"].get<std::string>();
  if (!j.contains("op") || !j["op"].is_string()) throw fail("missing op");
  const std::string op = j["op"].get<std::string>();
  if (op == "score") {
    r.op = Op::kScore;
  } else if (op == "fill") {
    r.op = Op::kFill;
  } else {
    throw fail("unknown op '" + op + "'");
  }
  if (!j.contains("text") || !j["text"].is_string()) throw fail("missing text");
  r.text = j["text"].get<std::string>();
  if (r.op == Op::kFill) {
    if (!j.contains("top_k") || !j["top_k"].is_number_integer()) {
      throw fail("missing integer top_k");
    }
    r.top_k = j["top_k"].get<int>();
    if (r.top_k < 1) throw fail("top_k must be positive");
  }
  return r;
}

inline std::string EncodeScoreResponse(std::string_view id, double score) {
  nlohmann::json j;
  j["id"] = id;
  j["score"] = score;
  return protocol_internal::Dump(j);
}

inline std::string EncodeFillResponse(std::string_view id,
                                      const std::vector<Candidate>& candidates) {
  nlohmann::json j;
  j["id"] = id;
  j["candidates"] = nlohmann::json::array();
  for (const auto& c : candidates) {
    j["candidates"].push_back({{"token", c.token}, {"prob", c.prob}});
  }
  return protocol_internal::Dump(j);
}

inline std::string EncodeErrorResponse(std::string_view id, std::string_view message) {
  nlohmann::json j;
  j["id"] = id;
  j["error"] = message;
  return protocol_internal::Dump(j);
}

// Structural decoding only; range checks against the originating request
// happen in the client.
inline Response DecodeResponse(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  const auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kProtocol,
                 why + " in response line: " + protocol_internal::Truncated(line));
  };
  if (j.is_discarded() || !j.is_object()) throw fail("malformed JSON");
  Response r;
  if (!j.contains("id") || !j["id"].is_string()) throw fail("missing string id");
  r.id = j["id"].get<std::string>();
  int kinds = 0;
  if (j.contains("error")) {
    ++kinds;
    r.error = j["error"].is_string() ? j["error"].get<std::string>() : j["error"].dump();
  }
  if (j.contains("score")) {
    ++kinds;
    if (!j["score"].is_number()) throw fail("non-numeric score");
    r.score = j["score"].get<double>();
  }
  if (j.contains("candidates")) {
    ++kinds;
    const auto& arr = j["candidates"];
    if (!arr.is_array()) throw fail("candidates is not an array");
    std::vector<Candidate> candidates;
    candidates.reserve(arr.size());
    for (const auto& c : arr) {
      if (!c.is_object() || !c.contains("token") || !c["token"].is_string() ||
          !c.contains("prob") || !c["prob"].is_number()) {
        throw fail("malformed candidate");
      }
      candidates.push_back({c["token"].get<std::string>(), c["prob"].get<double>()});
    }
    r.candidates = std::move(candidates);
  }
  if (kinds != 1) throw fail("expected exactly one of score/candidates/error");
  return r;
}

}  // namespace fairlens

#endif  // FAIRLENS_PROTOCOL_H_
