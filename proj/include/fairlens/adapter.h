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

#ifndef FAIRLENS_ADAPTER_H_
#define FAIRLENS_ADAPTER_H_

// Pipelined client for scorer/filler peers. Requests carry a correlation id;
// responses may arrive in any order and are matched back to their input
// position. A failed request fails the whole batch (no retries).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairlens/error.h"
#include "fairlens/model.h"
#include "fairlens/protocol.h"

namespace fairlens {

// Transport for request/response lines (without the trailing newline).
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void Send(std::string line) = 0;
  // nullopt on timeout. End of stream is a kProtocol error.
  virtual std::optional<std::string> Receive(std::chrono::milliseconds timeout) = 0;
};

enum class DeliveryOrder { kInOrder, kReversed, kShuffled };

// Serves requests with an in-process Model. Responses to everything sent so
// far are produced on the first Receive, optionally reordered.
class InProcessChannel : public LineChannel {
 public:
  explicit InProcessChannel(std::shared_ptr<const Model> model,
                            DeliveryOrder order = DeliveryOrder::kInOrder,
                            uint64_t shuffle_seed = 0)
      : model_(std::move(model)), order_(order), shuffle_state_(shuffle_seed) {}

  void Send(std::string line) override {
    pending_.push_back(std::move(line));
    max_outstanding_ = std::max(max_outstanding_, pending_.size() + ready_.size());
  }

  std::optional<std::string> Receive(std::chrono::milliseconds) override {
    if (ready_.empty()) {
      std::vector<std::string> batch;
      for (auto& line : pending_) batch.push_back(HandleRequestLine(*model_, line));
      pending_.clear();
      if (order_ == DeliveryOrder::kReversed) {
        std::reverse(batch.begin(), batch.end());
      } else if (order_ == DeliveryOrder::kShuffled) {
        for (size_t i = batch.size(); i > 1; --i) {
          std::swap(batch[i - 1], batch[SplitMix64(shuffle_state_) % i]);
        }
      }
      for (auto& r : batch) ready_.push_back(std::move(r));
    }
    if (ready_.empty()) return std::nullopt;
    std::string line = std::move(ready_.front());
    ready_.pop_front();
    return line;
  }

  // Largest number of unanswered requests seen at once.
  size_t max_outstanding() const { return max_outstanding_; }

 private:
  std::shared_ptr<const Model> model_;
  DeliveryOrder order_;
  uint64_t shuffle_state_;
  std::vector<std::string> pending_;
  std::deque<std::string> ready_;
  size_t max_outstanding_ = 0;
};

struct ClientOptions {
  std::chrono::milliseconds timeout{30000};
  size_t max_in_flight = 64;
};

struct ClientStats {
  uint64_t requests_sent = 0;
  uint64_t responses_consumed = 0;
  size_t max_in_flight_seen = 0;
};

class ModelClient {
 public:
  explicit ModelClient(std::unique_ptr<LineChannel> channel, ClientOptions options = {})
      : channel_(std::move(channel)), options_(options) {
    if (options_.max_in_flight == 0) {
      throw Error(ErrorCode::kInvalidArgument, "max_in_flight must be positive");
    }
  }

  // One positivity score in [0,1] per text, aligned with the input order.
  std::vector<double> ScoreBatch(std::span<const std::string> texts) {
    std::vector<Request> requests;
    requests.reserve(texts.size());
    for (const auto& t : texts) requests.push_back({NextId(), Op::kScore, t, 0});
    std::vector<double> scores(texts.size(), 0.0);
    Run(requests, [&](size_t index, Response& r) {
      if (!r.score) {
        throw Error(ErrorCode::kProtocol, "score request " + r.id +
                                              " answered without a score");
      }
      const double s = *r.score;
      if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorCode::kRange, "score " + std::to_string(s) + " for request " +
                                           r.id + " outside [0,1]");
      }
      scores[index] = s;
    });
    return scores;
  }

  // Top-k candidates per masked text, in the peer's order. Every text must
  // hold exactly one <MASK>; this is checked before any request is sent.
  std::vector<std::vector<Candidate>> FillBatch(std::span<const std::string> texts,
                                                int top_k) {
    if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
    for (const auto& t : texts) {
      const size_t masks = CountOccurrences(t, kMaskToken);
      if (masks != 1) {
        throw Error(ErrorCode::kMaskCount, "expected exactly one <MASK> but found " +
                                               std::to_string(masks) + " in '" + t + "'");
      }
    }
    std::vector<Request> requests;
    requests.reserve(texts.size());
    for (const auto& t : texts) requests.push_back({NextId(), Op::kFill, t, top_k});
    std::vector<std::vector<Candidate>> out(texts.size());
    Run(requests, [&](size_t index, Response& r) {
      if (!r.candidates) {
        throw Error(ErrorCode::kProtocol, "fill request " + r.id +
                                              " answered without candidates");
      }
      auto& candidates = *r.candidates;
      if (candidates.size() > static_cast<size_t>(top_k)) {
        throw Error(ErrorCode::kProtocol, "fill request " + r.id + " returned " +
                                              std::to_string(candidates.size()) +
                                              " candidates for top_k " +
                                              std::to_string(top_k));
      }
      for (size_t i = 0; i < candidates.size(); ++i) {
        const double p = candidates[i].prob;
        if (!(p > 0.0 && p <= 1.0)) {
          throw Error(ErrorCode::kRange, "candidate probability " + std::to_string(p) +
                                             " outside (0,1] for request " + r.id);
        }
        if (i > 0 && p > candidates[i - 1].prob) {
          throw Error(ErrorCode::kProtocol,
                      "candidate probabilities increase for request " + r.id);
        }
      }
      out[index] = std::move(candidates);
    });
    return out;
  }

  const ClientStats& stats() const { return stats_; }

 private:
  std::string NextId() { return "r" + std::to_string(next_id_++); }

  template <typename OnResponse>
  void Run(const std::vector<Request>& requests, OnResponse&& on_response) {
    std::unordered_map<std::string, size_t> in_flight;
    size_t next = 0;
    while (next < requests.size() || !in_flight.empty()) {
      while (next < requests.size() && in_flight.size() < options_.max_in_flight) {
        in_flight.emplace(requests[next].id, next);
        channel_->Send(EncodeRequest(requests[next]));
        ++stats_.requests_sent;
        ++next;
        stats_.max_in_flight_seen = std::max(stats_.max_in_flight_seen, in_flight.size());
      }
      std::optional<std::string> line = channel_->Receive(options_.timeout);
      if (!line) {
        throw Error(ErrorCode::kTimeout,
                    "no response within " + std::to_string(options_.timeout.count()) +
                        " ms (" + std::to_string(in_flight.size()) + " in flight)");
      }
      Response response = DecodeResponse(*line);
      auto it = in_flight.find(response.id);
      if (it == in_flight.end()) {
        throw Error(ErrorCode::kProtocol,
                    "response id '" + response.id + "' matches no pending request: " + *line);
      }
      const size_t index = it->second;
      in_flight.erase(it);
      ++stats_.responses_consumed;
      if (response.error) {
        throw Error(ErrorCode::kRemote, "request " + response.id + ": " + *response.error);
      }
      on_response(index, response);
    }
  }

  std::unique_ptr<LineChannel> channel_;
  ClientOptions options_;
  ClientStats stats_;
  uint64_t next_id_ = 0;
};

inline std::unique_ptr<ModelClient> MakeInProcessClient(
    std::shared_ptr<const Model> model, ClientOptions options = {},
    DeliveryOrder order = DeliveryOrder::kInOrder, uint64_t shuffle_seed = 0) {
  return std::make_unique<ModelClient>(
      std::make_unique<InProcessChannel>(std::move(model), order, shuffle_seed), options);
}

}  // namespace fairlens

#endif  // FAIRLENS_ADAPTER_H_
