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

#ifndef FAIRLENS_HTTP_CHANNEL_H_
#define FAIRLENS_HTTP_CHANNEL_H_

// Line channel over HTTP. Lines queued by Send are POSTed together as one
// newline-delimited body; the reply body holds one response line each.

#include <chrono>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "fairlens/adapter.h"
#include "fairlens/csv.h"
#include "fairlens/error.h"
#include "httplib.h"

namespace fairlens {

class HttpChannel : public LineChannel {
 public:
  explicit HttpChannel(std::string url) {
    if (url.find("://") == std::string::npos) url = "http://" + url;
    const size_t scheme_end = url.find("://") + 3;
    const size_t path_start = url.find('/', scheme_end);
    base_ = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (base_.size() <= scheme_end) {
      throw Error(ErrorCode::kInvalidArgument, "bad adapter URL '" + url + "'");
    }
  }

  void Send(std::string line) override { outgoing_.push_back(std::move(line)); }

  std::optional<std::string> Receive(std::chrono::milliseconds timeout) override {
    if (incoming_.empty() && !outgoing_.empty()) Exchange(timeout);
    if (incoming_.empty()) return std::nullopt;
    std::string line = std::move(incoming_.front());
    incoming_.pop_front();
    return line;
  }

 private:
  void Exchange(std::chrono::milliseconds timeout) {
    std::string body;
    for (const auto& line : outgoing_) body += line + "\n";
    outgoing_.clear();
    httplib::Client client(base_);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    client.set_connection_timeout(seconds.count(), micros.count());
    auto result = client.Post(path_, body, "application/x-ndjson");
    if (!result) {
      const auto err = result.error();
      if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
        throw Error(ErrorCode::kTimeout, "HTTP peer " + base_ + path_ + " timed out");
      }
      throw Error(ErrorCode::kProtocol, "HTTP request to " + base_ + path_ +
                                            " failed: " + httplib::to_string(err));
    }
    if (result->status != 200) {
      throw Error(ErrorCode::kProtocol, "HTTP peer answered status " +
                                            std::to_string(result->status));
    }
    for (std::string_view line : SplitLines(result->body)) {
      if (!line.empty()) incoming_.emplace_back(line);
    }
  }

  std::string base_;
  std::string path_;
  std::vector<std::string> outgoing_;
  std::deque<std::string> incoming_;
};

}  // namespace fairlens

#endif  // FAIRLENS_HTTP_CHANNEL_H_
