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

#ifndef FAIRLENS_ENDPOINT_H_
#define FAIRLENS_ENDPOINT_H_

// Resolves `--adapter` specs: stdio:<command>, http:<url>, mock:<spec-file>.

#include <memory>
#include <string>
#include <string_view>

#include "fairlens/adapter.h"
#include "fairlens/error.h"
#include "fairlens/http_channel.h"
#include "fairlens/model.h"
#include "fairlens/stdio_channel.h"

namespace fairlens {

inline std::unique_ptr<ModelClient> ConnectAdapter(std::string_view spec,
                                                   ClientOptions options = {}) {
  const size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "adapter spec must be stdio:<command>, http:<url> or mock:<file>");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string rest(spec.substr(colon + 1));
  if (rest.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty adapter target in '" + std::string(spec) + "'");
  }
  if (kind == "stdio") {
    return std::make_unique<ModelClient>(std::make_unique<StdioChannel>(rest), options);
  }
  if (kind == "http") {
    // Accept both http:<host:port/path> and a full http://... URL.
    std::string url = rest;
    if (url.rfind("//", 0) == 0) url = std::string(kind) + ":" + url;
    return std::make_unique<ModelClient>(std::make_unique<HttpChannel>(url), options);
  }
  if (kind == "mock") {
    return MakeInProcessClient(LoadMockSpec(rest), options);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown adapter kind '" + std::string(kind) + "'");
}

}  // namespace fairlens

#endif  // FAIRLENS_ENDPOINT_H_
