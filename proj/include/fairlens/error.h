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

#ifndef FAIRLENS_ERROR_H_
#define FAIRLENS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairlens {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kEmptyLexicon,
  kRange,
  kDuplicate,
  kProtocol,
  kTimeout,
  kRemote,
  kMaskCount,
  kTemplate,
  kInternal,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kDuplicate: return "DuplicateError";
    case ErrorCode::kProtocol: return "ProtocolError";
    case ErrorCode::kTimeout: return "TimeoutError";
    case ErrorCode::kRemote: return "RemoteError";
    case ErrorCode::kMaskCount: return "MaskCountError";
    case ErrorCode::kTemplate: return "TemplateError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Error";
}

// All failures surfaced by the library are reported as an Error carrying one
// of the codes above. what() is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class WarningCode {
  kDuplicateEntry,
  kIgnoredColumns,
  kNoMatches,
  kDegenerateVariance,
  kSkippedLine,
  kSkippedCandidate,
  kSkippedTuple,
};

inline std::string_view WarningCodeName(WarningCode code) {
  switch (code) {
    case WarningCode::kDuplicateEntry: return "DuplicateEntry";
    case WarningCode::kIgnoredColumns: return "IgnoredColumns";
    case WarningCode::kNoMatches: return "NoMatches";
    case WarningCode::kDegenerateVariance: return "DegenerateVariance";
    case WarningCode::kSkippedLine: return "SkippedLine";
    case WarningCode::kSkippedCandidate: return "SkippedCandidate";
    case WarningCode::kSkippedTuple: return "SkippedTuple";
  }
  return "Warning";
}

struct Warning {
  WarningCode code;
  std::string message;
};

// Non-fatal conditions are appended here when the caller passes a sink.
using Warnings = std::vector<Warning>;

inline void Warn(Warnings* sink, WarningCode code, std::string message) {
  if (sink != nullptr) sink->push_back({code, std::move(message)});
}

inline bool HasWarning(const Warnings& warnings, WarningCode code) {
  for (const auto& w : warnings) {
    if (w.code == code) return true;
  }
  return false;
}

}  // namespace fairlens

#endif  // FAIRLENS_ERROR_H_
