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

// fairlens_mock_peer: serves the mock scorer/filler over stdin/stdout (or
// HTTP) so the transport paths can be exercised without a real model.

#include <poll.h>
#include <unistd.h>

#include <algorithm>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairlens/model.h"
#include "httplib.h"

namespace {

using namespace fairlens;

bool WriteAll(const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(STDOUT_FILENO, data.data() + off, data.size() - off);
    if (n <= 0) return false;
    off += static_cast<size_t>(n);
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mock protocol peer"};
  std::string spec_path;
  bool reversed = false;
  bool silent = false;
  int malformed_after = -1;
  int exit_after = -1;
  int http_port = 0;
  app.add_option("--spec", spec_path, "Mock spec JSON (default: built-in mocks)");
  app.add_flag("--reverse", reversed, "Answer each burst of requests in reverse order");
  app.add_flag("--silent", silent, "Read requests but never answer");
  app.add_option("--malformed-after", malformed_after, "Emit a malformed line after N answers");
  app.add_option("--exit-after", exit_after, "Exit after N answers");
  app.add_option("--http", http_port, "Serve over HTTP on this port instead of stdio");
  CLI11_PARSE(app, argc, argv);

  std::shared_ptr<const Model> model;
  try {
    model = spec_path.empty() ? ParseMockSpec("{}", "<default>") : LoadMockSpec(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "mock peer: " << e.what() << "\n";
    return 2;
  }

  if (http_port > 0) {
    httplib::Server server;
    server.Post(".*", [&](const httplib::Request& req, httplib::Response& res) {
      std::string body;
      for (std::string_view line : SplitLines(req.body)) {
        if (!line.empty()) body += HandleRequestLine(*model, line) + "\n";
      }
      res.set_content(body, "application/x-ndjson");
    });
    return server.listen("127.0.0.1", http_port) ? 0 : 1;
  }

  std::string buffer;
  std::vector<std::string> burst;
  int answered = 0;
  // Returns false when the peer should stop.
  auto flush = [&] {
    if (reversed) std::reverse(burst.begin(), burst.end());
    for (const auto& request : burst) {
      if (malformed_after >= 0 && answered == malformed_after) WriteAll("this is not json\n");
      if (exit_after >= 0 && answered == exit_after) return false;
      if (!WriteAll(HandleRequestLine(*model, request) + "\n")) return false;
      ++answered;
    }
    burst.clear();
    return true;
  };
  char chunk[65536];
  while (true) {
    // A burst is answered once input goes quiet.
    pollfd pfd{STDIN_FILENO, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, burst.empty() ? -1 : 20);
    if (ready == 0) {
      if (!flush()) return 0;
      continue;
    }
    const ssize_t n = ::read(STDIN_FILENO, chunk, sizeof(chunk));
    if (n <= 0) {
      flush();
      break;
    }
    buffer.append(chunk, static_cast<size_t>(n));
    size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!line.empty() && !silent) burst.push_back(std::move(line));
    }
  }
  return 0;
}
