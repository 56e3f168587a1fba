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

// report: renders JSON reports produced by `probe` and `corpus` as CSV or
// Markdown tables.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fairlens/fairlens.h"

int main(int argc, char** argv) {
  using namespace fairlens;
  CLI::App app{"Render fairlens reports"};
  app.require_subcommand(1);

  auto* render = app.add_subcommand("render", "Render a JSON report as a table");
  std::string in_path, out_path, format = "csv", order = "ascending";
  render->add_option("--in", in_path, "JSON report")->required();
  render->add_option("--format", format, "csv|md")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  render->add_option("--order", order, "Shift table order: ascending|descending")
      ->check(CLI::IsMember({"ascending", "descending"}))
      ->capture_default_str();
  render->add_option("--out", out_path, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto report = nlohmann::json::parse(ReadFile(in_path), nullptr, false);
    if (report.is_discarded()) throw Error(ErrorCode::kParse, in_path + " is not JSON");
    const Table table = ReportTable(
        report, order == "ascending" ? SortOrder::kAscending : SortOrder::kDescending);
    std::string out;
    const std::string manifest =
        report.contains("manifest") ? report["manifest"].dump() : std::string("{}");
    if (format == "csv") {
      out = "# manifest " + manifest + "\n" + TableCsv(table);
    } else {
      out = "<!-- manifest " + manifest + " -->\n\n" + TableMarkdown(table);
    }
    if (out_path.empty()) {
      std::cout << out;
    } else {
      WriteFile(out_path, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
