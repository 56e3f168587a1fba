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

// corpus: co-occurrence indexing, candidate tuple generation and
// per-bucket co-occurrence summaries.

#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fairlens/fairlens.h"

namespace {

using namespace fairlens;

void PrintWarnings(const Warnings& warnings) {
  for (const auto& w : warnings) {
    std::cerr << "warning [" << WarningCodeName(w.code) << "]: " << w.message << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus statistics for stereotype tuples"};
  app.require_subcommand(1);
  const std::vector<std::string> args(argv, argv + argc);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* cooc = app.add_subcommand("cooc", "Count tuple co-occurrence in a corpus");
  std::string corpus_path, tuples_path, index_out;
  std::optional<int> window;
  cooc->add_option("--corpus", corpus_path, "One sentence per line")->required();
  cooc->add_option("--tuples", tuples_path, "axis,identity,token,s_count CSV")->required();
  cooc->add_option("--window", window, "Also count co-occurrence within this many words");
  cooc->add_option("--threads", threads, "Worker threads")->capture_default_str();
  cooc->add_option("--out", index_out, "Index JSON")->required();

  auto* gen = app.add_subcommand("gen-tuples", "Generate candidate tuples from a corpus");
  std::string gen_corpus, identities_path, tokens_path, gen_out, axis_name = "region";
  gen->add_option("--corpus", gen_corpus, "One sentence per line")->required();
  gen->add_option("--identities", identities_path, "Identity terms, one per line")->required();
  gen->add_option("--axis", axis_name, "Axis of the identity lexicon")->capture_default_str();
  gen->add_option("--tokens", tokens_path, "category,token CSV")->required();
  gen->add_option("--threads", threads, "Worker threads")->capture_default_str();
  gen->add_option("--out", gen_out, "Candidates CSV")->required();

  auto* report = app.add_subcommand("report", "Mean co-occurrence per S-bucket");
  std::string index_path, report_tuples, report_out;
  report->add_option("--index", index_path, "Index JSON from `corpus cooc`")->required();
  report->add_option("--tuples", report_tuples, "axis,identity,token,s_count CSV")->required();
  report->add_option("--out", report_out, "Bucket table (.csv or .json)")->required();

  CLI11_PARSE(app, argc, argv);

  Warnings warnings;
  try {
    if (*cooc) {
      const auto tuples = LoadTuples(tuples_path, &warnings);
      const auto counter = CoocCounter::ForTuples(tuples, window);
      const auto index = counter.CountFile(corpus_path, threads);
      if (index.skipped_lines > 0) {
        Warn(&warnings, WarningCode::kSkippedLine,
             std::to_string(index.skipped_lines) + " unreadable line(s) skipped");
      }
      nlohmann::json j = IndexToJson(index);
      j["kind"] = "corpus_index";
      j["manifest"] = ManifestToJson(MakeManifest(args, {corpus_path, tuples_path}));
      WriteFile(index_out, j.dump(2) + "\n");
      std::cerr << index.n_sentences << " sentences indexed\n";
    } else if (*gen) {
      const auto identities = LoadLexicon(identities_path, ParseAxis(axis_name), &warnings);
      const auto tokens = LoadTokenLexicons(tokens_path, &warnings);
      const auto candidates = GenerateCandidatesFromFile(identities, tokens, gen_corpus, threads);
      const auto manifest = MakeManifest(args, {gen_corpus, identities_path, tokens_path});
      WriteFile(gen_out, ManifestComment(manifest) + WriteCandidates(candidates));
      std::cerr << candidates.size() << " candidate tuples\n";
    } else if (*report) {
      const auto index = IndexFromJson(nlohmann::json::parse(ReadFile(index_path)));
      const auto tuples = LoadTuples(report_tuples, &warnings);
      const auto buckets = BucketCoocReport(tuples, index);
      const auto manifest = MakeManifest(args, {index_path, report_tuples});
      if (report_out.size() >= 5 && report_out.substr(report_out.size() - 5) == ".json") {
        WriteFile(report_out, BucketReportToJson(buckets, manifest).dump(2) + "\n");
      } else {
        WriteFile(report_out, BucketChartCsv(BucketRowsFromReport(buckets), manifest));
      }
    }
  } catch (const std::exception& e) {
    PrintWarnings(warnings);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  PrintWarnings(warnings);
  return 0;
}
