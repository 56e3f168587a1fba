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

// probe: model-facing measurements (perturbation, dialect, DisCo, MLM probe)
// and the protocol conformance check.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairlens/fairlens.h"
#include "fairlens/endpoint.h"

namespace {

using namespace fairlens;

struct AdapterFlags {
  std::string spec;
  int timeout_ms = 30000;
  size_t max_in_flight = 64;

  void Register(CLI::App* cmd) {
    cmd->add_option("--adapter", spec, "stdio:<command> | http:<url> | mock:<spec-file>")
        ->required();
    cmd->add_option("--timeout-ms", timeout_ms, "Per-request timeout")->capture_default_str();
    cmd->add_option("--max-in-flight", max_in_flight, "Unanswered request limit")
        ->capture_default_str();
  }

  std::unique_ptr<ModelClient> Connect() const {
    ClientOptions options;
    options.timeout = std::chrono::milliseconds(timeout_ms);
    options.max_in_flight = max_in_flight;
    return ConnectAdapter(spec, options);
  }
};

void PrintWarnings(const Warnings& warnings) {
  for (const auto& w : warnings) {
    std::cerr << "warning [" << WarningCodeName(w.code) << "]: " << w.message << "\n";
  }
}

bool EndsWith(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void WriteShiftReport(const ShiftReport& report, std::string_view mode, const RunManifest& manifest,
                      const std::string& out) {
  if (EndsWith(out, ".json")) {
    WriteFile(out, ShiftReportToJson(report, mode, manifest).dump(2) + "\n");
  } else {
    WriteFile(out, ShiftTableCsv(RenderShiftTable(report), manifest));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias probes against scorer/filler models"};
  app.require_subcommand(1);
  const std::vector<std::string> args(argv, argv + argc);

  // perturb
  auto* perturb = app.add_subcommand("perturb", "Identity-term perturbation sensitivity");
  std::string corpus_path, lexicon_path, axis_name, perturb_out;
  int n_per_term = 10;
  uint64_t seed = 0;
  AdapterFlags perturb_adapter;
  perturb->add_option("--corpus", corpus_path, "One sentence per line")->required();
  perturb->add_option("--lexicon", lexicon_path, "Identity terms, one per line")->required();
  perturb->add_option("--axis", axis_name, "region|religion|caste|gender")->required();
  perturb->add_option("--n", n_per_term, "Sentences sampled per term")->capture_default_str();
  perturb->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  perturb->add_option("--out", perturb_out, "Report (.csv or .json)")->required();
  perturb_adapter.Register(perturb);

  // dialect
  auto* dialect = app.add_subcommand("dialect", "Dialect minimal-pair sensitivity");
  std::string pairs_path, dialect_out;
  AdapterFlags dialect_adapter;
  dialect->add_option("--pairs", pairs_path, "feature,with_feature,without_feature CSV")
      ->required();
  dialect->add_option("--out", dialect_out, "Report (.csv or .json)")->required();
  dialect_adapter.Register(dialect);

  // disco
  auto* disco = app.add_subcommand("disco", "DisCo gendered-correlation metric");
  std::string templates_path, disco_out, correction = "bonferroni";
  std::vector<std::string> name_paths;
  DiscoConfig cfg;
  AdapterFlags disco_adapter;
  disco->add_option("--templates", templates_path, "Templates with [NAME] and <MASK>")
      ->required();
  disco->add_option("--names", name_paths, "name,gender CSV; repeat to compare lists (label = file stem)")
      ->required();
  disco->add_option("--top-k", cfg.top_k_fills, "Fills kept per sentence")->capture_default_str();
  disco->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str();
  disco->add_option("--correction", correction, "none|bonferroni")->capture_default_str();
  disco->add_option("--min-expected", cfg.min_cell_expected, "Expected-cell guard")
      ->capture_default_str();
  disco->add_option("--out", disco_out, "JSON report")->required();
  disco_adapter.Register(disco);

  // mlm
  auto* mlm = app.add_subcommand("mlm", "Masked-token top-K stereotype probe");
  std::string tuples_path, mlm_templates, tokens_path, mlm_out;
  int k = 5;
  std::vector<int> k_sweep;
  AdapterFlags mlm_adapter;
  mlm->add_option("--tuples", tuples_path, "axis,identity,token,s_count CSV")->required();
  mlm->add_option("--templates", mlm_templates, "category,pattern,plural CSV")->required();
  mlm->add_option("--tokens", tokens_path, "category,token CSV assigning tokens to categories")
      ->required();
  auto* k_opt = mlm->add_option("--k", k, "Top-K")->capture_default_str();
  mlm->add_option("--k-sweep", k_sweep, "Comma-separated K values")
      ->delimiter(',')
      ->excludes(k_opt);
  mlm->add_option("--out", mlm_out, "JSON report")->required();
  mlm_adapter.Register(mlm);

  // conformance
  auto* conformance = app.add_subcommand("conformance", "Randomized protocol conformance check");
  ConformanceOptions conf_options;
  AdapterFlags conf_adapter;
  conformance->add_option("--requests", conf_options.requests, "Request count")
      ->capture_default_str();
  conformance->add_option("--seed", conf_options.seed, "Generator seed")->capture_default_str();
  conf_adapter.Register(conformance);

  CLI11_PARSE(app, argc, argv);

  Warnings warnings;
  try {
    if (*perturb) {
      const IdentityLexicon lexicon = LoadLexicon(lexicon_path, ParseAxis(axis_name), &warnings);
      auto sets = ExtractSentencesFromFile(corpus_path, lexicon, n_per_term, seed, &warnings);
      if (sets.empty()) throw Error(ErrorCode::kInvalidArgument, "no sentence matched any term");
      for (auto& s : sets) s = PerturbSet(s, lexicon);
      auto client = perturb_adapter.Connect();
      ShiftReport report = ScoreShifts(sets, *client, &warnings);
      for (const auto& term : lexicon.terms) report.sampled[term] = 0;
      for (const auto& s : sets) ++report.sampled[s.original_term];
      const auto manifest =
          MakeManifest(args, {corpus_path, lexicon_path}, seed, perturb_adapter.spec);
      WriteShiftReport(report, "perturbation", manifest, perturb_out);
      std::cerr << sets.size() << " perturbation sets scored\n";
    } else if (*dialect) {
      const auto pairs = LoadMinimalPairs(pairs_path);
      auto client = dialect_adapter.Connect();
      const ShiftReport report = DialectShifts(pairs, *client, &warnings);
      const auto manifest = MakeManifest(args, {pairs_path}, std::nullopt, dialect_adapter.spec);
      WriteShiftReport(report, "dialect", manifest, dialect_out);
    } else if (*disco) {
      cfg.correction = ParseCorrection(correction);
      const auto templates = LoadDiscoTemplates(templates_path);
      std::vector<NameList> lists;
      for (const auto& p : name_paths) {
        lists.push_back(LoadNameList(p, std::filesystem::path(p).stem().string()));
      }
      auto client = disco_adapter.Connect();
      const auto results = CompareNameLists(templates, lists, *client, cfg, &warnings);
      std::vector<std::string> inputs = {templates_path};
      inputs.insert(inputs.end(), name_paths.begin(), name_paths.end());
      const auto manifest = MakeManifest(args, inputs, std::nullopt, disco_adapter.spec);
      WriteFile(disco_out, DiscoReportToJson(results, cfg, manifest).dump(2) + "\n");
      for (const auto& [label, r] : results) {
        std::cout << label << ": DisCo average " << FormatNumber(r.average) << "\n";
      }
    } else if (*mlm) {
      const auto tuples = LoadTuples(tuples_path, &warnings);
      const auto templates = LoadProbeTemplates(mlm_templates);
      const auto categories = TokenCategories(LoadTokenLexicons(tokens_path, &warnings));
      auto client = mlm_adapter.Connect();
      if (k_sweep.empty()) k_sweep = {k};
      const auto results = KSweep(tuples, templates, categories, *client, k_sweep, &warnings);
      const auto manifest = MakeManifest(args, {tuples_path, mlm_templates, tokens_path},
                                         std::nullopt, mlm_adapter.spec);
      WriteFile(mlm_out, ProbeReportToJson(results, manifest).dump(2) + "\n");
    } else if (*conformance) {
      const auto report = RunConformance([&] { return conf_adapter.Connect(); }, conf_options);
      std::cout << "score requests: " << report.score_requests
                << "\nfill requests: " << report.fill_requests
                << "\ndeterministic: " << (report.deterministic ? "yes" : "no") << "\n";
      for (const auto& f : report.failures) std::cout << "FAIL " << f << "\n";
      std::cout << (report.ok() ? "conformance: PASS" : "conformance: FAIL") << "\n";
      PrintWarnings(warnings);
      return report.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    PrintWarnings(warnings);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  PrintWarnings(warnings);
  return 0;
}
