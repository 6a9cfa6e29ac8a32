// Copyright 2026 The dialaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the augmentation pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dialaug/config.h"
#include "dialaug/corpus_json.h"
#include "dialaug/errors.h"
#include "dialaug/ingest.h"
#include "dialaug/metrics.h"
#include "dialaug/pipeline.h"
#include "dialaug/synthesis.h"
#include "dialaug/turn_taking.h"

namespace fs = std::filesystem;
using namespace dialaug;

namespace {

struct Globals {
  std::string config_path;
  bool stub = false;
  int64_t seed = -1;
  int workers = 0;
};

PipelineConfig MakeConfig(const Globals& g) {
  PipelineConfig cfg = g.config_path.empty() ? PipelineConfig::Defaults()
                                             : LoadConfig(g.config_path);
  ApplyEnvOverrides(cfg);
  if (g.stub) cfg.stub = true;
  if (g.seed >= 0) cfg.global_seed = static_cast<uint64_t>(g.seed);
  if (g.workers > 0) cfg.workers = g.workers;
  cfg.Validate();
  return cfg;
}

void WriteJsonFile(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::vector<ManifestRow> ReadManifest(const fs::path& path) {
  std::vector<ManifestRow> rows;
  for (const Json& j : ReadJsonDocuments(path)) {
    ManifestRow r;
    r.dialogue_id = j.at("dialogue_id").get<std::string>();
    r.turn = j.at("turn").get<std::size_t>();
    r.status = j.at("status").get<std::string>();
    r.duration_s = j.value("duration_s", 0.0);
    r.text = j.value("text", "");
    r.path = j.value("path", "");
    rows.push_back(std::move(r));
  }
  return rows;
}

int CmdIngest(const std::string& source, const std::string& input,
              const std::string& output) {
  std::vector<Dialogue> out;
  std::size_t warnings = 0, failed = 0;
  for (const Json& raw : ReadJsonDocuments(input)) {
    try {
      IngestResult r = Adapt({source, raw});
      for (const auto& w : r.warnings) {
        std::cerr << "warning: " << r.dialogue.dialogue_id;
        if (w.turn) std::cerr << " turn " << *w.turn;
        std::cerr << ": " << w.message << "\n";
      }
      warnings += r.warnings.size();
      out.push_back(std::move(r.dialogue));
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      ++failed;
    }
  }
  WriteDialogues(output, out);
  std::cerr << "ingested " << out.size() << " dialogues (" << warnings << " warnings, "
            << failed << " failed)\n";
  return 0;
}

int CmdRun(PipelineConfig cfg, const std::string& input, const std::string& out_dir) {
  Clients clients = MakeClients(cfg);
  RunResult r = Run(cfg, ReadDialogues(input), clients);
  WriteRunOutputs(out_dir, r);
  std::cerr << "processed " << r.dialogues.size() << ", quarantined "
            << r.quarantined.size() << "\n";
  for (const auto& q : r.quarantined) {
    std::cerr << "quarantined " << q.dialogue_id << ": " << q.reason << "\n";
  }
  return 0;
}

int CmdValidate(const PipelineConfig& cfg, const std::string& input,
                const std::string& manifest, std::size_t sample_n, const std::string& out) {
  const auto corpus = ReadDialogues(input);
  Json report = Json::object();
  Json per_dialogue = Json::array();
  std::size_t invalid = 0, duration_violations = 0;
  double total = 0;
  for (const auto& d : corpus) {
    Json entry = {{"dialogue_id", d.dialogue_id}};
    Json vs = Json::array();
    for (const auto& v : ValidateDialogue(d)) {
      vs.push_back({{"turn", v.turn ? Json(*v.turn) : Json()}, {"rule", v.rule},
                    {"detail", v.detail}});
    }
    if (!vs.empty()) ++invalid;
    entry["schema_violations"] = vs;
    const DurationReport dr = VerifyDurations(d, cfg.audio_root);
    Json dv = Json::array();
    for (const auto& v : dr.violations) {
      dv.push_back({{"turn", v.turn ? Json(*v.turn) : Json()}, {"rule", v.rule},
                    {"detail", v.detail}});
    }
    duration_violations += dr.violations.size();
    total += dr.total_s;
    entry["duration_violations"] = dv;
    per_dialogue.push_back(entry);
  }
  report["dialogues"] = per_dialogue;
  report["invalid_dialogues"] = invalid;
  report["duration_violations"] = duration_violations;
  report["total_duration_s"] = total;

  Clients clients = MakeClients(cfg);
  if (cfg.stub && !manifest.empty()) {
    RegisterManifest(static_cast<StubAsrClient&>(*clients.asr), ReadManifest(manifest),
                     cfg.audio_root);
  }
  const WerReport wer = WerValidation(corpus, sample_n ? sample_n : cfg.wer_sample_n,
                                      *clients.asr, cfg.audio_root, cfg.global_seed);
  report["wer"] = WerReportToJson(wer);
  std::cout << FormatWerTable(wer);
  if (!out.empty()) WriteJsonFile(out, report);
  std::cerr << invalid << " invalid dialogues, " << duration_violations
            << " duration violations, " << wer.failed << " ASR failures\n";
  return 0;
}

int CmdSplit(const PipelineConfig& cfg, const std::string& input, const std::string& out_dir) {
  auto corpus = ReadDialogues(input);
  std::map<std::string, Dialogue> by_id;
  std::vector<std::string> ids;
  for (auto& d : corpus) {
    ids.push_back(d.dialogue_id);
    by_id.emplace(d.dialogue_id, std::move(d));
  }
  if (by_id.size() != ids.size()) throw Error("duplicate dialogue ids in " + input);
  const SplitResult s = Split(ids, cfg.split, cfg.global_seed);
  const std::pair<const char*, const std::vector<std::string>*> parts[] = {
      {"train", &s.train}, {"valid", &s.valid}, {"test", &s.test}};
  for (const auto& [name, list] : parts) {
    std::vector<Dialogue> ds;
    for (const auto& id : *list) ds.push_back(by_id.at(id));
    WriteDialogues(fs::path(out_dir) / (std::string(name) + ".ndjson"), ds);
    std::cout << name << " " << list->size() << "\n";
  }
  return 0;
}

int CmdStats(const std::string& input) {
  std::cout << DatasetStats(ReadDialogues(input)).dump(2) << "\n";
  return 0;
}

int CmdEvalTurnTaking(const PipelineConfig& cfg, const std::string& streams_path,
                      const std::string& strategy, bool all, const std::vector<double>& sweep_t,
                      const std::vector<double>& sweep_b, const std::string& out) {
  const auto streams = ReadStreams(streams_path);
  std::vector<OutcomeReport> reports;
  if (!sweep_t.empty() || !sweep_b.empty()) {
    const Strategy s = strategy.empty() ? cfg.default_strategy : ParseStrategy(strategy);
    const StrategyConfig base = cfg.strategies.at(s);
    reports = SweepThresholds(streams, base, sweep_t.empty() ? std::vector{base.t_turnend} : sweep_t,
                              sweep_b.empty() ? std::vector{base.t_bargein} : sweep_b);
  } else if (all) {
    for (const auto& [s, sc] : cfg.strategies) reports.push_back(EvaluateSet(streams, sc));
  } else {
    const Strategy s = strategy.empty() ? cfg.default_strategy : ParseStrategy(strategy);
    reports.push_back(EvaluateSet(streams, cfg.strategies.at(s)));
  }
  std::cout << FormatReportTable(reports);
  if (!out.empty()) {
    Json j = Json::array();
    for (const auto& r : reports) j.push_back(ReportToJson(r));
    WriteJsonFile(out, j);
  }
  return 0;
}

int CmdEvalDialogue(const PipelineConfig& cfg, const std::string& input,
                    const std::string& predictions, const std::string& out) {
  const auto corpus = ReadDialogues(input);
  Clients clients = MakeClients(cfg);
  std::vector<CoverageState> states;
  for (const auto& d : corpus) states.push_back(EvaluateCoverage(d, *clients.chat));
  const GaSmr gs = ComputeGaSmr(states);
  Json report = {{"dialogues", gs.dialogues},
                 {"ga", gs.ga},
                 {"smr", gs.smr},
                 {"smr_constraints", gs.smr_constraints},
                 {"smr_requests", gs.smr_requests},
                 {"disclosure_curve", DisclosureCurve(states)}};

  if (!predictions.empty()) {
    // Each prediction row: {dialogue_id, turn, state}; gold is StateAt.
    std::map<std::string, const Dialogue*> by_id;
    for (const auto& d : corpus) by_id[d.dialogue_id] = &d;
    std::vector<std::pair<SlotMap, SlotMap>> pairs;
    for (const Json& j : ReadJsonDocuments(predictions)) {
      auto it = by_id.find(j.at("dialogue_id").get<std::string>());
      if (it == by_id.end()) continue;
      SlotMap pred;
      for (auto s = j.at("state").begin(); s != j.at("state").end(); ++s) {
        pred[s.key()] = s.value().get<std::string>();
      }
      pairs.emplace_back(pred, StateAt(*it->second, j.at("turn").get<std::size_t>()));
    }
    const Prf f = SlotF1Micro(pairs);
    report["slot_f1"] = {{"precision", f.precision}, {"recall", f.recall}, {"f1", f.f1},
                         {"pairs", pairs.size()}};
  }

  // Speaker consistency over the synthesized user turns.
  std::vector<std::vector<std::vector<double>>> vectors;
  auto* stub_embed = dynamic_cast<StubEmbedClient*>(clients.embed.get());
  for (const auto& d : corpus) {
    std::vector<std::vector<double>> v;
    for (const auto& t : d.turns) {
      if (t.role != Role::kUser || !t.audio_ref) continue;
      const fs::path p = fs::path(cfg.audio_root) / *t.audio_ref;
      if (stub_embed && d.user_speaker) stub_embed->Register(p, d.user_speaker->speaker_id);
      try {
        v.push_back(clients.embed->Embed(p));
      } catch (const ClientError& e) {
        std::cerr << "warning: embedding failed for " << p << ": " << e.what() << "\n";
      }
    }
    vectors.push_back(std::move(v));
  }
  const SpeakerSimilarity sim = ComputeSpeakerSimilarity(vectors);
  report["speaker_similarity"] = {
      {"sim_first", {{"mean", sim.sim_first.mean}, {"std", sim.sim_first.std}, {"n", sim.sim_first.n}}},
      {"sim_prev", {{"mean", sim.sim_prev.mean}, {"std", sim.sim_prev.std}, {"n", sim.sim_prev.n}}},
      {"excluded_zero", sim.excluded_zero},
      {"skipped_dialogues", sim.skipped_dialogues}};
  std::cout << report.dump(2) << "\n";
  if (!out.empty()) WriteJsonFile(out, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spoken task-oriented dialogue augmentation pipeline"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_flag("--stub", g.stub, "Use deterministic offline clients");
  app.add_option("--seed", g.seed, "Global seed (overrides config)");
  app.add_option("--workers", g.workers, "Worker limit (overrides config)");

  std::string source = "generic", input, output, out_dir = "out", manifest, report_out;
  std::string strategy, predictions;
  std::size_t sample_n = 0;
  bool all_strategies = false;
  std::vector<double> sweep_t, sweep_b;

  auto* ingest = app.add_subcommand("ingest", "Convert a source corpus to the unified schema");
  ingest->add_option("--source", source, "generic|sgd|tm2|abcd|emowoz|spokenwoz")->required();
  ingest->add_option("--input", input)->required()->check(CLI::ExistingFile);
  ingest->add_option("--output", output)->required();

  auto* augment = app.add_subcommand("augment", "Apply the text augmentation stages");
  augment->add_option("--input", input)->required()->check(CLI::ExistingFile);
  augment->add_option("--out-dir", out_dir);

  auto* synthesize = app.add_subcommand("synthesize", "Render an augmented corpus to audio");
  synthesize->add_option("--input", input)->required()->check(CLI::ExistingFile);
  synthesize->add_option("--out-dir", out_dir);

  auto* run = app.add_subcommand("run", "Augment and synthesize in one pass");
  run->add_option("--input", input)->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir);

  auto* validate = app.add_subcommand("validate", "Schema, duration and ASR checks");
  validate->add_option("--input", input)->required()->check(CLI::ExistingFile);
  validate->add_option("--manifest", manifest, "Synthesis manifest (stub ASR lookup)");
  validate->add_option("--sample", sample_n, "Dialogues sampled for WER");
  validate->add_option("--report", report_out);

  auto* split = app.add_subcommand("split", "Seeded train/valid/test split");
  split->add_option("--input", input)->required()->check(CLI::ExistingFile);
  split->add_option("--out-dir", out_dir);

  auto* stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  stats->add_option("--input", input)->required()->check(CLI::ExistingFile);

  auto* ett = app.add_subcommand("eval-turn-taking", "Score decision strategies on streams");
  ett->add_option("--streams", input)->required()->check(CLI::ExistingFile);
  ett->add_option("--strategy", strategy);
  ett->add_flag("--all", all_strategies, "Evaluate every configured strategy");
  ett->add_option("--sweep-turnend", sweep_t);
  ett->add_option("--sweep-bargein", sweep_b);
  ett->add_option("--report", report_out);

  auto* ed = app.add_subcommand("eval-dialogue", "Goal coverage, slot F1, speaker similarity");
  ed->add_option("--input", input)->required()->check(CLI::ExistingFile);
  ed->add_option("--predictions", predictions)->check(CLI::ExistingFile);
  ed->add_option("--report", report_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return CmdIngest(source, input, output);
    PipelineConfig cfg = MakeConfig(g);
    if (augment->parsed()) {
      cfg.stages.synthesis = false;
      return CmdRun(cfg, input, out_dir);
    }
    if (synthesize->parsed()) {
      cfg.stages = StageToggles{false, false, false, false, true, true};
      return CmdRun(cfg, input, out_dir);
    }
    if (run->parsed()) return CmdRun(cfg, input, out_dir);
    if (validate->parsed()) return CmdValidate(cfg, input, manifest, sample_n, report_out);
    if (split->parsed()) return CmdSplit(cfg, input, out_dir);
    if (stats->parsed()) return CmdStats(input);
    if (ett->parsed()) {
      return CmdEvalTurnTaking(cfg, input, strategy, all_strategies, sweep_t, sweep_b,
                               report_out);
    }
    if (ed->parsed()) return CmdEvalDialogue(cfg, input, predictions, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
