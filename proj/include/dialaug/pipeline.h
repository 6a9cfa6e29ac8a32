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

#ifndef DIALAUG_PIPELINE_H_
#define DIALAUG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dialaug/clients.h"
#include "dialaug/config.h"
#include "dialaug/corpus.h"
#include "dialaug/speakers.h"
#include "dialaug/synthesis.h"

namespace dialaug {

struct Clients {
  std::unique_ptr<ChatClient> chat;
  std::unique_ptr<TtsClient> tts;
  std::unique_ptr<AsrClient> asr;
  std::unique_ptr<EmbedClient> embed;
};

// Stub or HTTP clients depending on `cfg.stub`.
Clients MakeClients(const PipelineConfig& cfg);

struct StageReport {
  std::string dialogue_id;
  std::size_t crossturn_expansions = 0;
  std::size_t bargein_inserted = 0;
  std::size_t disfluency_injected = 0;
  std::vector<Violation> duration_violations;
  double total_duration_s = 0.0;
};

struct DialogueOutcome {
  std::optional<Dialogue> dialogue;  // nullopt when quarantined
  std::string quarantine_reason;
  StageReport report;
  std::vector<ManifestRow> manifest;
};

struct SpeakerInventory {
  std::optional<SpeakerPool> pool;
  std::vector<SpeakerProfile> assistants;
};

// Reads the configured manifests, or the stub inventory when none is set.
SpeakerInventory LoadSpeakers(const PipelineConfig& cfg);

// Runs every enabled stage on one dialogue. Never throws for per-dialogue
// failures; they come back as a quarantine reason.
DialogueOutcome ProcessDialogue(Dialogue d, const PipelineConfig& cfg,
                                Clients& clients, const SpeakerInventory& speakers);

struct Quarantined {
  std::string dialogue_id;
  std::string reason;
};

struct RunResult {
  std::vector<Dialogue> dialogues;
  std::vector<Quarantined> quarantined;
  std::vector<ManifestRow> manifest;
  std::vector<StageReport> reports;
};

// Outputs are in input order regardless of `cfg.workers`.
RunResult Run(const PipelineConfig& cfg, std::vector<Dialogue> corpus,
              Clients& clients);

// augmented.ndjson, quarantine.ndjson, synthesis_manifest.ndjson,
// validation.ndjson under `dir`.
void WriteRunOutputs(const std::filesystem::path& dir, const RunResult& r);

struct SplitSizes {
  std::size_t train = 0;
  std::size_t valid = 0;
  std::size_t test = 0;
};

// Largest-remainder rounding; ties go to the earlier partition.
SplitSizes SplitCounts(std::size_t n, const SplitRatios& ratios);

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> valid;
  std::vector<std::string> test;
};

// Sorts the ids, shuffles them with `seed`, then cuts by SplitCounts.
SplitResult Split(std::vector<std::string> ids, const SplitRatios& ratios,
                  uint64_t seed);

struct WerRow {
  std::string group;
  double wer_percent = 0.0;
  std::size_t utterances = 0;
};

struct WerReport {
  std::vector<WerRow> groups;  // sorted by group name
  WerRow overall;
  std::size_t failed = 0;
};

// Lowercased words with punctuation removed, after number normalization.
std::vector<std::string> WerTokens(const std::string& text);

// Samples `sample_n` dialogues and transcribes their user turns. Corpus-level
// WER per accent group of the user speaker; ASR failures are counted and
// skipped.
WerReport WerValidation(const std::vector<Dialogue>& corpus, std::size_t sample_n,
                        AsrClient& asr, const std::filesystem::path& root,
                        uint64_t seed);

Json WerReportToJson(const WerReport& r);
WerReport WerReportFromJson(const Json& j);
std::string FormatWerTable(const WerReport& r);

// Lets the stub recognizer return the synthesized text for each file.
void RegisterManifest(StubAsrClient& asr, const std::vector<ManifestRow>& rows,
                      const std::filesystem::path& root);

}  // namespace dialaug

#endif  // DIALAUG_PIPELINE_H_
