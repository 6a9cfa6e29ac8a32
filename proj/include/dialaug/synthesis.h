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

#ifndef DIALAUG_SYNTHESIS_H_
#define DIALAUG_SYNTHESIS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "dialaug/clients.h"
#include "dialaug/corpus.h"
#include "dialaug/emotion.h"
#include "dialaug/rng.h"

namespace dialaug {

inline constexpr double kMinTurnDurationS = 0.3;
inline constexpr double kMaxTurnDurationS = 30.0;

struct SynthesisJob {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  std::string normalized_text;
  std::string style_instruction;
  // Speaker id and reference clip; empty when no profile is assigned.
  std::string speaker_id;
  std::string speaker_ref;
  // Relative to the audio root, e.g. "data/audio/abcd_10083/turn03.wav".
  std::string out_path;
};

std::string StyleInstruction(const std::string& keyword);
std::string AudioPathFor(const std::string& dialogue_id, std::size_t turn_idx);

SynthesisJob BuildJob(const Dialogue& d, std::size_t turn_idx,
                      const KeywordMap& keywords, Rng& rng);

struct ManifestRow {
  std::string dialogue_id;
  std::size_t turn = 0;
  std::string status;  // "ok" or "failed"
  double duration_s = 0.0;
  std::string text;
  std::string path;
  std::string error;
};

std::string ManifestLine(const ManifestRow& row);

// Writes the audio under `root`. Client failures are retried per `retry`;
// after the last attempt the row comes back with status "failed".
// Throws ContractViolation on empty normalized text.
ManifestRow Synthesize(const SynthesisJob& job, TtsClient& tts,
                       const std::filesystem::path& root,
                       const ClientConfig& retry);

struct SynthesisOptions {
  std::filesystem::path root = ".";
  KeywordMap keywords = DefaultKeywordMap();
  ClientConfig retry;
};

// Synthesizes every turn and records audio_ref / duration_s on success.
std::vector<ManifestRow> SynthesizeDialogue(Dialogue& d, TtsClient& tts,
                                            const SynthesisOptions& opts,
                                            Rng& rng);

struct DurationReport {
  std::vector<Violation> violations;
  double total_s = 0.0;
};

// Reads each turn's audio header from disk, relative to `root`.
DurationReport VerifyDurations(const Dialogue& d,
                               const std::filesystem::path& root);

}  // namespace dialaug

#endif  // DIALAUG_SYNTHESIS_H_
