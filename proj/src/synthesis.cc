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

#include "dialaug/synthesis.h"

#include <cstdio>

#include "dialaug/corpus_json.h"
#include "dialaug/errors.h"
#include "dialaug/normalize.h"
#include "dialaug/wav.h"

namespace dialaug {

std::string StyleInstruction(const std::string& keyword) {
  return "Please speak in a " + keyword + " tone.";
}

std::string AudioPathFor(const std::string& dialogue_id, std::size_t turn_idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "turn%02zu.wav", turn_idx);
  return "data/audio/" + dialogue_id + "/" + buf;
}

SynthesisJob BuildJob(const Dialogue& d, std::size_t turn_idx,
                      const KeywordMap& keywords, Rng& rng) {
  if (turn_idx >= d.turns.size()) throw ContractViolation("turn index out of range");
  const Turn& t = d.turns[turn_idx];
  SynthesisJob job;
  job.dialogue_id = d.dialogue_id;
  job.turn_index = turn_idx;
  job.normalized_text = NormalizeText(t.tagged.empty() ? t.text : t.tagged);
  job.style_instruction =
      StyleInstruction(KeywordFor(t.emotion.value_or(Emotion::kNeutral), keywords, rng));
  const auto& speaker = t.role == Role::kUser ? d.user_speaker : d.assistant_speaker;
  if (speaker) {
    job.speaker_id = speaker->speaker_id;
    job.speaker_ref = speaker->ref_audio;
  }
  job.out_path = AudioPathFor(d.dialogue_id, turn_idx);
  return job;
}

std::string ManifestLine(const ManifestRow& row) {
  Json j = {{"dialogue_id", row.dialogue_id},
            {"turn", row.turn},
            {"status", row.status},
            {"duration_s", row.duration_s},
            {"text", row.text},
            {"path", row.path}};
  if (!row.error.empty()) j["error"] = row.error;
  return DumpLine(j);
}

ManifestRow Synthesize(const SynthesisJob& job, TtsClient& tts,
                       const std::filesystem::path& root,
                       const ClientConfig& retry) {
  if (job.normalized_text.empty()) {
    throw ContractViolation("empty normalized text for " + job.dialogue_id);
  }
  ManifestRow row;
  row.dialogue_id = job.dialogue_id;
  row.turn = job.turn_index;
  row.text = job.normalized_text;
  row.path = job.out_path;
  try {
    Audio audio = WithRetries(retry, [&] {
      return tts.Synthesize(job.normalized_text, job.style_instruction, job.speaker_ref);
    });
    WriteWav(root / job.out_path, audio);
    row.status = "ok";
    row.duration_s = audio.duration_s();
  } catch (const ClientError& e) {
    row.status = "failed";
    row.error = e.what();
  }
  return row;
}

std::vector<ManifestRow> SynthesizeDialogue(Dialogue& d, TtsClient& tts,
                                            const SynthesisOptions& opts,
                                            Rng& rng) {
  std::vector<ManifestRow> rows;
  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    const SynthesisJob job = BuildJob(d, i, opts.keywords, rng);
    ManifestRow row = Synthesize(job, tts, opts.root, opts.retry);
    if (row.status == "ok") {
      d.turns[i].audio_ref = row.path;
      d.turns[i].duration_s = row.duration_s;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DurationReport VerifyDurations(const Dialogue& d,
                               const std::filesystem::path& root) {
  DurationReport r;
  for (const Turn& t : d.turns) {
    if (!t.audio_ref) {
      r.violations.push_back({t.index, "audio_missing", "no audio reference"});
      continue;
    }
    const std::filesystem::path p = root / *t.audio_ref;
    if (!std::filesystem::exists(p)) {
      r.violations.push_back({t.index, "audio_missing", p.string()});
      continue;
    }
    double dur = 0.0;
    try {
      dur = ReadWavInfo(p).duration_s();
    } catch (const Error& e) {
      r.violations.push_back({t.index, "audio_unreadable", e.what()});
      continue;
    }
    r.total_s += dur;
    if (dur < kMinTurnDurationS || dur > kMaxTurnDurationS) {
      r.violations.push_back(
          {t.index, "duration_out_of_range", std::to_string(dur) + " s"});
    }
  }
  return r;
}

}  // namespace dialaug
