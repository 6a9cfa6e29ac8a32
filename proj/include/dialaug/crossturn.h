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

#ifndef DIALAUG_CROSSTURN_H_
#define DIALAUG_CROSSTURN_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

struct CrossTurnConfig {
  double p_error = 0.20;
  int min_digits = 7;
  int min_code_len = 5;
  // Self-correction of short categorical values ("two - actually, three").
  // Off by default; `categorical_rate` has no default worth guessing.
  bool categorical_self_correction = false;
  double categorical_rate = 0.0;

  void Validate() const;
};

enum class ValueClass { kNone, kEmail, kNumeric, kCode };

struct Chunk {
  std::string raw;     // characters of the value covered by this chunk
  std::string spoken;  // dictated form, e.g. "zero one two"
};

ValueClass ClassifyValue(const std::string& value, const CrossTurnConfig& cfg);
bool IsSegmentable(const std::string& value, const CrossTurnConfig& cfg);

// Chunk lengths for a run of n digits: greedy threes, a remainder of one
// folds into a final four, a remainder of two into two fours.
std::vector<std::size_t> DigitChunkLengths(std::size_t n);

// Concatenating the raw fields reproduces `value` exactly. Throws
// ContractViolation when the value is not segmentable.
std::vector<Chunk> SegmentValue(const std::string& value,
                                const CrossTurnConfig& cfg = {});

// Spoken rendering of a raw chunk ("john.doe" -> "john dot doe").
std::string SpeakChunk(const std::string& raw);

// Replaces one letter or digit with a different character of the same class.
std::string CorruptChunk(const std::string& raw, Rng& rng);

std::string ConfirmationText(const std::string& spoken);
std::string CorrectionRequestText(const std::string& spoken);
std::string CorrectionAckText(const std::string& spoken);

// Rewrites user turn `turn_idx` into an alternating chunk-by-chunk dictation
// of the slot value covered by `span`. Returns the number of turns that now
// occupy the original turn's place. The closing confirmation is omitted when
// the next turn is already an assistant turn.
std::size_t ExpandTurn(Dialogue& d, std::size_t turn_idx, const SlotSpan& span,
                       const std::vector<Chunk>& chunks, int group, Rng& rng,
                       const CrossTurnConfig& cfg);

struct CrossTurnCounts {
  std::size_t expansions = 0;
  std::size_t errors = 0;
  std::size_t categorical = 0;
};

// Expands the leftmost segmentable slot of every user turn.
CrossTurnCounts AugmentCrossTurn(Dialogue& d, const CrossTurnConfig& cfg, Rng& rng);

// Rebuilds each expanded value from chunk metadata, applying corrections.
// Keys are (slot_name, group).
std::map<std::pair<std::string, int>, std::string> ReconstructValues(
    const Dialogue& d);

}  // namespace dialaug

#endif  // DIALAUG_CROSSTURN_H_
