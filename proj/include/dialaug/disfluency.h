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

#ifndef DIALAUG_DISFLUENCY_H_
#define DIALAUG_DISFLUENCY_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialaug/clients.h"
#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

struct DisfluencyConfig {
  double b = 0.9453;  // per-word fluency rate
  int slot_window_words = 2;
  double p_slot_local = 0.5;

  void Validate() const;
};

// Lexical fillers inserted after the [FP]/[DM]/[EDIT] markers.
const std::vector<std::string>& FillerInventory(DisfluencyType type);

// 1 - b^L.
double DisfluencyProbability(std::size_t num_words, double b);

// Marks the turn disfluent with probability 1 - b^L (L = word count of its
// text) and, if so, draws one of the six types uniformly.
std::optional<DisfluencyType> SampleAndType(const Turn& t,
                                            const DisfluencyConfig& cfg,
                                            Rng& rng);

// Word indices [first, last] covered by each slot span, in span order.
std::vector<std::pair<std::size_t, std::size_t>> SlotWordRanges(const Turn& t);

// Chooses the target word. COR always targets the first word of a slot
// value; on a slotless turn `type` is resampled among the other five.
std::size_t ChoosePosition(const Turn& t, DisfluencyType& type,
                           const DisfluencyConfig& cfg, Rng& rng);

// Applies one disfluency at word `position`, updating text, tagged, slot
// spans and metadata. Returns the rejection reason, leaving `t` unchanged,
// when the edit cannot be made. `gen` is required for COR and RST.
std::optional<std::string> Inject(Turn& t, DisfluencyType type,
                                  std::size_t position, ChatClient* gen,
                                  Rng& rng);

struct DisfluencyCounts {
  std::size_t sampled = 0;
  std::size_t injected = 0;
  std::size_t rejected = 0;
};

// Runs sample -> position -> inject over every user turn that does not yet
// carry a disfluency.
DisfluencyCounts AugmentDisfluency(Dialogue& d, const DisfluencyConfig& cfg,
                                   ChatClient* gen, Rng& rng);

}  // namespace dialaug

#endif  // DIALAUG_DISFLUENCY_H_
