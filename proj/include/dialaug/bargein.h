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

#ifndef DIALAUG_BARGEIN_H_
#define DIALAUG_BARGEIN_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dialaug/clients.h"
#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

struct BargeInConfig {
  double sample_rate = 0.25;

  void Validate() const;
};

struct BargeInCandidate {
  std::size_t turn_idx = 0;  // the user turn whose assistant reply is cut
  BargeInType type = BargeInType::kErrorRecovery;
  BargeInStyle style = BargeInStyle::kRaw;
};

// Each user turn is selected independently with probability sample_rate;
// selected turns draw type and style uniformly.
std::vector<BargeInCandidate> SampleCandidates(const Dialogue& d,
                                               const BargeInConfig& cfg,
                                               Rng& rng);

// "[User]: ..." / "[Assistant]: ..." lines for turns [0, end).
std::string ContextString(const Dialogue& d, std::size_t end);

// The assistant reply following the candidate, if any.
std::optional<std::size_t> ReplyIndex(const Dialogue& d, std::size_t user_turn);

// Asks the judge whether the candidate's assistant content suits the type.
// Client failures count as "no".
bool JudgeValidity(const Dialogue& d, const BargeInCandidate& c,
                   ChatClient& judge);

struct InsertionBlock {
  // Truncated assistant turn, user interruption, then any recovery turns.
  std::vector<Turn> turns;
  BargeInMeta meta;
};

// Parses "[Assistant]: ..." / "[User]: ..." lines plus the "Erroneous
// slots:" and "Corrected slots:" JSON lines. Returns the reason on
// rejection.
std::optional<InsertionBlock> ParseInsertion(const std::string& response,
                                             const BargeInCandidate& c,
                                             const SlotMap& state,
                                             std::string* reason);

std::optional<InsertionBlock> GenerateInsertion(const Dialogue& d,
                                                const BargeInCandidate& c,
                                                const SlotMap& state,
                                                ChatClient& gen,
                                                std::string* reason);

// Splices the block right after the candidate user turn. When the original
// assistant reply follows, the block's closing assistant turn is dropped
// and the original reply serves as the recovery. Returns the number of
// inserted turns.
std::size_t ApplyInsertion(Dialogue& d, std::size_t user_turn,
                           InsertionBlock block);

struct BargeInCounts {
  std::size_t candidates = 0;
  std::size_t judged_valid = 0;
  std::size_t inserted = 0;
  std::size_t rejected = 0;
};

BargeInCounts AugmentBargeIn(Dialogue& d, const BargeInConfig& cfg,
                             ChatClient& judge, ChatClient& gen, Rng& rng);

}  // namespace dialaug

#endif  // DIALAUG_BARGEIN_H_
