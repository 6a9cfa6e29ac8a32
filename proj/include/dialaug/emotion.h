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

#ifndef DIALAUG_EMOTION_H_
#define DIALAUG_EMOTION_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialaug/clients.h"
#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

using KeywordMap = std::map<Emotion, std::vector<std::string>>;

// Style keywords per label used to build TTS instructions.
const KeywordMap& DefaultKeywordMap();

// Throws ConfigError unless all seven labels map to non-empty sets.
void ValidateKeywordMap(const KeywordMap& m);

std::string KeywordFor(Emotion label, const KeywordMap& m, Rng& rng);

// Accepts a single digit 0-6 (surrounding whitespace and a trailing period
// tolerated).
std::optional<Emotion> ParseEmotionResponse(const std::string& response);

// Cross-turn chunk and correction user turns inherit their label.
bool IsSegmentTurn(const Turn& t);

// Labels one non-segment user turn from its preceding context. Malformed
// responses are retried once, then neutral with a warning.
Emotion AnnotateTurn(const Dialogue& d, std::size_t turn_idx, ChatClient& judge);

// Segments copy the label of the latest preceding non-segment user turn
// (neutral if none); assistant turns become neutral.
void InheritLabels(Dialogue& d);

// Annotates every non-segment user turn (EmoWOZ dialogues keep their
// provided labels), then applies InheritLabels.
void AnnotateDialogue(Dialogue& d, ChatClient& judge);

}  // namespace dialaug

#endif  // DIALAUG_EMOTION_H_
