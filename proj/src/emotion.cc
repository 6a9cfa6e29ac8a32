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

#include "dialaug/emotion.h"

#include <iostream>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {

const KeywordMap& DefaultKeywordMap() {
  static const KeywordMap kMap = {
      {Emotion::kNeutral, {"calm", "indifferent", "patient", "relaxed"}},
      {Emotion::kFearful, {"fearful", "shocked", "surprised"}},
      {Emotion::kDissatisfied, {"angry", "contempt", "disgusted", "defiant"}},
      {Emotion::kApologetic, {"compassionate", "selfless", "humble"}},
      {Emotion::kAbusive,
       {"commanding", "authoritative", "merciless", "loud", "vengeful"}},
      {Emotion::kExcited,
       {"adventurous", "energetic", "passionate", "curious", "creative",
        "joyful"}},
      {Emotion::kSatisfied, {"proud", "hopeful", "happy", "cheerful"}},
  };
  return kMap;
}

void ValidateKeywordMap(const KeywordMap& m) {
  for (int id = 0; id < kNumEmotions; ++id) {
    auto it = m.find(EmotionFromId(id));
    if (it == m.end() || it->second.empty()) {
      throw ConfigError("no style keywords for emotion '" +
                        std::string(ToString(EmotionFromId(id))) + "'");
    }
  }
  if (m.size() != kNumEmotions) throw ConfigError("unexpected emotion label");
}

std::string KeywordFor(Emotion label, const KeywordMap& m, Rng& rng) {
  auto it = m.find(label);
  if (it == m.end() || it->second.empty()) {
    throw ConfigError("no style keywords for emotion '" +
                      std::string(ToString(label)) + "'");
  }
  return it->second[rng.Index(it->second.size())];
}

std::optional<Emotion> ParseEmotionResponse(const std::string& response) {
  std::string s = Trim(response);
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s.size() != 1 || s[0] < '0' || s[0] > '6') return std::nullopt;
  return EmotionFromId(s[0] - '0');
}

bool IsSegmentTurn(const Turn& t) {
  return t.role == Role::kUser && t.crossturn.has_value();
}

Emotion AnnotateTurn(const Dialogue& d, std::size_t turn_idx, ChatClient& judge) {
  if (turn_idx >= d.turns.size()) throw ContractViolation("turn out of range");
  const Turn& t = d.turns[turn_idx];
  if (t.role != Role::kUser) {
    throw ContractViolation("emotion annotation applies to user turns only");
  }
  if (IsSegmentTurn(t)) {
    throw ContractViolation("cross-turn segments inherit their label");
  }
  std::string context;
  for (std::size_t i = 0; i <= turn_idx; ++i) {
    const Turn& p = d.turns[i];
    context += (p.role == Role::kUser ? "[User]: " : "[Assistant]: ") + p.text + "\n";
  }
  ChatRequest req;
  req.kind = PromptKind::kEmotion;
  req.vars = {{"context", context}, {"utterance", t.text}};
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      if (auto e = ParseEmotionResponse(judge.Chat(req))) return *e;
    } catch (const ClientError& err) {
      std::cerr << "warning: emotion judge failed: " << err.what() << "\n";
    }
  }
  std::cerr << "warning: " << d.dialogue_id << " turn " << turn_idx
            << ": no valid emotion label, using neutral\n";
  return Emotion::kNeutral;
}

void InheritLabels(Dialogue& d) {
  std::optional<Emotion> anchor;
  for (Turn& t : d.turns) {
    if (t.role == Role::kAssistant) {
      t.emotion = Emotion::kNeutral;
    } else if (IsSegmentTurn(t)) {
      t.emotion = anchor.value_or(Emotion::kNeutral);
    } else {
      if (!t.emotion) t.emotion = Emotion::kNeutral;
      anchor = t.emotion;
    }
  }
}

void AnnotateDialogue(Dialogue& d, ChatClient& judge) {
  const bool keep = ToLower(d.source) == "emowoz";
  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    Turn& t = d.turns[i];
    if (t.role != Role::kUser || IsSegmentTurn(t)) continue;
    if (keep && t.emotion) continue;
    t.emotion = AnnotateTurn(d, i, judge);
  }
  InheritLabels(d);
}

}  // namespace dialaug
