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

// Unified dialogue schema shared by every pipeline stage, plus its
// validator and the fluent projection of disfluency-tagged turns.

#ifndef DIALAUG_CORPUS_H_
#define DIALAUG_CORPUS_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dialaug {

inline constexpr std::string_view kBargeInToken = "<bargein>";

enum class Role { kUser, kAssistant };

// Ids are fixed by the annotation rubric: 0 = neutral ... 6 = satisfied.
enum class Emotion : int {
  kNeutral = 0,
  kFearful = 1,
  kDissatisfied = 2,
  kApologetic = 3,
  kAbusive = 4,
  kExcited = 5,
  kSatisfied = 6,
};
inline constexpr int kNumEmotions = 7;

enum class BargeInType { kErrorRecovery, kClarification, kEfficiency };
enum class BargeInStyle { kImplicit, kRaw, kInterpreted };

enum class DisfluencyType { kFP, kDM, kEDIT, kREP, kCOR, kRST };
inline constexpr std::array<DisfluencyType, 6> kAllDisfluencyTypes = {
    DisfluencyType::kFP,  DisfluencyType::kDM,  DisfluencyType::kEDIT,
    DisfluencyType::kREP, DisfluencyType::kCOR, DisfluencyType::kRST};

enum class AccentPool { kNative, kAfrican, kIndian, kAsian };
enum class AgeBin { k10s, k20s30s, k40s50s, k60Plus };
enum class Gender { kMale, kFemale };

using SlotMap = std::map<std::string, std::string>;

struct SubGoal {
  std::string domain;
  std::string intent;
  SlotMap constraints;
  std::set<std::string> requests;
};

struct Goal {
  std::string text;
  std::vector<SubGoal> sub_goals;
};

struct SlotSpan {
  std::string slot;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const SlotSpan&) const = default;
};

struct BargeInMeta {
  BargeInType type = BargeInType::kErrorRecovery;
  BargeInStyle style = BargeInStyle::kRaw;
  std::optional<SlotMap> erroneous_slots;
  std::optional<SlotMap> corrected_slots;
};

struct DisfluencyMeta {
  DisfluencyType type = DisfluencyType::kFP;
  // Word index of the target in the pre-augmentation text.
  std::size_t position = 0;
  // Text removed together with the marker by FluentProjection. For REP this
  // is the repeated unit.
  std::string inserted_span;
  std::optional<std::string> original_value;  // COR: the correct value.
  std::optional<std::string> wrong_value;     // COR: the misspoken value.
};

struct CrossTurnMeta {
  std::string slot_name;
  // Distinguishes separate expansions within one dialogue.
  int group = 0;
  std::size_t chunk_index = 0;
  std::size_t chunk_count = 0;
  // Raw characters of the chunk as they occur in the slot value.
  std::string chunk_text;
  bool is_error = false;
  std::optional<std::size_t> corrected_in_turn;
};

struct SpeakerProfile {
  std::string speaker_id;
  AccentPool accent_pool = AccentPool::kNative;
  std::string country;
  int age = 0;
  AgeBin age_bin = AgeBin::k20s30s;
  Gender gender = Gender::kFemale;
  std::string ref_audio;
  double ref_duration_s = 0.0;
};

struct Turn {
  std::size_t index = 0;
  Role role = Role::kUser;
  std::string text;
  // Surface string with inline markers; equals `text` when there are none.
  std::string tagged;
  std::vector<SlotSpan> slot_spans;
  std::optional<Emotion> emotion;
  std::optional<BargeInMeta> bargein;
  std::vector<DisfluencyMeta> disfluency;
  std::optional<CrossTurnMeta> crossturn;
  std::optional<std::string> audio_ref;
  std::optional<double> duration_s;
};

struct Dialogue {
  std::string dialogue_id;
  std::string source;
  Goal goal;
  std::vector<Turn> turns;
  std::optional<SpeakerProfile> user_speaker;
  std::optional<SpeakerProfile> assistant_speaker;
  // Turn index -> flattened belief state ("domain.slot" -> value).
  std::map<std::size_t, SlotMap> state_per_turn;
};

struct Violation {
  // Turn the rule applies to; nullopt for dialogue-level rules.
  std::optional<std::size_t> turn;
  std::string rule;
  std::string detail;
};

std::vector<Violation> ValidateDialogue(const Dialogue& d);

// Marker-free reading of `tagged`: the marker and the text recorded in each
// DisfluencyMeta are removed. Exact inverse of FP/DM/EDIT/REP injection;
// for COR/RST the result keeps the final (correct) wording.
// Throws MalformedTagError when markers and metadata disagree.
std::string FluentProjection(const Turn& t);

// The `text` form of a tagged string: markers dropped, fillers kept.
std::string RenderSurface(std::string_view tagged);

// Marker token for a disfluency type, e.g. "[REP]".
std::string_view MarkerToken(DisfluencyType type);

// Renumbers turn indices densely from 0.
void Reindex(Dialogue& d);

// Belief state visible at `turn_idx`: the latest recorded state at or before
// it, else the slot values of user spans accumulated so far.
SlotMap StateAt(const Dialogue& d, std::size_t turn_idx);

// Slot values carried by a turn's spans, in span order.
std::vector<std::pair<std::string, std::string>> SpanValues(const Turn& t);

AgeBin AgeBinFor(int age);

// Name tables. Parsing accepts these names case-insensitively.
std::string_view ToString(Role r);
std::string_view ToString(Emotion e);
std::string_view ToString(BargeInType t);
std::string_view ToString(BargeInStyle s);
std::string_view ToString(DisfluencyType t);
std::string_view ToString(AccentPool p);
std::string_view ToString(AgeBin b);
std::string_view ToString(Gender g);
// Combined subtype code, e.g. "INCOHERENT_RAW" or "REF_IMPL".
std::string BargeInSubtype(BargeInType t, BargeInStyle s);

Role ParseRole(std::string_view s);
Emotion EmotionFromId(int id);
Emotion ParseEmotion(std::string_view s);
BargeInType ParseBargeInType(std::string_view s);
BargeInStyle ParseBargeInStyle(std::string_view s);
DisfluencyType ParseDisfluencyType(std::string_view s);
AccentPool ParseAccentPool(std::string_view s);
AgeBin ParseAgeBin(std::string_view s);
Gender ParseGender(std::string_view s);

}  // namespace dialaug

#endif  // DIALAUG_CORPUS_H_
