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

#include <random>

#include <gtest/gtest.h>

#include "dialaug/corpus.h"
#include "dialaug/corpus_json.h"
#include "dialaug/errors.h"
#include "dialaug/text_util.h"
#include "test_util.h"

namespace dialaug {
namespace {

using testing::MakeDialogue;
using testing::MakeTurnAt;

bool HasRule(const std::vector<Violation>& vs, const std::string& rule,
             std::optional<std::size_t> turn = std::nullopt) {
  for (const auto& v : vs) {
    if (v.rule == rule && (!turn || v.turn == turn)) return true;
  }
  return false;
}

TEST(ValidateDialogueTest, WellFormedIsClean) {
  const Dialogue d = MakeDialogue("ok", {"I need a hotel.", "Sure."});
  EXPECT_TRUE(ValidateDialogue(d).empty());
}

TEST(ValidateDialogueTest, UserBargeInTokenFlagged) {
  Dialogue d = MakeDialogue("x", {"Hi<bargein>", "Hello."});
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "bargein.user_token", 0));
}

TEST(ValidateDialogueTest, SpanBeyondTextFlagged) {
  Dialogue d = MakeDialogue("x", {"two", "ok"});
  d.turns[0].slot_spans.push_back({"people", 0, 10});
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "span.bounds", 0));
}

TEST(ValidateDialogueTest, OverlapAndAlternationAndIndices) {
  Dialogue d = MakeDialogue("x", {"table for two", "ok", "fine"});
  d.turns[0].slot_spans = {{"a", 0, 5}, {"b", 3, 9}};
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "span.overlap", 0));
  d.turns[0].slot_spans.clear();
  d.turns[2].role = Role::kAssistant;
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "turn.alternation", 2));
  d.turns[2].role = Role::kUser;
  d.turns[1].index = 7;
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "turn.index", 1));
}

TEST(ValidateDialogueTest, GoalRules) {
  Dialogue d = MakeDialogue("x", {"hi", "hello"});
  d.goal.sub_goals[0].requests.insert("pricerange");
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "goal.disjoint"));
  d.goal.sub_goals.clear();
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "goal.sub_goals"));
}

TEST(ValidateDialogueTest, TruncatedAssistantNeedsTokenAtEnd) {
  Dialogue d = MakeDialogue("x", {"hi", "Your number is<bargein> ok", "what?"});
  d.turns[1].bargein = BargeInMeta{};
  d.turns[1].bargein->type = BargeInType::kClarification;
  EXPECT_TRUE(HasRule(ValidateDialogue(d), "bargein.token_position", 1));
}

// Property: each single mutation drawn from a fixed menu is detected.
TEST(ValidateDialogueTest, RandomSingleMutationsDetected) {
  std::mt19937_64 gen(17);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> texts;
    const std::size_t n = 2 + gen() % 6;
    for (std::size_t i = 0; i < n; ++i) texts.push_back(testing::RandomUtterance(gen, 3 + gen() % 5));
    Dialogue d = MakeDialogue("m" + std::to_string(iter), texts);
    ASSERT_TRUE(ValidateDialogue(d).empty());
    const std::size_t k = gen() % n;
    Turn& t = d.turns[k];
    switch (gen() % 5) {
      case 0:
        t.slot_spans.push_back({"s", t.text.size(), t.text.size() + 2});
        break;
      case 1:
        t.index += 1;
        break;
      case 2:
        t.role = t.role == Role::kUser ? Role::kAssistant : Role::kUser;
        break;
      case 3:
        d.turns[0].text += "<bargein>";
        d.turns[0].tagged = d.turns[0].text;
        break;
      case 4:
        t.slot_spans = {{"a", 0, 3}, {"b", 1, 2}};
        break;
    }
    EXPECT_FALSE(ValidateDialogue(d).empty()) << "iteration " << iter;
  }
}

TEST(FluentProjectionTest, IdentityWithoutMarkers) {
  Turn t = MakeTurnAt(0, Role::kUser, "we should go there.");
  EXPECT_EQ(FluentProjection(t), "we should go there.");
}

TEST(FluentProjectionTest, FilledPause) {
  Turn t = MakeTurnAt(0, Role::kUser, "uh, we should go there.");
  t.tagged = "[FP] uh, we should go there.";
  t.disfluency.push_back({DisfluencyType::kFP, 0, "uh,", std::nullopt, std::nullopt});
  EXPECT_EQ(FluentProjection(t), "we should go there.");
}

TEST(FluentProjectionTest, RepetitionRemovesMarkerAndCopy) {
  Turn t = MakeTurnAt(0, Role::kUser, "I mean, I mean I don't know.");
  t.tagged = "I mean, [REP] I mean I don't know.";
  t.disfluency.push_back({DisfluencyType::kREP, 1, "I mean,", std::nullopt, std::nullopt});
  EXPECT_EQ(FluentProjection(t), "I mean, I don't know.");
}

TEST(FluentProjectionTest, CorrectionKeepsFinalValue) {
  Turn t = MakeTurnAt(0, Role::kUser, "");
  t.tagged = "A table for two — [COR] no, three please.";
  t.text = RenderSurface(t.tagged);
  t.disfluency.push_back({DisfluencyType::kCOR, 3, "two — no, ", "three", "two"});
  EXPECT_EQ(FluentProjection(t), "A table for three please.");
}

TEST(FluentProjectionTest, MismatchedMetadataThrows) {
  Turn t = MakeTurnAt(0, Role::kUser, "uh, hi");
  t.tagged = "[FP] uh, hi";
  EXPECT_THROW(FluentProjection(t), MalformedTagError);
  t.disfluency.push_back({DisfluencyType::kDM, 0, "uh,", std::nullopt, std::nullopt});
  EXPECT_THROW(FluentProjection(t), MalformedTagError);
  t.disfluency[0] = {DisfluencyType::kFP, 0, "um,", std::nullopt, std::nullopt};
  EXPECT_THROW(FluentProjection(t), MalformedTagError);
}

TEST(RenderSurfaceTest, DropsMarkersKeepsFillers) {
  EXPECT_EQ(RenderSurface("[FP] uh, we go."), "uh, we go.");
  EXPECT_EQ(RenderSurface("so [DM] well, we go."), "so well, we go.");
  EXPECT_EQ(RenderSurface("thank you [REP] you so much"), "thank you, you so much");
  EXPECT_EQ(RenderSurface("for two — [COR] no, three"), "for two — no, three");
  EXPECT_EQ(RenderSurface("plain"), "plain");
}

TEST(StateAtTest, RecordedStateWins) {
  Dialogue d = MakeDialogue("s", {"in the north", "ok", "cheap please", "fine"});
  testing::AddSpan(d.turns[0], "area", "north");
  testing::AddSpan(d.turns[2], "price", "cheap");
  EXPECT_EQ(StateAt(d, 0), (SlotMap{{"area", "north"}}));
  EXPECT_EQ(StateAt(d, 3), (SlotMap{{"area", "north"}, {"price", "cheap"}}));
  d.state_per_turn[2] = {{"hotel.area", "north"}};
  EXPECT_EQ(StateAt(d, 3), (SlotMap{{"hotel.area", "north"}}));
  EXPECT_EQ(StateAt(d, 1), (SlotMap{{"area", "north"}}));
}

TEST(EnumTest, NamesRoundTrip) {
  for (int i = 0; i <= 6; ++i) {
    const Emotion e = EmotionFromId(i);
    EXPECT_EQ(ParseEmotion(ToString(e)), e);
  }
  EXPECT_EQ(ToString(EmotionFromId(0)), "neutral");
  EXPECT_EQ(ToString(EmotionFromId(6)), "satisfied");
  EXPECT_THROW(EmotionFromId(7), Error);
  for (DisfluencyType t : kAllDisfluencyTypes) EXPECT_EQ(ParseDisfluencyType(ToString(t)), t);
  EXPECT_EQ(MarkerToken(DisfluencyType::kEDIT), "[EDIT]");
  EXPECT_EQ(BargeInSubtype(BargeInType::kErrorRecovery, BargeInStyle::kRaw), "INCOHERENT_RAW");
  EXPECT_EQ(ParseAccentPool("native"), AccentPool::kNative);
  EXPECT_EQ(AgeBinFor(19), AgeBin::k10s);
  EXPECT_EQ(AgeBinFor(20), AgeBin::k20s30s);
  EXPECT_EQ(AgeBinFor(60), AgeBin::k60Plus);
}

// Property: serialization round-trips random dialogues exactly.
TEST(CorpusJsonTest, RoundTripRandomDialogues) {
  std::mt19937_64 gen(23);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::string> texts;
    const std::size_t n = 1 + gen() % 6;
    for (std::size_t i = 0; i < n; ++i) texts.push_back(testing::RandomUtterance(gen, 2 + gen() % 6));
    Dialogue d = MakeDialogue("rt" + std::to_string(iter), texts);
    Turn& t0 = d.turns[0];
    const auto words = SplitWordSpans(t0.text);
    t0.slot_spans.push_back({"x.slot", words[0].start, words[0].end});
    t0.emotion = EmotionFromId(static_cast<int>(gen() % 7));
    if (gen() % 2) {
      t0.disfluency.push_back({DisfluencyType::kCOR, 0, "a b", std::string("v"), std::string("w")});
    }
    if (n > 1 && gen() % 2) {
      BargeInMeta m;
      m.type = BargeInType::kErrorRecovery;
      m.style = BargeInStyle::kImplicit;
      m.erroneous_slots = SlotMap{{"a", "1"}};
      m.corrected_slots = SlotMap{{"a", "2"}};
      d.turns[1].bargein = m;
    }
    if (gen() % 2) {
      t0.crossturn = CrossTurnMeta{"x.slot", 1, 0, 2, "012", true, std::size_t{3}};
    }
    t0.audio_ref = "data/audio/x/turn00.wav";
    t0.duration_s = 1.25;
    d.state_per_turn[0] = {{"hotel.area", "north"}};
    SpeakerProfile s;
    s.speaker_id = "spk";
    s.accent_pool = AccentPool::kAsian;
    s.country = "Japan";
    s.age = 44;
    s.age_bin = AgeBin::k40s50s;
    s.gender = Gender::kMale;
    d.user_speaker = s;

    const Json j = ToJson(d);
    const Dialogue back = DialogueFromJson(Json::parse(DumpLine(j)));
    EXPECT_EQ(DumpLine(ToJson(back)), DumpLine(j));
    EXPECT_EQ(back.turns.size(), d.turns.size());
    EXPECT_EQ(back.turns[0].slot_spans, d.turns[0].slot_spans);
    EXPECT_EQ(back.state_per_turn, d.state_per_turn);
  }
}

TEST(CorpusJsonTest, FieldNamesFollowCorpusFormat) {
  Dialogue d = MakeDialogue("abcd_10083", {"I'm a Gold member.", "Great."});
  d.turns[0].audio_ref = "data/audio/abcd_10083/turn00.wav";
  const Json j = ToJson(d);
  EXPECT_EQ(j.at("dialogue_id"), "abcd_10083");
  EXPECT_TRUE(j.at("goal").contains("text"));
  EXPECT_TRUE(j.at("goal").contains("structured"));
  EXPECT_EQ(j.at("turns")[0].at("audio_path"), "data/audio/abcd_10083/turn00.wav");
  EXPECT_EQ(j.at("turns")[0].at("role"), "user");
}

TEST(CorpusJsonTest, AcceptsEmotionForms) {
  Json t = {{"role", "user"}, {"text", "hi"}};
  t["emotion"] = 2;
  EXPECT_EQ(TurnFromJson(t, 0).emotion, Emotion::kDissatisfied);
  t["emotion"] = "satisfied";
  EXPECT_EQ(TurnFromJson(t, 0).emotion, Emotion::kSatisfied);
  t["emotion"] = {{"label", 3}, {"name", "apologetic"}};
  EXPECT_EQ(TurnFromJson(t, 0).emotion, Emotion::kApologetic);
}

}  // namespace
}  // namespace dialaug
