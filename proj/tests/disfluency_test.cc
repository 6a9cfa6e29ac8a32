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


#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "dialaug/disfluency.h"
#include "dialaug/errors.h"
#include "dialaug/text_util.h"
#include "test_util.h"

namespace dialaug {
namespace {

using testing::AddSpan;
using testing::MakeTurnAt;
using testing::RandomUtterance;

class FailingChat : public ChatClient {
 public:
  std::string Chat(const ChatRequest&) override { throw ClientError("down"); }
};

class ScriptedChat : public ChatClient {
 public:
  explicit ScriptedChat(std::string reply) : reply_(std::move(reply)) {}
  std::string Chat(const ChatRequest&) override { return reply_; }

 private:
  std::string reply_;
};

Turn BookingTurn() {
  Turn t = MakeTurnAt(0, Role::kUser, "I need a table for two people on friday.");
  AddSpan(t, "bookpeople", "two");
  AddSpan(t, "bookday", "friday");
  return t;
}

TEST(DisfluencyProbability, ClosedForm) {
  // Product of per-word fluency, computed by repeated multiplication.
  for (std::size_t n = 0; n <= 60; ++n) {
    double fluent = 1.0;
    for (std::size_t i = 0; i < n; ++i) fluent *= 0.9453;
    EXPECT_NEAR(DisfluencyProbability(n, 0.9453), 1.0 - fluent, 1e-12) << n;
  }
  EXPECT_DOUBLE_EQ(DisfluencyProbability(0, 0.5), 0.0);
}

TEST(DisfluencyProbability, MonotoneInLength) {
  double prev = -1;
  for (std::size_t n = 0; n < 100; ++n) {
    const double p = DisfluencyProbability(n, 0.9453);
    EXPECT_GT(p, prev);
    EXPECT_LT(p, 1.0);
    prev = p;
  }
}

TEST(FillerInventory, OnlyPrefixTypes) {
  EXPECT_FALSE(FillerInventory(DisfluencyType::kFP).empty());
  EXPECT_FALSE(FillerInventory(DisfluencyType::kDM).empty());
  EXPECT_FALSE(FillerInventory(DisfluencyType::kEDIT).empty());
  EXPECT_THROW(FillerInventory(DisfluencyType::kREP), ContractViolation);
}

TEST(SlotWordRanges, CoversSpanWords) {
  const Turn t = BookingTurn();
  const auto r = SlotWordRanges(t);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], std::make_pair(std::size_t{5}, std::size_t{5}));
  EXPECT_EQ(r[1], std::make_pair(std::size_t{8}, std::size_t{8}));
}

TEST(Inject, FilledPauseAtStart) {
  Turn t = BookingTurn();
  Rng rng(1);
  ASSERT_FALSE(Inject(t, DisfluencyType::kFP, 0, nullptr, rng));
  const std::string f = t.disfluency[0].inserted_span;
  EXPECT_TRUE(f == "uh," || f == "um,") << f;
  EXPECT_EQ(t.text, f + " I need a table for two people on friday.");
  EXPECT_EQ(t.tagged, "[FP] " + f + " I need a table for two people on friday.");
  EXPECT_EQ(FluentProjection(t), "I need a table for two people on friday.");
  EXPECT_EQ(SpanValues(t)[0].second, "two");
}

TEST(Inject, RepetitionKeepsFluentReading) {
  Turn t = BookingTurn();
  Rng rng(3);
  ASSERT_FALSE(Inject(t, DisfluencyType::kREP, 3, nullptr, rng));
  EXPECT_NE(t.tagged.find("[REP]"), std::string::npos);
  EXPECT_EQ(FluentProjection(t), "I need a table for two people on friday.");
}

TEST(Inject, CorrectionWithStubGenerator) {
  Turn t = BookingTurn();
  StubChatClient gen;
  Rng rng(1);
  const auto err = Inject(t, DisfluencyType::kCOR, 5, &gen, rng);
  ASSERT_FALSE(err) << *err;
  const auto& m = t.disfluency[0];
  EXPECT_EQ(m.original_value, "two");
  EXPECT_EQ(m.wrong_value, "four");
  EXPECT_NE(t.text.find("four"), std::string::npos);
  EXPECT_EQ(FluentProjection(t), "I need a table for two people on friday.");
  bool found = false;
  for (const auto& [slot, value] : SpanValues(t)) {
    if (slot == "bookpeople") {
      EXPECT_EQ(value, "two");
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(ValidateDialogue([&] {
                Dialogue d = testing::MakeDialogue("c", {"x", "y"});
                d.turns[0] = t;
                return d;
              }()).empty());
}

TEST(Inject, CorrectionRejectsOutputWithoutGoldValue) {
  Turn t = BookingTurn();
  const Turn before = t;
  ScriptedChat gen("I need a table for four — no, three people on friday.");
  Rng rng(1);
  EXPECT_TRUE(Inject(t, DisfluencyType::kCOR, 5, &gen, rng).has_value());
  EXPECT_EQ(t.text, before.text);
  EXPECT_TRUE(t.disfluency.empty());
}

TEST(Inject, RestartWithStubGenerator) {
  Turn t = BookingTurn();
  StubChatClient gen;
  Rng rng(1);
  const auto err = Inject(t, DisfluencyType::kRST, 2, &gen, rng);
  ASSERT_FALSE(err) << *err;
  EXPECT_EQ(t.text, "I need a... I need a table for two people on friday.");
  EXPECT_EQ(FluentProjection(t), "I need a table for two people on friday.");
  EXPECT_EQ(SpanValues(t).size(), 2u);
}

TEST(Inject, ClientFailureLeavesTurnUntouched) {
  Turn t = BookingTurn();
  FailingChat gen;
  Rng rng(1);
  EXPECT_TRUE(Inject(t, DisfluencyType::kRST, 2, &gen, rng).has_value());
  EXPECT_EQ(t.text, BookingTurn().text);
  EXPECT_EQ(t.tagged, t.text);
}

TEST(Inject, Contracts) {
  Turn t = BookingTurn();
  Rng rng(1);
  EXPECT_THROW(Inject(t, DisfluencyType::kFP, 99, nullptr, rng), ContractViolation);
  EXPECT_THROW(Inject(t, DisfluencyType::kCOR, 5, nullptr, rng), ContractViolation);
  ASSERT_FALSE(Inject(t, DisfluencyType::kDM, 1, nullptr, rng));
  EXPECT_TRUE(Inject(t, DisfluencyType::kFP, 0, nullptr, rng).has_value());
}

TEST(Inject, LocalTypesAreExactlyInvertible) {
  std::mt19937_64 gen(21);
  Rng rng(22);
  const DisfluencyType types[] = {DisfluencyType::kFP, DisfluencyType::kDM,
                                  DisfluencyType::kEDIT, DisfluencyType::kREP};
  for (int iter = 0; iter < 3000; ++iter) {
    const std::string text = RandomUtterance(gen, 1 + gen() % 15);
    Turn t = MakeTurnAt(0, Role::kUser, text);
    const auto words = SplitWords(text);
    const std::string value = StripTrailingPunct(words[gen() % words.size()]);
    if (!value.empty()) AddSpan(t, "slot", value);
    const auto type = types[gen() % 4];
    const std::size_t pos = gen() % words.size();
    const auto err = Inject(t, type, pos, nullptr, rng);
    if (err) continue;
    EXPECT_EQ(FluentProjection(t), text) << t.tagged;
    EXPECT_EQ(RenderSurface(t.tagged), t.text);
    for (const auto& sp : t.slot_spans) {
      EXPECT_EQ(t.text.substr(sp.start, sp.end - sp.start), value) << t.tagged;
    }
  }
}

TEST(ChoosePosition, SlotLocalWindow) {
  const Turn t = BookingTurn();
  DisfluencyConfig cfg;
  cfg.p_slot_local = 1.0;
  cfg.slot_window_words = 1;
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    DisfluencyType type = DisfluencyType::kFP;
    const std::size_t p = ChoosePosition(t, type, cfg, rng);
    EXPECT_TRUE((p >= 4 && p <= 6) || (p >= 7 && p <= 8)) << p;
  }
}

TEST(ChoosePosition, CorrectionOnSlotlessTurnFallsBack) {
  const Turn t = MakeTurnAt(0, Role::kUser, "Hello there, how are you?");
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    DisfluencyType type = DisfluencyType::kCOR;
    const std::size_t p = ChoosePosition(t, type, {}, rng);
    EXPECT_NE(type, DisfluencyType::kCOR);
    EXPECT_LT(p, 5u);
  }
}

TEST(ChoosePosition, CorrectionTargetsSlotStart) {
  const Turn t = BookingTurn();
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    DisfluencyType type = DisfluencyType::kCOR;
    const std::size_t p = ChoosePosition(t, type, {}, rng);
    EXPECT_EQ(type, DisfluencyType::kCOR);
    EXPECT_TRUE(p == 5 || p == 8);
  }
}

TEST(AugmentDisfluency, AtMostOnePerUserTurn) {
  std::mt19937_64 gen(9);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    std::vector<std::string> texts;
    for (int i = 0; i < 10; ++i) texts.push_back(RandomUtterance(gen, 5 + gen() % 20));
    Dialogue d = testing::MakeDialogue("a", texts);
    StubChatClient chat;
    Rng rng(seed);
    const auto counts = AugmentDisfluency(d, {}, &chat, rng);
    EXPECT_EQ(counts.injected + counts.rejected, counts.sampled);
    for (std::size_t i = 0; i < d.turns.size(); ++i) {
      const Turn& t = d.turns[i];
      EXPECT_LE(t.disfluency.size(), 1u);
      if (t.role == Role::kAssistant) EXPECT_TRUE(t.disfluency.empty());
      EXPECT_EQ(FluentProjection(t), texts[i]);
    }
    EXPECT_TRUE(ValidateDialogue(d).empty());
  }
}

TEST(DisfluencyConfig, Validate) {
  DisfluencyConfig cfg;
  cfg.b = 1.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.p_slot_local = 2.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

}  // namespace
}  // namespace dialaug
