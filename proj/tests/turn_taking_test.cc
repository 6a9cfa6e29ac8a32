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


#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "dialaug/errors.h"
#include "dialaug/turn_taking.h"

namespace dialaug {
namespace {

constexpr ProbFrame kListen{1, 0, 0};
constexpr ProbFrame kTurnEnd{0, 1, 0};
constexpr ProbFrame kUniform{1.0 / 3, 1.0 / 3, 1.0 / 3};

const Strategy kAll[] = {Strategy::kArgmax, Strategy::kProbThreshold,
                         Strategy::kTailThreshold, Strategy::kListenRelative,
                         Strategy::kLinearWeighted};

TEST(ProbFrame, Validation) {
  EXPECT_NO_THROW(ValidateFrame(kUniform));
  EXPECT_THROW(ValidateFrame({0.5, 0.5, 0.1}), ContractViolation);
  EXPECT_THROW(ValidateFrame({1.2, -0.2, 0}), ContractViolation);
}

TEST(Argmax, TiesFavourListenThenTurnEnd) {
  EXPECT_EQ(Argmax(kUniform), TurnClass::kListen);
  EXPECT_EQ(Argmax({0.2, 0.4, 0.4}), TurnClass::kTurnEnd);
  EXPECT_EQ(Argmax({0.2, 0.3, 0.5}), TurnClass::kBargeIn);
}

TEST(LabelFrames, Examples) {
  using C = TurnClass;
  std::vector<C> ten(4, C::kListen);
  ten.insert(ten.end(), 6, C::kTurnEnd);
  EXPECT_EQ(LabelFrames(10, C::kTurnEnd), ten);
  EXPECT_EQ(LabelFrames(6, C::kBargeIn), std::vector<C>(6, C::kBargeIn));
  EXPECT_EQ(LabelFrames(3, C::kTurnEnd), std::vector<C>(3, C::kTurnEnd));
  EXPECT_THROW(LabelFrames(0, C::kTurnEnd), ContractViolation);
  EXPECT_THROW(LabelFrames(4, C::kListen), ContractViolation);
}

TEST(Step, ProbThresholdFiresOnSixthFrame) {
  const std::vector<ProbFrame> frames(6, kTurnEnd);
  const FireDecision d = RunStream(StrategyConfig::Defaults(Strategy::kProbThreshold), frames);
  ASSERT_TRUE(d.fired);
  EXPECT_EQ(d.cls, TurnClass::kTurnEnd);
  EXPECT_EQ(d.frame, 5u);  // 0-based; the sixth frame
}

TEST(Step, ListenRelativeNeverFiresOnUniformFrames) {
  const std::vector<ProbFrame> frames(500, kUniform);
  EXPECT_FALSE(RunStream(StrategyConfig::Defaults(Strategy::kListenRelative), frames).fired);
}

TEST(Step, LinearWeightedBelowThreshold) {
  std::vector<ProbFrame> frames(5, kListen);
  frames.push_back(kTurnEnd);
  StreamState s(StrategyConfig::Defaults(Strategy::kLinearWeighted));
  for (const auto& f : frames) EXPECT_FALSE(s.Step(f).fired);
  // Score 6/21 ~ 0.2857 sits between the barge-in and turn-end thresholds,
  // but only the turn-end channel has mass.
  EXPECT_FALSE(s.fired());
  EXPECT_EQ(s.frames_seen(), 6u);
}

TEST(Step, LinearWeightedWarmupRenormalizes) {
  StrategyConfig cfg = StrategyConfig::Defaults(Strategy::kLinearWeighted);
  // First frame alone carries weight 1/1.
  const FireDecision d = RunStream(cfg, {kTurnEnd});
  ASSERT_TRUE(d.fired);
  EXPECT_EQ(d.frame, 0u);
}

TEST(Step, ArgmaxFiresOnFirstNonListenFrame) {
  const FireDecision d =
      RunStream(StrategyConfig::Defaults(Strategy::kArgmax),
                {kListen, kUniform, {0.3, 0.3, 0.4}, kTurnEnd});
  ASSERT_TRUE(d.fired);
  EXPECT_EQ(d.cls, TurnClass::kBargeIn);
  EXPECT_EQ(d.frame, 2u);
}

TEST(Step, TurnEndWinsSimultaneousFire) {
  StrategyConfig cfg = StrategyConfig::Defaults(Strategy::kProbThreshold);
  cfg.t_turnend = 0.4;
  cfg.t_bargein = 0.3;
  const FireDecision d = RunStream(cfg, {{0.1, 0.45, 0.45}});
  ASSERT_TRUE(d.fired);
  EXPECT_EQ(d.cls, TurnClass::kTurnEnd);
}

TEST(Step, TailThresholdUsesLongestRun) {
  StrategyConfig cfg = StrategyConfig::Defaults(Strategy::kTailThreshold);
  cfg.t_turnend = 1.5;
  cfg.t_bargein = 1.0;
  // Runs of turn-end argmax: lengths 1 (0.9) and 2 (0.6 + 0.6).
  const std::vector<ProbFrame> frames = {
      {0.1, 0.9, 0.0}, kListen, {0.4, 0.6, 0.0}, {0.4, 0.6, 0.0}};
  EXPECT_FALSE(RunStream(cfg, frames).fired);
  cfg.t_turnend = 1.1;
  const FireDecision d = RunStream(cfg, frames);
  ASSERT_TRUE(d.fired);
  EXPECT_EQ(d.frame, 3u);
}

TEST(Step, SteppingAfterFireIsContractViolation) {
  StreamState s(StrategyConfig::Defaults(Strategy::kArgmax));
  ASSERT_TRUE(s.Step(kTurnEnd).fired);
  EXPECT_THROW(s.Step(kListen), ContractViolation);
}

TEST(Step, PureListenNeverFires) {
  const std::vector<ProbFrame> frames(200, kListen);
  for (Strategy st : kAll) {
    EXPECT_FALSE(RunStream(StrategyConfig::Defaults(st), frames).fired) << ToString(st);
  }
}

TEST(Step, LinearScoreBounded) {
  // With thresholds just above 1 nothing can ever fire.
  StrategyConfig cfg = StrategyConfig::Defaults(Strategy::kLinearWeighted);
  cfg.t_turnend = 1.0 + 1e-9;
  cfg.t_bargein = 1.0;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    std::vector<ProbFrame> frames;
    for (int k = 0; k < 20; ++k) {
      const double a = u(gen), b = u(gen), c = u(gen), s = a + b + c;
      frames.push_back({a / s, b / s, c / s});
    }
    frames.push_back(kTurnEnd);
    EXPECT_FALSE(RunStream(cfg, frames).fired);
  }
}

TEST(Step, MonotoneInTurnEndMass) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(0, 1);
  for (Strategy st : {Strategy::kProbThreshold, Strategy::kLinearWeighted}) {
    const StrategyConfig cfg = StrategyConfig::Defaults(st);
    for (int iter = 0; iter < 2000; ++iter) {
      std::vector<ProbFrame> frames;
      const int n = 1 + static_cast<int>(gen() % 30);
      for (int k = 0; k < n; ++k) {
        const double p = u(gen);
        frames.push_back({1 - p, p, 0});
      }
      const FireDecision base = RunStream(cfg, frames);
      auto boosted = frames;
      const std::size_t k = gen() % boosted.size();
      const double p = boosted[k].p_turnend + (1 - boosted[k].p_turnend) * u(gen);
      boosted[k] = {1 - p, p, 0};
      const FireDecision more = RunStream(cfg, boosted);
      if (base.fired) {
        ASSERT_TRUE(more.fired);
        EXPECT_LE(more.frame, base.frame);
      }
    }
  }
}

TEST(ClassifyOutcome, Definitions) {
  const std::size_t ts = 4;
  EXPECT_EQ(ClassifyOutcome({true, TurnClass::kBargeIn, ts + 2}, TurnClass::kBargeIn, ts),
            Outcome::kCorrect);
  EXPECT_EQ(ClassifyOutcome({true, TurnClass::kTurnEnd, ts}, TurnClass::kBargeIn, ts),
            Outcome::kConfused);
  EXPECT_EQ(ClassifyOutcome({true, TurnClass::kBargeIn, ts - 1}, TurnClass::kBargeIn, ts),
            Outcome::kEarly);
  EXPECT_EQ(ClassifyOutcome({}, TurnClass::kTurnEnd, ts), Outcome::kMissed);
  EXPECT_EQ(TriggerStart(10), 4u);
  EXPECT_EQ(TriggerStart(3), 0u);
}

TEST(EvaluateSet, AllCorrectFixture) {
  std::vector<LabeledStream> streams;
  for (int i = 0; i < 4; ++i) {
    std::vector<ProbFrame> f(8, kListen);
    f.back() = i % 2 ? kTurnEnd : ProbFrame{0, 0, 1};
    streams.push_back({"s" + std::to_string(i), f,
                       i % 2 ? TurnClass::kTurnEnd : TurnClass::kBargeIn});
  }
  const OutcomeReport r = EvaluateSet(streams, StrategyConfig::Defaults(Strategy::kArgmax));
  EXPECT_EQ(r.turnend.n, 2u);
  EXPECT_DOUBLE_EQ(r.turnend.correct, 100.0);
  EXPECT_DOUBLE_EQ(r.bargein.correct, 100.0);
  EXPECT_DOUBLE_EQ(r.turnend.binary(), 100.0);
  EXPECT_DOUBLE_EQ(r.bargein.missed, 0.0);
  const auto j = ReportToJson(r);
  EXPECT_EQ(j.at("strategy"), "argmax");
  EXPECT_EQ(j.at("turn_end").at("binary"), 100.0);
  EXPECT_NE(FormatReportTable({r}).find("turn-end"), std::string::npos);
  streams[0].truth = TurnClass::kListen;
  EXPECT_THROW(EvaluateSet(streams, StrategyConfig::Defaults(Strategy::kArgmax)),
               ContractViolation);
}

TEST(SweepThresholds, SkipsInvertedPairs) {
  const std::vector<LabeledStream> streams = {
      {"a", std::vector<ProbFrame>(8, kTurnEnd), TurnClass::kTurnEnd}};
  const auto out = SweepThresholds(streams, StrategyConfig::Defaults(Strategy::kProbThreshold),
                                   {1.0, 2.0, 3.0}, {0.5, 2.0});
  // (1.0,0.5) (2.0,0.5) (3.0,0.5) (3.0,2.0)
  ASSERT_EQ(out.size(), 4u);
  for (const auto& r : out) EXPECT_LT(r.config.t_bargein, r.config.t_turnend);
}

TEST(StrategyConfig, DefaultsAndValidation) {
  const auto p = StrategyConfig::Defaults(Strategy::kProbThreshold);
  EXPECT_EQ(p.window, 6);
  EXPECT_DOUBLE_EQ(p.t_turnend, 5.0);
  EXPECT_DOUBLE_EQ(p.t_bargein, 0.5);
  StrategyConfig bad = p;
  bad.t_bargein = 6.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = p;
  bad.window = 0;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = p;
  bad.t_bargein = 0;
  EXPECT_THROW(bad.Validate(), ConfigError);
  for (Strategy s : kAll) {
    EXPECT_EQ(ParseStrategy(ToString(s)), s);
    EXPECT_NO_THROW(StrategyConfig::Defaults(s).Validate());
  }
  EXPECT_THROW(ParseStrategy("majority"), ConfigError);
}

TEST(ReadStreams, GroupsAndSortsFrames) {
  const auto path = std::filesystem::temp_directory_path() / "dialaug_streams_test.ndjson";
  {
    std::ofstream out(path);
    out << R"({"stream":"b","t":1,"p_listen":0,"p_turnend":1,"p_bargein":0,"truth":"turnend"})"
        << "\n"
        << R"({"stream":"a","t":0,"p_listen":1,"p_turnend":0,"p_bargein":0,"truth":"bargein"})"
        << "\n"
        << R"({"stream":"b","t":0,"p_listen":1,"p_turnend":0,"p_bargein":0,"truth":"turnend"})"
        << "\n";
  }
  const auto streams = ReadStreams(path);
  std::filesystem::remove(path);
  ASSERT_EQ(streams.size(), 2u);
  EXPECT_EQ(streams[0].id, "b");
  EXPECT_EQ(streams[0].truth, TurnClass::kTurnEnd);
  ASSERT_EQ(streams[0].frames.size(), 2u);
  EXPECT_DOUBLE_EQ(streams[0].frames[0].p_listen, 1.0);
  EXPECT_EQ(streams[1].truth, TurnClass::kBargeIn);
}

}  // namespace
}  // namespace dialaug
