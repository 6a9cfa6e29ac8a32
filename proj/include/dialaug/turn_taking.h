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

#ifndef DIALAUG_TURN_TAKING_H_
#define DIALAUG_TURN_TAKING_H_

#include <cstddef>
#include <deque>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dialaug {

enum class TurnClass { kListen, kTurnEnd, kBargeIn };

struct ProbFrame {
  double p_listen = 1.0;
  double p_turnend = 0.0;
  double p_bargein = 0.0;

  double p(TurnClass c) const;
};

// Throws ContractViolation unless each entry is in [0, 1] and they sum to
// 1 within 1e-6.
void ValidateFrame(const ProbFrame& f);

// Per-frame argmax; ties resolve listen > turnend > bargein.
TurnClass Argmax(const ProbFrame& f);

enum class Strategy {
  kArgmax,
  kProbThreshold,
  kTailThreshold,
  kListenRelative,
  kLinearWeighted,
};

struct StrategyConfig {
  Strategy strategy = Strategy::kLinearWeighted;
  int window = 6;
  double t_turnend = 0.45;
  double t_bargein = 0.05;

  static StrategyConfig Defaults(Strategy s);
  // Throws ConfigError on an invalid window or threshold ordering.
  void Validate() const;
};

struct FireDecision {
  bool fired = false;
  TurnClass cls = TurnClass::kListen;
  std::size_t frame = 0;  // 0-based index of the firing frame

  bool operator==(const FireDecision&) const = default;
};

// Streaming evaluator for one utterance. Scores are maintained incrementally
// over the sliding window; the stream stops at its first fire.
class StreamState {
 public:
  explicit StreamState(const StrategyConfig& cfg);

  FireDecision Step(const ProbFrame& frame);

  bool fired() const { return decision_.fired; }
  const FireDecision& decision() const { return decision_; }
  std::size_t frames_seen() const { return seen_; }

 private:
  double TailScore(TurnClass c) const;

  StrategyConfig cfg_;
  std::deque<ProbFrame> window_;
  std::size_t seen_ = 0;
  FireDecision decision_;
  // Running window sums, indexed 0 = turnend, 1 = bargein.
  double plain_[2] = {0, 0};
  double relative_[2] = {0, 0};
  double weighted_[2] = {0, 0};
};

FireDecision RunStream(const StrategyConfig& cfg,
                       const std::vector<ProbFrame>& frames);

// Frame labels for an utterance of n tokens: listen, then the final
// min(n, 6) frames carry `turn_type`.
std::vector<TurnClass> LabelFrames(std::size_t n_tokens, TurnClass turn_type);

enum class Outcome { kCorrect, kEarly, kConfused, kMissed };

Outcome ClassifyOutcome(const FireDecision& fire, TurnClass truth,
                        std::size_t trigger_start);

// Start of the trigger window (final six frames) for a stream of n frames.
std::size_t TriggerStart(std::size_t n_frames);

struct LabeledStream {
  std::string id;
  std::vector<ProbFrame> frames;
  TurnClass truth = TurnClass::kTurnEnd;
};

// Percentages over one ground-truth class.
struct OutcomeRow {
  std::size_t n = 0;
  double correct = 0;
  double early = 0;
  double confused = 0;
  double missed = 0;

  double binary() const { return correct + confused; }
};

struct OutcomeReport {
  StrategyConfig config;
  OutcomeRow turnend;
  OutcomeRow bargein;
};

OutcomeReport EvaluateSet(const std::vector<LabeledStream>& streams,
                          const StrategyConfig& cfg);

// Evaluates every (t_turnend, t_bargein) pair with t_bargein < t_turnend.
std::vector<OutcomeReport> SweepThresholds(
    const std::vector<LabeledStream>& streams, StrategyConfig base,
    const std::vector<double>& t_turnend, const std::vector<double>& t_bargein);

nlohmann::json ReportToJson(const OutcomeReport& r);
std::string FormatReportTable(const std::vector<OutcomeReport>& reports);

// NDJSON rows {stream, t, p_listen, p_turnend, p_bargein, truth}. Streams
// keep first-appearance order; frames are sorted by t.
std::vector<LabeledStream> ReadStreams(const std::filesystem::path& path);

std::string_view ToString(TurnClass c);
std::string_view ToString(Strategy s);
std::string_view ToString(Outcome o);
TurnClass ParseTurnClass(std::string_view s);
Strategy ParseStrategy(std::string_view s);

}  // namespace dialaug

#endif  // DIALAUG_TURN_TAKING_H_
