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

#include "dialaug/turn_taking.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "dialaug/corpus_json.h"
#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

constexpr TurnClass kFireOrder[2] = {TurnClass::kTurnEnd, TurnClass::kBargeIn};

double Threshold(const StrategyConfig& cfg, TurnClass c) {
  return c == TurnClass::kTurnEnd ? cfg.t_turnend : cfg.t_bargein;
}

double Percent(std::size_t k, std::size_t n) {
  return n == 0 ? 0.0 : 100.0 * static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace

double ProbFrame::p(TurnClass c) const {
  switch (c) {
    case TurnClass::kListen: return p_listen;
    case TurnClass::kTurnEnd: return p_turnend;
    case TurnClass::kBargeIn: return p_bargein;
  }
  return 0.0;
}

void ValidateFrame(const ProbFrame& f) {
  for (double p : {f.p_listen, f.p_turnend, f.p_bargein}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ContractViolation("frame probability outside [0, 1]");
    }
  }
  if (std::abs(f.p_listen + f.p_turnend + f.p_bargein - 1.0) > 1e-6) {
    throw ContractViolation("frame probabilities do not sum to 1");
  }
}

TurnClass Argmax(const ProbFrame& f) {
  TurnClass best = TurnClass::kListen;
  if (f.p_turnend > f.p(best)) best = TurnClass::kTurnEnd;
  if (f.p_bargein > f.p(best)) best = TurnClass::kBargeIn;
  return best;
}

StrategyConfig StrategyConfig::Defaults(Strategy s) {
  StrategyConfig c;
  c.strategy = s;
  switch (s) {
    case Strategy::kArgmax:
      c.t_turnend = 0.0;
      c.t_bargein = 0.0;
      break;
    case Strategy::kProbThreshold:
      c.t_turnend = 5.0;
      c.t_bargein = 0.5;
      break;
    case Strategy::kTailThreshold:
      c.t_turnend = 2.7;
      c.t_bargein = 0.3;
      break;
    case Strategy::kListenRelative:
      c.t_turnend = 3.0;
      c.t_bargein = 0.3;
      break;
    case Strategy::kLinearWeighted:
      c.t_turnend = 0.45;
      c.t_bargein = 0.05;
      break;
  }
  return c;
}

void StrategyConfig::Validate() const {
  if (window < 1) throw ConfigError("window must be >= 1");
  if (strategy == Strategy::kArgmax) return;
  if (!(t_turnend > 0) || !(t_bargein > 0)) {
    throw ConfigError("thresholds must be positive");
  }
  if (!(t_bargein < t_turnend)) {
    throw ConfigError("t_bargein must be lower than t_turnend");
  }
}

StreamState::StreamState(const StrategyConfig& cfg) : cfg_(cfg) {
  cfg_.Validate();
}

double StreamState::TailScore(TurnClass c) const {
  std::size_t best_len = 0;
  double best_sum = 0.0;
  std::size_t len = 0;
  double sum = 0.0;
  for (const ProbFrame& f : window_) {
    if (Argmax(f) == c) {
      ++len;
      sum += f.p(c);
      if (len > best_len || (len == best_len && sum > best_sum)) {
        best_len = len;
        best_sum = sum;
      }
    } else {
      len = 0;
      sum = 0.0;
    }
  }
  return best_sum;
}

FireDecision StreamState::Step(const ProbFrame& frame) {
  if (decision_.fired) throw ContractViolation("step after fire");
  ValidateFrame(frame);
  const std::size_t w = static_cast<std::size_t>(cfg_.window);

  // Linear weights shift down by one when the oldest frame leaves, which
  // subtracts the old plain sum; the newcomer takes the top weight.
  const bool full = window_.size() == w;
  for (int k = 0; k < 2; ++k) {
    const TurnClass c = kFireOrder[k];
    const double p = frame.p(c);
    if (full) {
      const ProbFrame& old = window_.front();
      weighted_[k] -= plain_[k];
      plain_[k] -= old.p(c);
      relative_[k] -= std::max(0.0, old.p(c) - old.p_listen);
    }
    plain_[k] += p;
    relative_[k] += std::max(0.0, p - frame.p_listen);
    weighted_[k] += static_cast<double>(full ? w : window_.size() + 1) * p;
  }
  if (full) window_.pop_front();
  window_.push_back(frame);
  const std::size_t index = seen_++;

  const double m = static_cast<double>(window_.size());
  const double norm = m * (m + 1) / 2.0;
  for (int k = 0; k < 2; ++k) {
    const TurnClass c = kFireOrder[k];
    bool fire = false;
    switch (cfg_.strategy) {
      case Strategy::kArgmax:
        fire = Argmax(frame) == c;
        break;
      case Strategy::kProbThreshold:
        fire = plain_[k] > Threshold(cfg_, c);
        break;
      case Strategy::kTailThreshold:
        fire = TailScore(c) > Threshold(cfg_, c);
        break;
      case Strategy::kListenRelative:
        fire = relative_[k] > Threshold(cfg_, c);
        break;
      case Strategy::kLinearWeighted:
        fire = weighted_[k] / norm > Threshold(cfg_, c);
        break;
    }
    if (fire) {
      decision_ = {true, c, index};
      break;
    }
  }
  return decision_;
}

FireDecision RunStream(const StrategyConfig& cfg,
                       const std::vector<ProbFrame>& frames) {
  StreamState s(cfg);
  for (const auto& f : frames) {
    if (s.Step(f).fired) break;
  }
  return s.decision();
}

std::vector<TurnClass> LabelFrames(std::size_t n_tokens, TurnClass turn_type) {
  if (n_tokens == 0) throw ContractViolation("label_frames needs n >= 1");
  if (turn_type == TurnClass::kListen) {
    throw ContractViolation("turn type must be turnend or bargein");
  }
  std::vector<TurnClass> labels(n_tokens, turn_type);
  const std::size_t start = TriggerStart(n_tokens);
  std::fill(labels.begin(), labels.begin() + start, TurnClass::kListen);
  return labels;
}

std::size_t TriggerStart(std::size_t n_frames) {
  return n_frames > 6 ? n_frames - 6 : 0;
}

Outcome ClassifyOutcome(const FireDecision& fire, TurnClass truth,
                        std::size_t trigger_start) {
  if (!fire.fired) return Outcome::kMissed;
  if (fire.frame < trigger_start) return Outcome::kEarly;
  return fire.cls == truth ? Outcome::kCorrect : Outcome::kConfused;
}

OutcomeReport EvaluateSet(const std::vector<LabeledStream>& streams,
                          const StrategyConfig& cfg) {
  std::size_t counts[2][4] = {};
  for (const auto& s : streams) {
    if (s.truth == TurnClass::kListen) {
      throw ContractViolation("stream '" + s.id + "' has listen ground truth");
    }
    const FireDecision d = RunStream(cfg, s.frames);
    const Outcome o = ClassifyOutcome(d, s.truth, TriggerStart(s.frames.size()));
    counts[s.truth == TurnClass::kTurnEnd ? 0 : 1][static_cast<int>(o)]++;
  }
  OutcomeReport r;
  r.config = cfg;
  OutcomeRow* rows[2] = {&r.turnend, &r.bargein};
  for (int k = 0; k < 2; ++k) {
    const std::size_t n = counts[k][0] + counts[k][1] + counts[k][2] + counts[k][3];
    rows[k]->n = n;
    rows[k]->correct = Percent(counts[k][0], n);
    rows[k]->early = Percent(counts[k][1], n);
    rows[k]->confused = Percent(counts[k][2], n);
    rows[k]->missed = Percent(counts[k][3], n);
  }
  return r;
}

std::vector<OutcomeReport> SweepThresholds(
    const std::vector<LabeledStream>& streams, StrategyConfig base,
    const std::vector<double>& t_turnend, const std::vector<double>& t_bargein) {
  std::vector<OutcomeReport> out;
  for (double tt : t_turnend) {
    for (double tb : t_bargein) {
      if (!(tb < tt)) continue;
      base.t_turnend = tt;
      base.t_bargein = tb;
      out.push_back(EvaluateSet(streams, base));
    }
  }
  return out;
}

nlohmann::json ReportToJson(const OutcomeReport& r) {
  auto row = [](const OutcomeRow& x) {
    return nlohmann::json{{"n", x.n},
                          {"correct", x.correct},
                          {"early", x.early},
                          {"confused", x.confused},
                          {"missed", x.missed},
                          {"binary", x.binary()}};
  };
  return {{"strategy", ToString(r.config.strategy)},
          {"window", r.config.window},
          {"t_turnend", r.config.t_turnend},
          {"t_bargein", r.config.t_bargein},
          {"turn_end", row(r.turnend)},
          {"barge_in", row(r.bargein)}};
}

std::string FormatReportTable(const std::vector<OutcomeReport>& reports) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-16s %-9s %7s %7s %7s %7s %7s %8s\n",
                "strategy", "truth", "correct", "early", "confus", "missed",
                "binary", "T_T/T_B");
  out << buf;
  for (const auto& r : reports) {
    const OutcomeRow* rows[2] = {&r.turnend, &r.bargein};
    const char* names[2] = {"turn-end", "barge-in"};
    for (int k = 0; k < 2; ++k) {
      std::snprintf(buf, sizeof(buf),
                    "%-16s %-9s %7.1f %7.1f %7.1f %7.1f %7.1f %g/%g\n",
                    std::string(ToString(r.config.strategy)).c_str(), names[k],
                    rows[k]->correct, rows[k]->early, rows[k]->confused,
                    rows[k]->missed, rows[k]->binary(), r.config.t_turnend,
                    r.config.t_bargein);
      out << buf;
    }
  }
  return out.str();
}

std::vector<LabeledStream> ReadStreams(const std::filesystem::path& path) {
  std::map<std::string, std::size_t> where;
  std::vector<LabeledStream> streams;
  std::vector<std::vector<std::pair<double, ProbFrame>>> frames;
  for (const Json& row : ReadJsonDocuments(path)) {
    const std::string id = row.at("stream").is_string()
                               ? row.at("stream").get<std::string>()
                               : row.at("stream").dump();
    auto [it, inserted] = where.emplace(id, streams.size());
    if (inserted) {
      streams.push_back({id, {}, ParseTurnClass(row.at("truth").get<std::string>())});
      frames.emplace_back();
    }
    ProbFrame f{row.at("p_listen").get<double>(), row.at("p_turnend").get<double>(),
                row.at("p_bargein").get<double>()};
    ValidateFrame(f);
    frames[it->second].emplace_back(row.value("t", 0.0), f);
  }
  for (std::size_t i = 0; i < streams.size(); ++i) {
    std::stable_sort(frames[i].begin(), frames[i].end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [t, f] : frames[i]) streams[i].frames.push_back(f);
  }
  return streams;
}

std::string_view ToString(TurnClass c) {
  switch (c) {
    case TurnClass::kListen: return "listen";
    case TurnClass::kTurnEnd: return "turnend";
    case TurnClass::kBargeIn: return "bargein";
  }
  return "";
}

std::string_view ToString(Strategy s) {
  switch (s) {
    case Strategy::kArgmax: return "argmax";
    case Strategy::kProbThreshold: return "prob_threshold";
    case Strategy::kTailThreshold: return "tail_threshold";
    case Strategy::kListenRelative: return "listen_relative";
    case Strategy::kLinearWeighted: return "linear_weighted";
  }
  return "";
}

std::string_view ToString(Outcome o) {
  switch (o) {
    case Outcome::kCorrect: return "correct";
    case Outcome::kEarly: return "early";
    case Outcome::kConfused: return "confused";
    case Outcome::kMissed: return "missed";
  }
  return "";
}

TurnClass ParseTurnClass(std::string_view s) {
  std::string k = ToLower(Trim(s));
  k.erase(std::remove_if(k.begin(), k.end(),
                         [](char c) { return c == '_' || c == '-'; }),
          k.end());
  if (k == "listen") return TurnClass::kListen;
  if (k == "turnend") return TurnClass::kTurnEnd;
  if (k == "bargein") return TurnClass::kBargeIn;
  throw Error("unknown turn class '" + std::string(s) + "'");
}

Strategy ParseStrategy(std::string_view s) {
  const std::string k = ToLower(Trim(s));
  for (Strategy x : {Strategy::kArgmax, Strategy::kProbThreshold,
                     Strategy::kTailThreshold, Strategy::kListenRelative,
                     Strategy::kLinearWeighted}) {
    if (k == ToString(x)) return x;
  }
  throw ConfigError("unknown strategy '" + std::string(s) + "'");
}

}  // namespace dialaug
