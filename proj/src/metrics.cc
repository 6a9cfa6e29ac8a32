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

#include "dialaug/metrics.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {

std::size_t EditDistance(const std::vector<std::string>& ref,
                         const std::vector<std::string>& hyp) {
  std::vector<std::size_t> row(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (ref[i - 1] == hyp[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[hyp.size()];
}

double Wer(const std::vector<std::string>& ref,
           const std::vector<std::string>& hyp) {
  if (ref.empty()) throw UndefinedRateError("WER of an empty reference");
  return static_cast<double>(EditDistance(ref, hyp)) /
         static_cast<double>(ref.size());
}

std::string GoalItem::Describe() const {
  if (is_request()) return "ask for the " + domain + " " + slot;
  return domain + " " + slot + " is " + *value;
}

std::vector<GoalItem> GoalItems(const Goal& goal) {
  std::vector<GoalItem> items;
  for (const auto& sg : goal.sub_goals) {
    for (const auto& [slot, value] : sg.constraints) {
      items.push_back({sg.domain, slot, value});
    }
    for (const auto& slot : sg.requests) {
      items.push_back({sg.domain, slot, std::nullopt});
    }
  }
  return items;
}

CoverageState InitCoverage(const Goal& goal) {
  CoverageState s;
  s.items = GoalItems(goal);
  for (std::size_t i = 0; i < s.items.size(); ++i) s.remaining.push_back(i);
  return s;
}

std::optional<std::vector<int>> ParseSelection(const std::string& response) {
  const std::size_t open = response.find('[');
  if (open == std::string::npos) return std::nullopt;
  const std::size_t close = response.find(']', open);
  if (close == std::string::npos) return std::nullopt;
  std::vector<int> out;
  std::string body = response.substr(open + 1, close - open - 1);
  std::replace(body.begin(), body.end(), ',', ' ');
  for (const auto& tok : SplitWords(body)) {
    if (!std::all_of(tok.begin(), tok.end(), IsAsciiDigit)) return std::nullopt;
    out.push_back(std::stoi(tok));
  }
  return out;
}

void JudgeTurnCoverage(CoverageState& state, const std::string& history,
                       const std::string& utterance, std::size_t turn_index,
                       ChatClient& judge) {
  ++state.user_turns;
  if (state.remaining.empty()) return;
  std::string listing;
  for (std::size_t k = 0; k < state.remaining.size(); ++k) {
    listing += std::to_string(k + 1) + ". " +
               state.items[state.remaining[k]].Describe() + "\n";
  }
  ChatRequest req;
  req.kind = PromptKind::kGoalAlignment;
  req.vars = {{"goal_items", listing},
              {"dial_hist", history},
              {"user_utterance", utterance}};

  std::optional<std::vector<int>> picked;
  for (int attempt = 0; attempt < 2 && !picked; ++attempt) {
    try {
      picked = ParseSelection(judge.Chat(req));
    } catch (const ClientError& e) {
      std::cerr << "warning: coverage judge failed: " << e.what() << "\n";
    }
  }
  if (!picked) {
    std::cerr << "warning: unparseable coverage selection at turn "
              << turn_index << "; treating as empty\n";
    return;
  }
  std::set<std::size_t> chosen;
  for (int n : *picked) {
    if (n >= 1 && static_cast<std::size_t>(n) <= state.remaining.size()) {
      chosen.insert(state.remaining[static_cast<std::size_t>(n) - 1]);
    }
  }
  std::vector<std::size_t> still;
  for (std::size_t item : state.remaining) {
    if (chosen.count(item)) {
      state.covered.push_back({state.user_turns, turn_index, item});
    } else {
      still.push_back(item);
    }
  }
  state.remaining = std::move(still);
}

CoverageState EvaluateCoverage(const Dialogue& d, ChatClient& judge) {
  CoverageState state = InitCoverage(d.goal);
  std::string history;
  for (const Turn& t : d.turns) {
    if (t.role == Role::kUser) {
      JudgeTurnCoverage(state, history, t.text, t.index, judge);
    }
    history += (t.role == Role::kUser ? "[User]: " : "[Assistant]: ") + t.text + "\n";
  }
  return state;
}

GaSmr ComputeGaSmr(const std::vector<CoverageState>& states) {
  GaSmr r;
  r.dialogues = states.size();
  std::size_t complete = 0, c_total = 0, c_hit = 0, q_total = 0, q_hit = 0;
  for (const auto& s : states) {
    if (s.remaining.empty()) ++complete;
    for (const auto& item : s.items) {
      (item.is_request() ? q_total : c_total)++;
    }
    for (const auto& cov : s.covered) {
      (s.items[cov.item].is_request() ? q_hit : c_hit)++;
    }
  }
  r.items = c_total + q_total;
  r.covered = c_hit + q_hit;
  auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  r.ga = ratio(complete, states.size());
  r.smr = ratio(r.covered, r.items);
  r.smr_constraints = ratio(c_hit, c_total);
  r.smr_requests = ratio(q_hit, q_total);
  return r;
}

std::vector<double> DisclosureCurve(const std::vector<CoverageState>& states) {
  std::size_t len = 0;
  std::size_t used = 0;
  for (const auto& s : states) {
    if (s.items.empty()) continue;
    ++used;
    len = std::max(len, s.user_turns);
    for (const auto& c : s.covered) len = std::max(len, c.user_turn);
  }
  std::vector<double> curve(len, 0.0);
  if (used == 0) return curve;
  for (const auto& s : states) {
    if (s.items.empty()) continue;
    std::vector<std::size_t> per_turn(len + 1, 0);
    for (const auto& c : s.covered) per_turn[c.user_turn]++;
    std::size_t cum = 0;
    for (std::size_t t = 1; t <= len; ++t) {
      cum += per_turn[t];
      curve[t - 1] += static_cast<double>(cum) / static_cast<double>(s.items.size());
    }
  }
  for (double& v : curve) v /= static_cast<double>(used);
  return curve;
}

Prf PrfCounts::Score() const {
  if (n_pred == 0 && n_gold == 0) return {1.0, 1.0, 1.0};
  Prf p;
  p.precision = n_pred == 0 ? 0.0 : static_cast<double>(tp) / n_pred;
  p.recall = n_gold == 0 ? 0.0 : static_cast<double>(tp) / n_gold;
  const double s = p.precision + p.recall;
  p.f1 = s == 0 ? 0.0 : 2 * p.precision * p.recall / s;
  return p;
}

PrfCounts SlotCounts(const SlotMap& pred, const SlotMap& gold) {
  PrfCounts c;
  c.n_pred = pred.size();
  c.n_gold = gold.size();
  for (const auto& [slot, value] : pred) {
    auto it = gold.find(slot);
    if (it != gold.end() && NormalizeValue(it->second) == NormalizeValue(value)) {
      ++c.tp;
    }
  }
  return c;
}

Prf SlotF1(const SlotMap& pred, const SlotMap& gold) {
  return SlotCounts(pred, gold).Score();
}

Prf SlotF1Micro(const std::vector<std::pair<SlotMap, SlotMap>>& pairs) {
  PrfCounts total;
  for (const auto& [pred, gold] : pairs) {
    const PrfCounts c = SlotCounts(pred, gold);
    total.tp += c.tp;
    total.n_pred += c.n_pred;
    total.n_gold += c.n_gold;
  }
  return total.Score();
}

MeanStd ComputeMeanStd(const std::vector<double>& xs) {
  MeanStd m;
  m.n = xs.size();
  if (xs.empty()) return m;
  double sum = 0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  double sq = 0;
  for (double x : xs) sq += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(sq / static_cast<double>(xs.size()));
  return m;
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ContractViolation("embedding dimension mismatch: " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw ContractViolation("cosine of a zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

SpeakerSimilarity ComputeSpeakerSimilarity(
    const std::vector<std::vector<std::vector<double>>>& per_dialogue) {
  SpeakerSimilarity out;
  std::vector<double> first, prev;
  for (const auto& vecs : per_dialogue) {
    std::vector<const std::vector<double>*> kept;
    for (const auto& v : vecs) {
      if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
        ++out.excluded_zero;
      } else {
        kept.push_back(&v);
      }
    }
    if (kept.size() < 2) {
      ++out.skipped_dialogues;
      continue;
    }
    for (std::size_t i = 1; i < kept.size(); ++i) {
      first.push_back(Cosine(*kept[0], *kept[i]));
      prev.push_back(Cosine(*kept[i - 1], *kept[i]));
    }
  }
  if (out.excluded_zero > 0) {
    std::cerr << "warning: " << out.excluded_zero
              << " zero embedding(s) excluded from speaker similarity\n";
  }
  out.sim_first = ComputeMeanStd(first);
  out.sim_prev = ComputeMeanStd(prev);
  return out;
}

nlohmann::json DatasetStats(const std::vector<Dialogue>& corpus) {
  using nlohmann::json;
  std::size_t utterances = 0, user_utts = 0, words = 0;
  double duration = 0;
  std::set<std::string> speakers;
  std::size_t ct_turns = 0, ct_errors = 0;
  std::set<std::pair<std::string, int>> ct_groups;
  std::size_t bargeins = 0;
  std::map<std::string, std::size_t> by_type, by_style, by_cell, dis_by_type,
      emo;
  std::size_t disfluent = 0;
  for (const auto& d : corpus) {
    if (d.user_speaker) speakers.insert(d.user_speaker->speaker_id);
    if (d.assistant_speaker) speakers.insert(d.assistant_speaker->speaker_id);
    for (const auto& t : d.turns) {
      ++utterances;
      if (t.role == Role::kUser) ++user_utts;
      words += CountWords(t.text);
      if (t.duration_s) duration += *t.duration_s;
      if (t.crossturn) {
        ++ct_turns;
        ct_groups.insert({d.dialogue_id, t.crossturn->group});
        if (t.crossturn->is_error) ++ct_errors;
      }
      if (t.bargein && t.role == Role::kAssistant) {
        ++bargeins;
        by_type[std::string(ToString(t.bargein->type))]++;
        by_style[std::string(ToString(t.bargein->style))]++;
        by_cell[BargeInSubtype(t.bargein->type, t.bargein->style)]++;
      }
      if (!t.disfluency.empty()) ++disfluent;
      for (const auto& m : t.disfluency) dis_by_type[std::string(ToString(m.type))]++;
      if (t.emotion && t.role == Role::kUser) emo[std::string(ToString(*t.emotion))]++;
    }
  }
  std::size_t dis_total = 0;
  for (const auto& [k, v] : dis_by_type) dis_total += v;
  return json{
      {"dialogues", corpus.size()},
      {"utterances", utterances},
      {"user_utterances", user_utts},
      {"avg_words_per_utterance",
       utterances == 0 ? 0.0 : static_cast<double>(words) / utterances},
      {"speakers", speakers.size()},
      {"total_duration_s", duration},
      {"total_duration_h", duration / 3600.0},
      {"crossturn", {{"slots", ct_groups.size()},
                     {"turns", ct_turns},
                     {"errors", ct_errors}}},
      {"bargein", {{"count", bargeins},
                   {"by_type", by_type},
                   {"by_style", by_style},
                   {"by_cell", by_cell}}},
      {"disfluency", {{"count", dis_total},
                      {"utterances", disfluent},
                      {"by_type", dis_by_type}}},
      {"emotion", {{"by_label", emo}}},
  };
}

}  // namespace dialaug
