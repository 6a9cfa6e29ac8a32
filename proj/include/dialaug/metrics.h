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

#ifndef DIALAUG_METRICS_H_
#define DIALAUG_METRICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dialaug/clients.h"
#include "dialaug/corpus.h"
#include "json.hpp"

namespace dialaug {

// ---- WER ------------------------------------------------------------------

// Word-level Levenshtein distance with unit costs.
std::size_t EditDistance(const std::vector<std::string>& ref,
                         const std::vector<std::string>& hyp);

// Throws UndefinedRateError when `ref` is empty.
double Wer(const std::vector<std::string>& ref,
           const std::vector<std::string>& hyp);

// ---- Goal coverage ----------------------------------------------------------

struct GoalItem {
  std::string domain;
  std::string slot;
  std::optional<std::string> value;  // nullopt for request items

  bool is_request() const { return !value.has_value(); }
  // One-line rendering used in the judge prompt.
  std::string Describe() const;
};

std::vector<GoalItem> GoalItems(const Goal& goal);

struct Coverage {
  std::size_t user_turn = 0;  // 1-based ordinal among user turns
  std::size_t turn_index = 0;
  std::size_t item = 0;       // index into CoverageState::items
};

struct CoverageState {
  std::vector<GoalItem> items;
  std::vector<std::size_t> remaining;  // ascending item indices
  std::vector<Coverage> covered;
  std::size_t user_turns = 0;
};

CoverageState InitCoverage(const Goal& goal);

// Parses "[1, 3]" style selections; nullopt when no bracketed list of
// integers is present.
std::optional<std::vector<int>> ParseSelection(const std::string& response);

// Marks the items the judge selects (1-based over `remaining`). Malformed
// responses are retried once and then treated as an empty selection.
void JudgeTurnCoverage(CoverageState& state, const std::string& history,
                       const std::string& utterance, std::size_t turn_index,
                       ChatClient& judge);

// Runs JudgeTurnCoverage over every user turn of `d`.
CoverageState EvaluateCoverage(const Dialogue& d, ChatClient& judge);

struct GaSmr {
  std::size_t dialogues = 0;
  double ga = 0;
  double smr = 0;
  double smr_constraints = 0;
  double smr_requests = 0;
  std::size_t items = 0;
  std::size_t covered = 0;
};

GaSmr ComputeGaSmr(const std::vector<CoverageState>& states);

// Entry t is the mean over dialogues of the fraction of goal items covered
// by user turn t + 1. Dialogues shorter than the curve carry their final
// value forward; dialogues without items are skipped.
std::vector<double> DisclosureCurve(const std::vector<CoverageState>& states);

// ---- Slot F1 ----------------------------------------------------------------

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct PrfCounts {
  std::size_t tp = 0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;

  Prf Score() const;
};

PrfCounts SlotCounts(const SlotMap& pred, const SlotMap& gold);
Prf SlotF1(const SlotMap& pred, const SlotMap& gold);
// Micro-average over (pred, gold) pairs.
Prf SlotF1Micro(const std::vector<std::pair<SlotMap, SlotMap>>& pairs);

// ---- Speaker similarity ---------------------------------------------------

struct MeanStd {
  double mean = 0;
  double std = 0;  // population standard deviation
  std::size_t n = 0;
};

MeanStd ComputeMeanStd(const std::vector<double>& xs);

// Throws ContractViolation on dimension mismatch.
double Cosine(const std::vector<double>& a, const std::vector<double>& b);

struct SpeakerSimilarity {
  MeanStd sim_first;  // cos(v_0, v_i), i >= 1
  MeanStd sim_prev;   // cos(v_{i-1}, v_i)
  std::size_t excluded_zero = 0;
  std::size_t skipped_dialogues = 0;
};

// `per_dialogue` holds each dialogue's user-turn vectors in turn order.
// Zero vectors are dropped before pairing; dialogues left with fewer than two
// vectors are skipped.
SpeakerSimilarity ComputeSpeakerSimilarity(
    const std::vector<std::vector<std::vector<double>>>& per_dialogue);

// ---- Corpus statistics -----------------------------------------------------

nlohmann::json DatasetStats(const std::vector<Dialogue>& corpus);

}  // namespace dialaug

#endif  // DIALAUG_METRICS_H_
