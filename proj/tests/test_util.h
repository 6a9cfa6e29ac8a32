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

// Shared generators and builders for the test binaries.

#ifndef DIALAUG_TESTS_TEST_UTIL_H_
#define DIALAUG_TESTS_TEST_UTIL_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dialaug/corpus.h"

namespace dialaug::testing {

inline const std::vector<std::string>& Vocabulary() {
  static const std::vector<std::string> kWords = {
      "i",      "need",  "a",       "table",  "for",      "two",    "at",
      "the",    "hotel", "please",  "book",   "cheap",    "train",  "to",
      "London", "on",    "Friday",  "thanks", "could",    "you",    "find",
      "me",     "one",   "near",    "centre", "want",     "that's", "great",
      "Paris",  "with",  "parking", "and",    "wifi",     "tomorrow"};
  return kWords;
}

// Random sentence of `n` vocabulary words; some words pick up trailing
// punctuation and the first word is capitalized.
inline std::string RandomUtterance(std::mt19937_64& gen, std::size_t n) {
  const auto& vocab = Vocabulary();
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> punct(0, 9);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string w = vocab[pick(gen)];
    if (i == 0 && !w.empty()) w[0] = static_cast<char>(std::toupper(w[0]));
    const int p = punct(gen);
    if (i + 1 == n) {
      w += p < 5 ? "." : (p < 8 ? "?" : "!");
    } else if (p == 0) {
      w += ",";
    }
    if (!out.empty()) out += " ";
    out += w;
  }
  return out;
}

inline Turn MakeTurnAt(std::size_t index, Role role, std::string text) {
  Turn t;
  t.index = index;
  t.role = role;
  t.text = text;
  t.tagged = std::move(text);
  return t;
}

// Adds a span over the first occurrence of `value` in turn `t`.
inline void AddSpan(Turn& t, const std::string& slot, const std::string& value) {
  const std::size_t at = t.text.find(value);
  if (at == std::string::npos) throw std::logic_error("value not in text: " + value);
  t.slot_spans.push_back({slot, at, at + value.size()});
}

inline Goal SimpleGoal() {
  Goal g;
  g.text = "Book a cheap hotel.";
  SubGoal sg;
  sg.domain = "hotel";
  sg.intent = "book";
  sg.constraints = {{"pricerange", "cheap"}};
  sg.requests = {"phone"};
  g.sub_goals.push_back(sg);
  return g;
}

// Alternating user/assistant dialogue built from the given texts.
inline Dialogue MakeDialogue(const std::string& id, const std::vector<std::string>& texts) {
  Dialogue d;
  d.dialogue_id = id;
  d.source = "generic";
  d.goal = SimpleGoal();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    d.turns.push_back(MakeTurnAt(i, i % 2 == 0 ? Role::kUser : Role::kAssistant, texts[i]));
  }
  return d;
}

}  // namespace dialaug::testing

#endif  // DIALAUG_TESTS_TEST_UTIL_H_
