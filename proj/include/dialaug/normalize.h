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

#ifndef DIALAUG_NORMALIZE_H_
#define DIALAUG_NORMALIZE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialaug {

// Spells out 0..999,999,999 ("one hundred twenty three"). Larger values
// are returned as digits.
std::string SpellCardinal(uint64_t n);
std::string SpellOrdinal(uint64_t n);
// "0123" -> "zero one two three".
std::string SpellDigits(std::string_view digits);

// Token-level rule engine for TTS input: cardinals, ordinals, clock times,
// currency and a fixed abbreviation list. Disfluency markers and the
// barge-in token are removed; filler words stay.
class TextNormalizer {
 public:
  // Returns a replacement for a whitespace-delimited token (with its
  // surrounding punctuation already split off), or nullopt to fall through.
  using Rule = std::function<std::optional<std::string>(std::string_view)>;

  // Extension rules run before the built-in ones, in insertion order.
  void AddRule(Rule rule) { rules_.push_back(std::move(rule)); }

  std::string Normalize(std::string_view text) const;

 private:
  std::vector<Rule> rules_;
};

std::string NormalizeText(std::string_view text);

}  // namespace dialaug

#endif  // DIALAUG_NORMALIZE_H_
