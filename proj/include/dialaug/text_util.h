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

#ifndef DIALAUG_TEXT_UTIL_H_
#define DIALAUG_TEXT_UTIL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dialaug {

// A whitespace-delimited word and its byte offsets [start, end).
struct WordSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

std::vector<WordSpan> SplitWordSpans(std::string_view text);
std::vector<std::string> SplitWords(std::string_view text);
std::size_t CountWords(std::string_view text);

std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);
// Lowercase, trim, and collapse internal whitespace runs to one space.
std::string NormalizeValue(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);
std::string ReplaceAll(std::string s, std::string_view from, std::string_view to);

bool IsTrailingPunct(char c);
// Drops trailing sentence punctuation (.,!?;:) from `s`.
std::string StripTrailingPunct(std::string_view s);

std::size_t Utf8Length(std::string_view s);

bool IsAsciiDigit(char c);
bool IsAsciiAlpha(char c);
bool IsAsciiSpace(char c);

}  // namespace dialaug

#endif  // DIALAUG_TEXT_UTIL_H_
