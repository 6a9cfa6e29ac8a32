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

#include "dialaug/normalize.h"

#include <algorithm>
#include <array>
#include <map>

#include "dialaug/corpus.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

constexpr std::array<std::string_view, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};

constexpr std::array<std::string_view, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty",
    "sixty", "seventy", "eighty", "ninety"};

constexpr uint64_t kMaxSpelled = 999'999'999;

std::string Below1000(uint64_t n) {
  std::string out;
  if (n >= 100) {
    out = std::string(kOnes[n / 100]) + " hundred";
    n %= 100;
    if (n == 0) return out;
    out += ' ';
  }
  if (n < 20) return out + std::string(kOnes[n]);
  out += kTens[n / 10];
  if (n % 10) out += " " + std::string(kOnes[n % 10]);
  return out;
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), IsAsciiDigit);
}

// Digits with optional thousands commas ("12,500"). Returns the bare digits.
std::optional<std::string> PlainInteger(std::string_view s) {
  if (AllDigits(s)) return std::string(s);
  if (s.find(',') == std::string_view::npos) return std::nullopt;
  std::string digits;
  std::size_t group = 0;
  bool first = true;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (group == 0 || group > 3 || (!first && group != 3)) return std::nullopt;
      first = false;
      group = 0;
    } else if (IsAsciiDigit(s[i])) {
      digits.push_back(s[i]);
      ++group;
    } else {
      return std::nullopt;
    }
  }
  if (s.substr(0, s.find(',')).size() > 3) return std::nullopt;
  return digits;
}

std::optional<std::string> SpellNumber(std::string_view s) {
  const std::size_t dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  auto digits = PlainInteger(whole);
  if (!digits) return std::nullopt;
  std::string out;
  if (digits->size() > 1 && (*digits)[0] == '0') {
    if (dot != std::string_view::npos) return std::nullopt;
    return SpellDigits(*digits);
  }
  if (digits->size() > 9) return std::nullopt;
  out = SpellCardinal(std::stoull(*digits));
  if (dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    if (!AllDigits(frac)) return std::nullopt;
    out += " point " + SpellDigits(frac);
  }
  return out;
}

std::optional<std::string> SpellOrdinalToken(std::string_view s) {
  if (s.size() < 3) return std::nullopt;
  const std::string suffix = ToLower(s.substr(s.size() - 2));
  const std::string_view num = s.substr(0, s.size() - 2);
  if (!AllDigits(num) || num.size() > 9) return std::nullopt;
  if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return std::nullopt;
  }
  return SpellOrdinal(std::stoull(std::string(num)));
}

struct Currency {
  std::string_view symbol;
  std::string_view major_one, major_many, minor_one, minor_many;
};

constexpr std::array<Currency, 3> kCurrencies = {{
    {"$", "dollar", "dollars", "cent", "cents"},
    {"£", "pound", "pounds", "penny", "pence"},
    {"€", "euro", "euros", "cent", "cents"},
}};

std::optional<std::string> SpellCurrency(std::string_view s) {
  for (const auto& c : kCurrencies) {
    if (s.substr(0, c.symbol.size()) != c.symbol) continue;
    const std::string_view amount = s.substr(c.symbol.size());
    const std::size_t dot = amount.find('.');
    auto whole = PlainInteger(amount.substr(0, dot));
    if (!whole || whole->size() > 9) return std::nullopt;
    const uint64_t major = std::stoull(*whole);
    std::string out = SpellCardinal(major) + " " +
                      std::string(major == 1 ? c.major_one : c.major_many);
    if (dot != std::string_view::npos) {
      const std::string_view cents = amount.substr(dot + 1);
      if (cents.size() != 2 || !AllDigits(cents)) return std::nullopt;
      const uint64_t minor = std::stoull(std::string(cents));
      if (minor > 0) {
        out += " and " + SpellCardinal(minor) + " " +
               std::string(minor == 1 ? c.minor_one : c.minor_many);
      }
    }
    return out;
  }
  return std::nullopt;
}

std::optional<std::string> MeridiemWord(std::string_view s) {
  const std::string l = ToLower(s);
  if (l == "am" || l == "a.m." || l == "a.m") return std::string("am");
  if (l == "pm" || l == "p.m." || l == "p.m") return std::string("pm");
  return std::nullopt;
}

// "7:30", "7:30pm", "19:05". Sets `is_time`.
std::optional<std::string> SpellTime(std::string_view s) {
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2) return std::nullopt;
  const std::string_view hh = s.substr(0, colon);
  if (s.size() < colon + 3) return std::nullopt;
  const std::string_view mm = s.substr(colon + 1, 2);
  if (!AllDigits(hh) || !AllDigits(mm)) return std::nullopt;
  std::optional<std::string> meridiem;
  const std::string_view rest = s.substr(colon + 3);
  if (!rest.empty()) {
    meridiem = MeridiemWord(rest);
    if (!meridiem) return std::nullopt;
  }
  const int h = std::stoi(std::string(hh));
  const int m = std::stoi(std::string(mm));
  if (h > 24 || m > 59) return std::nullopt;
  std::string out = SpellCardinal(static_cast<uint64_t>(h));
  if (m == 0) {
    if (!meridiem) out += h == 0 || h > 12 ? " hundred" : " o'clock";
  } else if (m < 10) {
    out += " oh " + std::string(kOnes[m]);
  } else {
    out += " " + SpellCardinal(static_cast<uint64_t>(m));
  }
  if (meridiem) out += " " + *meridiem;
  return out;
}

const std::map<std::string, std::string, std::less<>>& Abbreviations() {
  static const std::map<std::string, std::string, std::less<>> kMap = {
      {"Dr.", "doctor"},    {"Mr.", "mister"},     {"Mrs.", "missus"},
      {"Ms.", "miss"},      {"St.", "street"},     {"Ave.", "avenue"},
      {"Rd.", "road"},      {"Blvd.", "boulevard"}, {"Jr.", "junior"},
      {"Sr.", "senior"},    {"vs.", "versus"},     {"etc.", "et cetera"},
  };
  return kMap;
}

bool IsMarker(std::string_view tok) {
  if (tok == kBargeInToken) return true;
  for (DisfluencyType t : kAllDisfluencyTypes) {
    if (tok == MarkerToken(t)) return true;
  }
  return false;
}

std::string StripMarkers(std::string_view text) {
  std::string s(text);
  s = ReplaceAll(std::move(s), kBargeInToken, " ");
  for (DisfluencyType t : kAllDisfluencyTypes) {
    s = ReplaceAll(std::move(s), MarkerToken(t), " ");
  }
  return s;
}

bool IsLeadingPunct(char c) {
  return c == '(' || c == '"' || c == '\'' || c == '[';
}

bool IsClosingPunct(char c) {
  return IsTrailingPunct(c) || c == ')' || c == '"' || c == ']';
}

}  // namespace

std::string SpellCardinal(uint64_t n) {
  if (n > kMaxSpelled) return std::to_string(n);
  if (n < 1000) return Below1000(n);
  std::string out;
  const uint64_t millions = n / 1'000'000;
  const uint64_t thousands = (n / 1000) % 1000;
  const uint64_t rest = n % 1000;
  auto add = [&out](const std::string& part) {
    if (!out.empty()) out += ' ';
    out += part;
  };
  if (millions) add(Below1000(millions) + " million");
  if (thousands) add(Below1000(thousands) + " thousand");
  if (rest) add(Below1000(rest));
  return out;
}

std::string SpellOrdinal(uint64_t n) {
  std::string words = SpellCardinal(n);
  if (n > kMaxSpelled) return words;
  const std::size_t sp = words.rfind(' ');
  const std::string head = sp == std::string::npos ? "" : words.substr(0, sp + 1);
  std::string last = sp == std::string::npos ? words : words.substr(sp + 1);
  static const std::map<std::string, std::string> kIrregular = {
      {"one", "first"},  {"two", "second"}, {"three", "third"},
      {"five", "fifth"}, {"eight", "eighth"}, {"nine", "ninth"},
      {"twelve", "twelfth"}};
  if (auto it = kIrregular.find(last); it != kIrregular.end()) {
    last = it->second;
  } else if (last.back() == 'y') {
    last = last.substr(0, last.size() - 1) + "ieth";
  } else {
    last += "th";
  }
  return head + last;
}

std::string SpellDigits(std::string_view digits) {
  std::vector<std::string> words;
  for (char c : digits) {
    if (IsAsciiDigit(c)) words.emplace_back(kOnes[c - '0']);
  }
  return Join(words, " ");
}

std::string TextNormalizer::Normalize(std::string_view text) const {
  const std::string stripped = StripMarkers(text);
  std::vector<std::string> out;
  bool prev_time = false;
  for (const std::string& raw : SplitWords(stripped)) {
    if (IsMarker(raw)) continue;
    std::size_t b = 0, e = raw.size();
    while (b < e && IsLeadingPunct(raw[b])) ++b;
    const auto abbr = Abbreviations().find(std::string_view(raw).substr(b));
    std::string lead = raw.substr(0, b);
    std::string core, tail;
    if (abbr != Abbreviations().end()) {
      out.push_back(lead + abbr->second);
      prev_time = false;
      continue;
    }
    while (e > b && IsClosingPunct(raw[e - 1])) --e;
    // Keep the dot of "p.m." with the token.
    if (e < raw.size() && raw[e] == '.' && MeridiemWord(raw.substr(b, e - b + 1))) {
      ++e;
    }
    core = raw.substr(b, e - b);
    tail = raw.substr(e);

    std::optional<std::string> rep;
    for (const auto& rule : rules_) {
      if ((rep = rule(core))) break;
    }
    bool is_time = false;
    if (!rep && !core.empty()) {
      if ((rep = SpellTime(core))) {
        is_time = true;
      } else if ((rep = SpellCurrency(core))) {
      } else if ((rep = SpellOrdinalToken(core))) {
      } else if (core.back() == '%' &&
                 (rep = SpellNumber(std::string_view(core).substr(0, core.size() - 1)))) {
        *rep += " percent";
      } else if ((rep = SpellNumber(core))) {
      } else if (prev_time && MeridiemWord(core)) {
        rep = MeridiemWord(core);
      } else if (ToLower(core) == "a.m." || ToLower(core) == "p.m.") {
        rep = MeridiemWord(core);
      }
    }
    prev_time = is_time;
    out.push_back(lead + (rep ? *rep : core) + tail);
  }
  return Join(out, " ");
}

std::string NormalizeText(std::string_view text) {
  static const TextNormalizer kDefault;
  return kDefault.Normalize(text);
}

}  // namespace dialaug
