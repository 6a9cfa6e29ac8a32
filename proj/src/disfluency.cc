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

#include "dialaug/disfluency.h"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

bool IsAlnum(char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c); }

bool Overlaps(const std::vector<SlotSpan>& taken, std::size_t s, std::size_t e) {
  for (const auto& sp : taken) {
    if (s < sp.end && sp.start < e) return true;
  }
  return false;
}

// Finds `value` in `text`, preferring occurrences at or after `from`, never
// overlapping `taken`.
std::optional<std::size_t> Relocate(const std::string& value,
                                    const std::string& text, std::size_t from,
                                    const std::vector<SlotSpan>& taken) {
  if (value.empty()) return std::nullopt;
  for (std::size_t start : {from, std::size_t{0}}) {
    for (std::size_t p = text.find(value, start); p != std::string::npos;
         p = text.find(value, p + 1)) {
      if (!Overlaps(taken, p, p + value.size())) return p;
    }
  }
  return std::nullopt;
}

void WarnDrop(const Turn& t, const SlotSpan& sp) {
  std::cerr << "warning: turn " << t.index << ": slot span '" << sp.slot
            << "' lost during disfluency injection\n";
}

// Spans after a pure insertion of `len` bytes at `at`.
std::vector<SlotSpan> ShiftSpans(const Turn& t, const std::string& new_text,
                                 std::size_t at, std::size_t len) {
  std::vector<SlotSpan> out;
  for (const auto& sp : t.slot_spans) {
    if (sp.start >= at) {
      out.push_back({sp.slot, sp.start + len, sp.end + len});
    } else if (sp.end <= at) {
      out.push_back(sp);
    } else {
      const std::string value = t.text.substr(sp.start, sp.end - sp.start);
      if (auto p = Relocate(value, new_text, at + len, out)) {
        out.push_back({sp.slot, *p, *p + value.size()});
      } else {
        WarnDrop(t, sp);
      }
    }
  }
  return out;
}

std::vector<SlotSpan> RelocateSpans(const Turn& t, const std::string& new_text,
                                    std::size_t prefer_from) {
  std::vector<SlotSpan> out;
  for (const auto& sp : t.slot_spans) {
    const std::string value = t.text.substr(sp.start, sp.end - sp.start);
    if (auto p = Relocate(value, new_text, prefer_from, out)) {
      out.push_back({sp.slot, *p, *p + value.size()});
    } else {
      WarnDrop(t, sp);
    }
  }
  return out;
}

const SlotSpan* SpanAtWord(const Turn& t, std::size_t position) {
  const auto ranges = SlotWordRanges(t);
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].first == position) return &t.slot_spans[i];
  }
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].first <= position && position <= ranges[i].second) {
      return &t.slot_spans[i];
    }
  }
  return nullptr;
}

std::string DropOneTrailingSpace(std::string s) {
  if (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string DropOneLeadingSpace(std::string s) {
  if (!s.empty() && s.front() == ' ') s.erase(0, 1);
  return s;
}

struct Separator {
  std::size_t pos = std::string::npos;
  std::size_t len = 0;
};

Separator FindFirst(const std::string& s, std::size_t from,
                    std::initializer_list<std::string_view> seps) {
  Separator best;
  for (auto sep : seps) {
    const std::size_t p = s.find(sep, from);
    if (p == std::string::npos) continue;
    if (p < best.pos || (p == best.pos && sep.size() > best.len)) {
      best = {p, sep.size()};
    }
  }
  return best;
}

std::optional<std::string> InjectPrefix(Turn& t, DisfluencyType type,
                                        std::size_t position, Rng& rng) {
  const auto words = SplitWordSpans(t.text);
  const auto& fillers = FillerInventory(type);
  const std::string& filler = fillers[rng.Index(fillers.size())];
  const std::size_t at = words[position].start;
  const std::string head = t.text.substr(0, at);
  const std::string tail = t.text.substr(at);
  const std::string new_text = head + filler + " " + tail;
  t.slot_spans = ShiftSpans(t, new_text, at, filler.size() + 1);
  t.tagged = head + std::string(MarkerToken(type)) + " " + filler + " " + tail;
  t.text = new_text;
  t.disfluency.push_back({type, position, filler, std::nullopt, std::nullopt});
  return std::nullopt;
}

std::optional<std::string> InjectRepetition(Turn& t, std::size_t position,
                                            Rng& rng) {
  const auto words = SplitWordSpans(t.text);
  const std::size_t len = position >= 1 ? 1 + rng.Index(2) : 1;
  const std::size_t first = position + 1 - len;
  const std::size_t at = words[first].start;
  const std::string unit = t.text.substr(at, words[position].end - at);
  const std::string core = StripTrailingPunct(unit);
  if (core.empty()) return "repeated unit is only punctuation";
  const std::string sep = IsAlnum(core.back()) ? ", " : " ";
  const std::string head = t.text.substr(0, at);
  const std::string tail = t.text.substr(at);
  const std::string new_text = head + core + sep + tail;
  t.slot_spans = ShiftSpans(t, new_text, at, core.size() + sep.size());
  t.tagged = head + core + " " + std::string(MarkerToken(DisfluencyType::kREP)) +
             " " + tail;
  t.text = new_text;
  t.disfluency.push_back(
      {DisfluencyType::kREP, position, core, std::nullopt, std::nullopt});
  return std::nullopt;
}

std::optional<std::string> InjectCorrection(Turn& t, std::size_t position,
                                            ChatClient& gen) {
  const SlotSpan* span = SpanAtWord(t, position);
  if (!span) return "COR target is not a slot value";
  const std::string gold = t.text.substr(span->start, span->end - span->start);
  ChatRequest req;
  req.kind = PromptKind::kSelfCorrection;
  req.vars = {{"utterance", t.text}, {"slot_name", span->slot}, {"slot_value", gold}};
  const std::string resp = Trim(gen.Chat(req));

  std::size_t cp = 0;
  while (cp < resp.size() && cp < t.text.size() && resp[cp] == t.text[cp]) ++cp;
  while (cp > 0 && resp[cp - 1] != ' ') --cp;
  Separator sep = FindFirst(resp, cp, {"— ", "- ", "—", "...", "…"});
  if (sep.pos == std::string::npos) sep = FindFirst(resp, cp, {", "});
  if (sep.pos == std::string::npos) return "no correction separator in output";
  const std::size_t sep_end = sep.pos + sep.len;
  const std::size_t gold_pos = resp.find(gold, sep_end);
  if (gold_pos == std::string::npos) return "output lacks the correct value after the correction";
  const std::string wrong = Trim(resp.substr(cp, sep.pos - cp));
  if (wrong.empty()) return "no misspoken value before the correction";
  if (wrong == gold) return "misspoken value equals the correct value";

  const std::string head = DropOneTrailingSpace(resp.substr(0, sep_end));
  const std::string rest = DropOneLeadingSpace(resp.substr(sep_end));
  const std::size_t gold_in_rest = gold_pos - (resp.size() - rest.size());
  const std::string tagged =
      head + " " + std::string(MarkerToken(DisfluencyType::kCOR)) + " " + rest;
  const std::string new_text = RenderSurface(tagged);
  const std::string inserted = head.substr(cp) + " " + rest.substr(0, gold_in_rest);

  t.slot_spans = RelocateSpans(t, new_text, head.size() + 1);
  t.tagged = tagged;
  t.text = new_text;
  t.disfluency.push_back({DisfluencyType::kCOR, position, inserted, gold, wrong});
  return std::nullopt;
}

std::optional<std::string> InjectRestart(Turn& t, std::size_t position,
                                         ChatClient& gen) {
  const auto words = SplitWords(t.text);
  ChatRequest req;
  req.kind = PromptKind::kRestart;
  req.vars = {{"utterance", t.text},
              {"position", std::to_string(position + 1)},
              {"word_at_position", StripTrailingPunct(words[position])}};
  const std::string resp = Trim(gen.Chat(req));

  const Separator sep = FindFirst(resp, 0, {"...", "…", "—", "- "});
  if (sep.pos == std::string::npos) return "no restart separator in output";
  const std::size_t sep_end = sep.pos + sep.len;
  // Walk back over at most five words, stopping at a sentence boundary.
  std::size_t frag_start = sep.pos;
  int n_words = 0;
  while (frag_start > 0 && n_words < 5) {
    std::size_t p = frag_start;
    while (p > 0 && resp[p - 1] == ' ') --p;
    if (p == 0) break;
    const char prev = resp[p - 1];
    if ((prev == '.' || prev == '!' || prev == '?') && p < frag_start) break;
    std::size_t w = p;
    while (w > 0 && resp[w - 1] != ' ') --w;
    frag_start = w;
    ++n_words;
  }
  if (n_words == 0) return "empty restart fragment";
  const std::string fragment = resp.substr(frag_start, sep_end - frag_start);
  const std::string rest = DropOneLeadingSpace(resp.substr(sep_end));
  if (Trim(rest).empty()) return "nothing after the restart";
  for (const auto& [slot, value] : SpanValues(t)) {
    if (rest.find(value) == std::string::npos) {
      return "restarted sentence lost slot value '" + value + "'";
    }
  }
  const std::string head = DropOneTrailingSpace(resp.substr(0, frag_start) + fragment);
  const std::string tagged =
      head + " " + std::string(MarkerToken(DisfluencyType::kRST)) + " " + rest;
  const std::string new_text = RenderSurface(tagged);

  t.slot_spans = RelocateSpans(t, new_text, head.size() + 1);
  t.tagged = tagged;
  t.text = new_text;
  t.disfluency.push_back({DisfluencyType::kRST, position,
                          DropOneTrailingSpace(fragment) + " ", std::nullopt,
                          std::nullopt});
  return std::nullopt;
}

}  // namespace

void DisfluencyConfig::Validate() const {
  if (!(b > 0 && b < 1)) throw ConfigError("disfluency b must be in (0, 1)");
  if (slot_window_words < 0) throw ConfigError("slot_window_words must be >= 0");
  if (!(p_slot_local >= 0 && p_slot_local <= 1)) {
    throw ConfigError("p_slot_local must be in [0, 1]");
  }
}

const std::vector<std::string>& FillerInventory(DisfluencyType type) {
  static const std::vector<std::string> kFP = {"uh,", "um,"};
  static const std::vector<std::string> kDM = {"well,", "you know,", "I mean,"};
  static const std::vector<std::string> kEDIT = {"I mean,", "sorry,", "rather,"};
  switch (type) {
    case DisfluencyType::kFP: return kFP;
    case DisfluencyType::kDM: return kDM;
    case DisfluencyType::kEDIT: return kEDIT;
    default: break;
  }
  throw ContractViolation("no filler inventory for " + std::string(ToString(type)));
}

double DisfluencyProbability(std::size_t num_words, double b) {
  return 1.0 - std::pow(b, static_cast<double>(num_words));
}

std::optional<DisfluencyType> SampleAndType(const Turn& t,
                                            const DisfluencyConfig& cfg,
                                            Rng& rng) {
  const double p = DisfluencyProbability(CountWords(t.text), cfg.b);
  if (!rng.Bernoulli(p)) return std::nullopt;
  return kAllDisfluencyTypes[rng.Index(kAllDisfluencyTypes.size())];
}

std::vector<std::pair<std::size_t, std::size_t>> SlotWordRanges(const Turn& t) {
  const auto words = SplitWordSpans(t.text);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& sp : t.slot_spans) {
    std::size_t first = words.size(), last = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].start < sp.end && sp.start < words[i].end) {
        first = std::min(first, i);
        last = std::max(last, i);
      }
    }
    if (first == words.size()) first = last = 0;
    out.emplace_back(first, last);
  }
  return out;
}

std::size_t ChoosePosition(const Turn& t, DisfluencyType& type,
                           const DisfluencyConfig& cfg, Rng& rng) {
  const std::size_t n = CountWords(t.text);
  if (n == 0) throw ContractViolation("cannot place a disfluency in an empty turn");
  const auto ranges = SlotWordRanges(t);
  if (type == DisfluencyType::kCOR) {
    if (!ranges.empty()) return ranges[rng.Index(ranges.size())].first;
    static constexpr std::array<DisfluencyType, 5> kOthers = {
        DisfluencyType::kFP, DisfluencyType::kDM, DisfluencyType::kEDIT,
        DisfluencyType::kREP, DisfluencyType::kRST};
    type = kOthers[rng.Index(kOthers.size())];
    std::cerr << "info: turn " << t.index << ": COR on a slotless turn, using "
              << ToString(type) << "\n";
  }
  if (!ranges.empty() && rng.Bernoulli(cfg.p_slot_local)) {
    std::vector<bool> near(n, false);
    const std::size_t w = static_cast<std::size_t>(cfg.slot_window_words);
    for (const auto& [first, last] : ranges) {
      const std::size_t lo = first >= w ? first - w : 0;
      const std::size_t hi = std::min(n - 1, last + w);
      for (std::size_t i = lo; i <= hi; ++i) near[i] = true;
    }
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
      if (near[i]) candidates.push_back(i);
    }
    return candidates[rng.Index(candidates.size())];
  }
  return rng.Index(n);
}

std::optional<std::string> Inject(Turn& t, DisfluencyType type,
                                  std::size_t position, ChatClient* gen,
                                  Rng& rng) {
  if (!t.disfluency.empty()) return "turn already carries a disfluency";
  if (t.tagged != t.text) return "turn carries inline markers";
  if (position >= CountWords(t.text)) {
    throw ContractViolation("disfluency position beyond word count");
  }
  // A filler or repetition placed between the words of a slot value would
  // split the value, so move it to the value's first word.
  if (type != DisfluencyType::kCOR && type != DisfluencyType::kRST) {
    for (const auto& [first, last] : SlotWordRanges(t)) {
      if (first < position && position <= last) position = first;
    }
  }
  const Turn before = t;
  std::optional<std::string> err;
  try {
    switch (type) {
      case DisfluencyType::kFP:
      case DisfluencyType::kDM:
      case DisfluencyType::kEDIT:
        err = InjectPrefix(t, type, position, rng);
        break;
      case DisfluencyType::kREP:
        err = InjectRepetition(t, position, rng);
        break;
      case DisfluencyType::kCOR:
        if (!gen) throw ContractViolation("COR needs a generator client");
        err = InjectCorrection(t, position, *gen);
        break;
      case DisfluencyType::kRST:
        if (!gen) throw ContractViolation("RST needs a generator client");
        err = InjectRestart(t, position, *gen);
        break;
    }
  } catch (const ClientError& e) {
    err = std::string("generator failed: ") + e.what();
  }
  if (err) t = before;
  return err;
}

DisfluencyCounts AugmentDisfluency(Dialogue& d, const DisfluencyConfig& cfg,
                                   ChatClient* gen, Rng& rng) {
  cfg.Validate();
  DisfluencyCounts counts;
  for (Turn& t : d.turns) {
    if (t.role != Role::kUser || !t.disfluency.empty() || t.tagged != t.text) {
      continue;
    }
    auto type = SampleAndType(t, cfg, rng);
    if (!type) continue;
    ++counts.sampled;
    const std::size_t pos = ChoosePosition(t, *type, cfg, rng);
    if (auto err = Inject(t, *type, pos, gen, rng)) {
      ++counts.rejected;
      std::cerr << "warning: " << d.dialogue_id << " turn " << t.index << ": "
                << ToString(*type) << " rejected: " << *err << "\n";
    } else {
      ++counts.injected;
    }
  }
  return counts;
}

}  // namespace dialaug
