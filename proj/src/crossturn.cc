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

#include "dialaug/crossturn.h"

#include <algorithm>
#include <map>

#include "dialaug/clients.h"
#include "dialaug/errors.h"
#include "dialaug/normalize.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

bool IsAlnum(char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c); }

bool IsNumericSeparator(char c) {
  return c == ' ' || c == '-' || c == '(' || c == ')' || c == '+' || c == '.';
}

std::size_t CountDigits(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), IsAsciiDigit));
}

// Splits `s` after every position in `cuts` (indices of the last digit of
// each chunk); trailing separators stay with the preceding chunk.
std::vector<std::string> CutAfter(const std::string& s,
                                  const std::vector<std::size_t>& cuts) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    std::size_t end = cuts[k] + 1;
    if (k + 1 == cuts.size()) {
      end = s.size();
    } else {
      while (end < s.size() && !IsAlnum(s[end])) ++end;
    }
    out.push_back(s.substr(begin, end - begin));
    begin = end;
  }
  return out;
}

std::vector<Chunk> ToChunks(const std::vector<std::string>& raws) {
  std::vector<Chunk> out;
  for (const auto& r : raws) out.push_back({r, SpeakChunk(r)});
  return out;
}

std::vector<Chunk> SegmentNumeric(const std::string& value) {
  std::vector<std::size_t> digit_pos;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (IsAsciiDigit(value[i])) digit_pos.push_back(i);
  }
  std::vector<std::size_t> cuts;
  std::size_t at = 0;
  for (std::size_t len : DigitChunkLengths(digit_pos.size())) {
    at += len;
    cuts.push_back(digit_pos[at - 1]);
  }
  return ToChunks(CutAfter(value, cuts));
}

std::vector<Chunk> SegmentCode(const std::string& value) {
  std::vector<std::size_t> cuts;
  std::size_t i = 0;
  while (i < value.size()) {
    if (!IsAlnum(value[i])) {
      ++i;
      continue;
    }
    const bool digit = IsAsciiDigit(value[i]);
    std::size_t j = i;
    while (j < value.size() && IsAlnum(value[j]) && IsAsciiDigit(value[j]) == digit) ++j;
    if (digit && j - i >= 5) {
      std::size_t at = i;
      for (std::size_t len : DigitChunkLengths(j - i)) {
        at += len;
        cuts.push_back(at - 1);
      }
    } else {
      cuts.push_back(j - 1);
    }
    i = j;
  }
  return ToChunks(CutAfter(value, cuts));
}

std::vector<Chunk> SegmentEmail(const std::string& value) {
  const std::size_t at = value.find('@');
  if (at == 0) return ToChunks({value});
  return ToChunks({value.substr(0, at), value.substr(at)});
}

void ShiftState(Dialogue& d, std::size_t from, std::size_t by) {
  if (by == 0) return;
  std::map<std::size_t, SlotMap> shifted;
  for (auto& [k, v] : d.state_per_turn) {
    shifted[k >= from ? k + by : k] = std::move(v);
  }
  d.state_per_turn = std::move(shifted);
}

Turn MakeTurn(Role role, std::string text) {
  Turn t;
  t.role = role;
  t.tagged = text;
  t.text = std::move(text);
  return t;
}

// Replaces d.turns[turn_idx] with `block`. The
// final assistant turn is dropped when an assistant turn follows.
std::size_t Splice(Dialogue& d, std::size_t turn_idx, std::vector<Turn> block) {
  const bool next_is_assistant = turn_idx + 1 < d.turns.size() &&
                                 d.turns[turn_idx + 1].role == Role::kAssistant;
  if (next_is_assistant && !block.empty() && block.back().role == Role::kAssistant) {
    block.pop_back();
  }
  const std::size_t m = block.size();
  d.turns.erase(d.turns.begin() + static_cast<long>(turn_idx));
  d.turns.insert(d.turns.begin() + static_cast<long>(turn_idx), block.begin(),
                 block.end());
  ShiftState(d, turn_idx, m - 1);
  Reindex(d);
  return m;
}

}  // namespace

void CrossTurnConfig::Validate() const {
  if (!(p_error >= 0 && p_error <= 1)) throw ConfigError("p_error must be in [0, 1]");
  if (min_digits < 1) throw ConfigError("min_digits must be >= 1");
  if (min_code_len < 1) throw ConfigError("min_code_len must be >= 1");
  if (!(categorical_rate >= 0 && categorical_rate <= 1)) {
    throw ConfigError("categorical_rate must be in [0, 1]");
  }
}

ValueClass ClassifyValue(const std::string& value, const CrossTurnConfig& cfg) {
  if (value.find('@') != std::string::npos) return ValueClass::kEmail;
  const std::size_t digits = CountDigits(value);
  const bool letters = std::any_of(value.begin(), value.end(), IsAsciiAlpha);
  if (!letters && digits >= static_cast<std::size_t>(cfg.min_digits) &&
      std::all_of(value.begin(), value.end(),
                  [](char c) { return IsAsciiDigit(c) || IsNumericSeparator(c); })) {
    return ValueClass::kNumeric;
  }
  if (letters && digits > 0 && std::all_of(value.begin(), value.end(), IsAlnum) &&
      value.size() >= static_cast<std::size_t>(cfg.min_code_len)) {
    return ValueClass::kCode;
  }
  if (digits >= static_cast<std::size_t>(cfg.min_digits)) {
    return letters ? ValueClass::kCode : ValueClass::kNumeric;
  }
  return ValueClass::kNone;
}

bool IsSegmentable(const std::string& value, const CrossTurnConfig& cfg) {
  return ClassifyValue(value, cfg) != ValueClass::kNone;
}

std::vector<std::size_t> DigitChunkLengths(std::size_t n) {
  if (n == 0) return {};
  if (n <= 4) return {n};
  if (n == 5) return {3, 2};
  std::vector<std::size_t> out(n / 3, 3);
  switch (n % 3) {
    case 1:
      out.back() = 4;
      break;
    case 2:
      out[out.size() - 1] = 4;
      out[out.size() - 2] = 4;
      break;
  }
  return out;
}

std::vector<Chunk> SegmentValue(const std::string& value,
                                const CrossTurnConfig& cfg) {
  switch (ClassifyValue(value, cfg)) {
    case ValueClass::kEmail: return SegmentEmail(value);
    case ValueClass::kNumeric: return SegmentNumeric(value);
    case ValueClass::kCode: return SegmentCode(value);
    case ValueClass::kNone: break;
  }
  throw ContractViolation("value '" + value + "' is not segmentable");
}

std::string SpeakChunk(const std::string& raw) {
  const bool has_letters = std::any_of(raw.begin(), raw.end(), IsAsciiAlpha);
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (IsAsciiDigit(c)) {
      words.push_back(SpellDigits(std::string(1, c)));
      ++i;
    } else if (IsAsciiAlpha(c)) {
      std::size_t j = i;
      while (j < raw.size() && IsAsciiAlpha(raw[j])) ++j;
      const std::string run = raw.substr(i, j - i);
      const bool caps = std::all_of(run.begin(), run.end(),
                                    [](char x) { return x >= 'A' && x <= 'Z'; });
      if (caps || run.size() == 1) {
        for (char x : run) words.emplace_back(1, x);
      } else {
        words.push_back(run);
      }
      i = j;
    } else {
      switch (c) {
        case '@': words.emplace_back("at"); break;
        case '.': if (has_letters) words.emplace_back("dot"); break;
        case '_': words.emplace_back("underscore"); break;
        case '-': if (has_letters) words.emplace_back("dash"); break;
        case '+': words.emplace_back("plus"); break;
        default: break;
      }
      ++i;
    }
  }
  return Join(words, " ");
}

std::string CorruptChunk(const std::string& raw, Rng& rng) {
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (IsAlnum(raw[i])) slots.push_back(i);
  }
  if (slots.empty()) throw ContractViolation("chunk has no letters or digits");
  std::string out = raw;
  const std::size_t i = slots[rng.Index(slots.size())];
  const char c = raw[i];
  if (IsAsciiDigit(c)) {
    out[i] = static_cast<char>('0' + (c - '0' + 1 + rng.Index(9)) % 10);
  } else {
    const char base = (c >= 'a' && c <= 'z') ? 'a' : 'A';
    out[i] = static_cast<char>(base + (c - base + 1 + rng.Index(25)) % 26);
  }
  return out;
}

std::string ConfirmationText(const std::string& spoken) {
  return "Got it, " + spoken + ".";
}

std::string CorrectionRequestText(const std::string& spoken) {
  return "Wait, I meant " + spoken + ".";
}

std::string CorrectionAckText(const std::string& spoken) {
  return "Thanks for the correction, " + spoken + ".";
}

std::size_t ExpandTurn(Dialogue& d, std::size_t turn_idx, const SlotSpan& span,
                       const std::vector<Chunk>& chunks, int group, Rng& rng,
                       const CrossTurnConfig& cfg) {
  if (turn_idx >= d.turns.size()) throw ContractViolation("turn out of range");
  const Turn orig = d.turns[turn_idx];
  if (orig.role != Role::kUser) throw ContractViolation("expand_turn needs a user turn");
  if (std::find(orig.slot_spans.begin(), orig.slot_spans.end(), span) ==
      orig.slot_spans.end()) {
    throw ContractViolation("slot span not present in turn");
  }
  if (chunks.empty()) throw ContractViolation("no chunks to dictate");
  const std::string prefix = orig.text.substr(0, span.start);
  const std::string suffix = orig.text.substr(span.end);
  const std::size_t n = chunks.size();

  std::optional<std::size_t> error_chunk;
  std::string corrupted;
  if (rng.Bernoulli(cfg.p_error)) {
    error_chunk = rng.Index(n);
    corrupted = CorruptChunk(chunks[*error_chunk].raw, rng);
  }

  std::vector<Turn> block;
  for (std::size_t k = 0; k < n; ++k) {
    const bool err = error_chunk == k;
    const std::string raw = err ? corrupted : chunks[k].raw;
    const std::string spoken = err ? SpeakChunk(corrupted) : chunks[k].spoken;
    const std::string head = k == 0 ? prefix : "";
    const std::string tail = k + 1 == n ? suffix : "";

    Turn u = MakeTurn(Role::kUser, head + spoken + tail);
    for (const auto& sp : orig.slot_spans) {
      if (sp == span) continue;
      if (k == 0 && sp.end <= span.start) u.slot_spans.push_back(sp);
      if (k + 1 == n && sp.start >= span.end) {
        const std::size_t shift = head.size() + spoken.size();
        u.slot_spans.push_back(
            {sp.slot, sp.start - span.end + shift, sp.end - span.end + shift});
      }
    }
    if (!err && !spoken.empty()) {
      u.slot_spans.push_back({span.slot, head.size(), head.size() + spoken.size()});
    }
    std::sort(u.slot_spans.begin(), u.slot_spans.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    u.crossturn = CrossTurnMeta{span.slot, group, k, n, raw, err, std::nullopt};
    if (k == 0) u.emotion = orig.emotion;
    block.push_back(std::move(u));

    Turn a = MakeTurn(Role::kAssistant, ConfirmationText(spoken));
    a.crossturn = CrossTurnMeta{span.slot, group, k, n, raw, err, std::nullopt};
    block.push_back(std::move(a));

    if (err) {
      const std::size_t err_user = block.size() - 2;
      Turn c = MakeTurn(Role::kUser, CorrectionRequestText(chunks[k].spoken));
      const std::size_t at = c.text.find(chunks[k].spoken);
      c.slot_spans.push_back({span.slot, at, at + chunks[k].spoken.size()});
      c.crossturn = CrossTurnMeta{span.slot, group, k, n, chunks[k].raw, false,
                                  std::nullopt};
      block.push_back(std::move(c));
      block[err_user].crossturn->corrected_in_turn = turn_idx + block.size() - 1;
      block[err_user + 1].crossturn->corrected_in_turn = turn_idx + block.size() - 1;
      Turn ack = MakeTurn(Role::kAssistant, CorrectionAckText(chunks[k].spoken));
      ack.crossturn = CrossTurnMeta{span.slot, group, k, n, chunks[k].raw, false,
                                    std::nullopt};
      block.push_back(std::move(ack));
    }
  }
  return Splice(d, turn_idx, std::move(block));
}

CrossTurnCounts AugmentCrossTurn(Dialogue& d, const CrossTurnConfig& cfg, Rng& rng) {
  cfg.Validate();
  CrossTurnCounts counts;
  int group = 0;
  for (const Turn& t : d.turns) {
    if (t.crossturn) group = std::max(group, t.crossturn->group + 1);
  }
  std::size_t i = 0;
  while (i < d.turns.size()) {
    const Turn& t = d.turns[i];
    if (t.role != Role::kUser || t.crossturn || t.tagged != t.text) {
      ++i;
      continue;
    }
    std::vector<SlotSpan> spans = t.slot_spans;
    std::sort(spans.begin(), spans.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    const SlotSpan* target = nullptr;
    for (const auto& sp : spans) {
      if (sp.end <= t.text.size() &&
          IsSegmentable(t.text.substr(sp.start, sp.end - sp.start), cfg)) {
        target = &sp;
        break;
      }
    }
    if (target) {
      const std::string value = t.text.substr(target->start, target->end - target->start);
      const SlotSpan chosen = *target;
      const auto chunks = SegmentValue(value, cfg);
      const std::size_t m = ExpandTurn(d, i, chosen, chunks, group++, rng, cfg);
      ++counts.expansions;
      for (std::size_t k = i; k < i + m; ++k) {
        if (d.turns[k].crossturn && d.turns[k].crossturn->is_error &&
            d.turns[k].role == Role::kUser) {
          ++counts.errors;
        }
      }
      i += m;
      continue;
    }
    if (cfg.categorical_self_correction && !spans.empty() &&
        rng.Bernoulli(cfg.categorical_rate)) {
      const SlotSpan sp = spans[rng.Index(spans.size())];
      const std::string value = t.text.substr(sp.start, sp.end - sp.start);
      const std::string wrong = PlausibleAlternative(value);
      const long delta = static_cast<long>(wrong.size()) - static_cast<long>(value.size());
      Turn u = t;
      u.text = t.text.substr(0, sp.start) + wrong + t.text.substr(sp.end);
      u.tagged = u.text;
      u.slot_spans.clear();
      for (const auto& s : t.slot_spans) {
        if (s == sp) continue;
        if (s.start >= sp.end) {
          u.slot_spans.push_back({s.slot, s.start + delta, s.end + delta});
        } else {
          u.slot_spans.push_back(s);
        }
      }
      u.crossturn = CrossTurnMeta{sp.slot, group, 0, 1, wrong, true, i + 2};
      Turn a = MakeTurn(Role::kAssistant, ConfirmationText(wrong));
      a.crossturn = u.crossturn;
      Turn c = MakeTurn(Role::kUser, "Actually, " + value + ".");
      c.slot_spans.push_back({sp.slot, 10, 10 + value.size()});
      c.crossturn = CrossTurnMeta{sp.slot, group, 0, 1, value, false, std::nullopt};
      Turn ack = MakeTurn(Role::kAssistant, CorrectionAckText(value));
      ack.crossturn = c.crossturn;
      i += Splice(d, i, {u, a, c, ack});
      ++group;
      ++counts.categorical;
      continue;
    }
    ++i;
  }
  return counts;
}

std::map<std::pair<std::string, int>, std::string> ReconstructValues(
    const Dialogue& d) {
  std::map<std::pair<std::string, int>, std::map<std::size_t, std::string>> parts;
  for (const Turn& t : d.turns) {
    if (t.role != Role::kUser || !t.crossturn || t.crossturn->is_error) continue;
    parts[{t.crossturn->slot_name, t.crossturn->group}][t.crossturn->chunk_index] =
        t.crossturn->chunk_text;
  }
  std::map<std::pair<std::string, int>, std::string> out;
  for (const auto& [key, chunks] : parts) {
    std::string v;
    for (const auto& [k, text] : chunks) v += text;
    out[key] = v;
  }
  return out;
}

}  // namespace dialaug
