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

#include "dialaug/corpus.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

template <typename Enum, std::size_t N>
Enum ParseByName(std::string_view s,
                 const std::array<std::pair<std::string_view, Enum>, N>& table,
                 const char* what) {
  const std::string key = ToLower(Trim(s));
  for (const auto& [name, value] : table) {
    if (ToLower(name) == key) return value;
  }
  throw Error(std::string("unknown ") + what + ": '" + std::string(s) + "'");
}

constexpr std::array<std::pair<std::string_view, Role>, 4> kRoleNames = {{
    {"user", Role::kUser},
    {"assistant", Role::kAssistant},
    {"system", Role::kAssistant},
    {"agent", Role::kAssistant},
}};

constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "neutral", "fearful", "dissatisfied", "apologetic",
    "abusive", "excited", "satisfied"};

constexpr std::array<std::pair<std::string_view, BargeInType>, 6>
    kBargeInTypeNames = {{
        {"ERROR_RECOVERY", BargeInType::kErrorRecovery},
        {"CLARIFICATION", BargeInType::kClarification},
        {"EFFICIENCY", BargeInType::kEfficiency},
        {"INCOHERENT", BargeInType::kErrorRecovery},
        {"FAIL", BargeInType::kClarification},
        {"REF", BargeInType::kEfficiency},
    }};

constexpr std::array<std::pair<std::string_view, BargeInStyle>, 6>
    kBargeInStyleNames = {{
        {"implicit", BargeInStyle::kImplicit},
        {"raw", BargeInStyle::kRaw},
        {"interpreted", BargeInStyle::kInterpreted},
        {"impl", BargeInStyle::kImplicit},
        {"interp", BargeInStyle::kInterpreted},
        {"ref_impl", BargeInStyle::kImplicit},
    }};

constexpr std::array<std::pair<std::string_view, DisfluencyType>, 6>
    kDisfluencyNames = {{
        {"FP", DisfluencyType::kFP},
        {"DM", DisfluencyType::kDM},
        {"EDIT", DisfluencyType::kEDIT},
        {"REP", DisfluencyType::kREP},
        {"COR", DisfluencyType::kCOR},
        {"RST", DisfluencyType::kRST},
    }};

constexpr std::array<std::pair<std::string_view, AccentPool>, 4> kPoolNames = {{
    {"Native", AccentPool::kNative},
    {"African", AccentPool::kAfrican},
    {"Indian", AccentPool::kIndian},
    {"Asian", AccentPool::kAsian},
}};

constexpr std::array<std::pair<std::string_view, AgeBin>, 4> kAgeBinNames = {{
    {"10s", AgeBin::k10s},
    {"20-30s", AgeBin::k20s30s},
    {"40-50s", AgeBin::k40s50s},
    {"60+", AgeBin::k60Plus},
}};

constexpr std::array<std::pair<std::string_view, Gender>, 2> kGenderNames = {{
    {"male", Gender::kMale},
    {"female", Gender::kFemale},
}};

bool IsPrefixMarker(DisfluencyType t) {
  return t == DisfluencyType::kFP || t == DisfluencyType::kDM ||
         t == DisfluencyType::kEDIT;
}

struct MarkerHit {
  std::size_t pos;
  DisfluencyType type;
};

std::vector<MarkerHit> FindMarkers(std::string_view s) {
  std::vector<MarkerHit> hits;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '[') continue;
    for (DisfluencyType t : kAllDisfluencyTypes) {
      const std::string_view tok = MarkerToken(t);
      if (s.substr(i, tok.size()) == tok) {
        hits.push_back({i, t});
        break;
      }
    }
  }
  return hits;
}

bool IsAlnum(char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c); }

// Removes an FP/DM/EDIT marker at `m` plus "<span> " after it.
std::string RemovePrefixMarker(const std::string& s, std::size_t m,
                               const DisfluencyMeta& meta) {
  const std::size_t len = MarkerToken(meta.type).size();
  std::size_t r = m + len;
  if (r >= s.size() || s[r] != ' ') {
    throw MalformedTagError("marker not followed by a space");
  }
  ++r;
  if (s.compare(r, meta.inserted_span.size(), meta.inserted_span) != 0) {
    throw MalformedTagError("inserted span '" + meta.inserted_span +
                            "' not found after " +
                            std::string(MarkerToken(meta.type)));
  }
  r += meta.inserted_span.size();
  if (r < s.size()) {
    if (s[r] != ' ') throw MalformedTagError("filler not followed by a space");
    ++r;
  }
  return s.substr(0, m) + s.substr(r);
}

std::string RemoveRepetition(const std::string& s, std::size_t m,
                             const DisfluencyMeta& meta) {
  const std::size_t len = MarkerToken(meta.type).size();
  if (m == 0 || s[m - 1] != ' ' || m + len >= s.size() || s[m + len] != ' ') {
    throw MalformedTagError("[REP] must be surrounded by spaces");
  }
  const std::string core = StripTrailingPunct(meta.inserted_span);
  if (core.empty()) throw MalformedTagError("empty repeated unit");
  const std::size_t r = m + len + 1;
  if (s.compare(r, core.size(), core) != 0) {
    throw MalformedTagError("repeated unit '" + core +
                            "' does not follow [REP]");
  }
  return s.substr(0, m - 1) + s.substr(r + core.size());
}

// COR/RST: inserted_span is "<pre> <post>" with the marker between the two.
std::string RemoveInfix(const std::string& s, std::size_t m,
                        const DisfluencyMeta& meta) {
  const std::size_t len = MarkerToken(meta.type).size();
  const std::string& span = meta.inserted_span;
  if (m == 0 || s[m - 1] != ' ' || m + len >= s.size() || s[m + len] != ' ') {
    throw MalformedTagError(std::string(MarkerToken(meta.type)) +
                            " must be surrounded by spaces");
  }
  for (std::size_t k = 0; k < span.size(); ++k) {
    if (span[k] != ' ') continue;
    const std::string pre = span.substr(0, k);
    const std::string post = span.substr(k + 1);
    if (pre.size() + 1 > m) continue;
    const std::size_t pre_start = m - 1 - pre.size();
    if (s.compare(pre_start, pre.size(), pre) != 0) continue;
    const std::size_t post_start = m + len + 1;
    if (s.compare(post_start, post.size(), post) != 0) continue;
    return s.substr(0, pre_start) + s.substr(post_start + post.size());
  }
  throw MalformedTagError("inserted span '" + span + "' does not surround " +
                          std::string(MarkerToken(meta.type)));
}

}  // namespace

std::string_view MarkerToken(DisfluencyType type) {
  switch (type) {
    case DisfluencyType::kFP: return "[FP]";
    case DisfluencyType::kDM: return "[DM]";
    case DisfluencyType::kEDIT: return "[EDIT]";
    case DisfluencyType::kREP: return "[REP]";
    case DisfluencyType::kCOR: return "[COR]";
    case DisfluencyType::kRST: return "[RST]";
  }
  return "";
}

std::string RenderSurface(std::string_view tagged) {
  std::string out;
  out.reserve(tagged.size());
  std::size_t i = 0;
  const auto hits = FindMarkers(tagged);
  for (const auto& hit : hits) {
    if (hit.pos < i) continue;
    out.append(tagged.substr(i, hit.pos - i));
    std::size_t next = hit.pos + MarkerToken(hit.type).size();
    if (!IsPrefixMarker(hit.type) && !out.empty() && out.back() == ' ') {
      // Infix marker: " [X] " collapses to one space.
      out.pop_back();
      if (hit.type == DisfluencyType::kREP && !out.empty() &&
          IsAlnum(out.back())) {
        out.push_back(',');
      }
      if (next >= tagged.size() || tagged[next] != ' ') out.push_back(' ');
    } else if (next < tagged.size() && tagged[next] == ' ') {
      ++next;
    }
    i = next;
  }
  out.append(tagged.substr(std::min(i, tagged.size())));
  return out;
}

std::string FluentProjection(const Turn& t) {
  const auto hits = FindMarkers(t.tagged);
  if (hits.size() != t.disfluency.size()) {
    std::ostringstream msg;
    msg << "turn " << t.index << ": " << hits.size() << " markers but "
        << t.disfluency.size() << " disfluency records";
    throw MalformedTagError(msg.str());
  }
  std::string s = t.tagged;
  for (std::size_t k = hits.size(); k-- > 0;) {
    const DisfluencyMeta& meta = t.disfluency[k];
    if (hits[k].type != meta.type) {
      throw MalformedTagError("marker " +
                              std::string(MarkerToken(hits[k].type)) +
                              " does not match record " +
                              std::string(ToString(meta.type)));
    }
    switch (meta.type) {
      case DisfluencyType::kFP:
      case DisfluencyType::kDM:
      case DisfluencyType::kEDIT:
        s = RemovePrefixMarker(s, hits[k].pos, meta);
        break;
      case DisfluencyType::kREP:
        s = RemoveRepetition(s, hits[k].pos, meta);
        break;
      case DisfluencyType::kCOR:
      case DisfluencyType::kRST:
        s = RemoveInfix(s, hits[k].pos, meta);
        break;
    }
  }
  return s;
}

std::vector<Violation> ValidateDialogue(const Dialogue& d) {
  std::vector<Violation> out;
  auto add = [&](std::optional<std::size_t> turn, std::string rule,
                 std::string detail) {
    out.push_back({turn, std::move(rule), std::move(detail)});
  };

  if (d.dialogue_id.empty()) add(std::nullopt, "dialogue_id", "empty id");
  if (d.goal.sub_goals.empty()) {
    add(std::nullopt, "goal.sub_goals", "goal has no sub-goals");
  }
  for (const auto& sg : d.goal.sub_goals) {
    for (const auto& [slot, value] : sg.constraints) {
      if (slot.empty()) add(std::nullopt, "goal.slot_name", "empty constraint");
      if (sg.requests.count(slot)) {
        add(std::nullopt, "goal.disjoint",
            "slot '" + slot + "' is both constraint and request");
      }
    }
    for (const auto& slot : sg.requests) {
      if (slot.empty()) add(std::nullopt, "goal.slot_name", "empty request");
    }
  }

  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    const Turn& t = d.turns[i];
    if (t.index != i) {
      add(i, "turn.index", "index " + std::to_string(t.index) +
                               " at position " + std::to_string(i));
    }
    if (i > 0 && d.turns[i - 1].role == t.role) {
      add(i, "turn.alternation", "two consecutive " +
                                     std::string(ToString(t.role)) + " turns");
    }

    std::vector<SlotSpan> spans = t.slot_spans;
    std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
      return a.start < b.start || (a.start == b.start && a.end < b.end);
    });
    for (std::size_t k = 0; k < spans.size(); ++k) {
      const SlotSpan& sp = spans[k];
      if (sp.slot.empty()) add(i, "span.slot_name", "span without slot name");
      if (sp.start >= sp.end || sp.end > t.text.size()) {
        add(i, "span.bounds",
            "span '" + sp.slot + "' [" + std::to_string(sp.start) + ", " +
                std::to_string(sp.end) + ") outside text of length " +
                std::to_string(t.text.size()));
      }
      if (k > 0 && spans[k - 1].end > sp.start) {
        add(i, "span.overlap", "span '" + sp.slot + "' overlaps '" +
                                   spans[k - 1].slot + "'");
      }
    }

    const std::size_t token_pos = t.text.find(kBargeInToken);
    if (t.role == Role::kUser) {
      if (token_pos != std::string::npos ||
          t.tagged.find(kBargeInToken) != std::string::npos) {
        add(i, "bargein.user_token", "user turn contains <bargein>");
      }
    } else {
      const bool ends_with_token =
          t.text.size() >= kBargeInToken.size() &&
          t.text.compare(t.text.size() - kBargeInToken.size(),
                         kBargeInToken.size(), kBargeInToken) == 0;
      if (token_pos != std::string::npos &&
          token_pos + kBargeInToken.size() != t.text.size()) {
        add(i, "bargein.token_position", "<bargein> not at end of turn");
      }
      if (t.bargein && !ends_with_token) {
        add(i, "bargein.truncation",
            "truncated assistant turn does not end with <bargein>");
      }
      if (!t.bargein && ends_with_token) {
        add(i, "bargein.meta", "<bargein> without barge-in metadata");
      }
    }
    if (t.bargein) {
      const auto& b = *t.bargein;
      const bool er = b.type == BargeInType::kErrorRecovery;
      const bool has = b.erroneous_slots.has_value() ||
                       b.corrected_slots.has_value();
      if (er) {
        if (!b.erroneous_slots || !b.corrected_slots) {
          add(i, "bargein.slots", "error recovery without slot records");
        } else {
          std::set<std::string> a, c;
          for (const auto& kv : *b.erroneous_slots) a.insert(kv.first);
          for (const auto& kv : *b.corrected_slots) c.insert(kv.first);
          if (a != c) {
            add(i, "bargein.slots", "erroneous/corrected key sets differ");
          }
        }
      } else if (has) {
        add(i, "bargein.slots", "slot records on non-error-recovery barge-in");
      }
    }

    if (RenderSurface(t.tagged) != t.text) {
      add(i, "tagged.surface", "tagged form does not render to text");
    }
    const std::size_t tagged_words = CountWords(t.tagged);
    for (const auto& dm : t.disfluency) {
      if (dm.position >= std::max<std::size_t>(tagged_words, 1)) {
        add(i, "disfluency.position",
            "position " + std::to_string(dm.position) + " beyond word count");
      }
      if (dm.type == DisfluencyType::kCOR &&
          (!dm.original_value || !dm.wrong_value)) {
        add(i, "disfluency.cor_values", "COR must record both values");
      }
    }
    if (t.duration_s && *t.duration_s < 0) {
      add(i, "duration.negative", "negative duration");
    }
    if (t.crossturn && t.crossturn->chunk_index >= t.crossturn->chunk_count) {
      add(i, "crossturn.chunk", "chunk index beyond chunk count");
    }
  }

  if (d.user_speaker) {
    const auto& s = *d.user_speaker;
    if (s.ref_duration_s > 25.0) {
      add(std::nullopt, "speaker.ref_duration", "reference clip over 25 s");
    }
    if (AgeBinFor(s.age) != s.age_bin) {
      add(std::nullopt, "speaker.age_bin", "age bin inconsistent with age");
    }
  }
  return out;
}

void Reindex(Dialogue& d) {
  for (std::size_t i = 0; i < d.turns.size(); ++i) d.turns[i].index = i;
}

SlotMap StateAt(const Dialogue& d, std::size_t turn_idx) {
  auto it = d.state_per_turn.upper_bound(turn_idx);
  if (it != d.state_per_turn.begin()) {
    --it;
    if (!it->second.empty()) return it->second;
  }
  SlotMap state;
  for (std::size_t i = 0; i <= turn_idx && i < d.turns.size(); ++i) {
    if (d.turns[i].role != Role::kUser || d.turns[i].crossturn) continue;
    for (auto& [slot, value] : SpanValues(d.turns[i])) state[slot] = value;
  }
  return state;
}

std::vector<std::pair<std::string, std::string>> SpanValues(const Turn& t) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& sp : t.slot_spans) {
    if (sp.start < sp.end && sp.end <= t.text.size()) {
      out.emplace_back(sp.slot, t.text.substr(sp.start, sp.end - sp.start));
    }
  }
  return out;
}

AgeBin AgeBinFor(int age) {
  if (age < 20) return AgeBin::k10s;
  if (age < 40) return AgeBin::k20s30s;
  if (age < 60) return AgeBin::k40s50s;
  return AgeBin::k60Plus;
}

std::string_view ToString(Role r) {
  return r == Role::kUser ? "user" : "assistant";
}
std::string_view ToString(Emotion e) {
  return kEmotionNames[static_cast<int>(e)];
}
std::string_view ToString(BargeInType t) {
  switch (t) {
    case BargeInType::kErrorRecovery: return "ERROR_RECOVERY";
    case BargeInType::kClarification: return "CLARIFICATION";
    case BargeInType::kEfficiency: return "EFFICIENCY";
  }
  return "";
}
std::string_view ToString(BargeInStyle s) {
  switch (s) {
    case BargeInStyle::kImplicit: return "implicit";
    case BargeInStyle::kRaw: return "raw";
    case BargeInStyle::kInterpreted: return "interpreted";
  }
  return "";
}
std::string_view ToString(DisfluencyType t) {
  return kDisfluencyNames[static_cast<int>(t)].first;
}
std::string_view ToString(AccentPool p) {
  return kPoolNames[static_cast<int>(p)].first;
}
std::string_view ToString(AgeBin b) {
  return kAgeBinNames[static_cast<int>(b)].first;
}
std::string_view ToString(Gender g) {
  return kGenderNames[static_cast<int>(g)].first;
}

std::string BargeInSubtype(BargeInType t, BargeInStyle s) {
  std::string prefix;
  switch (t) {
    case BargeInType::kErrorRecovery: prefix = "INCOHERENT"; break;
    case BargeInType::kClarification: prefix = "FAIL"; break;
    case BargeInType::kEfficiency: prefix = "REF"; break;
  }
  switch (s) {
    case BargeInStyle::kImplicit: return prefix + "_IMPL";
    case BargeInStyle::kRaw: return prefix + "_RAW";
    case BargeInStyle::kInterpreted: return prefix + "_INTERP";
  }
  return prefix;
}

Role ParseRole(std::string_view s) {
  return ParseByName(s, kRoleNames, "role");
}

Emotion EmotionFromId(int id) {
  if (id < 0 || id >= kNumEmotions) {
    throw Error("emotion id out of range: " + std::to_string(id));
  }
  return static_cast<Emotion>(id);
}

Emotion ParseEmotion(std::string_view s) {
  const std::string key = ToLower(Trim(s));
  for (int i = 0; i < kNumEmotions; ++i) {
    if (kEmotionNames[i] == key) return static_cast<Emotion>(i);
  }
  throw Error("unknown emotion: '" + std::string(s) + "'");
}

BargeInType ParseBargeInType(std::string_view s) {
  return ParseByName(s, kBargeInTypeNames, "barge-in type");
}
BargeInStyle ParseBargeInStyle(std::string_view s) {
  return ParseByName(s, kBargeInStyleNames, "barge-in style");
}
DisfluencyType ParseDisfluencyType(std::string_view s) {
  return ParseByName(s, kDisfluencyNames, "disfluency type");
}
AccentPool ParseAccentPool(std::string_view s) {
  return ParseByName(s, kPoolNames, "accent pool");
}
AgeBin ParseAgeBin(std::string_view s) {
  std::string key(s);
  key = ReplaceAll(ReplaceAll(key, "–", "-"), "—", "-");
  return ParseByName(key, kAgeBinNames, "age bin");
}
Gender ParseGender(std::string_view s) {
  return ParseByName(s, kGenderNames, "gender");
}

}  // namespace dialaug
