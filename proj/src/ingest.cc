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

#include "dialaug/ingest.h"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

std::string Str(const Json& j, const char* key, std::string fallback = "") {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  const Json& v = j.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

const Json& Need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string("source record lacks '") + key + "'");
  }
  return j.at(key);
}

std::string ScalarString(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && !v.empty()) return ScalarString(v.front());
  return v.dump();
}

class Builder {
 public:
  explicit Builder(std::string id, std::string source) {
    r_.dialogue.dialogue_id = std::move(id);
    r_.dialogue.source = std::move(source);
  }

  Dialogue& d() { return r_.dialogue; }

  void Warn(std::optional<std::size_t> turn, std::string msg) {
    r_.warnings.push_back({turn, std::move(msg)});
  }

  std::size_t AddTurn(Role role, std::string text) {
    Turn t;
    t.index = r_.dialogue.turns.size();
    t.role = role;
    t.text = Trim(text);
    t.tagged = t.text;
    r_.dialogue.turns.push_back(std::move(t));
    return r_.dialogue.turns.size() - 1;
  }

  // Keeps a span only if it lies inside the text and, when `expected` is
  // given, re-slicing reproduces it.
  void AddSpan(std::size_t turn, const std::string& slot, std::size_t start,
               std::size_t end, const std::optional<std::string>& expected) {
    Turn& t = r_.dialogue.turns[turn];
    if (start >= end || end > t.text.size()) {
      Warn(turn, "span '" + slot + "' out of bounds; dropped");
      return;
    }
    if (expected && t.text.substr(start, end - start) != *expected) {
      Warn(turn, "span '" + slot + "' text '" + t.text.substr(start, end - start) +
                     "' != annotated '" + *expected + "'; dropped");
      return;
    }
    for (const auto& sp : t.slot_spans) {
      if (start < sp.end && sp.start < end) {
        Warn(turn, "span '" + slot + "' overlaps '" + sp.slot + "'; dropped");
        return;
      }
    }
    t.slot_spans.push_back({slot, start, end});
  }

  void Locate(std::size_t turn,
              const std::vector<std::pair<std::string, std::string>>& values) {
    Turn& t = r_.dialogue.turns[turn];
    auto res = LocateSlotSpans(t.text, values);
    for (const auto& sp : res.spans) AddSpan(turn, sp.slot, sp.start, sp.end, std::nullopt);
    for (const auto& [slot, value] : res.unmatched) {
      Warn(turn, "value '" + value + "' for '" + slot + "' not found in utterance");
    }
  }

  IngestResult Finish() {
    Dialogue& d = r_.dialogue;
    for (auto& t : d.turns) {
      std::sort(t.slot_spans.begin(), t.slot_spans.end(),
                [](const auto& a, const auto& b) { return a.start < b.start; });
    }
    MergeConsecutiveTurns(d);
    if (d.goal.text.empty()) d.goal.text = TemplateGoalText(d.goal);
    return std::move(r_);
  }

 private:
  IngestResult r_;
};

// Word index -> [start, end) byte offsets for whitespace tokens.
std::pair<std::size_t, std::size_t> WordRange(const std::string& text,
                                              std::size_t first, std::size_t last,
                                              bool* ok) {
  const auto words = SplitWordSpans(text);
  *ok = first <= last && last < words.size();
  if (!*ok) return {0, 0};
  std::size_t end = words[last].end;
  while (end > words[first].start && IsTrailingPunct(text[end - 1])) --end;
  return {words[first].start, end};
}

// ---- generic --------------------------------------------------------------

IngestResult AdaptGeneric(const Json& raw) {
  IngestResult r;
  r.dialogue = DialogueFromJson(raw);
  if (r.dialogue.source.empty()) r.dialogue.source = "generic";
  return r;
}

// ---- SGD ------------------------------------------------------------------

IngestResult AdaptSgd(const Json& raw) {
  Builder b(Str(raw, "dialogue_id"), "sgd");
  struct Acc {
    std::string intent;
    SlotMap constraints;
    std::set<std::string> requests;
  };
  std::map<std::string, Acc> by_service;
  std::vector<std::string> order;
  for (const Json& tj : Need(raw, "turns")) {
    const bool user = ToLower(Str(tj, "speaker")) == "user";
    const std::size_t ti = b.AddTurn(user ? Role::kUser : Role::kAssistant,
                                     Str(tj, "utterance"));
    const std::string text = b.d().turns[ti].text;
    if (!tj.contains("frames")) continue;
    for (const Json& fj : tj.at("frames")) {
      const std::string service = Str(fj, "service");
      if (fj.contains("slots")) {
        for (const Json& sj : fj.at("slots")) {
          std::optional<std::string> expected;
          if (sj.contains("value")) expected = Str(sj, "value");
          b.AddSpan(ti, Str(sj, "slot"), sj.value("start", std::size_t{0}),
                    sj.value("exclusive_end", std::size_t{0}), expected);
        }
      }
      if (!user || !fj.contains("state")) continue;
      if (!by_service.count(service)) order.push_back(service);
      Acc& acc = by_service[service];
      const Json& st = fj.at("state");
      const std::string intent = Str(st, "active_intent");
      if (!intent.empty() && intent != "NONE") acc.intent = intent;
      if (st.contains("slot_values")) {
        for (auto it = st.at("slot_values").begin(); it != st.at("slot_values").end(); ++it) {
          acc.constraints[it.key()] = ScalarString(it.value());
        }
      }
      if (st.contains("requested_slots")) {
        for (const auto& r : st.at("requested_slots")) acc.requests.insert(r.get<std::string>());
      }
    }
  }
  for (const auto& service : order) {
    Acc& acc = by_service[service];
    SubGoal sg;
    sg.domain = service;
    sg.intent = acc.intent.empty() ? "inform" : acc.intent;
    sg.constraints = acc.constraints;
    for (const auto& r : acc.requests) {
      if (!acc.constraints.count(r)) sg.requests.insert(r);
    }
    b.d().goal.sub_goals.push_back(std::move(sg));
  }
  return b.Finish();
}

// ---- TM-2 -----------------------------------------------------------------

// "restaurant_reservation.name.restaurant.accept" -> domain
// "restaurant_reservation", slot "name.restaurant".
std::pair<std::string, std::string> SplitTm2Name(std::string name) {
  for (const char* suffix : {".accept", ".reject"}) {
    const std::string s(suffix);
    if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
      name.resize(name.size() - s.size());
    }
  }
  const std::size_t dot = name.find('.');
  if (dot == std::string::npos) return {"", name};
  return {name.substr(0, dot), name.substr(dot + 1)};
}

IngestResult AdaptTm2(const Json& raw) {
  Builder b(Str(raw, "conversation_id", Str(raw, "dialogue_id")), "tm2");
  const std::string intent = Str(raw, "instruction_id", "default");
  std::map<std::string, SlotMap> constraints;
  std::vector<std::string> order;
  for (const Json& uj : Need(raw, "utterances")) {
    const bool user = ToLower(Str(uj, "speaker")) == "user";
    const std::size_t ti = b.AddTurn(user ? Role::kUser : Role::kAssistant, Str(uj, "text"));
    const std::string text = b.d().turns[ti].text;
    if (!uj.contains("segments")) continue;
    for (const Json& sj : uj.at("segments")) {
      if (!sj.contains("annotations") || sj.at("annotations").empty()) continue;
      const auto [domain, slot] = SplitTm2Name(Str(sj.at("annotations").front(), "name"));
      const std::size_t start = sj.value("start_index", std::size_t{0});
      const std::size_t end = sj.value("end_index", std::size_t{0});
      const std::string value = Str(sj, "text");
      b.AddSpan(ti, slot, start, end, value);
      if (user && !value.empty()) {
        if (!constraints.count(domain)) order.push_back(domain);
        constraints[domain][slot] = value;
      }
    }
  }
  for (const auto& domain : order) {
    b.d().goal.sub_goals.push_back({domain, intent, constraints[domain], {}});
  }
  return b.Finish();
}

// ---- ABCD -----------------------------------------------------------------

// Aligns a delexicalized utterance against its original and returns the
// (slot, start, end) of every placeholder, or nullopt on mismatch.
std::optional<std::vector<SlotSpan>> AlignPlaceholders(const std::string& original,
                                                       const std::string& delexed) {
  static const std::regex kPlaceholder("<([a-z_]+)>");
  std::vector<std::string> literals;
  std::vector<std::string> slots;
  std::size_t last = 0;
  for (auto it = std::sregex_iterator(delexed.begin(), delexed.end(), kPlaceholder);
       it != std::sregex_iterator(); ++it) {
    literals.push_back(delexed.substr(last, static_cast<std::size_t>(it->position()) - last));
    slots.push_back((*it)[1].str());
    last = static_cast<std::size_t>(it->position() + it->length());
  }
  literals.push_back(delexed.substr(last));
  if (original.compare(0, literals[0].size(), literals[0]) != 0) return std::nullopt;
  std::vector<SlotSpan> spans;
  std::size_t pos = literals[0].size();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const std::string& next = literals[k + 1];
    std::size_t end;
    if (k + 1 == slots.size()) {
      if (original.size() < pos + next.size() ||
          original.compare(original.size() - next.size(), next.size(), next) != 0) {
        return std::nullopt;
      }
      end = original.size() - next.size();
    } else {
      end = next.empty() ? std::string::npos : original.find(next, pos + 1);
      if (end == std::string::npos) return std::nullopt;
    }
    if (end <= pos) return std::nullopt;
    spans.push_back({slots[k], pos, end});
    pos = end + next.size();
  }
  return spans;
}

IngestResult AdaptAbcd(const Json& raw) {
  Builder b(Str(raw, "convo_id", Str(raw, "dialogue_id")), "abcd");
  const Json& original = Need(raw, "original");
  const Json* delexed = raw.contains("delexed") ? &raw.at("delexed") : nullptr;
  SlotMap constraints;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const Json& oj = original[i];
    const std::string speaker = ToLower(oj.is_array() ? oj.at(0).get<std::string>() : Str(oj, "speaker"));
    const std::string text = oj.is_array() ? oj.at(1).get<std::string>() : Str(oj, "text");
    if (speaker == "action") continue;
    const bool user = speaker == "customer" || speaker == "user";
    const std::size_t ti = b.AddTurn(user ? Role::kUser : Role::kAssistant, text);
    if (!delexed || i >= delexed->size()) continue;
    const Json& dj = (*delexed)[i];
    const std::string dtext = Trim(dj.is_array() ? dj.at(1).get<std::string>() : Str(dj, "text"));
    const std::string& otext = b.d().turns[ti].text;
    auto spans = AlignPlaceholders(otext, dtext);
    if (!spans) {
      b.Warn(ti, "delexicalized text does not align with the original");
      continue;
    }
    for (const auto& sp : *spans) {
      b.AddSpan(ti, sp.slot, sp.start, sp.end, std::nullopt);
      if (user) constraints[sp.slot] = otext.substr(sp.start, sp.end - sp.start);
    }
  }
  SubGoal sg;
  const Json scenario = raw.value("scenario", Json::object());
  sg.domain = Str(scenario, "flow", "customer_service");
  sg.intent = Str(scenario, "subflow", "resolve");
  sg.constraints = constraints;
  b.d().goal.sub_goals.push_back(std::move(sg));
  return b.Finish();
}

// ---- MultiWOZ-style (EmoWOZ, SpokenWOZ) -----------------------------------

bool IsEmptyValue(const std::string& v) {
  const std::string l = ToLower(Trim(v));
  return l.empty() || l == "not mentioned" || l == "none";
}

Goal WozGoal(const Json& goal) {
  Goal g;
  static const std::set<std::string> kSkip = {"message", "topic", "eod"};
  for (auto it = goal.begin(); it != goal.end(); ++it) {
    if (kSkip.count(it.key()) || !it.value().is_object() || it.value().empty()) continue;
    const Json& dj = it.value();
    SubGoal sg;
    sg.domain = it.key();
    const bool book = dj.contains("book") && dj.at("book").is_object() && !dj.at("book").empty();
    sg.intent = book ? "find_and_book" : "find";
    for (const char* part : {"info", "book"}) {
      if (!dj.contains(part) || !dj.at(part).is_object()) continue;
      for (auto s = dj.at(part).begin(); s != dj.at(part).end(); ++s) {
        if (s.value().is_string() || s.value().is_number()) {
          sg.constraints[s.key()] = ScalarString(s.value());
        }
      }
    }
    if (dj.contains("reqt")) {
      const Json& r = dj.at("reqt");
      if (r.is_array()) {
        for (const auto& x : r) {
          if (!sg.constraints.count(x.get<std::string>())) sg.requests.insert(x.get<std::string>());
        }
      } else if (r.is_object()) {
        for (auto x = r.begin(); x != r.end(); ++x) {
          if (!sg.constraints.count(x.key())) sg.requests.insert(x.key());
        }
      }
    }
    if (!sg.constraints.empty() || !sg.requests.empty()) g.sub_goals.push_back(std::move(sg));
  }
  if (goal.contains("message")) {
    const Json& m = goal.at("message");
    if (m.is_string()) {
      g.text = m.get<std::string>();
    } else if (m.is_array()) {
      std::vector<std::string> parts;
      for (const auto& x : m) {
        if (x.is_string()) parts.push_back(x.get<std::string>());
      }
      g.text = Join(parts, " ");
    }
    g.text = std::regex_replace(g.text, std::regex("<[^>]*>"), "");
  }
  return g;
}

SlotMap WozState(const Json& metadata) {
  SlotMap out;
  for (auto d = metadata.begin(); d != metadata.end(); ++d) {
    if (!d.value().is_object()) continue;
    for (const char* part : {"semi", "book"}) {
      if (!d.value().contains(part)) continue;
      const Json& p = d.value().at(part);
      for (auto s = p.begin(); s != p.end(); ++s) {
        if (!s.value().is_string()) continue;
        const std::string v = s.value().get<std::string>();
        if (!IsEmptyValue(v)) out[d.key() + "." + s.key()] = v;
      }
    }
  }
  return out;
}

std::optional<Emotion> WozEmotion(const Json& tj) {
  if (!tj.contains("emotion")) return std::nullopt;
  const Json& e = tj.at("emotion");
  if (e.is_number_integer()) return EmotionFromId(e.get<int>());
  if (e.is_array() && !e.empty()) {
    const Json& first = e.front();
    if (first.is_number_integer()) return EmotionFromId(first.get<int>());
    if (first.is_object() && first.contains("emotion")) {
      return EmotionFromId(first.at("emotion").get<int>());
    }
  }
  if (e.is_object() && e.contains("emotion")) return EmotionFromId(e.at("emotion").get<int>());
  return std::nullopt;
}

IngestResult AdaptWoz(const Json& raw, const std::string& source) {
  const bool spoken = source == "spokenwoz";
  Builder b(Str(raw, "dialogue_id"), source);
  b.d().goal = WozGoal(raw.value("goal", Json::object()));
  SlotMap prev_state;
  std::size_t i = 0;
  for (const Json& tj : Need(raw, "log")) {
    const std::string tag = ToLower(Str(tj, "tag"));
    const bool user = tag.empty() ? i % 2 == 0 : tag == "user";
    ++i;
    const std::size_t ti = b.AddTurn(user ? Role::kUser : Role::kAssistant, Str(tj, "text"));
    const std::string text = b.d().turns[ti].text;
    bool have_spans = false;
    if (tj.contains("span_info")) {
      for (const Json& s : tj.at("span_info")) {
        if (!s.is_array() || s.size() < 5) continue;
        bool ok = false;
        const auto [start, end] = WordRange(text, s.at(3).get<std::size_t>(),
                                            s.at(4).get<std::size_t>(), &ok);
        const std::string value = ScalarString(s.at(2));
        if (!ok) {
          b.Warn(ti, "span_info word range out of bounds; dropped");
          continue;
        }
        const std::string slot = ToLower(ScalarString(s.at(1)));
        // Re-slice by value when trailing punctuation trimming disagrees.
        const std::string sliced = text.substr(start, end - start);
        if (sliced != value && text.compare(start, value.size(), value) == 0) {
          b.AddSpan(ti, slot, start, start + value.size(), value);
        } else {
          b.AddSpan(ti, slot, start, end, value);
        }
        have_spans = true;
      }
    }
    if (user) {
      if (auto e = WozEmotion(tj)) b.d().turns[ti].emotion = e;
    } else if (spoken && tj.contains("metadata") && tj.at("metadata").is_object()) {
      const SlotMap state = WozState(tj.at("metadata"));
      if (ti > 0 && !state.empty()) {
        b.d().state_per_turn[ti - 1] = state;
        if (!have_spans && b.d().turns[ti - 1].slot_spans.empty()) {
          // Derive the previous user turn's spans from the state delta.
          std::vector<std::pair<std::string, std::string>> values;
          for (const auto& [k, v] : state) {
            auto it = prev_state.find(k);
            if (it == prev_state.end() || it->second != v) {
              values.emplace_back(k.substr(k.find('.') + 1), v);
            }
          }
          b.Locate(ti - 1, values);
        }
        prev_state = state;
      }
    }
  }
  return b.Finish();
}

}  // namespace

LocateResult LocateSlotSpans(
    const std::string& utterance,
    const std::vector<std::pair<std::string, std::string>>& values) {
  LocateResult r;
  for (const auto& [slot, value] : values) {
    bool placed = false;
    if (!value.empty()) {
      for (std::size_t p = utterance.find(value); p != std::string::npos;
           p = utterance.find(value, p + 1)) {
        const std::size_t e = p + value.size();
        const bool clash = std::any_of(r.spans.begin(), r.spans.end(), [&](const SlotSpan& s) {
          return p < s.end && s.start < e;
        });
        if (!clash) {
          r.spans.push_back({slot, p, e});
          placed = true;
          break;
        }
      }
    }
    if (!placed) r.unmatched.emplace_back(slot, value);
  }
  return r;
}

std::string TemplateGoalText(const Goal& goal) {
  std::vector<std::string> sentences;
  for (const auto& sg : goal.sub_goals) {
    std::string s = "You want to " + sg.intent + " in the " + sg.domain + " domain.";
    if (!sg.constraints.empty()) {
      std::vector<std::string> parts;
      for (const auto& [k, v] : sg.constraints) parts.push_back(k + " is " + v);
      s += " Make sure that " + Join(parts, ", ") + ".";
    }
    if (!sg.requests.empty()) {
      std::vector<std::string> parts(sg.requests.begin(), sg.requests.end());
      s += " Ask for the " + Join(parts, ", ") + ".";
    }
    sentences.push_back(s);
  }
  return Join(sentences, " ");
}

void MergeConsecutiveTurns(Dialogue& d) {
  std::vector<Turn> merged;
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    Turn& t = d.turns[i];
    if (!merged.empty() && merged.back().role == t.role && t.tagged == t.text &&
        merged.back().tagged == merged.back().text) {
      Turn& m = merged.back();
      const std::size_t offset = m.text.empty() ? 0 : m.text.size() + 1;
      m.text = m.text.empty() ? t.text : m.text + " " + t.text;
      m.tagged = m.text;
      for (const auto& sp : t.slot_spans) {
        m.slot_spans.push_back({sp.slot, sp.start + offset, sp.end + offset});
      }
      if (!m.emotion) m.emotion = t.emotion;
    } else {
      merged.push_back(std::move(t));
    }
    remap[i] = merged.size() - 1;
  }
  std::map<std::size_t, SlotMap> state;
  for (auto& [k, v] : d.state_per_turn) {
    auto it = remap.find(k);
    state[it == remap.end() ? k : it->second] = std::move(v);
  }
  d.turns = std::move(merged);
  d.state_per_turn = std::move(state);
  Reindex(d);
}

IngestResult Adapt(const SourceRecord& rec) {
  const std::string src = ToLower(Trim(rec.source));
  if (src == "generic") return AdaptGeneric(rec.raw);
  if (src == "sgd") return AdaptSgd(rec.raw);
  if (src == "tm2") return AdaptTm2(rec.raw);
  if (src == "abcd") return AdaptAbcd(rec.raw);
  if (src == "emowoz" || src == "spokenwoz") return AdaptWoz(rec.raw, src);
  throw Error("unknown source '" + rec.source + "'");
}

}  // namespace dialaug
