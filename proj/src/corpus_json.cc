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

#include "dialaug/corpus_json.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

Json SlotMapJson(const SlotMap& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

SlotMap SlotMapFromJson(const Json& j) {
  SlotMap m;
  if (!j.is_object()) return m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_string()) {
      m[it.key()] = it.value().get<std::string>();
    } else if (it.value().is_object()) {
      // Nested {"domain": {"slot": value}} states flatten to "domain.slot".
      for (const auto& [slot, value] : SlotMapFromJson(it.value())) {
        m[it.key() + "." + slot] = value;
      }
    } else if (!it.value().is_null()) {
      m[it.key()] = it.value().dump();
    }
  }
  return m;
}

std::string GetString(const Json& j, const char* key,
                      const std::string& fallback = "") {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}

}  // namespace

Json ToJson(const Goal& g) {
  Json structured;
  Json domains = Json::array();
  Json intents = Json::array();
  Json subs = Json::array();
  for (const auto& sg : g.sub_goals) {
    if (std::find(domains.begin(), domains.end(), sg.domain) == domains.end()) {
      domains.push_back(sg.domain);
    }
    intents.push_back(sg.intent);
    Json reqs = Json::array();
    for (const auto& r : sg.requests) reqs.push_back(r);
    subs.push_back({{"domain", sg.domain},
                    {"intent", sg.intent},
                    {"constraints", SlotMapJson(sg.constraints)},
                    {"requests", reqs}});
  }
  structured["domains"] = domains;
  structured["intents"] = intents;
  structured["sub_goals"] = subs;
  return {{"text", g.text}, {"structured", structured}};
}

Goal GoalFromJson(const Json& j) {
  Goal g;
  g.text = GetString(j, "text");
  const Json* s = j.contains("structured") ? &j.at("structured") : &j;
  if (s->contains("sub_goals")) {
    for (const auto& sj : s->at("sub_goals")) {
      SubGoal sg;
      sg.domain = GetString(sj, "domain");
      sg.intent = GetString(sj, "intent");
      if (sj.contains("constraints")) {
        sg.constraints = SlotMapFromJson(sj.at("constraints"));
      }
      if (sj.contains("requests")) {
        for (const auto& r : sj.at("requests")) {
          sg.requests.insert(r.get<std::string>());
        }
      }
      g.sub_goals.push_back(std::move(sg));
    }
  }
  return g;
}

Json ToJson(const Turn& t) {
  Json j;
  j["index"] = t.index;
  j["role"] = ToString(t.role);
  j["text"] = t.text;
  if (t.tagged != t.text) j["tagged"] = t.tagged;
  if (!t.slot_spans.empty()) {
    Json spans = Json::array();
    for (const auto& sp : t.slot_spans) {
      spans.push_back({{"slot", sp.slot}, {"start", sp.start}, {"end", sp.end}});
    }
    j["slot_spans"] = spans;
  }
  if (t.emotion) {
    j["emotion"] = {{"label", static_cast<int>(*t.emotion)},
                    {"name", ToString(*t.emotion)}};
  }
  if (t.bargein) {
    Json b = {{"type", ToString(t.bargein->type)},
              {"subtype", BargeInSubtype(t.bargein->type, t.bargein->style)},
              {"style", ToString(t.bargein->style)}};
    if (t.bargein->erroneous_slots) {
      b["erroneous_slots"] = SlotMapJson(*t.bargein->erroneous_slots);
    }
    if (t.bargein->corrected_slots) {
      b["corrected_slots"] = SlotMapJson(*t.bargein->corrected_slots);
    }
    j["bargein"] = b;
  }
  if (!t.disfluency.empty()) {
    Json arr = Json::array();
    for (const auto& dm : t.disfluency) {
      Json e = {{"type", ToString(dm.type)}, {"position", dm.position}};
      if (dm.type == DisfluencyType::kREP) {
        e["repeated_unit"] = dm.inserted_span;
      } else {
        e["inserted_span"] = dm.inserted_span;
      }
      if (dm.original_value) e["original_value"] = *dm.original_value;
      if (dm.wrong_value) e["wrong_value"] = *dm.wrong_value;
      arr.push_back(e);
    }
    j["disfluency"] = arr;
  }
  if (t.crossturn) {
    const auto& c = *t.crossturn;
    Json cj = {{"slot_name", c.slot_name},   {"group", c.group},
               {"chunk_index", c.chunk_index}, {"chunk_count", c.chunk_count},
               {"chunk_text", c.chunk_text}, {"is_error", c.is_error}};
    if (c.corrected_in_turn) cj["corrected_in_turn"] = *c.corrected_in_turn;
    j["crossturn"] = cj;
  }
  if (t.audio_ref) j["audio_path"] = *t.audio_ref;
  if (t.duration_s) j["duration_s"] = *t.duration_s;
  return j;
}

Turn TurnFromJson(const Json& j, std::size_t default_index) {
  Turn t;
  t.index = j.value("index", default_index);
  t.role = ParseRole(GetString(j, "role", "user"));
  t.text = GetString(j, "text");
  t.tagged = GetString(j, "tagged", t.text);
  if (j.contains("slot_spans")) {
    for (const auto& sj : j.at("slot_spans")) {
      t.slot_spans.push_back({sj.at("slot").get<std::string>(),
                              sj.at("start").get<std::size_t>(),
                              sj.at("end").get<std::size_t>()});
    }
  }
  if (j.contains("emotion") && !j.at("emotion").is_null()) {
    const Json& e = j.at("emotion");
    if (e.is_number_integer()) {
      t.emotion = EmotionFromId(e.get<int>());
    } else if (e.is_string()) {
      t.emotion = ParseEmotion(e.get<std::string>());
    } else if (e.contains("label")) {
      t.emotion = EmotionFromId(e.at("label").get<int>());
    } else {
      t.emotion = ParseEmotion(GetString(e, "name"));
    }
  }
  if (j.contains("bargein") && !j.at("bargein").is_null()) {
    const Json& b = j.at("bargein");
    BargeInMeta m;
    m.type = ParseBargeInType(GetString(b, "type"));
    if (b.contains("style")) {
      m.style = ParseBargeInStyle(GetString(b, "style"));
    } else {
      const std::string sub = GetString(b, "subtype");
      const auto us = sub.find('_');
      m.style = ParseBargeInStyle(us == std::string::npos ? sub
                                                          : sub.substr(us + 1));
    }
    if (b.contains("erroneous_slots")) {
      m.erroneous_slots = SlotMapFromJson(b.at("erroneous_slots"));
    }
    if (b.contains("corrected_slots")) {
      m.corrected_slots = SlotMapFromJson(b.at("corrected_slots"));
    }
    t.bargein = std::move(m);
  }
  if (j.contains("disfluency")) {
    for (const auto& dj : j.at("disfluency")) {
      DisfluencyMeta dm;
      dm.type = ParseDisfluencyType(GetString(dj, "type"));
      dm.position = dj.value("position", std::size_t{0});
      dm.inserted_span = dj.contains("repeated_unit")
                             ? GetString(dj, "repeated_unit")
                             : GetString(dj, "inserted_span");
      if (dj.contains("original_value")) {
        dm.original_value = GetString(dj, "original_value");
      }
      if (dj.contains("wrong_value")) {
        dm.wrong_value = GetString(dj, "wrong_value");
      }
      t.disfluency.push_back(std::move(dm));
    }
  }
  if (j.contains("crossturn") && !j.at("crossturn").is_null()) {
    const Json& c = j.at("crossturn");
    CrossTurnMeta m;
    m.slot_name = GetString(c, "slot_name");
    m.group = c.value("group", 0);
    m.chunk_index = c.value("chunk_index", std::size_t{0});
    m.chunk_count = c.value("chunk_count", std::size_t{0});
    m.chunk_text = GetString(c, "chunk_text");
    m.is_error = c.value("is_error", false);
    if (c.contains("corrected_in_turn")) {
      m.corrected_in_turn = c.at("corrected_in_turn").get<std::size_t>();
    }
    t.crossturn = std::move(m);
  }
  if (j.contains("audio_path") && j.at("audio_path").is_string()) {
    t.audio_ref = j.at("audio_path").get<std::string>();
  }
  if (j.contains("duration_s") && j.at("duration_s").is_number()) {
    t.duration_s = j.at("duration_s").get<double>();
  }
  return t;
}

Json ToJson(const SpeakerProfile& s) {
  return {{"speaker_id", s.speaker_id},
          {"category", ToString(s.accent_pool)},
          {"country", s.country},
          {"age", s.age},
          {"age_bin", ToString(s.age_bin)},
          {"sex", ToString(s.gender)},
          {"ref_audio", s.ref_audio},
          {"ref_duration_s", s.ref_duration_s}};
}

SpeakerProfile SpeakerFromJson(const Json& j) {
  SpeakerProfile s;
  s.speaker_id = GetString(j, "speaker_id");
  s.accent_pool = ParseAccentPool(
      GetString(j, "category", GetString(j, "accent_pool", "Native")));
  s.country = GetString(j, "country");
  s.age = j.value("age", 30);
  s.age_bin = j.contains("age_bin") ? ParseAgeBin(GetString(j, "age_bin"))
                                    : AgeBinFor(s.age);
  s.gender = ParseGender(GetString(j, "sex", GetString(j, "gender", "female")));
  s.ref_audio = GetString(j, "ref_audio");
  s.ref_duration_s = j.value("ref_duration_s", 0.0);
  return s;
}

Json ToJson(const Dialogue& d) {
  Json j;
  j["dialogue_id"] = d.dialogue_id;
  j["source"] = d.source;
  j["goal"] = ToJson(d.goal);
  Json turns = Json::array();
  for (const auto& t : d.turns) turns.push_back(ToJson(t));
  j["turns"] = turns;
  if (d.user_speaker) j["speaker"] = ToJson(*d.user_speaker);
  if (d.assistant_speaker) j["assistant_speaker"] = ToJson(*d.assistant_speaker);
  if (!d.state_per_turn.empty()) {
    Json states = Json::object();
    for (const auto& [idx, state] : d.state_per_turn) {
      states[std::to_string(idx)] = SlotMapJson(state);
    }
    j["state_per_turn"] = states;
  }
  return j;
}

Dialogue DialogueFromJson(const Json& j) {
  Dialogue d;
  d.dialogue_id = GetString(j, "dialogue_id");
  d.source = GetString(j, "source", "generic");
  if (j.contains("goal")) d.goal = GoalFromJson(j.at("goal"));
  if (j.contains("turns")) {
    std::size_t i = 0;
    for (const auto& tj : j.at("turns")) d.turns.push_back(TurnFromJson(tj, i++));
  }
  if (j.contains("speaker") && j.at("speaker").is_object()) {
    d.user_speaker = SpeakerFromJson(j.at("speaker"));
  }
  if (j.contains("assistant_speaker") && j.at("assistant_speaker").is_object()) {
    d.assistant_speaker = SpeakerFromJson(j.at("assistant_speaker"));
  }
  if (j.contains("state_per_turn")) {
    for (auto it = j.at("state_per_turn").begin();
         it != j.at("state_per_turn").end(); ++it) {
      d.state_per_turn[std::stoul(it.key())] = SlotMapFromJson(it.value());
    }
  }
  return d;
}

std::string DumpLine(const Json& j) { return j.dump(); }

std::vector<Json> ReadJsonDocuments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::vector<Json> docs;
  const std::string trimmed = Trim(content);
  if (trimmed.empty()) return docs;
  // Whole-file parse first; fall back to one document per line.
  Json whole = Json::parse(trimmed, nullptr, /*allow_exceptions=*/false);
  if (!whole.is_discarded()) {
    if (whole.is_array()) {
      for (auto& e : whole) docs.push_back(std::move(e));
    } else {
      docs.push_back(std::move(whole));
    }
    return docs;
  }
  std::istringstream lines(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      docs.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": " +
                  e.what());
    }
  }
  return docs;
}

std::vector<Dialogue> ReadDialogues(const std::filesystem::path& path) {
  std::vector<Dialogue> out;
  for (const auto& j : ReadJsonDocuments(path)) {
    out.push_back(DialogueFromJson(j));
  }
  return out;
}

void WriteNdjson(const std::filesystem::path& path,
                 const std::vector<Json>& rows) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& r : rows) out << DumpLine(r) << '\n';
}

void WriteDialogues(const std::filesystem::path& path,
                    const std::vector<Dialogue>& dialogues) {
  std::vector<Json> rows;
  rows.reserve(dialogues.size());
  for (const auto& d : dialogues) rows.push_back(ToJson(d));
  WriteNdjson(path, rows);
}

}  // namespace dialaug
