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

#include "dialaug/clients.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dialaug/corpus.h"
#include "dialaug/prompts.h"
#include "dialaug/rng.h"
#include "dialaug/text_util.h"
#include "json.hpp"

namespace dialaug {
namespace {

using nlohmann::json;

std::string Var(const ChatRequest& req, const std::string& key) {
  auto it = req.vars.find(key);
  return it == req.vars.end() ? std::string() : it->second;
}

bool ContainsAny(const std::string& lower,
                 std::initializer_list<std::string_view> needles) {
  for (auto n : needles) {
    if (lower.find(n) != std::string::npos) return true;
  }
  return false;
}

bool IsCapitalized(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

std::string MatchCase(std::string word, const std::string& like) {
  if (IsCapitalized(like) && !word.empty()) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

constexpr std::array<std::string_view, 7> kWeekdays = {
    "monday", "tuesday", "wednesday", "thursday",
    "friday", "saturday", "sunday"};

constexpr std::array<std::string_view, 11> kNumberWords = {
    "zero", "one", "two", "three", "four", "five",
    "six", "seven", "eight", "nine", "ten"};

constexpr std::array<std::string_view, 6> kCities = {
    "London", "Paris", "Cambridge", "Boston", "Seattle", "Denver"};

bool AllDigits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), IsAsciiDigit);
}

// First all-caps token of length >= 2 (e.g. "PNR"), or empty.
std::string FindAcronym(const std::string& text) {
  for (const auto& w : SplitWords(text)) {
    const std::string core = StripTrailingPunct(w);
    if (core.size() < 2) continue;
    bool caps = true;
    for (char c : core) {
      if (!(c >= 'A' && c <= 'Z')) caps = false;
    }
    if (caps) return core;
  }
  return "";
}

std::string SlotLabel(const std::string& slot) {
  std::string label = slot.substr(slot.rfind('.') == std::string::npos
                                      ? 0
                                      : slot.rfind('.') + 1);
  std::replace(label.begin(), label.end(), '_', ' ');
  std::replace(label.begin(), label.end(), '-', ' ');
  return label;
}

std::string TruncateWords(const std::string& text) {
  auto words = SplitWords(text);
  if (words.empty()) return "Let me<bargein>";
  const std::size_t keep = std::max<std::size_t>(1, words.size() / 2);
  words.resize(keep);
  return StripTrailingPunct(Join(words, " ")) + std::string(kBargeInToken);
}

std::string StubBargeIn(const ChatRequest& req) {
  const BargeInType type = ParseBargeInType(Var(req, "type"));
  const BargeInStyle style = ParseBargeInStyle(Var(req, "style"));
  const std::string assistant = Var(req, "assistant_utterance");
  const std::string base =
      assistant.empty() ? std::string("Let me check that for you.") : assistant;
  std::ostringstream out;

  if (type == BargeInType::kErrorRecovery) {
    SlotMap state;
    const std::string state_str = Var(req, "current_state");
    if (!state_str.empty()) {
      const json j = json::parse(state_str, nullptr, false);
      if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
          if (it.value().is_string()) state[it.key()] = it.value();
        }
      }
    }
    if (state.empty()) return "NOT_APPLICABLE";
    auto it = state.begin();
    std::advance(it, StableHash(Var(req, "user_utterance") + assistant) %
                         state.size());
    const std::string& slot = it->first;
    const std::string& correct = it->second;
    const std::string wrong = PlausibleAlternative(correct);
    const std::size_t cut = std::max<std::size_t>(1, (wrong.size() + 1) / 2);
    out << "[Assistant]: Just to confirm, the " << SlotLabel(slot) << " is "
        << wrong.substr(0, cut) << kBargeInToken << "\n";
    switch (style) {
      case BargeInStyle::kImplicit:
        out << "[User]: Huh?\n"
            << "[Assistant]: Sorry, let me check that again. What would you "
               "like me to correct?\n";
        break;
      case BargeInStyle::kRaw:
        out << "[User]: No, that's wrong.\n"
            << "[Assistant]: I apologize. What would you like me to "
               "correct?\n";
        break;
      case BargeInStyle::kInterpreted:
        out << "[User]: No, I said " << correct << ", not " << wrong << ".\n"
            << "[Assistant]: I apologize for the mistake. I'll use " << correct
            << " instead.\n";
        break;
    }
    out << "Erroneous slots: " << json{{slot, wrong}}.dump() << "\n";
    out << "Corrected slots: " << json{{slot, correct}}.dump() << "\n";
    return out.str();
  }

  out << "[Assistant]: " << TruncateWords(base) << "\n";
  if (type == BargeInType::kClarification) {
    switch (style) {
      case BargeInStyle::kImplicit:
        out << "[User]: Hm?\n";
        break;
      case BargeInStyle::kRaw:
        out << "[User]: Sorry, what was that?\n";
        break;
      case BargeInStyle::kInterpreted: {
        const std::string acr = FindAcronym(base);
        out << "[User]: " << (acr.empty() ? "Can you repeat that last part?"
                                          : "What's a " + acr + "?")
            << "\n";
        break;
      }
    }
    out << "[Assistant]: Let me repeat that. " << base << "\n";
  } else {
    switch (style) {
      case BargeInStyle::kImplicit:
        out << "[User]: Uh-huh.\n";
        break;
      case BargeInStyle::kRaw:
        out << "[User]: Got it, that works.\n";
        break;
      case BargeInStyle::kInterpreted:
        out << "[User]: Yes, that would be better for me.\n";
        break;
    }
    out << "[Assistant]: Great, I'll proceed with that.\n";
  }
  return out.str();
}

std::string StubJudge(const ChatRequest& req, JudgeMode mode) {
  if (mode == JudgeMode::kAlwaysYes) return "yes";
  if (mode == JudgeMode::kAlwaysNo) return "no";
  const BargeInType type = ParseBargeInType(Var(req, "type"));
  const std::string utt = Var(req, "assistant_utterance");
  const std::string lower = ToLower(utt);
  bool ok = false;
  switch (type) {
    case BargeInType::kErrorRecovery: {
      const std::string st = Trim(Var(req, "current_state"));
      ok = !st.empty() && st != "{}";
      break;
    }
    case BargeInType::kClarification:
      ok = std::any_of(utt.begin(), utt.end(), IsAsciiDigit) ||
           !FindAcronym(utt).empty() || CountWords(utt) >= 8;
      break;
    case BargeInType::kEfficiency:
      ok = ContainsAny(lower, {"booked", "confirmed", "reserved", "reference",
                               "successfully", "found"});
      break;
  }
  return ok ? "yes" : "no";
}

std::string StubEmotion(const std::string& utterance) {
  const std::string s = ToLower(utterance);
  if (ContainsAny(s, {"stupid", "useless", "idiot"})) return "4";
  if (ContainsAny(s, {"sorry", "my mistake", "apolog"})) return "3";
  if (ContainsAny(s, {"wrong", "that's not"})) return "2";
  if (ContainsAny(s, {"disappoint", "unfortunately"})) return "1";
  if (ContainsAny(s, {"thank"})) return "6";
  if (ContainsAny(s, {"wow", "great", "recommend", "interested"})) return "5";
  return "0";
}

std::string StubSelfCorrection(const ChatRequest& req) {
  const std::string utt = Var(req, "utterance");
  const std::string value = Var(req, "slot_value");
  const std::size_t pos = value.empty() ? std::string::npos : utt.find(value);
  if (pos == std::string::npos) return utt;
  static constexpr std::array<std::string_view, 4> kPatterns = {
      "— no, ", "— wait, I mean ", "— actually, ", "... "};
  const std::string_view pat =
      kPatterns[StableHash(utt + "\x1f" + value) % kPatterns.size()];
  return utt.substr(0, pos) + PlausibleAlternative(value) + std::string(pat) +
         utt.substr(pos);
}

std::string StubRestart(const ChatRequest& req) {
  const std::string utt = Var(req, "utterance");
  const auto words = SplitWords(utt);
  std::size_t k = 2;
  try {
    k = static_cast<std::size_t>(std::stoul(Var(req, "position")));
  } catch (const std::exception&) {
  }
  k = std::clamp<std::size_t>(k, 2, 5);
  k = std::min(k, words.size());
  if (k == 0) return utt;
  std::vector<std::string> frag(words.begin(), words.begin() + k);
  return StripTrailingPunct(Join(frag, " ")) + "... " + utt;
}

std::string StubGoalAlignment(const ChatRequest& req) {
  const std::string utt = ToLower(Var(req, "user_utterance"));
  std::istringstream lines(Var(req, "goal_items"));
  std::string line;
  std::vector<int> hits;
  while (std::getline(lines, line)) {
    const std::size_t dot = line.find(". ");
    if (dot == std::string::npos) continue;
    int num = 0;
    try {
      num = std::stoi(line.substr(0, dot));
    } catch (const std::exception&) {
      continue;
    }
    const std::string item = line.substr(dot + 2);
    bool hit = false;
    constexpr std::string_view kAsk = "ask for the ";
    if (item.rfind(kAsk, 0) == 0) {
      const std::string rest = item.substr(kAsk.size());
      const std::size_t sp = rest.find(' ');
      std::string slot = sp == std::string::npos ? rest : rest.substr(sp + 1);
      slot = ToLower(slot);
      std::string spaced = slot;
      std::replace(spaced.begin(), spaced.end(), '_', ' ');
      hit = utt.find(slot) != std::string::npos ||
            utt.find(spaced) != std::string::npos;
    } else {
      const std::size_t is = item.find(" is ");
      if (is != std::string::npos) {
        const std::string value = ToLower(item.substr(is + 4));
        hit = !value.empty() && utt.find(value) != std::string::npos;
      }
    }
    if (hit) hits.push_back(num);
  }
  std::string out = "[";
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(hits[i]);
  }
  return out + "]";
}

}  // namespace

void ClientConfig::Validate() const {
  if (!(timeout_s > 0)) throw ConfigError("client timeout_s must be positive");
  if (max_retries < 0) throw ConfigError("client max_retries must be >= 0");
  if (max_in_flight < 1) throw ConfigError("client max_in_flight must be >= 1");
  if (backoff_s < 0) throw ConfigError("client backoff_s must be >= 0");
}

std::string RenderPrompt(const ChatRequest& req) {
  switch (req.kind) {
    case PromptKind::kGeneric:
      return Var(req, "prompt");
    case PromptKind::kBargeIn:
      return FillTemplate(BargeInTemplate(ParseBargeInType(Var(req, "type")),
                                          ParseBargeInStyle(Var(req, "style"))),
                          req.vars);
    case PromptKind::kBargeInJudge:
      return FillTemplate(
          BargeInJudgeTemplate(ParseBargeInType(Var(req, "type"))), req.vars);
    case PromptKind::kEmotion:
      return FillTemplate(EmotionTemplate(), req.vars);
    case PromptKind::kSelfCorrection:
      return FillTemplate(SelfCorrectionTemplate(), req.vars);
    case PromptKind::kRestart:
      return FillTemplate(RestartTemplate(), req.vars);
    case PromptKind::kGoalAlignment:
      return FillTemplate(GoalAlignmentTemplate(), req.vars);
  }
  return "";
}

std::string PlausibleAlternative(const std::string& value) {
  const std::string lower = ToLower(Trim(value));
  for (std::size_t i = 0; i < kWeekdays.size(); ++i) {
    if (lower == kWeekdays[i]) {
      return MatchCase(std::string(kWeekdays[(i + 6) % 7]), value);
    }
  }
  static const std::map<std::string, std::string> kSwaps = {
      {"north", "south"},      {"south", "north"},
      {"east", "west"},        {"west", "east"},
      {"centre", "north"},     {"center", "north"},
      {"cheap", "expensive"},  {"expensive", "cheap"},
      {"moderate", "cheap"},   {"yes", "no"},
      {"no", "yes"},
  };
  if (auto it = kSwaps.find(lower); it != kSwaps.end()) {
    return MatchCase(it->second, value);
  }
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (lower == kNumberWords[i]) {
      const std::size_t j = i >= 3 ? i - 2 : i + 2;
      return MatchCase(std::string(kNumberWords[j]), value);
    }
  }
  if (AllDigits(value) && value.size() <= 9) {
    const long n = std::stol(value);
    return std::to_string(n >= 3 ? n - 2 : n + 2);
  }
  if (value.size() == 5 && value[2] == ':' && AllDigits(value.substr(0, 2)) &&
      AllDigits(value.substr(3))) {
    const int h = (std::stoi(value.substr(0, 2)) + 1) % 24;
    std::string out = value;
    out[0] = static_cast<char>('0' + h / 10);
    out[1] = static_cast<char>('0' + h % 10);
    return out;
  }
  const auto last_digit = value.find_last_of("0123456789");
  if (last_digit != std::string::npos) {
    std::string out = value;
    out[last_digit] = static_cast<char>('0' + (value[last_digit] - '0' + 1) % 10);
    return out;
  }
  const std::size_t start = StableHash(value) % kCities.size();
  for (std::size_t k = 0; k < kCities.size(); ++k) {
    const std::string_view c = kCities[(start + k) % kCities.size()];
    if (ToLower(c) != lower) return std::string(c);
  }
  return value + " street";
}

std::string StubChatClient::Chat(const ChatRequest& req) {
  switch (req.kind) {
    case PromptKind::kGeneric: {
      for (auto it = req.messages.rbegin(); it != req.messages.rend(); ++it) {
        if (it->role == "user") return it->content;
      }
      return Var(req, "prompt");
    }
    case PromptKind::kBargeIn:
      return StubBargeIn(req);
    case PromptKind::kBargeInJudge:
      return StubJudge(req, opts_.judge_mode);
    case PromptKind::kEmotion:
      return StubEmotion(Var(req, "utterance"));
    case PromptKind::kSelfCorrection:
      return StubSelfCorrection(req);
    case PromptKind::kRestart:
      return StubRestart(req);
    case PromptKind::kGoalAlignment:
      return StubGoalAlignment(req);
  }
  return "";
}

Audio StubTtsClient::Synthesize(const std::string& text,
                                const std::string& /*style_instruction*/,
                                const std::string& /*ref_audio*/) {
  if (text.empty()) throw ContractViolation("empty synthesis text");
  Audio a;
  a.sample_rate = sample_rate_;
  const double seconds = kSecondsPerChar * static_cast<double>(Utf8Length(text));
  a.samples.assign(static_cast<std::size_t>(std::llround(seconds * sample_rate_)),
                   0);
  return a;
}

void StubAsrClient::Register(const std::filesystem::path& audio,
                             std::string text) {
  truth_[audio.lexically_normal().string()] = std::move(text);
}

std::string StubAsrClient::Transcribe(const std::filesystem::path& audio) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(audio, ec)) {
    throw ClientError("audio not readable: " + audio.string());
  }
  const std::string key = audio.lexically_normal().string();
  auto it = truth_.find(key);
  if (it == truth_.end()) {
    throw ClientError("no transcript registered for " + key);
  }
  if (corruption_ <= 0) return it->second;
  Rng rng(StableHash(key));
  auto words = SplitWords(it->second);
  for (auto& w : words) {
    if (rng.Bernoulli(corruption_)) w = "xx" + w;
  }
  return Join(words, " ");
}

void StubEmbedClient::Register(const std::filesystem::path& audio,
                               std::string speaker_id) {
  speaker_of_[audio.lexically_normal().string()] = std::move(speaker_id);
}

std::vector<double> StubEmbedClient::VectorFor(
    const std::string& speaker_id) const {
  Rng rng(StableHash("spk:" + speaker_id));
  std::vector<double> v(dim_);
  for (auto& x : v) x = rng.Uniform() * 2.0 - 1.0;
  return v;
}

std::vector<double> StubEmbedClient::Embed(const std::filesystem::path& audio) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(audio, ec)) {
    throw ClientError("audio not readable: " + audio.string());
  }
  const std::string key = audio.lexically_normal().string();
  auto it = speaker_of_.find(key);
  return VectorFor(it == speaker_of_.end() ? key : it->second);
}

}  // namespace dialaug
