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

#include "dialaug/bargein.h"

#include <iostream>
#include <map>
#include <sstream>

#include "dialaug/errors.h"
#include "dialaug/text_util.h"
#include "json.hpp"

namespace dialaug {
namespace {

using nlohmann::json;

void Flatten(const json& j, const std::string& prefix, SlotMap& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      Flatten(it.value(), key, out);
    } else if (it.value().is_string()) {
      out[key] = it.value().get<std::string>();
    } else {
      out[key] = it.value().dump();
    }
  }
}

std::optional<SlotMap> ParseSlots(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  SlotMap out;
  Flatten(j, "", out);
  return out;
}

std::string StateJson(const SlotMap& state) {
  json j = json::object();
  for (const auto& [k, v] : state) j[k] = v;
  return j.dump();
}

// Looks a corrected slot up in the flattened state, accepting a bare slot
// name for a "domain.slot" key.
std::optional<std::string> StateValue(const SlotMap& state, const std::string& key) {
  if (auto it = state.find(key); it != state.end()) return it->second;
  std::optional<std::string> found;
  for (const auto& [k, v] : state) {
    if (k.size() > key.size() && k.compare(k.size() - key.size(), key.size(), key) == 0 &&
        k[k.size() - key.size() - 1] == '.') {
      if (found && *found != v) return std::nullopt;
      found = v;
    }
  }
  return found;
}

bool StartsWithCi(const std::string& s, std::string_view prefix) {
  return s.size() >= prefix.size() && ToLower(s.substr(0, prefix.size())) == prefix;
}

void ShiftState(Dialogue& d, std::size_t from, std::size_t by) {
  std::map<std::size_t, SlotMap> shifted;
  for (auto& [k, v] : d.state_per_turn) shifted[k >= from ? k + by : k] = std::move(v);
  d.state_per_turn = std::move(shifted);
}

}  // namespace

void BargeInConfig::Validate() const {
  if (!(sample_rate >= 0 && sample_rate <= 1)) {
    throw ConfigError("barge-in sample_rate must be in [0, 1]");
  }
}

std::vector<BargeInCandidate> SampleCandidates(const Dialogue& d,
                                               const BargeInConfig& cfg,
                                               Rng& rng) {
  std::vector<BargeInCandidate> out;
  for (const Turn& t : d.turns) {
    if (t.role != Role::kUser) continue;
    if (!rng.Bernoulli(cfg.sample_rate)) continue;
    const auto type = static_cast<BargeInType>(rng.Index(3));
    const auto style = static_cast<BargeInStyle>(rng.Index(3));
    out.push_back({t.index, type, style});
  }
  return out;
}

std::string ContextString(const Dialogue& d, std::size_t end) {
  std::string out;
  for (std::size_t i = 0; i < end && i < d.turns.size(); ++i) {
    out += (d.turns[i].role == Role::kUser ? "[User]: " : "[Assistant]: ") +
           d.turns[i].text + "\n";
  }
  return out;
}

std::optional<std::size_t> ReplyIndex(const Dialogue& d, std::size_t user_turn) {
  if (user_turn + 1 < d.turns.size() &&
      d.turns[user_turn + 1].role == Role::kAssistant) {
    return user_turn + 1;
  }
  return std::nullopt;
}

namespace {

std::map<std::string, std::string> PromptVars(const Dialogue& d,
                                              const BargeInCandidate& c,
                                              const SlotMap& state) {
  const Turn& user = d.turns.at(c.turn_idx);
  const auto reply = ReplyIndex(d, c.turn_idx);
  std::string assistant;
  if (reply) {
    assistant = d.turns[*reply].text;
  } else {
    for (std::size_t i = c.turn_idx; i-- > 0;) {
      if (d.turns[i].role == Role::kAssistant) {
        assistant = d.turns[i].text;
        break;
      }
    }
  }
  std::string exchange = "[User]: " + user.text + "\n";
  if (reply) exchange += "[Assistant]: " + assistant + "\n";
  return {{"type", std::string(ToString(c.type))},
          {"style", std::string(ToString(c.style))},
          {"context_str", ContextString(d, c.turn_idx)},
          {"current_exchange", exchange},
          {"current_state", StateJson(state)},
          {"assistant_utterance", assistant},
          {"user_utterance", user.text}};
}

}  // namespace

bool JudgeValidity(const Dialogue& d, const BargeInCandidate& c,
                   ChatClient& judge) {
  ChatRequest req;
  req.kind = PromptKind::kBargeInJudge;
  req.vars = PromptVars(d, c, StateAt(d, c.turn_idx));
  try {
    const std::string ans = ToLower(Trim(judge.Chat(req)));
    return ans.rfind("yes", 0) == 0;
  } catch (const ClientError& e) {
    std::cerr << "warning: " << d.dialogue_id << " turn " << c.turn_idx
              << ": barge-in judge failed, skipping: " << e.what() << "\n";
    return false;
  }
}

std::optional<InsertionBlock> ParseInsertion(const std::string& response,
                                             const BargeInCandidate& c,
                                             const SlotMap& state,
                                             std::string* reason) {
  auto reject = [&](std::string why) -> std::optional<InsertionBlock> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  InsertionBlock block;
  block.meta.type = c.type;
  block.meta.style = c.style;
  std::optional<SlotMap> erroneous, corrected;
  std::istringstream lines(response);
  std::string line;
  while (std::getline(lines, line)) {
    line = Trim(line);
    if (line.empty()) continue;
    if (ToLower(line).find("not_applicable") != std::string::npos) {
      return reject("generator declined the barge-in");
    }
    Turn t;
    if (StartsWithCi(line, "[assistant]:")) {
      t.role = Role::kAssistant;
      t.text = Trim(line.substr(12));
    } else if (StartsWithCi(line, "[user]:")) {
      t.role = Role::kUser;
      t.text = Trim(line.substr(7));
    } else if (StartsWithCi(line, "erroneous slots:")) {
      erroneous = ParseSlots(Trim(line.substr(16)));
      if (!erroneous) return reject("malformed erroneous slots");
      continue;
    } else if (StartsWithCi(line, "corrected slots:")) {
      corrected = ParseSlots(Trim(line.substr(16)));
      if (!corrected) return reject("malformed corrected slots");
      continue;
    } else {
      continue;
    }
    if (t.text.empty()) return reject("empty turn in generated block");
    t.tagged = t.text;
    block.turns.push_back(std::move(t));
  }
  if (block.turns.size() < 2) return reject("block needs a truncated turn and an interruption");
  for (std::size_t i = 0; i < block.turns.size(); ++i) {
    const Role want = i % 2 == 0 ? Role::kAssistant : Role::kUser;
    if (block.turns[i].role != want) return reject("block roles do not alternate");
    const std::string& text = block.turns[i].text;
    const std::size_t tok = text.find(kBargeInToken);
    if (i == 0) {
      if (tok == std::string::npos || tok + kBargeInToken.size() != text.size()) {
        return reject("truncated turn does not end with <bargein>");
      }
      if (Trim(text.substr(0, tok)).empty()) return reject("nothing spoken before <bargein>");
    } else if (tok != std::string::npos) {
      return reject("<bargein> outside the truncated turn");
    }
  }
  if (c.type == BargeInType::kErrorRecovery) {
    if (!erroneous || !corrected || erroneous->empty()) {
      return reject("error recovery without slot records");
    }
    if (erroneous->size() != corrected->size()) return reject("slot key sets differ");
    for (const auto& [k, v] : *corrected) {
      if (!erroneous->count(k)) return reject("slot key sets differ");
      const auto truth = StateValue(state, k);
      if (!truth) return reject("corrected slot '" + k + "' not in dialogue state");
      if (NormalizeValue(*truth) != NormalizeValue(v)) {
        return reject("corrected slot '" + k + "' disagrees with dialogue state");
      }
      if (NormalizeValue(erroneous->at(k)) == NormalizeValue(v)) {
        return reject("erroneous value equals the corrected value");
      }
    }
    block.meta.erroneous_slots = erroneous;
    block.meta.corrected_slots = corrected;
  }
  block.turns[0].bargein = block.meta;
  block.turns[1].bargein = block.meta;
  return block;
}

std::optional<InsertionBlock> GenerateInsertion(const Dialogue& d,
                                                const BargeInCandidate& c,
                                                const SlotMap& state,
                                                ChatClient& gen,
                                                std::string* reason) {
  ChatRequest req;
  req.kind = PromptKind::kBargeIn;
  req.vars = PromptVars(d, c, state);
  std::string response;
  try {
    response = gen.Chat(req);
  } catch (const ClientError& e) {
    if (reason) *reason = std::string("generator failed: ") + e.what();
    return std::nullopt;
  }
  return ParseInsertion(response, c, state, reason);
}

std::size_t ApplyInsertion(Dialogue& d, std::size_t user_turn,
                           InsertionBlock block) {
  if (user_turn >= d.turns.size() || d.turns[user_turn].role != Role::kUser) {
    throw ContractViolation("barge-in must follow a user turn");
  }
  if (ReplyIndex(d, user_turn) && block.turns.back().role == Role::kAssistant) {
    block.turns.pop_back();
  }
  const std::size_t at = user_turn + 1;
  const std::size_t n = block.turns.size();
  d.turns.insert(d.turns.begin() + static_cast<long>(at),
                 std::make_move_iterator(block.turns.begin()),
                 std::make_move_iterator(block.turns.end()));
  ShiftState(d, at, n);
  Reindex(d);
  return n;
}

BargeInCounts AugmentBargeIn(Dialogue& d, const BargeInConfig& cfg,
                             ChatClient& judge, ChatClient& gen, Rng& rng) {
  cfg.Validate();
  BargeInCounts counts;
  const auto candidates = SampleCandidates(d, cfg, rng);
  counts.candidates = candidates.size();
  std::size_t offset = 0;
  for (BargeInCandidate c : candidates) {
    c.turn_idx += offset;
    if (!JudgeValidity(d, c, judge)) continue;
    ++counts.judged_valid;
    std::string reason;
    auto block = GenerateInsertion(d, c, StateAt(d, c.turn_idx), gen, &reason);
    if (!block) {
      ++counts.rejected;
      std::cerr << "warning: " << d.dialogue_id << " turn " << c.turn_idx
                << ": barge-in rejected: " << reason << "\n";
      continue;
    }
    offset += ApplyInsertion(d, c.turn_idx, std::move(*block));
    ++counts.inserted;
  }
  return counts;
}

}  // namespace dialaug
