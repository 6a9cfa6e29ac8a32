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

#include "dialaug/config.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "dialaug/errors.h"

namespace dialaug {
namespace {

constexpr Strategy kAllStrategies[] = {
    Strategy::kArgmax, Strategy::kProbThreshold, Strategy::kTailThreshold,
    Strategy::kListenRelative, Strategy::kLinearWeighted};

void CheckKeys(const Json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

template <typename T>
void Read(const Json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

ClientConfig ClientFromJson(const Json& j, ClientConfig c, const std::string& where) {
  CheckKeys(j, {"endpoint", "model", "timeout_s", "max_retries", "temperature",
                "backoff_s", "max_in_flight", "api_token"},
            where);
  Read(j, "endpoint", c.endpoint, where);
  Read(j, "model", c.model, where);
  Read(j, "timeout_s", c.timeout_s, where);
  Read(j, "max_retries", c.max_retries, where);
  Read(j, "temperature", c.temperature, where);
  Read(j, "backoff_s", c.backoff_s, where);
  Read(j, "max_in_flight", c.max_in_flight, where);
  Read(j, "api_token", c.api_token, where);
  return c;
}

Json ClientToJson(const ClientConfig& c) {
  // The token is never written back out.
  return {{"endpoint", c.endpoint},   {"model", c.model},
          {"timeout_s", c.timeout_s}, {"max_retries", c.max_retries},
          {"temperature", c.temperature}, {"backoff_s", c.backoff_s},
          {"max_in_flight", c.max_in_flight}};
}

}  // namespace

void SplitRatios::Validate() const {
  if (train < 0 || valid < 0 || test < 0) throw ConfigError("negative split ratio");
  if (std::abs(train + valid + test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
}

PipelineConfig PipelineConfig::Defaults() {
  PipelineConfig c;
  for (Strategy s : kAllStrategies) c.strategies[s] = StrategyConfig::Defaults(s);
  c.asr.timeout_s = 120;
  c.tts.timeout_s = 120;
  return c;
}

void PipelineConfig::Validate() const {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  crossturn.Validate();
  bargein.Validate();
  disfluency.Validate();
  pool_weights.Validate();
  for (const auto& [s, sc] : strategies) sc.Validate();
  split.Validate();
  if (embed_dim == 0) throw ConfigError("embed_dim must be positive");
  if (stub_asr_corruption < 0 || stub_asr_corruption > 1) {
    throw ConfigError("stub_asr_corruption must lie in [0, 1]");
  }
  if (!stub) {
    for (const ClientConfig* cc : {&chat, &tts, &asr, &embed}) cc->Validate();
  }
}

PipelineConfig ConfigFromJson(const Json& j) {
  PipelineConfig c = PipelineConfig::Defaults();
  CheckKeys(j, {"seed", "workers", "stub", "stages", "crossturn", "bargein",
                "disfluency", "speakers", "turn_taking", "clients", "split",
                "synthesis", "validation"},
            "config");
  Read(j, "seed", c.global_seed, "config");
  Read(j, "workers", c.workers, "config");
  Read(j, "stub", c.stub, "config");
  if (j.contains("stages")) {
    const Json& s = j.at("stages");
    CheckKeys(s, {"crossturn", "bargein", "disfluency", "emotion", "speakers", "synthesis"},
              "stages");
    Read(s, "crossturn", c.stages.crossturn, "stages");
    Read(s, "bargein", c.stages.bargein, "stages");
    Read(s, "disfluency", c.stages.disfluency, "stages");
    Read(s, "emotion", c.stages.emotion, "stages");
    Read(s, "speakers", c.stages.speakers, "stages");
    Read(s, "synthesis", c.stages.synthesis, "stages");
  }
  if (j.contains("crossturn")) {
    const Json& s = j.at("crossturn");
    CheckKeys(s, {"p_error", "min_digits", "min_code_len", "categorical_self_correction",
                  "categorical_rate"},
              "crossturn");
    Read(s, "p_error", c.crossturn.p_error, "crossturn");
    Read(s, "min_digits", c.crossturn.min_digits, "crossturn");
    Read(s, "min_code_len", c.crossturn.min_code_len, "crossturn");
    Read(s, "categorical_self_correction", c.crossturn.categorical_self_correction,
         "crossturn");
    Read(s, "categorical_rate", c.crossturn.categorical_rate, "crossturn");
  }
  if (j.contains("bargein")) {
    CheckKeys(j.at("bargein"), {"sample_rate"}, "bargein");
    Read(j.at("bargein"), "sample_rate", c.bargein.sample_rate, "bargein");
  }
  if (j.contains("disfluency")) {
    const Json& s = j.at("disfluency");
    CheckKeys(s, {"b", "slot_window_words", "p_slot_local"}, "disfluency");
    Read(s, "b", c.disfluency.b, "disfluency");
    Read(s, "slot_window_words", c.disfluency.slot_window_words, "disfluency");
    Read(s, "p_slot_local", c.disfluency.p_slot_local, "disfluency");
  }
  if (j.contains("speakers")) {
    const Json& s = j.at("speakers");
    CheckKeys(s, {"weights", "manifest", "assistant_manifest"}, "speakers");
    if (s.contains("weights")) {
      c.pool_weights.weights.clear();
      for (auto it = s.at("weights").begin(); it != s.at("weights").end(); ++it) {
        c.pool_weights.weights[ParseAccentPool(it.key())] = it.value().get<double>();
      }
    }
    Read(s, "manifest", c.speaker_manifest, "speakers");
    Read(s, "assistant_manifest", c.assistant_manifest, "speakers");
  }
  if (j.contains("turn_taking")) {
    const Json& s = j.at("turn_taking");
    CheckKeys(s, {"default_strategy", "strategies"}, "turn_taking");
    if (s.contains("default_strategy")) {
      c.default_strategy = ParseStrategy(s.at("default_strategy").get<std::string>());
    }
    if (s.contains("strategies")) {
      for (auto it = s.at("strategies").begin(); it != s.at("strategies").end(); ++it) {
        const Strategy st = ParseStrategy(it.key());
        StrategyConfig& sc = c.strategies[st];
        const std::string where = "turn_taking.strategies." + it.key();
        CheckKeys(it.value(), {"window", "t_turnend", "t_bargein"}, where);
        Read(it.value(), "window", sc.window, where);
        Read(it.value(), "t_turnend", sc.t_turnend, where);
        Read(it.value(), "t_bargein", sc.t_bargein, where);
      }
    }
  }
  if (j.contains("clients")) {
    const Json& s = j.at("clients");
    CheckKeys(s, {"chat", "tts", "asr", "embed", "embed_dim", "stub_asr_corruption"},
              "clients");
    if (s.contains("chat")) c.chat = ClientFromJson(s.at("chat"), c.chat, "clients.chat");
    if (s.contains("tts")) c.tts = ClientFromJson(s.at("tts"), c.tts, "clients.tts");
    if (s.contains("asr")) c.asr = ClientFromJson(s.at("asr"), c.asr, "clients.asr");
    if (s.contains("embed")) c.embed = ClientFromJson(s.at("embed"), c.embed, "clients.embed");
    Read(s, "embed_dim", c.embed_dim, "clients");
    Read(s, "stub_asr_corruption", c.stub_asr_corruption, "clients");
  }
  if (j.contains("split")) {
    const Json& s = j.at("split");
    CheckKeys(s, {"train", "valid", "test"}, "split");
    Read(s, "train", c.split.train, "split");
    Read(s, "valid", c.split.valid, "split");
    Read(s, "test", c.split.test, "split");
  }
  if (j.contains("synthesis")) {
    CheckKeys(j.at("synthesis"), {"audio_root"}, "synthesis");
    Read(j.at("synthesis"), "audio_root", c.audio_root, "synthesis");
  }
  if (j.contains("validation")) {
    CheckKeys(j.at("validation"), {"wer_sample_n"}, "validation");
    Read(j.at("validation"), "wer_sample_n", c.wer_sample_n, "validation");
  }
  return c;
}

Json ConfigToJson(const PipelineConfig& c) {
  Json strategies = Json::object();
  for (const auto& [s, sc] : c.strategies) {
    strategies[std::string(ToString(s))] = {
        {"window", sc.window}, {"t_turnend", sc.t_turnend}, {"t_bargein", sc.t_bargein}};
  }
  Json weights = Json::object();
  for (const auto& [p, w] : c.pool_weights.weights) weights[std::string(ToString(p))] = w;
  return {
      {"seed", c.global_seed},
      {"workers", c.workers},
      {"stub", c.stub},
      {"stages",
       {{"crossturn", c.stages.crossturn},
        {"bargein", c.stages.bargein},
        {"disfluency", c.stages.disfluency},
        {"emotion", c.stages.emotion},
        {"speakers", c.stages.speakers},
        {"synthesis", c.stages.synthesis}}},
      {"crossturn",
       {{"p_error", c.crossturn.p_error},
        {"min_digits", c.crossturn.min_digits},
        {"min_code_len", c.crossturn.min_code_len},
        {"categorical_self_correction", c.crossturn.categorical_self_correction},
        {"categorical_rate", c.crossturn.categorical_rate}}},
      {"bargein", {{"sample_rate", c.bargein.sample_rate}}},
      {"disfluency",
       {{"b", c.disfluency.b},
        {"slot_window_words", c.disfluency.slot_window_words},
        {"p_slot_local", c.disfluency.p_slot_local}}},
      {"speakers",
       {{"weights", weights},
        {"manifest", c.speaker_manifest},
        {"assistant_manifest", c.assistant_manifest}}},
      {"turn_taking",
       {{"default_strategy", std::string(ToString(c.default_strategy))},
        {"strategies", strategies}}},
      {"clients",
       {{"chat", ClientToJson(c.chat)},
        {"tts", ClientToJson(c.tts)},
        {"asr", ClientToJson(c.asr)},
        {"embed", ClientToJson(c.embed)},
        {"embed_dim", c.embed_dim},
        {"stub_asr_corruption", c.stub_asr_corruption}}},
      {"split", {{"train", c.split.train}, {"valid", c.split.valid}, {"test", c.split.test}}},
      {"synthesis", {{"audio_root", c.audio_root}}},
      {"validation", {{"wer_sample_n", c.wer_sample_n}}},
  };
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return ConfigFromJson(j);
}

void ApplyEnvOverrides(PipelineConfig& c) {
  const std::pair<const char*, ClientConfig*> endpoints[] = {
      {"DIALAUG_CHAT_ENDPOINT", &c.chat},
      {"DIALAUG_TTS_ENDPOINT", &c.tts},
      {"DIALAUG_ASR_ENDPOINT", &c.asr},
      {"DIALAUG_EMBED_ENDPOINT", &c.embed}};
  for (const auto& [var, cc] : endpoints) {
    if (const char* v = std::getenv(var); v && *v) cc->endpoint = v;
  }
  if (const char* t = std::getenv("DIALAUG_API_TOKEN"); t && *t) {
    for (ClientConfig* cc : {&c.chat, &c.tts, &c.asr, &c.embed}) cc->api_token = t;
  }
}

}  // namespace dialaug
