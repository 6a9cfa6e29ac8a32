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

#ifndef DIALAUG_CONFIG_H_
#define DIALAUG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "dialaug/bargein.h"
#include "dialaug/clients.h"
#include "dialaug/corpus_json.h"
#include "dialaug/crossturn.h"
#include "dialaug/disfluency.h"
#include "dialaug/speakers.h"
#include "dialaug/turn_taking.h"

namespace dialaug {

struct StageToggles {
  bool crossturn = true;
  bool bargein = true;
  bool disfluency = true;
  bool emotion = true;
  bool speakers = true;
  bool synthesis = true;
};

struct SplitRatios {
  double train = 0.75;
  double valid = 0.10;
  double test = 0.15;

  // Throws ConfigError unless all are non-negative and sum to 1.
  void Validate() const;
};

struct PipelineConfig {
  uint64_t global_seed = 0;
  int workers = 4;
  bool stub = false;
  StageToggles stages;
  CrossTurnConfig crossturn;
  BargeInConfig bargein;
  DisfluencyConfig disfluency;
  PoolWeights pool_weights = PoolWeights::Defaults();
  // Empty paths select the built-in stub inventory.
  std::string speaker_manifest;
  std::string assistant_manifest;
  std::map<Strategy, StrategyConfig> strategies;
  Strategy default_strategy = Strategy::kLinearWeighted;
  ClientConfig chat;
  ClientConfig tts;
  ClientConfig asr;
  ClientConfig embed;
  std::size_t embed_dim = 192;
  double stub_asr_corruption = 0.0;
  SplitRatios split;
  std::string audio_root = ".";
  std::size_t wer_sample_n = 100;

  static PipelineConfig Defaults();
  void Validate() const;
};

// Keys absent from `j` keep their defaults; unknown keys are rejected.
PipelineConfig ConfigFromJson(const Json& j);
Json ConfigToJson(const PipelineConfig& c);
PipelineConfig LoadConfig(const std::filesystem::path& path);

// DIALAUG_{CHAT,TTS,ASR,EMBED}_ENDPOINT and DIALAUG_API_TOKEN.
void ApplyEnvOverrides(PipelineConfig& c);

}  // namespace dialaug

#endif  // DIALAUG_CONFIG_H_
