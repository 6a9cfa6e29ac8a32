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

#ifndef DIALAUG_SPEAKERS_H_
#define DIALAUG_SPEAKERS_H_

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

inline constexpr double kMaxRefDurationS = 25.0;
inline constexpr std::size_t kAssistantPoolSize = 10;

struct PoolWeights {
  std::map<AccentPool, double> weights;

  // Census-derived defaults: native .7457, african .1619, indian .0092,
  // asian .0832.
  static PoolWeights Defaults();
  // Throws ConfigError on negative weights or a zero total.
  void Validate() const;
  // Weight of `p` divided by the total.
  double Normalized(AccentPool p) const;
};

class SpeakerPool {
 public:
  // Drops references longer than 25 s and any id present in
  // `assistant_pool`. Throws ConfigError if nothing is left.
  static SpeakerPool Build(const std::vector<SpeakerProfile>& candidates,
                           const std::vector<SpeakerProfile>& assistant_pool);

  // Age bin and gender are drawn uniformly up front; accent pool by weight
  // and country uniformly are redrawn (up to kMaxAttempts) until the stratum
  // has a speaker.
  SpeakerProfile Sample(const PoolWeights& weights, Rng& rng) const;

  std::size_t size() const { return speakers_.size(); }
  const std::vector<SpeakerProfile>& speakers() const { return speakers_; }

  static constexpr int kMaxAttempts = 64;

 private:
  using Stratum = std::array<std::array<std::vector<std::size_t>, 2>, 4>;

  std::vector<SpeakerProfile> speakers_;
  std::map<AccentPool, std::map<std::string, Stratum>> index_;
};

// Throws ConfigError unless the pool has exactly 10 native speakers, 5 per
// gender.
void ValidateAssistantPool(const std::vector<SpeakerProfile>& pool);

SpeakerProfile AssignAssistantSpeaker(const std::vector<SpeakerProfile>& pool,
                                      Rng& rng);

// JSON array (or NDJSON) of speaker profiles.
std::vector<SpeakerProfile> LoadSpeakerManifest(const std::filesystem::path& path);

// Small fixed inventory used in stub mode: every accent pool, country, age
// bin and gender is populated, plus ten native assistant voices.
std::vector<SpeakerProfile> StubSpeakerCandidates();
std::vector<SpeakerProfile> StubAssistantPool();

}  // namespace dialaug

#endif  // DIALAUG_SPEAKERS_H_
