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

#include "dialaug/speakers.h"

#include <set>

#include "dialaug/corpus_json.h"
#include "dialaug/errors.h"

namespace dialaug {
namespace {

constexpr std::array<AccentPool, 4> kPools = {
    AccentPool::kNative, AccentPool::kAfrican, AccentPool::kIndian,
    AccentPool::kAsian};

}  // namespace

PoolWeights PoolWeights::Defaults() {
  return {{{AccentPool::kNative, 0.7457},
           {AccentPool::kAfrican, 0.1619},
           {AccentPool::kIndian, 0.0092},
           {AccentPool::kAsian, 0.0832}}};
}

void PoolWeights::Validate() const {
  double total = 0;
  for (const auto& [pool, w] : weights) {
    if (!(w >= 0)) throw ConfigError("negative accent-pool weight");
    total += w;
  }
  if (!(total > 0)) throw ConfigError("accent-pool weights sum to zero");
}

double PoolWeights::Normalized(AccentPool p) const {
  double total = 0;
  for (const auto& kv : weights) total += kv.second;
  auto it = weights.find(p);
  return it == weights.end() || total <= 0 ? 0.0 : it->second / total;
}

SpeakerPool SpeakerPool::Build(const std::vector<SpeakerProfile>& candidates,
                               const std::vector<SpeakerProfile>& assistant_pool) {
  std::set<std::string> reserved;
  for (const auto& s : assistant_pool) reserved.insert(s.speaker_id);
  SpeakerPool pool;
  for (const auto& s : candidates) {
    if (s.ref_duration_s > kMaxRefDurationS) continue;
    if (reserved.count(s.speaker_id)) continue;
    const std::size_t id = pool.speakers_.size();
    pool.speakers_.push_back(s);
    pool.index_[s.accent_pool][s.country][static_cast<int>(s.age_bin)]
               [static_cast<int>(s.gender)]
                   .push_back(id);
  }
  if (pool.speakers_.empty()) {
    throw ConfigError("speaker pool is empty after filtering");
  }
  return pool;
}

SpeakerProfile SpeakerPool::Sample(const PoolWeights& weights, Rng& rng) const {
  weights.Validate();
  const std::size_t bin = rng.Index(4);
  const std::size_t gender = rng.Index(2);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double u = rng.Uniform();
    AccentPool pool = kPools.back();
    double cum = 0;
    for (AccentPool p : kPools) {
      cum += weights.Normalized(p);
      if (u < cum) {
        pool = p;
        break;
      }
    }
    auto pit = index_.find(pool);
    if (pit == index_.end() || pit->second.empty()) continue;
    auto cit = pit->second.begin();
    std::advance(cit, static_cast<long>(rng.Index(pit->second.size())));
    const auto& ids = cit->second[bin][gender];
    if (ids.empty()) continue;
    return speakers_[ids[rng.Index(ids.size())]];
  }
  throw Error("no speaker found for age bin " +
              std::string(ToString(static_cast<AgeBin>(bin))) + " / " +
              std::string(ToString(static_cast<Gender>(gender))) + " after " +
              std::to_string(kMaxAttempts) + " attempts");
}

void ValidateAssistantPool(const std::vector<SpeakerProfile>& pool) {
  if (pool.size() != kAssistantPoolSize) {
    throw ConfigError("assistant pool must have exactly 10 speakers, got " +
                      std::to_string(pool.size()));
  }
  int female = 0;
  std::set<std::string> ids;
  for (const auto& s : pool) {
    if (s.accent_pool != AccentPool::kNative) {
      throw ConfigError("assistant speaker '" + s.speaker_id + "' is not native");
    }
    if (s.gender == Gender::kFemale) ++female;
    ids.insert(s.speaker_id);
  }
  if (female != 5) throw ConfigError("assistant pool must be 5 female / 5 male");
  if (ids.size() != pool.size()) throw ConfigError("duplicate assistant speaker id");
}

SpeakerProfile AssignAssistantSpeaker(const std::vector<SpeakerProfile>& pool,
                                      Rng& rng) {
  ValidateAssistantPool(pool);
  return pool[rng.Index(pool.size())];
}

std::vector<SpeakerProfile> LoadSpeakerManifest(const std::filesystem::path& path) {
  std::vector<SpeakerProfile> out;
  for (const Json& j : ReadJsonDocuments(path)) out.push_back(SpeakerFromJson(j));
  return out;
}

namespace {

SpeakerProfile MakeStubSpeaker(std::string id, AccentPool pool, std::string country,
                               int age, Gender g) {
  SpeakerProfile s;
  s.speaker_id = id;
  s.accent_pool = pool;
  s.country = std::move(country);
  s.age = age;
  s.age_bin = AgeBinFor(age);
  s.gender = g;
  s.ref_audio = "speakers/" + id + ".wav";
  s.ref_duration_s = 8.0;
  return s;
}

}  // namespace

std::vector<SpeakerProfile> StubSpeakerCandidates() {
  const std::vector<std::pair<AccentPool, std::vector<std::string>>> countries = {
      {AccentPool::kNative, {"United States", "United Kingdom", "Canada", "Australia"}},
      {AccentPool::kAfrican, {"Nigeria", "Kenya", "South Africa"}},
      {AccentPool::kIndian, {"India"}},
      {AccentPool::kAsian, {"China", "Japan", "Philippines", "Vietnam"}},
  };
  const int ages[] = {17, 31, 47, 66};
  std::vector<SpeakerProfile> out;
  for (const auto& [pool, list] : countries) {
    for (const auto& country : list) {
      for (int bin = 0; bin < 4; ++bin) {
        for (Gender g : {Gender::kMale, Gender::kFemale}) {
          for (int k = 0; k < 2; ++k) {
            const std::string id = "stub_" + std::to_string(out.size());
            out.push_back(MakeStubSpeaker(id, pool, country, ages[bin] + k, g));
          }
        }
      }
    }
  }
  return out;
}

std::vector<SpeakerProfile> StubAssistantPool() {
  std::vector<SpeakerProfile> out;
  for (int i = 0; i < static_cast<int>(kAssistantPoolSize); ++i) {
    out.push_back(MakeStubSpeaker("assistant_" + std::to_string(i), AccentPool::kNative,
                                  "United States", 30 + i,
                                  i % 2 == 0 ? Gender::kFemale : Gender::kMale));
  }
  return out;
}

}  // namespace dialaug
