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

#ifndef DIALAUG_WAV_H_
#define DIALAUG_WAV_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dialaug/clients.h"

namespace dialaug {

// 16-bit PCM mono RIFF/WAVE.
std::string EncodeWav(const Audio& audio);
Audio DecodeWav(std::string_view bytes);

void WriteWav(const std::filesystem::path& path, const Audio& audio);
Audio ReadWav(const std::filesystem::path& path);

struct WavInfo {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  uint64_t frames = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(frames) / sample_rate : 0.0;
  }
};

// Reads only the header. Throws Error on a missing or malformed file.
WavInfo ReadWavInfo(const std::filesystem::path& path);

std::string ReadFileBytes(const std::filesystem::path& path);

}  // namespace dialaug

#endif  // DIALAUG_WAV_H_
