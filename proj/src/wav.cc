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

#include "dialaug/wav.h"

#include <cstring>
#include <fstream>
#include <iterator>

#include "dialaug/errors.h"

namespace dialaug {
namespace {

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

uint32_t GetU32(std::string_view b, std::size_t at) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(b[at + i]);
  }
  return v;
}

uint16_t GetU16(std::string_view b, std::size_t at) {
  return static_cast<uint16_t>(static_cast<unsigned char>(b[at]) |
                               (static_cast<unsigned char>(b[at + 1]) << 8));
}

struct Parsed {
  WavInfo info;
  std::size_t data_offset = 0;
  std::size_t data_size = 0;
};

// `bytes` may be a truncated prefix of the file; the data chunk size is taken
// from its header.
Parsed ParseHeader(std::string_view b) {
  if (b.size() < 12 || b.substr(0, 4) != "RIFF" || b.substr(8, 4) != "WAVE") {
    throw Error("not a RIFF/WAVE stream");
  }
  Parsed p;
  bool have_fmt = false;
  std::size_t at = 12;
  while (at + 8 <= b.size()) {
    const std::string_view id = b.substr(at, 4);
    const uint32_t size = GetU32(b, at + 4);
    const std::size_t body = at + 8;
    if (id == "fmt ") {
      if (body + 16 > b.size()) throw Error("truncated fmt chunk");
      if (GetU16(b, body) != 1) throw Error("only PCM WAV is supported");
      p.info.channels = GetU16(b, body + 2);
      p.info.sample_rate = static_cast<int>(GetU32(b, body + 4));
      p.info.bits_per_sample = GetU16(b, body + 14);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw Error("data chunk before fmt chunk");
      const int frame_bytes = p.info.channels * p.info.bits_per_sample / 8;
      if (frame_bytes <= 0) throw Error("invalid WAV frame size");
      p.data_offset = body;
      p.data_size = size;
      p.info.frames = size / static_cast<uint32_t>(frame_bytes);
      return p;
    }
    at = body + size + (size & 1);
  }
  throw Error("WAV stream has no data chunk");
}

}  // namespace

std::string EncodeWav(const Audio& audio) {
  const uint32_t data_bytes = static_cast<uint32_t>(audio.samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, static_cast<uint32_t>(audio.sample_rate));
  PutU32(out, static_cast<uint32_t>(audio.sample_rate * 2));
  PutU16(out, 2);
  PutU16(out, 16);
  out += "data";
  PutU32(out, data_bytes);
  for (int16_t s : audio.samples) PutU16(out, static_cast<uint16_t>(s));
  return out;
}

Audio DecodeWav(std::string_view bytes) {
  const Parsed p = ParseHeader(bytes);
  if (p.info.bits_per_sample != 16 || p.info.channels != 1) {
    throw Error("only 16-bit mono WAV is supported");
  }
  if (p.data_offset + p.data_size > bytes.size()) {
    throw Error("truncated WAV data");
  }
  Audio a;
  a.sample_rate = p.info.sample_rate;
  a.samples.resize(p.info.frames);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    a.samples[i] = static_cast<int16_t>(GetU16(bytes, p.data_offset + 2 * i));
  }
  return a;
}

void WriteWav(const std::filesystem::path& path, const Audio& audio) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  const std::string bytes = EncodeWav(audio);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("write failed for " + path.string());
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(f), {});
}

Audio ReadWav(const std::filesystem::path& path) {
  return DecodeWav(ReadFileBytes(path));
}

WavInfo ReadWavInfo(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  std::string head(4096, '\0');
  f.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(f.gcount()));
  return ParseHeader(head).info;
}

}  // namespace dialaug
