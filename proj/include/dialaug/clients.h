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

#ifndef DIALAUG_CLIENTS_H_
#define DIALAUG_CLIENTS_H_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "dialaug/errors.h"

namespace dialaug {

// Which prompt a chat request carries. Stubs dispatch on this; HTTP clients
// render the matching template.
enum class PromptKind {
  kGeneric,
  kBargeIn,
  kBargeInJudge,
  kEmotion,
  kSelfCorrection,
  kRestart,
  kGoalAlignment,
};

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

struct ChatRequest {
  PromptKind kind = PromptKind::kGeneric;
  // Template variables. Extra keys (e.g. "type", "style") are allowed and
  // ignored by template rendering.
  std::map<std::string, std::string> vars;
  // Explicit messages; when empty the template for `kind` is rendered.
  std::vector<ChatMessage> messages;
};

struct ClientConfig {
  std::string endpoint;
  std::string model;
  double timeout_s = 60.0;
  int max_retries = 2;
  double temperature = 0.0;
  double backoff_s = 0.5;
  int max_in_flight = 4;
  std::string api_token;

  // Throws ConfigError when the invariants do not hold.
  void Validate() const;
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string Chat(const ChatRequest& req) = 0;
};

struct Audio {
  std::vector<int16_t> samples;
  int sample_rate = 24000;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

class TtsClient {
 public:
  virtual ~TtsClient() = default;
  virtual Audio Synthesize(const std::string& text,
                           const std::string& style_instruction,
                           const std::string& ref_audio) = 0;
};

class AsrClient {
 public:
  virtual ~AsrClient() = default;
  virtual std::string Transcribe(const std::filesystem::path& audio) = 0;
};

class EmbedClient {
 public:
  virtual ~EmbedClient() = default;
  virtual std::vector<double> Embed(const std::filesystem::path& audio) = 0;
};

// Runs `fn`, retrying on ClientError up to cfg.max_retries times with
// exponential backoff.
template <typename Fn>
auto WithRetries(const ClientConfig& cfg, Fn&& fn) -> decltype(fn()) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn();
    } catch (const ClientError&) {
      if (attempt >= cfg.max_retries) throw;
      const double wait = cfg.backoff_s * std::pow(2.0, attempt);
      if (wait > 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(wait));
      }
    }
  }
}

std::string RenderPrompt(const ChatRequest& req);

// Plausible same-category substitute for a slot value ("Saturday" ->
// "Friday", "4" -> "2"). Never returns `value` itself.
std::string PlausibleAlternative(const std::string& value);

// ---- Offline stubs --------------------------------------------------------

enum class JudgeMode { kRules, kAlwaysYes, kAlwaysNo };

struct StubChatOptions {
  JudgeMode judge_mode = JudgeMode::kRules;
};

// Deterministic rule/template responder keyed on PromptKind.
class StubChatClient : public ChatClient {
 public:
  explicit StubChatClient(StubChatOptions opts = {}) : opts_(opts) {}
  std::string Chat(const ChatRequest& req) override;

 private:
  StubChatOptions opts_;
};

// Emits silence of 0.06 s per character.
class StubTtsClient : public TtsClient {
 public:
  static constexpr double kSecondsPerChar = 0.06;
  explicit StubTtsClient(int sample_rate = 24000) : sample_rate_(sample_rate) {}
  Audio Synthesize(const std::string& text, const std::string& style_instruction,
                   const std::string& ref_audio) override;

 private:
  int sample_rate_;
};

// Returns the ground-truth text registered for an audio path, with each word
// independently substituted with probability `corruption`.
class StubAsrClient : public AsrClient {
 public:
  explicit StubAsrClient(double corruption = 0.0) : corruption_(corruption) {}
  void Register(const std::filesystem::path& audio, std::string text);
  std::string Transcribe(const std::filesystem::path& audio) override;

 private:
  double corruption_;
  std::map<std::string, std::string> truth_;
};

// Hash-seeded vector per speaker id; every file of one speaker maps to the
// same vector.
class StubEmbedClient : public EmbedClient {
 public:
  explicit StubEmbedClient(std::size_t dim = 192) : dim_(dim) {}
  void Register(const std::filesystem::path& audio, std::string speaker_id);
  std::vector<double> Embed(const std::filesystem::path& audio) override;
  std::vector<double> VectorFor(const std::string& speaker_id) const;

 private:
  std::size_t dim_;
  std::map<std::string, std::string> speaker_of_;
};

// ---- HTTP clients ---------------------------------------------------------

// Chat-completions style JSON endpoint with bearer-token pass-through.
std::unique_ptr<ChatClient> MakeHttpChatClient(const ClientConfig& cfg);
// POST {text, instruction, ref_audio, model}; response body is a WAV file.
std::unique_ptr<TtsClient> MakeHttpTtsClient(const ClientConfig& cfg);
// POST WAV bytes; response is {"text": ...}.
std::unique_ptr<AsrClient> MakeHttpAsrClient(const ClientConfig& cfg);
// POST WAV bytes; response is {"embedding": [...]}.
std::unique_ptr<EmbedClient> MakeHttpEmbedClient(const ClientConfig& cfg,
                                                 std::size_t dim);

}  // namespace dialaug

#endif  // DIALAUG_CLIENTS_H_
