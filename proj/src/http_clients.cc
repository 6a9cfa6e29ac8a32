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

#include <chrono>
#include <semaphore>

#include "dialaug/clients.h"
#include "dialaug/wav.h"
#include "httplib.h"
#include "json.hpp"

namespace dialaug {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint SplitUrl(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("endpoint must include a scheme: '" + url + "'");
  }
  const std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

// Shared HTTP plumbing: timeouts, bearer token, bounded in-flight requests
// and retries.
class HttpTransport {
 public:
  explicit HttpTransport(const ClientConfig& cfg)
      : cfg_(cfg), endpoint_(SplitUrl(cfg.endpoint)), slots_(cfg.max_in_flight) {
    cfg_.Validate();
  }

  std::string Post(const std::string& body, const std::string& content_type) {
    return WithRetries(cfg_, [&] { return PostOnce(body, content_type); });
  }

  const ClientConfig& config() const { return cfg_; }

 private:
  std::string PostOnce(const std::string& body, const std::string& content_type) {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<1024>& s;
      ~Release() { s.release(); }
    } release{slots_};

    httplib::Client cli(endpoint_.base);
    const auto timeout = std::chrono::duration<double>(cfg_.timeout_s);
    cli.set_connection_timeout(
        std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    cli.set_read_timeout(
        std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    cli.set_write_timeout(
        std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    if (!cfg_.api_token.empty()) cli.set_bearer_token_auth(cfg_.api_token);
    auto res = cli.Post(endpoint_.path, body, content_type);
    if (!res) {
      throw ClientError("request to " + cfg_.endpoint + " failed: " +
                        httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw ClientError("request to " + cfg_.endpoint + " returned HTTP " +
                        std::to_string(res->status));
    }
    return res->body;
  }

  ClientConfig cfg_;
  Endpoint endpoint_;
  std::counting_semaphore<1024> slots_;
};

json ParseBody(const std::string& body, const std::string& endpoint) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ClientError("non-JSON response from " + endpoint);
  return j;
}

class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(const ClientConfig& cfg) : http_(cfg) {}

  std::string Chat(const ChatRequest& req) override {
    json messages = json::array();
    if (req.messages.empty()) {
      messages.push_back({{"role", "user"}, {"content", RenderPrompt(req)}});
    } else {
      for (const auto& m : req.messages) {
        messages.push_back({{"role", m.role}, {"content", m.content}});
      }
    }
    const json body = {{"model", http_.config().model},
                       {"messages", messages},
                       {"temperature", http_.config().temperature}};
    const json res =
        ParseBody(http_.Post(body.dump(), "application/json"),
                  http_.config().endpoint);
    try {
      return res.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw ClientError(std::string("unexpected chat response: ") + e.what());
    }
  }

 private:
  HttpTransport http_;
};

class HttpTtsClient : public TtsClient {
 public:
  explicit HttpTtsClient(const ClientConfig& cfg) : http_(cfg) {}

  Audio Synthesize(const std::string& text, const std::string& style_instruction,
                   const std::string& ref_audio) override {
    const json body = {{"model", http_.config().model},
                       {"text", text},
                       {"instruction", style_instruction},
                       {"ref_audio", ref_audio}};
    const std::string wav = http_.Post(body.dump(), "application/json");
    try {
      return DecodeWav(wav);
    } catch (const Error& e) {
      throw ClientError(std::string("bad TTS audio: ") + e.what());
    }
  }

 private:
  HttpTransport http_;
};

std::string ReadAudio(const std::filesystem::path& path) {
  try {
    return ReadFileBytes(path);
  } catch (const Error& e) {
    throw ClientError(e.what());
  }
}

class HttpAsrClient : public AsrClient {
 public:
  explicit HttpAsrClient(const ClientConfig& cfg) : http_(cfg) {}

  std::string Transcribe(const std::filesystem::path& audio) override {
    const json res = ParseBody(http_.Post(ReadAudio(audio), "audio/wav"),
                               http_.config().endpoint);
    if (!res.contains("text") || !res["text"].is_string()) {
      throw ClientError("ASR response lacks 'text'");
    }
    return res["text"].get<std::string>();
  }

 private:
  HttpTransport http_;
};

class HttpEmbedClient : public EmbedClient {
 public:
  HttpEmbedClient(const ClientConfig& cfg, std::size_t dim)
      : http_(cfg), dim_(dim) {}

  std::vector<double> Embed(const std::filesystem::path& audio) override {
    const json res = ParseBody(http_.Post(ReadAudio(audio), "audio/wav"),
                               http_.config().endpoint);
    if (!res.contains("embedding") || !res["embedding"].is_array()) {
      throw ClientError("embedding response lacks 'embedding'");
    }
    auto v = res["embedding"].get<std::vector<double>>();
    if (v.size() != dim_) {
      throw ClientError("embedding dimension " + std::to_string(v.size()) +
                        " != configured " + std::to_string(dim_));
    }
    return v;
  }

 private:
  HttpTransport http_;
  std::size_t dim_;
};

}  // namespace

std::unique_ptr<ChatClient> MakeHttpChatClient(const ClientConfig& cfg) {
  return std::make_unique<HttpChatClient>(cfg);
}

std::unique_ptr<TtsClient> MakeHttpTtsClient(const ClientConfig& cfg) {
  return std::make_unique<HttpTtsClient>(cfg);
}

std::unique_ptr<AsrClient> MakeHttpAsrClient(const ClientConfig& cfg) {
  return std::make_unique<HttpAsrClient>(cfg);
}

std::unique_ptr<EmbedClient> MakeHttpEmbedClient(const ClientConfig& cfg,
                                                 std::size_t dim) {
  return std::make_unique<HttpEmbedClient>(cfg, dim);
}

}  // namespace dialaug
