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


#include <atomic>
#include <filesystem>
#include <thread>

#include <gtest/gtest.h>

#include "dialaug/clients.h"
#include "dialaug/errors.h"
#include "dialaug/prompts.h"
#include "dialaug/wav.h"
#include "httplib.h"
#include "json.hpp"

namespace dialaug {
namespace {

using nlohmann::json;

TEST(FillTemplate, ReplacesKnownPlaceholdersOnly) {
  EXPECT_EQ(FillTemplate("Hi {name}, {missing} {x}", {{"name", "Ann"}, {"x", "{name}"}}),
            "Hi Ann, {missing} {name}");
  EXPECT_EQ(FillTemplate("{a}{a}", {{"a", "1"}}), "11");
  EXPECT_EQ(FillTemplate("json {\"k\": 1}", {}), "json {\"k\": 1}");
}

TEST(RenderPrompt, EveryKindRendersVariables) {
  ChatRequest req;
  req.kind = PromptKind::kEmotion;
  req.vars = {{"context", "CTX-MARK"}, {"utterance", "UTT-MARK"}};
  const std::string p = RenderPrompt(req);
  EXPECT_NE(p.find("UTT-MARK"), std::string::npos);
  for (BargeInType t : {BargeInType::kErrorRecovery, BargeInType::kClarification,
                        BargeInType::kEfficiency}) {
    for (BargeInStyle s : {BargeInStyle::kImplicit, BargeInStyle::kRaw,
                           BargeInStyle::kInterpreted}) {
      ChatRequest b;
      b.kind = PromptKind::kBargeIn;
      b.vars = {{"type", std::string(ToString(t))},
                {"style", std::string(ToString(s))},
                {"context_str", "CTX-MARK"},
                {"current_exchange", "EXCH-MARK"},
                {"current_state", "{}"}};
      const std::string text = RenderPrompt(b);
      EXPECT_NE(text.find("EXCH-MARK"), std::string::npos) << BargeInSubtype(t, s);
      EXPECT_EQ(text.find("{current_exchange}"), std::string::npos);
    }
  }
}

TEST(WithRetries, RetriesClientErrorsOnly) {
  ClientConfig cfg;
  cfg.max_retries = 2;
  cfg.backoff_s = 0;
  int calls = 0;
  EXPECT_EQ(WithRetries(cfg, [&] {
              if (++calls < 3) throw ClientError("flaky");
              return 42;
            }),
            42);
  EXPECT_EQ(calls, 3);
  calls = 0;
  EXPECT_THROW(WithRetries(cfg, [&]() -> int {
                 ++calls;
                 throw ClientError("down");
               }),
               ClientError);
  EXPECT_EQ(calls, 3);
  calls = 0;
  EXPECT_THROW(WithRetries(cfg, [&]() -> int {
                 ++calls;
                 throw ContractViolation("bug");
               }),
               ContractViolation);
  EXPECT_EQ(calls, 1);
}

TEST(ClientConfig, Validate) {
  ClientConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.timeout_s = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.max_in_flight = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(PlausibleAlternative, AlwaysDiffers) {
  for (const std::string v : {"friday", "Friday", "north", "cheap", "two", "4", "19:30",
                              "ABX12", "Cambridge", "yes", "some place"}) {
    const std::string alt = PlausibleAlternative(v);
    EXPECT_NE(alt, v);
    EXPECT_FALSE(alt.empty());
  }
  EXPECT_EQ(PlausibleAlternative("Friday"), "Thursday");
  EXPECT_EQ(PlausibleAlternative("19:30"), "20:30");
}

TEST(StubChat, GenericEchoesLastUserMessage) {
  StubChatClient chat;
  ChatRequest req;
  req.messages = {{"system", "s"}, {"user", "hello"}, {"assistant", "a"}};
  EXPECT_EQ(chat.Chat(req), "hello");
}

TEST(StubTts, DurationIsProportionalToLength) {
  StubTtsClient tts(16000);
  const Audio a = tts.Synthesize(std::string(50, 'x'), "", "");
  EXPECT_EQ(a.sample_rate, 16000);
  EXPECT_DOUBLE_EQ(a.duration_s(), 3.0);
  EXPECT_THROW(tts.Synthesize("", "", ""), ContractViolation);
}

class TempWav {
 public:
  explicit TempWav(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / name) {
    Audio a;
    a.samples.assign(2400, 0);
    WriteWav(path_, a);
  }
  ~TempWav() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(StubAsr, ReturnsRegisteredTextWithOptionalCorruption) {
  TempWav wav("dialaug_asr_stub.wav");
  StubAsrClient clean;
  clean.Register(wav.path(), "one two three");
  EXPECT_EQ(clean.Transcribe(wav.path().parent_path() / "." / wav.path().filename()),
            "one two three");
  StubAsrClient noisy(1.0);
  noisy.Register(wav.path(), "one two");
  EXPECT_EQ(noisy.Transcribe(wav.path()), "xxone xxtwo");
  EXPECT_THROW(clean.Transcribe("/nonexistent.wav"), ClientError);
}

TEST(StubEmbed, SameSpeakerSameVector) {
  TempWav a("dialaug_embed_a.wav"), b("dialaug_embed_b.wav");
  StubEmbedClient embed(16);
  embed.Register(a.path(), "spk1");
  embed.Register(b.path(), "spk1");
  EXPECT_EQ(embed.Embed(a.path()), embed.Embed(b.path()));
  EXPECT_EQ(embed.Embed(a.path()).size(), 16u);
  EXPECT_NE(embed.VectorFor("spk1"), embed.VectorFor("spk2"));
}

// Local HTTP server standing in for the model services.
class FakeService {
 public:
  FakeService() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  ClientConfig Config(const std::string& path) const {
    ClientConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_) + path;
    c.model = "test-model";
    c.backoff_s = 0;
    c.max_retries = 2;
    c.timeout_s = 5;
    return c;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpClients, ChatSendsModelTokenAndPrompt) {
  FakeService svc;
  std::string auth, body;
  svc.server().Post("/chat", [&](const httplib::Request& req, httplib::Response& res) {
    auth = req.get_header_value("Authorization");
    body = req.body;
    res.set_content(R"({"choices":[{"message":{"content":"3"}}]})", "application/json");
  });
  ClientConfig cfg = svc.Config("/chat");
  cfg.api_token = "tok";
  auto chat = MakeHttpChatClient(cfg);
  ChatRequest req;
  req.kind = PromptKind::kEmotion;
  req.vars = {{"context", "c"}, {"utterance", "UTT-MARK"}};
  EXPECT_EQ(chat->Chat(req), "3");
  EXPECT_EQ(auth, "Bearer tok");
  const json j = json::parse(body);
  EXPECT_EQ(j.at("model"), "test-model");
  EXPECT_NE(j.at("messages").at(0).at("content").get<std::string>().find("UTT-MARK"),
            std::string::npos);
}

TEST(HttpClients, RetriesServerErrors) {
  FakeService svc;
  std::atomic<int> hits{0};
  svc.server().Post("/chat", [&](const httplib::Request&, httplib::Response& res) {
    if (++hits < 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
  });
  auto chat = MakeHttpChatClient(svc.Config("/chat"));
  ChatRequest req;
  req.messages = {{"user", "hi"}};
  EXPECT_EQ(chat->Chat(req), "ok");
  EXPECT_EQ(hits.load(), 3);
}

TEST(HttpClients, PersistentFailureAndBadPayloadsRaiseClientError) {
  FakeService svc;
  svc.server().Post("/down", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  });
  svc.server().Post("/junk", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  ChatRequest req;
  req.messages = {{"user", "hi"}};
  EXPECT_THROW(MakeHttpChatClient(svc.Config("/down"))->Chat(req), ClientError);
  EXPECT_THROW(MakeHttpChatClient(svc.Config("/junk"))->Chat(req), ClientError);
  EXPECT_THROW(MakeHttpTtsClient(svc.Config("/junk"))->Synthesize("hi", "", ""), ClientError);
}

TEST(HttpClients, TtsAsrEmbedRoundTrip) {
  FakeService svc;
  svc.server().Post("/tts", [](const httplib::Request& req, httplib::Response& res) {
    const json j = json::parse(req.body);
    Audio a;
    a.sample_rate = 16000;
    a.samples.assign(j.at("text").get<std::string>().size() * 160, 0);
    res.set_content(EncodeWav(a), "audio/wav");
  });
  svc.server().Post("/asr", [](const httplib::Request& req, httplib::Response& res) {
    res.set_content(json{{"text", "bytes " + std::to_string(req.body.size())}}.dump(),
                    "application/json");
  });
  svc.server().Post("/embed", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"embedding":[0.5,0.5,0.0]})", "application/json");
  });
  const Audio a = MakeHttpTtsClient(svc.Config("/tts"))->Synthesize("hello", "calm", "r.wav");
  EXPECT_DOUBLE_EQ(a.duration_s(), 0.05);
  TempWav wav("dialaug_http_asr.wav");
  const std::string text = MakeHttpAsrClient(svc.Config("/asr"))->Transcribe(wav.path());
  EXPECT_EQ(text.rfind("bytes ", 0), 0u);
  EXPECT_EQ(MakeHttpEmbedClient(svc.Config("/embed"), 3)->Embed(wav.path()).size(), 3u);
  EXPECT_THROW(MakeHttpEmbedClient(svc.Config("/embed"), 192)->Embed(wav.path()), ClientError);
}

TEST(HttpClients, EndpointNeedsScheme) {
  ClientConfig cfg;
  cfg.endpoint = "localhost:8000/chat";
  EXPECT_THROW(MakeHttpChatClient(cfg), ConfigError);
}

}  // namespace
}  // namespace dialaug
