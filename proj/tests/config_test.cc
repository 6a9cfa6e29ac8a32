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


#include <cstdlib>
#include <filesystem>

#include <gtest/gtest.h>

#include "dialaug/config.h"
#include "dialaug/errors.h"

namespace dialaug {
namespace {

const std::filesystem::path kDefault = std::filesystem::path(DIALAUG_CONFIG_DIR) / "default.json";

TEST(Config, ShippedDefaultsLoadAndValidate) {
  const PipelineConfig c = LoadConfig(kDefault);
  EXPECT_NO_THROW(c.Validate());
  EXPECT_DOUBLE_EQ(c.crossturn.p_error, 0.20);
  EXPECT_EQ(c.crossturn.min_digits, 7);
  EXPECT_DOUBLE_EQ(c.bargein.sample_rate, 0.25);
  EXPECT_DOUBLE_EQ(c.disfluency.b, 0.9453);
  EXPECT_DOUBLE_EQ(c.pool_weights.Normalized(AccentPool::kAfrican), 0.1619);
  EXPECT_EQ(c.default_strategy, Strategy::kLinearWeighted);
  EXPECT_EQ(c.strategies.size(), 5u);
  EXPECT_DOUBLE_EQ(c.strategies.at(Strategy::kTailThreshold).t_turnend, 2.7);
  EXPECT_DOUBLE_EQ(c.split.train, 0.75);
  EXPECT_EQ(c.wer_sample_n, 500u);
}

TEST(Config, AlgorithmicDefaultsMatchBuiltIns) {
  const PipelineConfig file = LoadConfig(kDefault);
  const PipelineConfig built = PipelineConfig::Defaults();
  Json a = ConfigToJson(file), b = ConfigToJson(built);
  // Deployment-specific sections differ by design.
  for (Json* j : {&a, &b}) {
    j->erase("clients");
    j->erase("validation");
  }
  EXPECT_EQ(a, b);
}

TEST(Config, JsonRoundTrip) {
  PipelineConfig c = LoadConfig(kDefault);
  c.global_seed = 1234;
  c.stages.bargein = false;
  c.crossturn.categorical_self_correction = true;
  c.crossturn.categorical_rate = 0.1;
  c.strategies[Strategy::kProbThreshold].window = 9;
  const PipelineConfig back = ConfigFromJson(ConfigToJson(c));
  EXPECT_EQ(ConfigToJson(back), ConfigToJson(c));
  EXPECT_EQ(back.global_seed, 1234u);
  EXPECT_FALSE(back.stages.bargein);
}

TEST(Config, PartialDocumentKeepsDefaults) {
  const PipelineConfig c = ConfigFromJson(Json{{"seed", 7}, {"crossturn", {{"p_error", 0.5}}}});
  EXPECT_EQ(c.global_seed, 7u);
  EXPECT_DOUBLE_EQ(c.crossturn.p_error, 0.5);
  EXPECT_EQ(c.crossturn.min_digits, 7);
  EXPECT_DOUBLE_EQ(c.disfluency.b, 0.9453);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_THROW(ConfigFromJson(Json{{"sead", 1}}), ConfigError);
  EXPECT_THROW(ConfigFromJson(Json{{"crossturn", {{"perror", 0.1}}}}), ConfigError);
}

TEST(Config, InvalidValuesRejected) {
  EXPECT_THROW(ConfigFromJson(Json{{"split", {{"train", 0.8}, {"valid", 0.1}, {"test", 0.2}}}})
                   .Validate(),
               ConfigError);
  EXPECT_THROW(ConfigFromJson(Json{{"crossturn", {{"p_error", 1.5}}}}).Validate(), ConfigError);
  EXPECT_THROW(ConfigFromJson(Json{{"workers", 0}}).Validate(), ConfigError);
  EXPECT_THROW(ConfigFromJson(Json{{"seed", "abc"}}), ConfigError);
}

TEST(Config, SplitRatioValidation) {
  EXPECT_NO_THROW((SplitRatios{1, 0, 0}.Validate()));
  EXPECT_THROW((SplitRatios{0.5, 0.6, -0.1}.Validate()), ConfigError);
  EXPECT_THROW((SplitRatios{0.5, 0.2, 0.2}.Validate()), ConfigError);
}

TEST(Config, EnvironmentOverridesEndpointsAndToken) {
  PipelineConfig c = LoadConfig(kDefault);
  ::setenv("DIALAUG_TTS_ENDPOINT", "http://tts.internal:9000/v1", 1);
  ::setenv("DIALAUG_API_TOKEN", "secret-token", 1);
  ApplyEnvOverrides(c);
  ::unsetenv("DIALAUG_TTS_ENDPOINT");
  ::unsetenv("DIALAUG_API_TOKEN");
  EXPECT_EQ(c.tts.endpoint, "http://tts.internal:9000/v1");
  EXPECT_EQ(c.chat.endpoint, "http://localhost:8000/v1/chat/completions");
  EXPECT_EQ(c.chat.api_token, "secret-token");
  EXPECT_EQ(ConfigToJson(c).dump().find("secret-token"), std::string::npos);
}

TEST(Config, MissingFile) {
  EXPECT_ANY_THROW(LoadConfig("/nonexistent/dialaug.json"));
}

}  // namespace
}  // namespace dialaug
