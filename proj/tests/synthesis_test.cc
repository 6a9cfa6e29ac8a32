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


#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include <gtest/gtest.h>

#include "dialaug/errors.h"
#include "dialaug/speakers.h"
#include "dialaug/synthesis.h"
#include "dialaug/wav.h"
#include "test_util.h"

namespace dialaug {
namespace {

using testing::MakeDialogue;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("dialaug_synth_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

class FailingTts : public TtsClient {
 public:
  Audio Synthesize(const std::string&, const std::string&, const std::string&) override {
    ++calls;
    throw ClientError("tts unavailable");
  }
  int calls = 0;
};

class FixedTts : public TtsClient {
 public:
  explicit FixedTts(double seconds) : seconds_(seconds) {}
  Audio Synthesize(const std::string&, const std::string&, const std::string&) override {
    Audio a;
    a.sample_rate = 16000;
    a.samples.assign(static_cast<std::size_t>(seconds_ * a.sample_rate), 0);
    return a;
  }

 private:
  double seconds_;
};

ClientConfig NoWait() {
  ClientConfig c;
  c.backoff_s = 0;
  c.max_retries = 2;
  return c;
}

TEST(Synthesis, PathsAndInstructions) {
  EXPECT_EQ(AudioPathFor("abcd_10083", 3), "data/audio/abcd_10083/turn03.wav");
  EXPECT_EQ(AudioPathFor("x", 12), "data/audio/x/turn12.wav");
  EXPECT_EQ(StyleInstruction("calm"), "Please speak in a calm tone.");
}

TEST(BuildJob, NormalizesAndUsesRoleSpeaker) {
  Dialogue d = MakeDialogue("abcd_10083", {"[FP] uh, a table for 2 at 7:30pm", "Sure."});
  d.turns[0].text = "uh, a table for 2 at 7:30pm";
  d.user_speaker = StubSpeakerCandidates()[0];
  d.assistant_speaker = StubAssistantPool()[0];
  KeywordMap m = DefaultKeywordMap();
  m[Emotion::kNeutral] = {"calm"};
  Rng rng(1);
  const SynthesisJob u = BuildJob(d, 0, m, rng);
  EXPECT_EQ(u.normalized_text, "uh, a table for two at seven thirty pm");
  EXPECT_EQ(u.style_instruction, "Please speak in a calm tone.");
  EXPECT_EQ(u.speaker_id, d.user_speaker->speaker_id);
  EXPECT_EQ(u.out_path, "data/audio/abcd_10083/turn00.wav");
  const SynthesisJob a = BuildJob(d, 1, m, rng);
  EXPECT_EQ(a.speaker_id, "assistant_0");
  EXPECT_THROW(BuildJob(d, 2, m, rng), ContractViolation);
}

TEST(Synthesize, StubDurationFollowsTextLength) {
  TempDir dir;
  StubTtsClient tts;
  SynthesisJob job;
  job.dialogue_id = "d";
  job.normalized_text = std::string(50, 'a');
  job.out_path = AudioPathFor("d", 0);
  const ManifestRow row = Synthesize(job, tts, dir.path(), NoWait());
  EXPECT_EQ(row.status, "ok");
  EXPECT_DOUBLE_EQ(row.duration_s, 3.0);
  EXPECT_DOUBLE_EQ(ReadWavInfo(dir.path() / job.out_path).duration_s(), 3.0);
}

TEST(Synthesize, EmptyTextIsContractViolation) {
  TempDir dir;
  StubTtsClient tts;
  SynthesisJob job;
  job.out_path = "x.wav";
  EXPECT_THROW(Synthesize(job, tts, dir.path(), NoWait()), ContractViolation);
}

TEST(Synthesize, ClientFailureIsRecordedAfterRetries) {
  TempDir dir;
  FailingTts tts;
  SynthesisJob job;
  job.dialogue_id = "d";
  job.normalized_text = "hello";
  job.out_path = AudioPathFor("d", 0);
  const ManifestRow row = Synthesize(job, tts, dir.path(), NoWait());
  EXPECT_EQ(row.status, "failed");
  EXPECT_EQ(tts.calls, 3);
  EXPECT_FALSE(std::filesystem::exists(dir.path() / job.out_path));
  const std::string line = ManifestLine(row);
  EXPECT_NE(line.find("\"status\":\"failed\""), std::string::npos);
  EXPECT_NE(line.find("\"error\""), std::string::npos);
}

TEST(SynthesizeDialogue, SetsAudioRefs) {
  TempDir dir;
  StubTtsClient tts;
  Dialogue d = MakeDialogue("d", {"I would like a cheap hotel please.", "Sure thing."});
  SynthesisOptions opts;
  opts.root = dir.path();
  opts.retry = NoWait();
  Rng rng(1);
  const auto rows = SynthesizeDialogue(d, tts, opts, rng);
  ASSERT_EQ(rows.size(), 2u);
  for (const Turn& t : d.turns) {
    ASSERT_TRUE(t.audio_ref.has_value());
    EXPECT_GT(*t.duration_s, 0.0);
  }
  const DurationReport r = VerifyDurations(d, dir.path());
  EXPECT_TRUE(r.violations.empty());
  EXPECT_NEAR(r.total_s, *d.turns[0].duration_s + *d.turns[1].duration_s, 1e-9);
}

TEST(VerifyDurations, Rules) {
  TempDir dir;
  Dialogue d = MakeDialogue("v", {"a", "b", "c", "d", "e"});
  FixedTts two(2.0);
  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    WriteWav(dir.path() / AudioPathFor("v", i), two.Synthesize("", "", ""));
    d.turns[i].audio_ref = AudioPathFor("v", i);
  }
  DurationReport r = VerifyDurations(d, dir.path());
  EXPECT_TRUE(r.violations.empty());
  EXPECT_NEAR(r.total_s, 10.0, 1e-9);

  FixedTts longer(31.0);
  WriteWav(dir.path() / AudioPathFor("v", 1), longer.Synthesize("", "", ""));
  FixedTts tiny(0.1);
  WriteWav(dir.path() / AudioPathFor("v", 2), tiny.Synthesize("", "", ""));
  d.turns[3].audio_ref = "data/audio/v/missing.wav";
  d.turns[4].audio_ref.reset();
  {
    std::ofstream bad(dir.path() / AudioPathFor("v", 0), std::ios::binary);
    bad << "not a wav";
  }
  r = VerifyDurations(d, dir.path());
  ASSERT_EQ(r.violations.size(), 5u);
  EXPECT_EQ(r.violations[0].rule, "audio_unreadable");
  EXPECT_EQ(r.violations[1].rule, "duration_out_of_range");
  EXPECT_EQ(r.violations[2].rule, "duration_out_of_range");
  EXPECT_EQ(r.violations[3].rule, "audio_missing");
  EXPECT_EQ(r.violations[4].rule, "audio_missing");
  EXPECT_EQ(r.violations[1].turn, 1u);
}

}  // namespace
}  // namespace dialaug
