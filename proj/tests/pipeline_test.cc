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
#include <set>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "dialaug/corpus_json.h"
#include "dialaug/errors.h"
#include "dialaug/pipeline.h"

namespace dialaug {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures(DIALAUG_FIXTURE_DIR);

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("dialaug_pipeline_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

PipelineConfig StubConfig(const fs::path& root, int workers = 1) {
  PipelineConfig c = PipelineConfig::Defaults();
  c.stub = true;
  c.global_seed = 5;
  c.workers = workers;
  c.audio_root = root.string();
  return c;
}

std::vector<Dialogue> Fixture() { return ReadDialogues(kFixtures / "pipeline_20.ndjson"); }

std::string Dump(const std::vector<Dialogue>& ds) {
  std::string out;
  for (const auto& d : ds) out += DumpLine(ToJson(d));
  return out;
}

std::string Dump(const std::vector<ManifestRow>& rows) {
  std::string out;
  for (const auto& r : rows) out += ManifestLine(r);
  return out;
}

TEST(Run, DeterministicAcrossWorkerCounts) {
  TempDir a, b;
  PipelineConfig ca = StubConfig(a.path(), 1);
  PipelineConfig cb = StubConfig(b.path(), 3);
  Clients ka = MakeClients(ca), kb = MakeClients(cb);
  const RunResult ra = dialaug::Run(ca, Fixture(), ka);
  const RunResult rb = dialaug::Run(cb, Fixture(), kb);
  EXPECT_EQ(ra.dialogues.size(), 20u);
  EXPECT_TRUE(ra.quarantined.empty());
  EXPECT_EQ(Dump(ra.dialogues), Dump(rb.dialogues));
  EXPECT_EQ(Dump(ra.manifest), Dump(rb.manifest));
  for (const auto& d : ra.dialogues) {
    EXPECT_TRUE(ValidateDialogue(d).empty()) << d.dialogue_id;
    ASSERT_TRUE(d.user_speaker.has_value());
    ASSERT_TRUE(d.assistant_speaker.has_value());
    for (const auto& t : d.turns) {
      ASSERT_TRUE(t.audio_ref.has_value());
      EXPECT_TRUE(fs::exists(a.path() / *t.audio_ref));
      EXPECT_TRUE(t.emotion.has_value());
    }
  }
}

TEST(Run, SeedChangesOutput) {
  TempDir a, b;
  PipelineConfig ca = StubConfig(a.path());
  PipelineConfig cb = StubConfig(b.path());
  cb.global_seed = 6;
  Clients ka = MakeClients(ca), kb = MakeClients(cb);
  EXPECT_NE(Dump(dialaug::Run(ca, Fixture(), ka).dialogues),
            Dump(dialaug::Run(cb, Fixture(), kb).dialogues));
}

TEST(Run, PerDialogueSeedIgnoresCorpusOrder) {
  TempDir a, b;
  PipelineConfig ca = StubConfig(a.path());
  ca.stages.synthesis = false;
  Clients k = MakeClients(ca);
  auto corpus = Fixture();
  const RunResult fwd = dialaug::Run(ca, corpus, k);
  std::reverse(corpus.begin(), corpus.end());
  RunResult rev = dialaug::Run(ca, corpus, k);
  std::reverse(rev.dialogues.begin(), rev.dialogues.end());
  EXPECT_EQ(Dump(fwd.dialogues), Dump(rev.dialogues));
}

TEST(Run, MalformedDialogueIsQuarantined) {
  TempDir dir;
  PipelineConfig c = StubConfig(dir.path());
  auto corpus = Fixture();
  corpus.resize(10);
  corpus[4].turns[0].slot_spans.push_back({"area", 0, 9999});
  Clients k = MakeClients(c);
  const RunResult r = dialaug::Run(c, corpus, k);
  EXPECT_EQ(r.dialogues.size(), 9u);
  ASSERT_EQ(r.quarantined.size(), 1u);
  EXPECT_EQ(r.quarantined[0].dialogue_id, corpus[4].dialogue_id);
  EXPECT_NE(r.quarantined[0].reason.find("invalid input"), std::string::npos);
  for (const auto& d : r.dialogues) EXPECT_NE(d.dialogue_id, corpus[4].dialogue_id);
}

class BrokenChat : public ChatClient {
 public:
  std::string Chat(const ChatRequest&) override { throw std::runtime_error("judge bug"); }
};

TEST(Run, StageExceptionQuarantinesOnlyThatDialogue) {
  TempDir dir;
  PipelineConfig c = StubConfig(dir.path());
  c.stages = {false, false, false, true, false, false};
  Clients k = MakeClients(c);
  k.chat = std::make_unique<BrokenChat>();
  auto corpus = Fixture();
  corpus.resize(3);
  const RunResult r = dialaug::Run(c, corpus, k);
  EXPECT_TRUE(r.dialogues.empty());
  ASSERT_EQ(r.quarantined.size(), 3u);
  EXPECT_EQ(r.quarantined[0].reason, "judge bug");
}

TEST(Run, AllStagesOffIsIdentity) {
  TempDir dir;
  PipelineConfig c = StubConfig(dir.path());
  c.stages = {false, false, false, false, false, false};
  Clients k = MakeClients(c);
  const auto corpus = Fixture();
  const RunResult r = dialaug::Run(c, corpus, k);
  EXPECT_EQ(Dump(r.dialogues), Dump(corpus));
  EXPECT_TRUE(r.manifest.empty());
}

TEST(WriteRunOutputs, WritesAllFiles) {
  TempDir dir;
  PipelineConfig c = StubConfig(dir.path());
  auto corpus = Fixture();
  corpus.resize(2);
  corpus[1].turns[0].slot_spans.push_back({"area", 0, 9999});
  Clients k = MakeClients(c);
  const RunResult r = dialaug::Run(c, corpus, k);
  WriteRunOutputs(dir.path() / "out", r);
  for (const char* f : {"augmented.ndjson", "quarantine.ndjson", "synthesis_manifest.ndjson",
                        "validation.ndjson"}) {
    EXPECT_TRUE(fs::exists(dir.path() / "out" / f)) << f;
  }
  EXPECT_EQ(ReadDialogues(dir.path() / "out" / "augmented.ndjson").size(), 1u);
  EXPECT_EQ(ReadJsonDocuments(dir.path() / "out" / "quarantine.ndjson").size(), 1u);
}

TEST(SplitCounts, Examples) {
  const SplitRatios std_ratios;
  const SplitSizes a = SplitCounts(52390, std_ratios);
  EXPECT_EQ(a.train, 39293u);
  EXPECT_EQ(a.valid, 5239u);
  EXPECT_EQ(a.test, 7858u);
  const SplitSizes b = SplitCounts(1000, std_ratios);
  EXPECT_EQ(b.train, 750u);
  EXPECT_EQ(b.valid, 100u);
  EXPECT_EQ(b.test, 150u);
  const SplitSizes c = SplitCounts(7, {1, 0, 0});
  EXPECT_EQ(c.train, 7u);
  EXPECT_EQ(c.valid + c.test, 0u);
  EXPECT_EQ(SplitCounts(0, std_ratios).train, 0u);
}

TEST(SplitCounts, SumsAndStaysWithinOneOfExact) {
  for (std::size_t n = 0; n < 2000; ++n) {
    const SplitSizes s = SplitCounts(n, {});
    EXPECT_EQ(s.train + s.valid + s.test, n);
    EXPECT_LT(std::abs(static_cast<double>(s.train) - 0.75 * n), 1.0);
    EXPECT_LT(std::abs(static_cast<double>(s.valid) - 0.10 * n), 1.0);
    EXPECT_LT(std::abs(static_cast<double>(s.test) - 0.15 * n), 1.0);
  }
}

TEST(Split, PartitionIsDisjointAndDeterministic) {
  std::vector<std::string> ids;
  for (int i = 0; i < 200; ++i) ids.push_back("d" + std::to_string(i));
  const SplitResult a = Split(ids, {}, 3);
  std::vector<std::string> shuffled(ids.rbegin(), ids.rend());
  const SplitResult b = Split(shuffled, {}, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  std::set<std::string> all(a.train.begin(), a.train.end());
  all.insert(a.valid.begin(), a.valid.end());
  all.insert(a.test.begin(), a.test.end());
  EXPECT_EQ(all.size(), 200u);
  EXPECT_EQ(a.train.size(), 150u);
  EXPECT_NE(Split(ids, {}, 4).train, a.train);
}

TEST(WerTokens, NormalizesCaseNumbersAndPunctuation) {
  EXPECT_EQ(WerTokens("A table for 2, please!"),
            (std::vector<std::string>{"a", "table", "for", "two", "please"}));
  EXPECT_EQ(WerTokens("uh, it's 7:30pm"),
            (std::vector<std::string>{"uh", "it's", "seven", "thirty", "pm"}));
}

TEST(WerTable, GoldenLayout) {
  std::ifstream in(kFixtures / "wer_report.json");
  Json j;
  in >> j;
  const WerReport r = WerReportFromJson(j);
  std::ifstream golden(kFixtures / "wer_table.txt");
  std::stringstream want;
  want << golden.rdbuf();
  EXPECT_EQ(FormatWerTable(r), want.str());
  EXPECT_EQ(WerReportFromJson(WerReportToJson(r)).overall.utterances, 5248u);
}

std::vector<Dialogue> Replicated(int copies) {
  std::vector<Dialogue> out;
  for (int k = 0; k < copies; ++k) {
    for (Dialogue d : Fixture()) {
      d.dialogue_id += "_r" + std::to_string(k);
      out.push_back(std::move(d));
    }
  }
  return out;
}

WerReport RunAndValidate(double corruption, const fs::path& root,
                         std::size_t* user_turns = nullptr) {
  PipelineConfig c = StubConfig(root, 4);
  c.stages.bargein = false;
  Clients k = MakeClients(c);
  const RunResult r = dialaug::Run(c, Replicated(5), k);
  StubAsrClient asr(corruption);
  RegisterManifest(asr, r.manifest, root);
  if (user_turns) {
    *user_turns = 0;
    for (const auto& d : r.dialogues) {
      for (const auto& t : d.turns) *user_turns += t.role == Role::kUser;
    }
  }
  return WerValidation(r.dialogues, 1000, asr, root, 1);
}

TEST(WerValidation, CleanStubTranscriptsScoreZero) {
  TempDir dir;
  std::size_t user_turns = 0;
  const WerReport r = RunAndValidate(0.0, dir.path(), &user_turns);
  EXPECT_EQ(r.failed, 0u);
  EXPECT_EQ(r.overall.utterances, user_turns);
  EXPECT_DOUBLE_EQ(r.overall.wer_percent, 0.0);
  std::size_t sum = 0;
  for (const auto& g : r.groups) sum += g.utterances;
  EXPECT_EQ(sum, r.overall.utterances);
}

TEST(WerValidation, CorruptionRateIsRecovered) {
  TempDir dir;
  const WerReport r = RunAndValidate(0.05, dir.path());
  EXPECT_NEAR(r.overall.wer_percent, 5.0, 1.0);
}

TEST(WerValidation, SampleSizeIsRespected) {
  TempDir dir;
  PipelineConfig c = StubConfig(dir.path());
  Clients k = MakeClients(c);
  const RunResult r = dialaug::Run(c, Fixture(), k);
  StubAsrClient asr;
  RegisterManifest(asr, r.manifest, dir.path());
  const WerReport small = WerValidation(r.dialogues, 3, asr, dir.path(), 1);
  const WerReport again = WerValidation(r.dialogues, 3, asr, dir.path(), 1);
  EXPECT_EQ(small.overall.utterances, again.overall.utterances);
  EXPECT_LT(small.overall.utterances, WerValidation(r.dialogues, 20, asr, dir.path(), 1)
                                          .overall.utterances);
}

}  // namespace
}  // namespace dialaug
