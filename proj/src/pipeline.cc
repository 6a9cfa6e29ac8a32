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

#include "dialaug/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "dialaug/bargein.h"
#include "dialaug/corpus_json.h"
#include "dialaug/crossturn.h"
#include "dialaug/disfluency.h"
#include "dialaug/emotion.h"
#include "dialaug/errors.h"
#include "dialaug/metrics.h"
#include "dialaug/normalize.h"
#include "dialaug/rng.h"
#include "dialaug/text_util.h"

namespace dialaug {
namespace {

std::string DescribeViolations(const std::vector<Violation>& vs) {
  std::vector<std::string> parts;
  for (const auto& v : vs) {
    std::string s = v.rule;
    if (v.turn) s += "@" + std::to_string(*v.turn);
    if (!v.detail.empty()) s += " (" + v.detail + ")";
    parts.push_back(s);
  }
  return Join(parts, "; ");
}

std::string WithCommas(std::size_t n) {
  std::string s = std::to_string(n);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(i, ",");
  return s;
}

}  // namespace

Clients MakeClients(const PipelineConfig& cfg) {
  Clients c;
  if (cfg.stub) {
    c.chat = std::make_unique<StubChatClient>();
    c.tts = std::make_unique<StubTtsClient>();
    c.asr = std::make_unique<StubAsrClient>(cfg.stub_asr_corruption);
    c.embed = std::make_unique<StubEmbedClient>(cfg.embed_dim);
  } else {
    c.chat = MakeHttpChatClient(cfg.chat);
    c.tts = MakeHttpTtsClient(cfg.tts);
    c.asr = MakeHttpAsrClient(cfg.asr);
    c.embed = MakeHttpEmbedClient(cfg.embed, cfg.embed_dim);
  }
  return c;
}

SpeakerInventory LoadSpeakers(const PipelineConfig& cfg) {
  SpeakerInventory inv;
  inv.assistants = cfg.assistant_manifest.empty() ? StubAssistantPool()
                                                  : LoadSpeakerManifest(cfg.assistant_manifest);
  ValidateAssistantPool(inv.assistants);
  const auto candidates = cfg.speaker_manifest.empty()
                              ? StubSpeakerCandidates()
                              : LoadSpeakerManifest(cfg.speaker_manifest);
  inv.pool = SpeakerPool::Build(candidates, inv.assistants);
  return inv;
}

DialogueOutcome ProcessDialogue(Dialogue d, const PipelineConfig& cfg,
                                Clients& clients, const SpeakerInventory& speakers) {
  DialogueOutcome out;
  out.report.dialogue_id = d.dialogue_id;
  try {
    if (auto vs = ValidateDialogue(d); !vs.empty()) {
      out.quarantine_reason = "invalid input: " + DescribeViolations(vs);
      return out;
    }
    const Rng root(DeriveSeed(cfg.global_seed, d.dialogue_id));
    if (cfg.stages.crossturn) {
      Rng rng = root.Fork("crossturn");
      out.report.crossturn_expansions = AugmentCrossTurn(d, cfg.crossturn, rng).expansions;
    }
    if (cfg.stages.bargein) {
      Rng rng = root.Fork("bargein");
      out.report.bargein_inserted =
          AugmentBargeIn(d, cfg.bargein, *clients.chat, *clients.chat, rng).inserted;
    }
    if (cfg.stages.disfluency) {
      Rng rng = root.Fork("disfluency");
      out.report.disfluency_injected =
          AugmentDisfluency(d, cfg.disfluency, clients.chat.get(), rng).injected;
    }
    if (cfg.stages.emotion) AnnotateDialogue(d, *clients.chat);
    if (cfg.stages.speakers) {
      Rng rng = root.Fork("speakers");
      if (!d.user_speaker) d.user_speaker = speakers.pool->Sample(cfg.pool_weights, rng);
      if (!d.assistant_speaker) {
        d.assistant_speaker = AssignAssistantSpeaker(speakers.assistants, rng);
      }
    }
    if (auto vs = ValidateDialogue(d); !vs.empty()) {
      out.quarantine_reason = "post-augmentation validation: " + DescribeViolations(vs);
      return out;
    }
    if (cfg.stages.synthesis) {
      Rng rng = root.Fork("synthesis");
      SynthesisOptions opts;
      opts.root = cfg.audio_root;
      opts.retry = cfg.tts;
      out.manifest = SynthesizeDialogue(d, *clients.tts, opts, rng);
      const DurationReport dr = VerifyDurations(d, cfg.audio_root);
      out.report.duration_violations = dr.violations;
      out.report.total_duration_s = dr.total_s;
    }
    out.dialogue = std::move(d);
  } catch (const std::exception& e) {
    out.dialogue.reset();
    out.quarantine_reason = e.what();
  }
  return out;
}

RunResult Run(const PipelineConfig& cfg, std::vector<Dialogue> corpus,
              Clients& clients) {
  cfg.Validate();
  SpeakerInventory speakers;
  if (cfg.stages.speakers) speakers = LoadSpeakers(cfg);
  std::vector<DialogueOutcome> outcomes(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      outcomes[i] = ProcessDialogue(std::move(corpus[i]), cfg, clients, speakers);
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), std::max<std::size_t>(1, corpus.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunResult r;
  for (auto& o : outcomes) {
    if (o.dialogue) {
      r.dialogues.push_back(std::move(*o.dialogue));
      r.reports.push_back(std::move(o.report));
    } else {
      r.quarantined.push_back({o.report.dialogue_id, o.quarantine_reason});
    }
    for (auto& row : o.manifest) r.manifest.push_back(std::move(row));
  }
  return r;
}

void WriteRunOutputs(const std::filesystem::path& dir, const RunResult& r) {
  std::filesystem::create_directories(dir);
  WriteDialogues(dir / "augmented.ndjson", r.dialogues);
  std::vector<Json> q;
  for (const auto& x : r.quarantined) {
    q.push_back({{"dialogue_id", x.dialogue_id}, {"reason", x.reason}});
  }
  WriteNdjson(dir / "quarantine.ndjson", q);
  {
    std::ofstream out(dir / "synthesis_manifest.ndjson", std::ios::binary);
    for (const auto& row : r.manifest) out << ManifestLine(row) << "\n";
  }
  std::vector<Json> v;
  for (const auto& rep : r.reports) {
    Json violations = Json::array();
    for (const auto& x : rep.duration_violations) {
      violations.push_back({{"turn", x.turn ? Json(*x.turn) : Json()},
                            {"rule", x.rule},
                            {"detail", x.detail}});
    }
    v.push_back({{"dialogue_id", rep.dialogue_id},
                 {"crossturn_expansions", rep.crossturn_expansions},
                 {"bargein_inserted", rep.bargein_inserted},
                 {"disfluency_injected", rep.disfluency_injected},
                 {"total_duration_s", rep.total_duration_s},
                 {"duration_violations", violations}});
  }
  WriteNdjson(dir / "validation.ndjson", v);
}

SplitSizes SplitCounts(std::size_t n, const SplitRatios& ratios) {
  ratios.Validate();
  const double r[3] = {ratios.train, ratios.valid, ratios.test};
  std::size_t count[3];
  double frac[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    count[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    frac[i] = exact - static_cast<double>(count[i]);
    assigned += count[i];
  }
  int order[3] = {0, 1, 2};
  std::stable_sort(order, order + 3, [&](int a, int b) { return frac[a] > frac[b] + 1e-12; });
  for (int k = 0; assigned < n; k = (k + 1) % 3, ++assigned) ++count[order[k]];
  return {count[0], count[1], count[2]};
}

SplitResult Split(std::vector<std::string> ids, const SplitRatios& ratios,
                  uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  Rng rng(DeriveSeed(seed, "split"));
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.Index(i)]);
  }
  const SplitSizes sz = SplitCounts(ids.size(), ratios);
  SplitResult r;
  auto it = ids.begin();
  r.train.assign(it, it + static_cast<std::ptrdiff_t>(sz.train));
  it += static_cast<std::ptrdiff_t>(sz.train);
  r.valid.assign(it, it + static_cast<std::ptrdiff_t>(sz.valid));
  it += static_cast<std::ptrdiff_t>(sz.valid);
  r.test.assign(it, ids.end());
  return r;
}

std::vector<std::string> WerTokens(const std::string& text) {
  std::string s = ToLower(NormalizeText(text));
  for (char& c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && !std::isalnum(u) && c != '\'') c = ' ';
  }
  return SplitWords(s);
}

WerReport WerValidation(const std::vector<Dialogue>& corpus, std::size_t sample_n,
                        AsrClient& asr, const std::filesystem::path& root,
                        uint64_t seed) {
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].dialogue_id < corpus[b].dialogue_id;
  });
  Rng rng(DeriveSeed(seed, "wer_validation"));
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.Index(i)]);
  order.resize(std::min(sample_n, order.size()));

  struct Acc {
    std::size_t edits = 0;
    std::size_t ref_words = 0;
    std::size_t utterances = 0;
  };
  std::map<std::string, Acc> groups;
  Acc total;
  WerReport rep;
  for (std::size_t idx : order) {
    const Dialogue& d = corpus[idx];
    const std::string group =
        d.user_speaker ? std::string(ToString(d.user_speaker->accent_pool)) : "Unknown";
    for (const Turn& t : d.turns) {
      if (t.role != Role::kUser || !t.audio_ref) continue;
      const auto ref = WerTokens(RenderSurface(t.tagged.empty() ? t.text : t.tagged));
      if (ref.empty()) continue;
      std::string hyp_text;
      try {
        hyp_text = asr.Transcribe(root / *t.audio_ref);
      } catch (const ClientError&) {
        ++rep.failed;
        continue;
      }
      const std::size_t e = EditDistance(ref, WerTokens(hyp_text));
      for (Acc* a : {&groups[group], &total}) {
        a->edits += e;
        a->ref_words += ref.size();
        ++a->utterances;
      }
    }
  }
  auto row = [](const std::string& name, const Acc& a) {
    WerRow r;
    r.group = name;
    r.utterances = a.utterances;
    r.wer_percent = a.ref_words ? 100.0 * static_cast<double>(a.edits) /
                                      static_cast<double>(a.ref_words)
                                : 0.0;
    return r;
  };
  for (const auto& [name, a] : groups) rep.groups.push_back(row(name, a));
  rep.overall = row("Overall", total);
  return rep;
}

Json WerReportToJson(const WerReport& r) {
  Json groups = Json::array();
  for (const auto& g : r.groups) {
    groups.push_back({{"group", g.group}, {"wer", g.wer_percent}, {"utterances", g.utterances}});
  }
  return {{"groups", groups},
          {"overall", {{"wer", r.overall.wer_percent}, {"utterances", r.overall.utterances}}},
          {"failed", r.failed}};
}

WerReport WerReportFromJson(const Json& j) {
  WerReport r;
  for (const auto& g : j.at("groups")) {
    r.groups.push_back({g.at("group").get<std::string>(), g.at("wer").get<double>(),
                        g.at("utterances").get<std::size_t>()});
  }
  std::sort(r.groups.begin(), r.groups.end(),
            [](const WerRow& a, const WerRow& b) { return a.group < b.group; });
  r.overall = {"Overall", j.at("overall").at("wer").get<double>(),
               j.at("overall").at("utterances").get<std::size_t>()};
  r.failed = j.value("failed", std::size_t{0});
  return r;
}

std::string FormatWerTable(const WerReport& r) {
  std::ostringstream out;
  char buf[128];
  auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
    std::snprintf(buf, sizeof(buf), "%-14s %9s %14s\n", a.c_str(), b.c_str(), c.c_str());
    out << buf;
  };
  auto pct = [](double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.2f", v);
    return std::string(b);
  };
  line("Accent Group", "WER (%)", "# Utterances");
  out << std::string(39, '-') << "\n";
  for (const auto& g : r.groups) line(g.group, pct(g.wer_percent), WithCommas(g.utterances));
  out << std::string(39, '-') << "\n";
  line("Overall", pct(r.overall.wer_percent), WithCommas(r.overall.utterances));
  return out.str();
}

void RegisterManifest(StubAsrClient& asr, const std::vector<ManifestRow>& rows,
                      const std::filesystem::path& root) {
  for (const auto& row : rows) {
    if (row.status == "ok") asr.Register(root / row.path, row.text);
  }
}

}  // namespace dialaug
