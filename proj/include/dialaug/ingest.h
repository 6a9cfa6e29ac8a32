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

#ifndef DIALAUG_INGEST_H_
#define DIALAUG_INGEST_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/corpus_json.h"

namespace dialaug {

inline constexpr std::string_view kKnownSources[] = {
    "generic", "sgd", "tm2", "abcd", "emowoz", "spokenwoz"};

struct SourceRecord {
  std::string source;
  Json raw;
};

struct IngestWarning {
  std::optional<std::size_t> turn;
  std::string message;
};

struct IngestResult {
  Dialogue dialogue;
  std::vector<IngestWarning> warnings;
};

// Converts one source document to the unified schema. Throws Error on an
// unknown source or a document missing required fields; span mismatches
// only produce warnings.
IngestResult Adapt(const SourceRecord& rec);

struct LocateResult {
  std::vector<SlotSpan> spans;
  std::vector<std::pair<std::string, std::string>> unmatched;
};

// Case-sensitive exact matching; each value takes its leftmost occurrence
// that does not overlap a span already placed. Values are placed in order.
LocateResult LocateSlotSpans(
    const std::string& utterance,
    const std::vector<std::pair<std::string, std::string>>& values);

// Fixed English skeleton for sources that carry no goal description.
std::string TemplateGoalText(const Goal& goal);

// Joins consecutive same-role turns with a single space.
void MergeConsecutiveTurns(Dialogue& d);

}  // namespace dialaug

#endif  // DIALAUG_INGEST_H_
