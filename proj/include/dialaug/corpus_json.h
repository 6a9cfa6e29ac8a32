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

// On-disk form of the unified schema: one JSON document per dialogue, or
// newline-delimited collections of them.

#ifndef DIALAUG_CORPUS_JSON_H_
#define DIALAUG_CORPUS_JSON_H_

#include <filesystem>
#include <string>
#include <vector>

#include "dialaug/corpus.h"
#include "json.hpp"

namespace dialaug {

using Json = nlohmann::json;

Json ToJson(const Goal& g);
Json ToJson(const Turn& t);
Json ToJson(const SpeakerProfile& s);
Json ToJson(const Dialogue& d);

Goal GoalFromJson(const Json& j);
Turn TurnFromJson(const Json& j, std::size_t default_index);
SpeakerProfile SpeakerFromJson(const Json& j);
Dialogue DialogueFromJson(const Json& j);

// Serialized form used for byte-level comparisons and NDJSON rows.
std::string DumpLine(const Json& j);

// Reads a single JSON document, a JSON array, or newline-delimited JSON.
std::vector<Json> ReadJsonDocuments(const std::filesystem::path& path);
std::vector<Dialogue> ReadDialogues(const std::filesystem::path& path);
void WriteDialogues(const std::filesystem::path& path,
                    const std::vector<Dialogue>& dialogues);
void WriteNdjson(const std::filesystem::path& path,
                 const std::vector<Json>& rows);

}  // namespace dialaug

#endif  // DIALAUG_CORPUS_JSON_H_
