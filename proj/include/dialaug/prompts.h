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

// Prompt payloads sent to generator and judge services.

#ifndef DIALAUG_PROMPTS_H_
#define DIALAUG_PROMPTS_H_

#include <map>
#include <string>
#include <string_view>

#include "dialaug/corpus.h"

namespace dialaug {

// Replaces every "{name}" in `tmpl` with vars.at(name). Unknown names are
// left in place.
std::string FillTemplate(std::string_view tmpl,
                         const std::map<std::string, std::string>& vars);

// Raw template for a barge-in cell. Placeholders: {context_str},
// {current_exchange}, {current_state}.
std::string_view BargeInTemplate(BargeInType type, BargeInStyle style);

// Yes/no suitability question for a barge-in candidate. Placeholders:
// {context_str}, {assistant_utterance}.
std::string_view BargeInJudgeTemplate(BargeInType type);

// Placeholders: {context}, {utterance}.
std::string_view EmotionTemplate();

// Placeholders: {utterance}, {slot_name}, {slot_value}.
std::string_view SelfCorrectionTemplate();

// Placeholders: {utterance}, {position}, {word_at_position}.
std::string_view RestartTemplate();

// Placeholders: {goal_items}, {dial_hist}, {user_utterance}.
std::string_view GoalAlignmentTemplate();

}  // namespace dialaug

#endif  // DIALAUG_PROMPTS_H_
