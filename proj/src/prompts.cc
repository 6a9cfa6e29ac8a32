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

#include "dialaug/prompts.h"

namespace dialaug {
namespace {

constexpr std::string_view kHeader =
    "You are a dialogue augmentation assistant. Your task is to apply a "
    "\"barge-in\" pattern to a dialogue exchange.\n";

constexpr std::string_view kTruncation =
    "IMPORTANT: The original assistant's speech must be TRUNCATED "
    "mid-sentence, ending with <bargein> tag.\n";

constexpr std::string_view kErrorRecoveryState = R"(
Current dialogue state
{current_state}

Important for ERROR_RECOVERY:
- Use this state to identify the CORRECT slot values
- Generate an INCORRECT value for the assistant to mistakenly say (erroneous_slots)
- The corrected_slots MUST match the values in this dialogue state
- This ensures natural flow: the dialogue continues correctly after the barge-in correction
)";

constexpr std::string_view kInstructions = R"(
Instructions
1. Determine if this barge-in type can be naturally applied to this dialogue exchange.
2. Critical: Your response should ONLY contain the NEW turns that replace the assistant's response.
  - DO NOT include the current User turn - it will be kept as-is.
  - START with the truncated Assistant turn that gets interrupted mid-sentence.
  - End the truncated speech with <bargein> tag
  - Example: "I'll book you a flight to Lon<bargein>" (user interrupts before assistant finishes)
3. If applicable, generate turns following the barge-in pattern as shown in the examples above.
)";

constexpr std::string_view kErrorRecoveryInstructions = R"(4. For ERROR_RECOVERY types:
  - Look at the Current Dialogue State to identify the CORRECT slot values
  - Generate an INCORRECT value for the assistant to mistakenly say -> put in erroneous_slots
  - The corrected_slots MUST use the SAME slot names and values from the Current Dialogue State
  - Slot naming: Use the format from the dialogue state (e.g., "domain.slot" like "flight.destination" or just "destination")
  - Example: State shows {"flight": {"destination": "Paris"}}
    - Assistant incorrectly says "London" -> erroneous_slots: {"flight.destination": "London"}
    - User corrects to "Paris" -> corrected_slots: {"flight.destination": "Paris"}
5. Keep the dialogue natural and coherent.
6. Maintain all important information from the original exchange.
)";

constexpr std::string_view kPlainInstructionsTail =
    "4. Keep the dialogue natural and coherent.\n"
    "5. Maintain all important information from the original exchange.\n";

constexpr std::string_view kOutputFormat = R"(
Output format: one turn per line as "[Assistant]: ..." or "[User]: ...". For ERROR_RECOVERY also emit the lines "Erroneous slots: {...}" and "Corrected slots: {...}" as JSON objects. If the barge-in cannot be applied, answer "NOT_APPLICABLE".
)";

std::string Compose(std::string_view body, bool error_recovery) {
  std::string s(kHeader);
  s += body;
  s += kInstructions;
  s += error_recovery ? kErrorRecoveryInstructions : kPlainInstructionsTail;
  s += kOutputFormat;
  return s;
}

const std::string& ErrorRecoveryRaw() {
  static const std::string s = Compose(std::string(
      "The user interrupts the assistant abruptly without explanation.\n") +
      std::string(kTruncation) + R"(The user says something brief and dismissive like: "No", "That's wrong", "What?", "Huh?"
The user does NOT explain what was wrong - just expresses disagreement.
The assistant should apologize and ask what needs to be corrected.

Examples
Context
  [User]: I want to book a flight to Paris.
Result (barge-in applied)
  [Assistant]: Sure, I'll book a flight to Lon<bargein>
  [User]: No, that's wrong.
  [Assistant]: I apologize. What would you like me to correct?
  [User]: I said Paris, not London.
  [Assistant]: I'm sorry for the confusion. I'll book your flight to Paris instead.
Erroneous slots: {"destination": "London"}
Corrected slots: {"destination": "Paris"}

Current exchange to transform: {current_exchange}
)" + std::string(kErrorRecoveryState), true);
  return s;
}

const std::string& ErrorRecoveryInterp() {
  static const std::string s = Compose(std::string(
      "The user interrupts the assistant abruptly without explanation.\n") +
      std::string(kTruncation) + R"(The user explicitly states the error, like: "No, I said Paris not London", "The destination should be Paris" The user provides the correction inline. The assistant should apologize and confirm the corrected information.

Examples
Context
  [User]: I need a table for 4 people.
Result (barge-in applied)
  [Assistant]: I've reserved a table for 2<bargein>
  [User]: No, I said 4 people, not 2.
  [Assistant]: I apologize for the mistake. I'll change the reservation to 4 people.
Erroneous slots: {"party_size": "2"}
Corrected slots: {"party_size": "4"}

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)" + std::string(kErrorRecoveryState), true);
  return s;
}

// No published template exists for the implicit error-recovery cell; this
// one mirrors the raw cell with a minimal non-lexical signal.
const std::string& ErrorRecoveryImplicit() {
  static const std::string s = Compose(std::string(
      "The user signals that something is off with a minimal reaction, cutting off the assistant.\n") +
      std::string(kTruncation) + R"(The user says something minimal like: "Huh?", "Hm?", "Wait-"
The user does NOT say what was wrong.
The assistant should stop, apologize and check what needs to be corrected.

Examples
Context
  [User]: I want to book a flight to Paris.
Result (barge-in applied)
  [Assistant]: Sure, I'll book a flight to Lon<bargein>
  [User]: Huh?
  [Assistant]: Sorry, let me check that again. What would you like me to correct?
Erroneous slots: {"destination": "London"}
Corrected slots: {"destination": "Paris"}

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)" + std::string(kErrorRecoveryState), true);
  return s;
}

const std::string& ClarificationRaw() {
  static const std::string s = Compose(std::string(
      "The user didn't understand the assistant and asks for clarification briefly.\n") +
      std::string(kTruncation) + R"(The user says something like: "Sorry?", "What?", "Come again?", "I didn't catch that"
The user does NOT specify what part was unclear - just signals general confusion.
The assistant should rephrase or repeat their previous message more clearly.

Examples
Context
  [Context]: (none)
Result (barge-in applied)
  [Assistant]: Your PNR is ABC123 and the flight departs from gate B7 at<bargein>
  [User]: Sorry, what was that?
  [Assistant]: Let me repeat that. Your booking reference is ABC123, and flight leaves from gate B7 at 2:35.

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)", false);
  return s;
}

const std::string& ClarificationInterp() {
  static const std::string s = Compose(std::string(
      "The user asks for clarification about a specific part.\n") +
      std::string(kTruncation) + R"(The user asks about a specific term or detail, like: "What does PNR mean?", "Which date was that?", "Can you repeat the reference number?"
The user identifies exactly what they didn't understand.
The assistant should explain or clarify just that specific part.

Examples
Context
  [Context]: (none)
Result (barge-in applied)
  [Assistant]: Your PNR is ABC123 for the<bargein>
  [User]: What's a PNR?
  [Assistant]: PNR stands for Passenger Name Record - it's your booking reference number. Yours is ABC123.

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)", false);
  return s;
}

// No published template exists for the implicit clarification cell.
const std::string& ClarificationImplicit() {
  static const std::string s = Compose(std::string(
      "The user signals confusion with a minimal non-lexical reaction.\n") +
      std::string(kTruncation) + R"(The user says something minimal like: "Hm?", "Huh?", "Eh?"
The user does NOT say anything else.
The assistant should repeat their previous message more slowly and clearly.

Examples
Context
  [Context]: (none)
Result (barge-in applied)
  [Assistant]: Your PNR is ABC123 and the flight departs from gate B7 at<bargein>
  [User]: Hm?
  [Assistant]: Let me say that again. Your booking reference is ABC123, and the flight leaves from gate B7 at 2:35.

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)", false);
  return s;
}

const std::string& EfficiencyImplicit() {
  static const std::string s = Compose(std::string(
      "The user signals understanding with minimal acknowledgment, cutting off the assistant.\n") +
      std::string(kTruncation) + R"(The user says something brief like: "Uh-huh", "Mm-hmm", "Yeah", "Okay"
This is just a backchannel signal, not a full response.
The assistant should continue briefly or move to the next step.

Examples
Context
  [Context]: (none)
Result (barge-in applied)
  [Assistant]: So I'll book the 3:00 PM flight on March 15th to<bargein>
  [User]: Uh-huh.
  [Assistant]: Great, I'll proceed with the booking.

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)", false);
  return s;
}

const std::string& EfficiencyRaw() {
  static const std::string s = Compose(std::string(
      "The user explicitly confirms understanding, cutting off the assistant.\n") +
      std::string(kTruncation) + R"(The user says something like: "Yes", "I understand", "Got it", "Alright"
This is a clear acknowledgment but no additional information.
The assistant should acknowledge and proceed to the next step.

Examples
Context
  [Context]: (none)
Result (barge-in applied)
  [Assistant]: Your total comes to $250 for the<bargein>
  [User]: Got it, that works.
  [Assistant]: Alright, I'll finalize the booking now.

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)", false);
  return s;
}

const std::string& EfficiencyInterp() {
  static const std::string s = Compose(std::string(
      "The user confirms understanding AND adds relevant information, cutting off the assistant.\n") +
      std::string(kTruncation) + R"(The user says something like: "Yes, Sunday works for me", "Got it, I prefer the morning flight"
The user shows understanding by adding context or preference.
The assistant should acknowledge the additional information and proceed.

Examples
Context
  [Context]: (none)
Result (barge-in applied)
  [Assistant]: I found flights available on Saturday and Sun<bargein>
  [User]: Yes, Sunday would be better for me.
  [Assistant]: Understood, I'll book the Sunday flight for you.

Previous context: {context_str}

Current exchange to transform: {current_exchange}
)", false);
  return s;
}

constexpr std::string_view kJudgeErrorRecovery = R"(You are reviewing a task-oriented dialogue for barge-in augmentation.
Previous context: {context_str}
Assistant utterance: {assistant_utterance}

Could this assistant utterance plausibly be rendered with incoherent information (for example a wrong slot value) that the user would interrupt to correct?
Answer with only "yes" or "no".)";

constexpr std::string_view kJudgeClarification = R"(You are reviewing a task-oriented dialogue for barge-in augmentation.
Previous context: {context_str}
Assistant utterance: {assistant_utterance}

Does this assistant utterance contain unclear content (codes, numbers, names or terms) that a user might interrupt to ask about?
Answer with only "yes" or "no".)";

constexpr std::string_view kJudgeEfficiency = R"(You are reviewing a task-oriented dialogue for barge-in augmentation.
Previous context: {context_str}
Assistant utterance: {assistant_utterance}

Does this assistant utterance convey sufficient information early enough that the user could interrupt to move the conversation forward?
Answer with only "yes" or "no".)";

constexpr std::string_view kEmotion = R"(You are an emotion classifier for task-oriented dialogues.
Classify the emotion of the LAST user utterance based on the conversation context.

Labels
- 0: neutral - No emotion expressed. Plain requests or factual statements without enthusiasm, frustration, or apology.
- 1: fearful/sad - Disappointment about external circumstances outside system's control; resigned or saddened tone.
- 2: dissatisfied - Frustration with the system's mistakes or misalignment; user corrects, insists, or asks to retry.
- 3: apologetic - User apologizes for THEIR OWN mistake or change of mind.
- 4: abusive - Rude, dismissive, or hostile expression toward the system.
- 5: excited - Interest/enthusiasm about exploring options or getting recommendations; positive curiosity.
- 6: satisfied - Gratitude or closure about the system's help (even if followed by another request).

Examples
"I'd like a reservation for 7 people Monday at 15:30 please." -> 0 (neutral)
"Could you recommend one of the expensive ones?" -> 0 (neutral)
"That's disappointing. Can you try international food instead?" -> 1 (fearful)

Conversation
{context}

Task
Based on the conversation above, the LAST user utterance is: "{utterance}"
Predict the emotion label (0-6) for this utterance.
- 0: neutral (plain factual question)
- 1: fearful/sad (disappointment about external circumstances)
- 2: dissatisfied (challenging/correcting the system)
- 3: apologetic (user's own mistake)
- 4: abusive (rude/hostile)
- 5: excited (enthusiasm/curiosity)
- 6: satisfied (gratitude/closure)

Respond with only the number (0-6).)";

constexpr std::string_view kSelfCorrection = R"(You are a speech disfluency simulator. Your task is to add a self-correction to a user utterance in a task-oriented dialogue.

Context
- Original Utterance: "{utterance}"
- Slot to modify: {slot_name} = "{slot_value}"

Task
Generate a realistic self-correction where the speaker first says a WRONG value for the slot, then corrects themselves. The correction should sound natural, as if the speaker momentarily misspoke or changed their mind.

Correction patterns (use one)
1. "X- no, Y" (e.g., "Tuesday- no, Wednesday")
2. "X- wait, I mean Y" (e.g., "San Jose- wait, I mean San Francisco")
3. "X- actually, Y" (e.g., "2 people- actually, 4 people")
4. "X... Y" (e.g., "7pm... 8pm")

Examples
Example 1:
- Original: "I need a train to Cambridge on Saturday."
- Slot: day = "Saturday"
- Output: "I need a train to Cambridge on Friday— no, Saturday."

Example 2:
- Original: "Book a table for 6 people please."
- Slot: people = "6"
- Output: "Book a table for 4 people— actually, 6 people please."

Example 3:
- Original: "I'm looking for a hotel in the north area."
- Slot: area = "north"
- Output: "I'm looking for a hotel in the south— wait, I mean north area."

Rules
- The wrong value should be plausible (similar category: another day, city, time, etc.)
- Keep the rest of the utterance EXACTLY the same
- The final utterance MUST contain the correct value "{slot_value}"
- Return ONLY the modified utterance, nothing else

Output)";

constexpr std::string_view kRestart = R"(You are a speech disfluency simulator. Your task is to add a sentence restart to a user utterance.

Context
- Original Utterance: "{utterance}"
- Restart near position: around word #{position} ("{word_at_position}")

Task
Generate a realistic utterance restart where the speaker begins saying something, stops mid-way, and restarts with a different sentence structure. The final meaning should be the same.

Restart patterns (use one)
1. "I want to- let me just..."
2. "Can you- I need..."
3. "The- I'm looking for..."
4. "I'd like a- make that..."

Examples
Example 1:
- Original: "Can you find me a cheap restaurant in the center?"
- Restart near: word #3 ("find")
- Output: "Can you find... I need a cheap restaurant in the center."

Example 2:
- Original: "I need a train to London on Friday."
- Restart near: word #4 ("train")
- Output: "I need a train— let me check, I'm looking for a train to London on Friday."

Example 3:
- Original: "Book a hotel room for 3 nights starting Monday."
- Restart near: word #2 ("a")
- Output: "Book a... I'd like to book a hotel room for 3 nights starting Monday."

Rules
- The restart should occur naturally around the specified position
- The incomplete fragment should be 2-5 words
- The restarted sentence should convey the same meaning
- Use "..." or "—" for natural pauses
- Sound natural, as if the speaker changed their mind about phrasing
- Return ONLY the modified utterance, nothing else

Output)";

constexpr std::string_view kGoalAlignment = R"(You are an expert at extracting goal-relevant information from user dialogue.

Here are the goal item strings:

<Information List>
{goal_items}

<Dialogue History>
{dial_hist}

<User Utterance>
{user_utterance}

Task
Select which items from the <Information List> are explicitly mentioned, confirmed, or requested in the <User Utterance>.
Return the numbers only (e.g., [1, 3, 5]).

RULES
1. Count only what the user explicitly says, confirms, or asks for.
2. Do NOT count anything mentioned only by the assistant.
3. Do NOT infer missing details.)";

}  // namespace

std::string FillTemplate(std::string_view tmpl,
                         const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const std::string name(tmpl.substr(i + 1, close - i - 1));
        auto it = vars.find(name);
        if (it != vars.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string_view BargeInTemplate(BargeInType type, BargeInStyle style) {
  switch (type) {
    case BargeInType::kErrorRecovery:
      switch (style) {
        case BargeInStyle::kImplicit: return ErrorRecoveryImplicit();
        case BargeInStyle::kRaw: return ErrorRecoveryRaw();
        case BargeInStyle::kInterpreted: return ErrorRecoveryInterp();
      }
      break;
    case BargeInType::kClarification:
      switch (style) {
        case BargeInStyle::kImplicit: return ClarificationImplicit();
        case BargeInStyle::kRaw: return ClarificationRaw();
        case BargeInStyle::kInterpreted: return ClarificationInterp();
      }
      break;
    case BargeInType::kEfficiency:
      switch (style) {
        case BargeInStyle::kImplicit: return EfficiencyImplicit();
        case BargeInStyle::kRaw: return EfficiencyRaw();
        case BargeInStyle::kInterpreted: return EfficiencyInterp();
      }
      break;
  }
  return ErrorRecoveryRaw();
}

std::string_view BargeInJudgeTemplate(BargeInType type) {
  switch (type) {
    case BargeInType::kErrorRecovery: return kJudgeErrorRecovery;
    case BargeInType::kClarification: return kJudgeClarification;
    case BargeInType::kEfficiency: return kJudgeEfficiency;
  }
  return kJudgeErrorRecovery;
}

std::string_view EmotionTemplate() { return kEmotion; }
std::string_view SelfCorrectionTemplate() { return kSelfCorrection; }
std::string_view RestartTemplate() { return kRestart; }
std::string_view GoalAlignmentTemplate() { return kGoalAlignment; }

}  // namespace dialaug
