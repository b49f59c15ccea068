#pragma once

#include <string>
#include <vector>

namespace qvad {

/// The prompt texts driving one engine run. The perception and
/// question-generation prompts are fixed; the scoring prompt carries the
/// dataset-specific anomaly definition.
struct PromptSet {
  std::string profile_id;       // ucf | xd | ubnormal | complexvad
  std::string taxonomy_label;   // short human-readable anomaly taxonomy name
  std::string vlm_initial;      // perception: first comprehensive caption
  std::string vlm_focused;      // perception: focused answer, {question} placeholder
  std::string question_gen;     // reasoning: clarifying-question generation
  std::string scoring;          // reasoning: dataset-specific anomaly scoring
};

const std::vector<std::string>& known_profiles();

/// Loads the prompt files for a profile from `dir` (vlm_initial.txt,
/// vlm_focused.txt, question_gen.txt, scoring_<profile>.txt). File bytes
/// are used verbatim as prompt bytes. Throws std::runtime_error when a
/// file is missing or the profile is unknown.
PromptSet load_prompts(const std::string& dir, const std::string& profile_id);

/// vlm_focused with the {question} placeholder substituted.
std::string substitute_question(const std::string& focused_template,
                                const std::string& question);

}  // namespace qvad
