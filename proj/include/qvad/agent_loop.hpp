#pragma once

#include "qvad/backend.hpp"
#include "qvad/dialogue.hpp"
#include "qvad/frame.hpp"
#include "qvad/prompts.hpp"
#include "qvad/vector_memory.hpp"

#include <memory>
#include <optional>
#include <string>

namespace qvad {

struct Caption {
  std::string text;
  std::size_t token_count = 0;
};

/// One turn's assessment from the reasoning backend.
struct AgentVerdict {
  int anomaly_flag = 0;          // g
  double probability = 0.0;      // p, clamped to [0,1]
  std::string reasoning;         // R
  std::string crime_type = "none";
  bool parse_ok = false;
};

struct LoopConfig {
  int max_turns = 2;                      // K
  double threshold = 0.7;                 // theta; loop continues strictly below
  std::size_t enrich_budget_tokens = 2048;
  std::size_t max_caption_tokens = 300;
  std::size_t max_answer_tokens = 150;
  double vlm_temperature = 0.7;
  double llm_temperature = 0.3;
  int max_new_tokens = 512;
};

struct WindowResult {
  int window_start = 0;
  int final_flag = 0;
  double final_probability = 0.0;
  std::string reasoning;
  std::string crime_type = "none";
  DialogueHistory history;
  int turns_used = 0;
  bool parse_ok = false;
  bool failed = false;  // backend failure; contributes (0, 0) downstream
};

struct Backends {
  std::shared_ptr<ModelBackend> vlm;
  std::shared_ptr<ModelBackend> llm;
};

/// Robust JSON verdict extraction: first balanced {...} block of the raw
/// reply, anomaly_score coerced to {0,1}, confidence clamped to [0,1].
/// Never throws; failures yield parse_ok = false.
AgentVerdict parse_verdict(const std::string& raw);

/// The scoring user message: caption, optional retrieved context, and the
/// Q/A history under the enrich budget. The context is cut first, then the
/// oldest turns; the caption is never cut.
std::string enrich_message(const Caption& caption, const DialogueHistory& history,
                           const std::optional<std::string>& ctx, std::size_t budget_tokens);

/// Turn-0 comprehensive caption, truncated to the caption budget. Throws
/// BackendError when the perception backend stays unreachable.
Caption initial_caption(const SelectedClip& clip, ModelBackend& vlm,
                        const PromptSet& prompts, const LoopConfig& cfg);

/// Scores the enriched scene with the dataset scoring prompt. A parse
/// failure re-issues the request once, then degrades to the fallback
/// verdict; transport failures degrade likewise.
AgentVerdict score_scene(const Caption& caption, const DialogueHistory& history,
                         const std::optional<std::string>& ctx, ModelBackend& llm,
                         const PromptSet& prompts, const LoopConfig& cfg);

/// One clarifying question (first non-empty line of the reply). Empty or
/// failing replies substitute the fixed fallback question.
std::string generate_question(const Caption& caption, const DialogueHistory& history,
                              const AgentVerdict& verdict, ModelBackend& llm,
                              const PromptSet& prompts, const LoopConfig& cfg);

/// Focused answer for one question, truncated to the answer budget.
/// Backend failures record "unanswerable".
std::string answer_question(const SelectedClip& clip, const std::string& question,
                            ModelBackend& vlm, const PromptSet& prompts,
                            const LoopConfig& cfg);

/// Full per-window dialogue: caption, score, then question/answer turns
/// while the probability stays below the threshold and the turn budget
/// lasts. Writes exactly one scene into memory per completed window.
WindowResult run_window(const SelectedClip& clip, MemoryIndex& memory,
                        const LoopConfig& cfg, const Backends& backends,
                        const PromptSet& prompts);

}  // namespace qvad
