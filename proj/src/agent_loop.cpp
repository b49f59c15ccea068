#include "qvad/agent_loop.hpp"

#include "qvad/tokens.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>

namespace qvad {

namespace {

constexpr const char* kFallbackQuestion = "What specific actions are the people performing?";

/// First balanced {...} block of `raw`, tracking JSON string literals so
/// braces inside quoted text do not unbalance the scan.
std::optional<std::string> first_json_block(const std::string& raw) {
  const std::size_t open = raw.find('{');
  if (open == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = open; i < raw.size(); ++i) {
    const char c = raw[i];
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return raw.substr(open, i - open + 1);
  }
  return std::nullopt;
}

std::optional<double> coerce_number(const nlohmann::json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_boolean()) return value.get<bool>() ? 1.0 : 0.0;
  if (value.is_string()) {
    try {
      std::size_t used = 0;
      const double parsed = std::stod(value.get<std::string>(), &used);
      if (used > 0) return parsed;
    } catch (...) {
    }
  }
  return std::nullopt;
}

AgentVerdict fallback_verdict(const std::string& reason) {
  AgentVerdict v;
  v.anomaly_flag = 0;
  v.probability = 0.0;
  v.reasoning = reason;
  v.crime_type = "none";
  v.parse_ok = false;
  return v;
}

std::string first_nonempty_line(const std::string& text) {
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(begin, end - begin);
    const auto from = line.find_first_not_of(" \t\r");
    if (from != std::string::npos) {
      const auto to = line.find_last_not_of(" \t\r");
      return line.substr(from, to - from + 1);
    }
    begin = end + 1;
  }
  return "";
}

std::string format_probability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", p);
  return buffer;
}

}  // namespace

AgentVerdict parse_verdict(const std::string& raw) {
  const auto block = first_json_block(raw);
  if (!block) return fallback_verdict("parse_error");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(*block);
  } catch (const nlohmann::json::exception&) {
    return fallback_verdict("parse_error");
  }
  if (!doc.is_object() || !doc.contains("anomaly_score") || !doc.contains("confidence"))
    return fallback_verdict("parse_error");

  const auto score = coerce_number(doc["anomaly_score"]);
  const auto confidence = coerce_number(doc["confidence"]);
  if (!score || !confidence) return fallback_verdict("parse_error");

  AgentVerdict v;
  v.anomaly_flag = (*score != 0.0) ? 1 : 0;
  v.probability = std::clamp(*confidence, 0.0, 1.0);
  if (doc.contains("reasoning"))
    v.reasoning = doc["reasoning"].is_string() ? doc["reasoning"].get<std::string>()
                                               : doc["reasoning"].dump();
  if (doc.contains("crime_type") && doc["crime_type"].is_string())
    v.crime_type = doc["crime_type"].get<std::string>();
  if (v.crime_type.empty()) v.crime_type = "none";
  v.parse_ok = true;
  return v;
}

std::string enrich_message(const Caption& caption, const DialogueHistory& history,
                           const std::optional<std::string>& ctx,
                           std::size_t budget_tokens) {
  const std::size_t caption_tokens = count_tokens(caption.text);

  std::vector<std::string> turn_blocks;
  std::size_t turn_tokens = 0;
  for (const DialogueTurn& turn : history) {
    turn_blocks.push_back("Q: " + turn.question + "\nA: " + turn.answer);
    turn_tokens += count_tokens(turn_blocks.back());
  }

  std::string ctx_block;
  if (ctx && !ctx->empty()) ctx_block = "Prior observations: " + *ctx;
  std::size_t ctx_tokens = count_tokens(ctx_block);

  // Context is cut first, then the oldest turns. The caption survives whole.
  if (caption_tokens + turn_tokens + ctx_tokens > budget_tokens && !ctx_block.empty()) {
    const std::size_t room = budget_tokens > caption_tokens + turn_tokens
                                 ? budget_tokens - caption_tokens - turn_tokens
                                 : 0;
    ctx_block = room >= 3 ? truncate_tokens(ctx_block, room) : std::string();
    ctx_tokens = count_tokens(ctx_block);
  }
  std::size_t drop_from = 0;
  while (drop_from < turn_blocks.size() &&
         caption_tokens + turn_tokens + ctx_tokens > budget_tokens) {
    turn_tokens -= count_tokens(turn_blocks[drop_from]);
    ++drop_from;
  }

  std::string message = caption.text;
  if (!ctx_block.empty()) message += "\n\n" + ctx_block;
  for (std::size_t i = drop_from; i < turn_blocks.size(); ++i)
    message += "\n\n" + turn_blocks[i];
  return message;
}

Caption initial_caption(const SelectedClip& clip, ModelBackend& vlm,
                        const PromptSet& prompts, const LoopConfig& cfg) {
  ModelRequest request;
  request.system_prompt = prompts.vlm_initial;
  request.images = encode_frames(clip);
  request.max_new_tokens = cfg.max_new_tokens;
  request.temperature = cfg.vlm_temperature;
  const std::string reply = vlm.complete(request);

  Caption caption;
  caption.text = truncate_tokens(reply, cfg.max_caption_tokens);
  caption.token_count = count_tokens(caption.text);
  return caption;
}

AgentVerdict score_scene(const Caption& caption, const DialogueHistory& history,
                         const std::optional<std::string>& ctx, ModelBackend& llm,
                         const PromptSet& prompts, const LoopConfig& cfg) {
  ModelRequest request;
  request.system_prompt = prompts.scoring;
  request.user_text = enrich_message(caption, history, ctx, cfg.enrich_budget_tokens);
  request.max_new_tokens = cfg.max_new_tokens;
  request.temperature = cfg.llm_temperature;

  // Transport retries live in the backend client; a malformed reply gets
  // one semantic retry here, then the verdict degrades.
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string raw;
    try {
      raw = llm.complete(request);
    } catch (const BackendError&) {
      return fallback_verdict("backend_error");
    }
    const AgentVerdict v = parse_verdict(raw);
    if (v.parse_ok || attempt == 1) return v;
  }
  return fallback_verdict("parse_error");
}

std::string generate_question(const Caption& caption, const DialogueHistory& history,
                              const AgentVerdict& verdict, ModelBackend& llm,
                              const PromptSet& prompts, const LoopConfig& cfg) {
  std::string user = caption.text;
  const std::string serialized = serialize_history(history);
  if (!serialized.empty()) user += "\n\n" + serialized;
  user += "\n\nPrevious assessment: anomaly=" + std::to_string(verdict.anomaly_flag) +
          ", probability=" + format_probability(verdict.probability) +
          "\nReasoning: " + verdict.reasoning;

  ModelRequest request;
  request.system_prompt = prompts.question_gen;
  request.user_text = user;
  request.max_new_tokens = cfg.max_new_tokens;
  request.temperature = cfg.llm_temperature;

  std::string reply;
  try {
    reply = llm.complete(request);
  } catch (const BackendError&) {
    return kFallbackQuestion;
  }
  const std::string question = first_nonempty_line(reply);
  return question.empty() ? kFallbackQuestion : question;
}

std::string answer_question(const SelectedClip& clip, const std::string& question,
                            ModelBackend& vlm, const PromptSet& prompts,
                            const LoopConfig& cfg) {
  ModelRequest request;
  request.system_prompt = substitute_question(prompts.vlm_focused, question);
  request.images = encode_frames(clip);
  request.max_new_tokens = cfg.max_new_tokens;
  request.temperature = cfg.vlm_temperature;

  std::string reply;
  try {
    reply = vlm.complete(request);
  } catch (const BackendError&) {
    return "unanswerable";
  }
  return truncate_tokens(reply, cfg.max_answer_tokens);
}

WindowResult run_window(const SelectedClip& clip, MemoryIndex& memory,
                        const LoopConfig& cfg, const Backends& backends,
                        const PromptSet& prompts) {
  WindowResult result;
  result.window_start = clip.source_window_start;

  Caption caption;
  try {
    caption = initial_caption(clip, *backends.vlm, prompts, cfg);
  } catch (const BackendError&) {
    result.reasoning = "backend_error";
    result.failed = true;
    return result;
  }
  if (caption.text.empty()) {
    result.reasoning = "backend_error";
    result.failed = true;
    return result;
  }

  AgentVerdict verdict =
      score_scene(caption, {}, std::nullopt, *backends.llm, prompts, cfg);
  DialogueHistory history;
  std::optional<std::string> last_ctx;
  int turns = 0;
  while (turns < cfg.max_turns && verdict.probability < cfg.threshold) {
    const std::string question =
        generate_question(caption, history, verdict, *backends.llm, prompts, cfg);
    const std::optional<std::string> ctx = memory.retrieve_context(question);
    if (ctx) last_ctx = ctx;
    const std::string answer =
        answer_question(clip, question, *backends.vlm, prompts, cfg);
    history.push_back({question, answer});
    verdict = score_scene(caption, history, ctx, *backends.llm, prompts, cfg);
    ++turns;
  }

  memory.add_scene(caption.text, verdict.anomaly_flag, history, last_ctx);

  result.final_flag = verdict.anomaly_flag;
  result.final_probability = verdict.probability;
  result.reasoning = verdict.reasoning;
  result.crime_type = verdict.crime_type;
  result.history = std::move(history);
  result.turns_used = turns;
  result.parse_ok = verdict.parse_ok;
  return result;
}

}  // namespace qvad
