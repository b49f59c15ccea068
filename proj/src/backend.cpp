#include "qvad/backend.hpp"

#include "qvad/base64.hpp"
#include "qvad/png_codec.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <fstream>

namespace qvad {

ScriptedBackend::ScriptedBackend(std::vector<ScenarioRule> rules)
    : rules_(std::move(rules)), spent_(rules_.size(), false) {}

std::vector<ScenarioRule> ScriptedBackend::load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file: " + path);
  const nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<ScenarioRule> rules;
  for (const nlohmann::json& item : doc) {
    ScenarioRule rule;
    rule.match = item.at("match").get<std::string>();
    rule.reply = item.at("reply").get<std::string>();
    rule.consume_once = item.value("consume_once", false);
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string ScriptedBackend::do_complete(const ModelRequest& request) {
  log_.push_back(request);
  const std::string haystack = request.system_prompt + request.user_text;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (spent_[i]) continue;
    if (haystack.find(rules_[i].match) != std::string::npos) {
      if (rules_[i].consume_once) spent_[i] = true;
      return rules_[i].reply;
    }
  }
  return "";
}

HttpBackend::HttpBackend(BackendConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.endpoint.empty()) throw std::invalid_argument("http backend requires an endpoint");
  if (cfg_.model.empty()) throw std::invalid_argument("http backend requires a model name");
}

nlohmann::json build_chat_body(const std::string& model, const ModelRequest& request) {
  nlohmann::json body;
  body["model"] = model;
  nlohmann::json messages = nlohmann::json::array();
  messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  if (request.images.empty()) {
    messages.push_back({{"role", "user"}, {"content", request.user_text}});
  } else {
    nlohmann::json parts = nlohmann::json::array();
    if (!request.user_text.empty())
      parts.push_back({{"type", "text"}, {"text", request.user_text}});
    for (const std::string& image : request.images)
      parts.push_back({{"type", "image_url"},
                       {"image_url", {{"url", "data:image/png;base64," + image}}}});
    messages.push_back({{"role", "user"}, {"content", std::move(parts)}});
  }
  body["messages"] = std::move(messages);
  body["max_tokens"] = request.max_new_tokens;
  body["temperature"] = request.temperature;
  return body;
}

std::string HttpBackend::post_once(const std::string& body) {
  httplib::Client client(cfg_.endpoint);
  const auto timeout = std::chrono::microseconds(
      static_cast<long long>(cfg_.timeout_seconds * 1e6));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers headers;
  if (!cfg_.auth_env.empty()) {
    if (const char* token = std::getenv(cfg_.auth_env.c_str()); token && *token)
      headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  auto res = client.Post("/v1/chat/completions", headers, body, "application/json");
  if (!res) {
    const auto err = res.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           err == httplib::Error::Read || err == httplib::Error::Write;
    throw BackendError(timed_out ? BackendErrorKind::timeout : BackendErrorKind::transport,
                       "backend request failed: " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300)
    throw BackendError(BackendErrorKind::http_status,
                       "backend returned status " + std::to_string(res->status));

  try {
    const nlohmann::json doc = nlohmann::json::parse(res->body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendErrorKind::transport,
                       std::string("backend reply not understood: ") + e.what());
  }
}

std::string HttpBackend::do_complete(const ModelRequest& request) {
  const std::string body = build_chat_body(cfg_.model, request).dump();
  const int attempts = 1 + std::max(0, cfg_.retries);
  for (int attempt = 1;; ++attempt) {
    try {
      return post_once(body);
    } catch (const BackendError&) {
      if (attempt >= attempts) throw;
    }
  }
}

std::vector<std::string> encode_frames(const SelectedClip& clip) {
  if (clip.frames.empty()) throw std::invalid_argument("encode_frames: empty clip");
  std::vector<std::string> payloads;
  payloads.reserve(clip.frames.size());
  for (const Frame& frame : clip.frames)
    payloads.push_back(base64_encode(encode_gray_png(frame.pixels)));
  return payloads;
}

std::shared_ptr<ModelBackend> make_backend(const BackendConfig& cfg) {
  if (cfg.kind == "scripted") {
    std::vector<ScenarioRule> rules;
    if (!cfg.scenario.empty()) rules = ScriptedBackend::load_scenario(cfg.scenario);
    return std::make_shared<ScriptedBackend>(std::move(rules));
  }
  if (cfg.kind == "http") return std::make_shared<HttpBackend>(cfg);
  throw std::invalid_argument("unknown backend kind: " + cfg.kind);
}

}  // namespace qvad
