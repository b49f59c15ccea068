#pragma once

#include "qvad/frame.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvad {

/// One completion request. Images are base64-encoded PNG payloads and are
/// only present on perception (VLM) requests.
struct ModelRequest {
  std::string system_prompt;
  std::string user_text;
  std::vector<std::string> images;
  int max_new_tokens = 512;
  double temperature = 0.0;
};

enum class BackendErrorKind { transport, http_status, timeout };

class BackendError : public std::runtime_error {
 public:
  BackendError(BackendErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  BackendErrorKind kind() const { return kind_; }

 private:
  BackendErrorKind kind_;
};

struct BackendConfig {
  std::string kind = "scripted";  // "scripted" | "http"
  std::string endpoint;           // e.g. http://localhost:8000
  std::string model;
  double timeout_seconds = 60.0;
  int retries = 1;          // transport retries after the first attempt
  std::string auth_env;     // env var holding the bearer token, optional
  std::string scenario;     // scripted: path to the scenario JSON, optional
};

/// Uniform completion interface over the perception and reasoning models.
/// Instances are shareable across video workers; complete() serializes so
/// at most one request per instance is in flight. An optional shared phase
/// lock additionally prevents interleaving across instances (lets a
/// single-GPU server swap models between VLM and LLM phases).
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;

  std::string complete(const ModelRequest& request) {
    std::unique_lock<std::mutex> phase;
    if (phase_lock_) phase = std::unique_lock<std::mutex>(*phase_lock_);
    std::lock_guard<std::mutex> guard(mutex_);
    return do_complete(request);
  }

  void set_phase_lock(std::shared_ptr<std::mutex> lock) { phase_lock_ = std::move(lock); }

 protected:
  virtual std::string do_complete(const ModelRequest& request) = 0;

 private:
  std::mutex mutex_;
  std::shared_ptr<std::mutex> phase_lock_;
};

/// One substring-dispatch rule of a scripted scenario.
struct ScenarioRule {
  std::string match;  // substring of (system_prompt + user_text); "" matches all
  std::string reply;
  bool consume_once = false;
};

/// Deterministic test backend: the first live rule whose match substring
/// occurs in (system_prompt + user_text) yields its reply; consume-once
/// rules are spent after use; no match yields an empty string. Every
/// request is captured for inspection.
class ScriptedBackend final : public ModelBackend {
 public:
  explicit ScriptedBackend(std::vector<ScenarioRule> rules = {});

  static std::vector<ScenarioRule> load_scenario(const std::string& path);

  const std::vector<ModelRequest>& requests() const { return log_; }

 protected:
  std::string do_complete(const ModelRequest& request) override;

 private:
  std::vector<ScenarioRule> rules_;
  std::vector<bool> spent_;
  std::vector<ModelRequest> log_;
};

/// OpenAI-compatible chat-completions client over HTTP. Transport errors,
/// timeouts, and non-2xx statuses raise BackendError after the configured
/// number of retries.
class HttpBackend final : public ModelBackend {
 public:
  explicit HttpBackend(BackendConfig cfg);

 protected:
  std::string do_complete(const ModelRequest& request) override;

 private:
  std::string post_once(const std::string& body);

  BackendConfig cfg_;
};

/// Chat-completions request body for a ModelRequest. Text-only requests
/// carry the user content as a plain string; requests with images use
/// content parts with data-URL image payloads.
nlohmann::json build_chat_body(const std::string& model, const ModelRequest& request);

/// Each frame of the clip as a base64-encoded grayscale PNG, in order.
std::vector<std::string> encode_frames(const SelectedClip& clip);

std::shared_ptr<ModelBackend> make_backend(const BackendConfig& cfg);

}  // namespace qvad
