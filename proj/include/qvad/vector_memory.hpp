#pragma once

#include "qvad/dialogue.hpp"
#include "qvad/embedder.hpp"

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qvad {

struct MemoryConfig {
  std::size_t max_caption_tokens = 150;  // budget for stored scene texts
  std::size_t max_context_tokens = 512;  // budget for retrieved context
  int retrieval_count = 3;               // top-k
  std::size_t max_entries = 400;         // prune trigger
};

struct MemoryEntry {
  std::string text;       // truncated scene summary
  int verdict_flag = 0;   // binary anomaly flag at storage time
  Eigen::VectorXd embedding;  // unit-norm, kEmbeddingDim components
};

/// Per-video semantic memory: truncated scene texts with dense embeddings,
/// searched by exhaustive cosine scan. Single-writer; one instance per
/// video, never shared across videos.
class MemoryIndex {
 public:
  MemoryIndex(std::shared_ptr<const Embedder> embedder, MemoryConfig cfg);

  /// Stores caption + serialized history + optional retrieved context,
  /// truncated to the caption budget. Exceeding capacity prunes to the most
  /// recent half.
  void add_scene(const std::string& caption, int verdict_flag,
                 const DialogueHistory& history, const std::optional<std::string>& ctx);

  /// Ranks entries by cosine similarity to the query (ties keep insertion
  /// order) and joins the top-k texts. Accumulation stops after the entry
  /// that crosses the context token budget. Empty index yields nullopt.
  std::optional<std::string> retrieve_context(const std::string& query) const;

  const std::vector<MemoryEntry>& entries() const { return entries_; }
  const MemoryConfig& config() const { return cfg_; }

  /// JSON snapshot [{text, flag, embedding[384]}, ...] for debugging and
  /// persistence.
  void save_snapshot(const std::string& path) const;
  static MemoryIndex load_snapshot(const std::string& path,
                                   std::shared_ptr<const Embedder> embedder,
                                   MemoryConfig cfg);

 private:
  std::shared_ptr<const Embedder> embedder_;
  MemoryConfig cfg_;
  std::vector<MemoryEntry> entries_;
};

/// Serialization of a dialogue history into stored scene text: one
/// "Q: ...\nA: ..." block per turn.
std::string serialize_history(const DialogueHistory& history);

}  // namespace qvad
