#include "qvad/vector_memory.hpp"

#include "qvad/tokens.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace qvad {

MemoryIndex::MemoryIndex(std::shared_ptr<const Embedder> embedder, MemoryConfig cfg)
    : embedder_(std::move(embedder)), cfg_(cfg) {
  if (!embedder_) throw std::invalid_argument("MemoryIndex: null embedder");
}

std::string serialize_history(const DialogueHistory& history) {
  std::string out;
  for (const DialogueTurn& turn : history) {
    if (!out.empty()) out += '\n';
    out += "Q: " + turn.question + "\nA: " + turn.answer;
  }
  return out;
}

void MemoryIndex::add_scene(const std::string& caption, int verdict_flag,
                            const DialogueHistory& history,
                            const std::optional<std::string>& ctx) {
  if (caption.empty()) throw std::invalid_argument("add_scene: empty caption");

  std::string text = caption;
  const std::string serialized = serialize_history(history);
  if (!serialized.empty()) text += '\n' + serialized;
  if (ctx && !ctx->empty()) text += '\n' + *ctx;

  MemoryEntry entry;
  entry.text = truncate_tokens(text, cfg_.max_caption_tokens);
  entry.verdict_flag = verdict_flag ? 1 : 0;
  entry.embedding = embedder_->embed(entry.text);
  entries_.push_back(std::move(entry));

  if (entries_.size() > cfg_.max_entries) {
    const std::size_t keep = cfg_.max_entries / 2;  // most recent half survives
    entries_.erase(entries_.begin(), entries_.end() - static_cast<std::ptrdiff_t>(keep));
  }
}

std::optional<std::string> MemoryIndex::retrieve_context(const std::string& query) const {
  if (entries_.empty()) return std::nullopt;

  const Eigen::VectorXd query_embedding = embedder_->embed(query);
  std::vector<std::size_t> order(entries_.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> similarity(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    similarity[i] = query_embedding.dot(entries_[i].embedding);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return similarity[a] > similarity[b]; });

  std::string joined;
  std::size_t tokens = 0;
  const std::size_t k = std::min<std::size_t>(order.size(),
                                              static_cast<std::size_t>(cfg_.retrieval_count));
  for (std::size_t rank = 0; rank < k; ++rank) {
    const MemoryEntry& entry = entries_[order[rank]];
    if (!joined.empty()) joined += '\n';
    joined += entry.text;
    tokens += count_tokens(entry.text);
    if (tokens > cfg_.max_context_tokens) break;  // crossing entry included
  }
  return joined;
}

void MemoryIndex::save_snapshot(const std::string& path) const {
  nlohmann::json doc = nlohmann::json::array();
  for (const MemoryEntry& entry : entries_) {
    nlohmann::json item;
    item["text"] = entry.text;
    item["flag"] = entry.verdict_flag;
    item["embedding"] = std::vector<double>(entry.embedding.data(),
                                            entry.embedding.data() + entry.embedding.size());
    doc.push_back(std::move(item));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write memory snapshot: " + path);
  out << doc.dump(2) << '\n';
}

MemoryIndex MemoryIndex::load_snapshot(const std::string& path,
                                       std::shared_ptr<const Embedder> embedder,
                                       MemoryConfig cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read memory snapshot: " + path);
  const nlohmann::json doc = nlohmann::json::parse(in);
  MemoryIndex index(std::move(embedder), cfg);
  for (const nlohmann::json& item : doc) {
    MemoryEntry entry;
    entry.text = item.at("text").get<std::string>();
    entry.verdict_flag = item.at("flag").get<int>();
    const auto values = item.at("embedding").get<std::vector<double>>();
    if (values.size() != kEmbeddingDim)
      throw std::runtime_error("memory snapshot: bad embedding dimension");
    entry.embedding = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                        static_cast<Eigen::Index>(values.size()));
    index.entries_.push_back(std::move(entry));
  }
  return index;
}

}  // namespace qvad
