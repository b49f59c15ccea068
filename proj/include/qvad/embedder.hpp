#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

namespace qvad {

inline constexpr int kEmbeddingDim = 384;

/// Text-to-vector encoder. Implementations must be deterministic (same
/// text, same vector) and return unit-norm vectors of kEmbeddingDim
/// components. Instances may be shared read-only across workers.
class Embedder {
 public:
  virtual ~Embedder() = default;

  int dim() const { return kEmbeddingDim; }

  /// Throws std::invalid_argument("empty embedding input") when the text is
  /// empty after trimming.
  virtual Eigen::VectorXd embed(const std::string& text) const = 0;
};

/// FNV-1a 64-bit over the bytes of `data`. Stable across platforms.
std::uint64_t fnv1a64(std::string_view data);

/// Self-contained encoder: hashes each lowercased whitespace token into one
/// of the 384 buckets, accumulates counts, and L2-normalizes. No external
/// model required; swap in an HTTP encoder for real sentence embeddings.
class HashedBagEmbedder final : public Embedder {
 public:
  Eigen::VectorXd embed(const std::string& text) const override;
};

}  // namespace qvad
