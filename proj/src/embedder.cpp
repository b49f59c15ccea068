#include "qvad/embedder.hpp"

#include "qvad/tokens.hpp"

#include <cctype>
#include <stdexcept>

namespace qvad {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

Eigen::VectorXd HashedBagEmbedder::embed(const std::string& text) const {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(kEmbeddingDim);
  for (std::string token : split_tokens(text)) {
    for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    counts(static_cast<Eigen::Index>(fnv1a64(token) % kEmbeddingDim)) += 1.0;
  }
  const double norm = counts.norm();
  if (norm == 0.0) throw std::invalid_argument("empty embedding input");
  return counts / norm;
}

}  // namespace qvad
