#include "qvad/tokens.hpp"

#include <sstream>

namespace qvad {

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream stream(text);
  std::string token;
  while (stream >> token) tokens.push_back(std::move(token));
  return tokens;
}

std::size_t count_tokens(const std::string& text) { return split_tokens(text).size(); }

std::string truncate_tokens(const std::string& text, std::size_t max_tokens) {
  const std::vector<std::string> tokens = split_tokens(text);
  if (tokens.size() <= max_tokens) return text;
  std::string out;
  for (std::size_t i = 0; i < max_tokens; ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace qvad
