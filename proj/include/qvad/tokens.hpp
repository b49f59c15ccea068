#pragma once

#include <string>
#include <vector>

namespace qvad {

/// Whitespace tokenization. Token budgets throughout the engine are
/// enforced with this count.
std::vector<std::string> split_tokens(const std::string& text);

std::size_t count_tokens(const std::string& text);

/// Keeps the first `max_tokens` tokens. Texts already within budget are
/// returned unchanged; truncated texts are rejoined with single spaces.
std::string truncate_tokens(const std::string& text, std::size_t max_tokens);

}  // namespace qvad
