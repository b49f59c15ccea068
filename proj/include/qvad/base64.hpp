#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qvad {

std::string base64_encode(const std::vector<unsigned char>& data);

/// Throws std::invalid_argument on malformed input.
std::vector<unsigned char> base64_decode(std::string_view text);

}  // namespace qvad
