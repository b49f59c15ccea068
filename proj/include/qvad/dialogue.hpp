#pragma once

#include <string>
#include <vector>

namespace qvad {

/// One question/answer exchange of the refinement loop.
struct DialogueTurn {
  std::string question;
  std::string answer;
};

/// Ordered Q/A pairs accumulated within one window.
using DialogueHistory = std::vector<DialogueTurn>;

}  // namespace qvad
