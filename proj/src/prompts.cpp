#include "qvad/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qvad {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read prompt file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string taxonomy_for(const std::string& profile_id) {
  if (profile_id == "ucf") return "UCF-Crime crimes and hazards";
  if (profile_id == "xd") return "XD-Violence violence taxonomy";
  if (profile_id == "ubnormal") return "UBNormal public-safety risks";
  if (profile_id == "complexvad") return "ComplexVAD interaction anomalies";
  throw std::runtime_error("unknown prompt profile: " + profile_id);
}

}  // namespace

const std::vector<std::string>& known_profiles() {
  static const std::vector<std::string> profiles = {"ucf", "xd", "ubnormal", "complexvad"};
  return profiles;
}

PromptSet load_prompts(const std::string& dir, const std::string& profile_id) {
  const std::filesystem::path base(dir);
  PromptSet set;
  set.profile_id = profile_id;
  set.taxonomy_label = taxonomy_for(profile_id);
  set.vlm_initial = read_file(base / "vlm_initial.txt");
  set.vlm_focused = read_file(base / "vlm_focused.txt");
  set.question_gen = read_file(base / "question_gen.txt");
  set.scoring = read_file(base / ("scoring_" + profile_id + ".txt"));
  return set;
}

std::string substitute_question(const std::string& focused_template,
                                const std::string& question) {
  const std::string placeholder = "{question}";
  std::string out = focused_template;
  const std::size_t pos = out.find(placeholder);
  if (pos == std::string::npos)
    throw std::runtime_error("focused prompt template lacks {question} placeholder");
  out.replace(pos, placeholder.size(), question);
  return out;
}

}  // namespace qvad
