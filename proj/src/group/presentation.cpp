#include "sok/group/presentation.hpp"

#include "sok/error.hpp"

#include <json.hpp>

#include <set>

namespace sok {

Presentation::Presentation(std::vector<std::string> generator_names,
                           std::vector<Word> relators)
    : names_(std::move(generator_names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || n.find_first_of(" \t\n^") != std::string::npos) {
      throw Error(ErrorCode::InvalidPresentation, "invalid generator name '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::InvalidPresentation, "duplicate generator name '" + n + "'");
    }
  }
  relators_.reserve(relators.size());
  for (auto& r : relators) {
    for (const auto& l : r) {
      if (l.generator >= names_.size() || (l.sign != 1 && l.sign != -1)) {
        throw Error(ErrorCode::InvalidPresentation, "relator letter out of range");
      }
    }
    Word reduced = free_reduce(r);
    if (reduced.empty()) {
      throw Error(ErrorCode::InvalidPresentation, "empty relator");
    }
    relators_.push_back(std::move(reduced));
  }
}

Presentation Presentation::parse(std::vector<std::string> generator_names,
                                 const std::vector<std::string>& relators) {
  std::vector<Word> words;
  words.reserve(relators.size());
  for (const auto& r : relators) words.push_back(parse_word(r, generator_names));
  return Presentation(std::move(generator_names), std::move(words));
}

std::size_t Presentation::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(name) + "'");
}

Presentation presentation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "presentation must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "generators" && key != "relators") {
      throw Error(ErrorCode::ParseError, "unknown presentation key '" + key + "'");
    }
  }
  if (!j.contains("generators") || !j.at("generators").is_array()) {
    throw Error(ErrorCode::ParseError, "presentation needs a 'generators' array");
  }
  std::vector<std::string> names;
  for (const auto& g : j.at("generators")) {
    if (!g.is_string()) throw Error(ErrorCode::ParseError, "generator names must be strings");
    names.push_back(g.get<std::string>());
  }
  std::vector<std::string> relators;
  if (j.contains("relators")) {
    if (!j.at("relators").is_array()) {
      throw Error(ErrorCode::ParseError, "'relators' must be an array");
    }
    for (const auto& r : j.at("relators")) {
      if (!r.is_string()) throw Error(ErrorCode::ParseError, "relators must be strings");
      relators.push_back(r.get<std::string>());
    }
  }
  return Presentation::parse(std::move(names), relators);
}

nlohmann::json to_json(const Presentation& p) {
  nlohmann::json rel = nlohmann::json::array();
  for (const auto& r : p.relators()) rel.push_back(p.format(r));
  return {{"generators", p.generators()}, {"relators", rel}};
}

IntegerMatrix exponent_matrix(const Presentation& p) {
  IntegerMatrix m(p.relators().size(), p.generator_count());
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    auto v = exponent_vector(p.relators()[i], p.generator_count());
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
  }
  return m;
}

}  // namespace sok
