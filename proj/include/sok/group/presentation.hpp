#pragma once

#include "sok/group/word.hpp"
#include "sok/matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sok {

/// Finite presentation <generators | relators>. Relators are stored freely
/// reduced; the empty relator is rejected.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

  /// Convenience: relators in the textual word format.
  static Presentation parse(std::vector<std::string> generator_names,
                            const std::vector<std::string>& relators);

  const std::vector<std::string>& generators() const { return names_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t generator_count() const { return names_.size(); }

  Word word(std::string_view text) const { return parse_word(text, names_); }
  std::string format(std::span<const Letter> w) const { return format_word(w, names_); }
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
};

/// Strict: only "generators" and "relators" keys are accepted.
Presentation presentation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Presentation& p);

/// One row per relator, one column per generator; entries are exponent sums.
IntegerMatrix exponent_matrix(const Presentation& p);

}  // namespace sok
