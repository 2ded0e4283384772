#pragma once

#include "sok/charsphere/character.hpp"
#include "sok/group/abelianization.hpp"
#include "sok/group/finite_group.hpp"

#include <optional>

namespace sok {

enum class Flavor { FiniteQuotient, Split };

std::string_view to_string(Flavor f);

/// nu(b)^m = w in G, with w a word over H's generators.
struct OrderEntry {
  std::int64_t m = 1;
  Word w;
};

/// 1 -> H -> G -> K -> 1 with an explicit transversal nu. The transversal
/// images nu(b) carry the names of K's generators inside G.
struct ExtensionSpec {
  std::string name;
  Presentation H;
  Presentation K;
  Flavor flavor = Flavor::FiniteQuotient;
  std::vector<std::optional<OrderEntry>> orders;  // per K generator
  std::vector<std::vector<Word>> conjugation;     // [b][a] = w_{a,b}
  std::vector<Word> relator_words;                // per K relator, optional
  std::optional<std::string> h_catalog;
  std::optional<std::string> k_catalog;
  bool h_characteristic = false;
};

/// Strict JSON reader; see README for the format.
ExtensionSpec extension_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExtensionSpec& s);

/// Conjugation table keyed "b:a" as in the spec file.
std::vector<std::vector<Word>> conjugation_from_json(const nlohmann::json& j,
                                                     const Presentation& H,
                                                     const Presentation& K);

/// A validated extension with its derived linear data. Hom(H,R) uses the
/// coordinates of HomSpace(H).
class Extension {
 public:
  explicit Extension(ExtensionSpec spec, std::size_t cap = kDefaultEnumerationCap);

  const ExtensionSpec& spec() const { return spec_; }
  const HomSpace& hom_h() const { return hom_h_; }
  /// One matrix per K generator: coordinates of b.phi from those of phi.
  const std::vector<RationalMatrix>& action_matrices() const { return actions_; }
  const RationalSubspace& fix() const { return fix_; }
  const Presentation& presentation() const { return g_; }
  const WordOracle& k_oracle() const { return *k_oracle_; }

  bool is_fixed(std::span<const Rational> hom_h_coords) const;

 private:
  ExtensionSpec spec_;
  HomSpace hom_h_;
  std::vector<RationalMatrix> actions_;
  RationalSubspace fix_;
  Presentation g_;
  std::shared_ptr<const WordOracle> k_oracle_;
};

std::vector<RationalMatrix> action_on_homH(const ExtensionSpec& spec);
RationalSubspace fix_subspace(const ExtensionSpec& spec);
Presentation build_extension_presentation(const ExtensionSpec& spec);

/// Fixed subspace of the given action matrices (canonical echelon basis,
/// primitive rows).
RationalSubspace fixed_subspace(std::size_t dim, const std::vector<RationalMatrix>& actions);
RationalMatrix action_matrix(const HomSpace& hom_h, const Presentation& H,
                             std::span<const Word> images);

/// phi on H -> the unique extension to G (FiniteQuotient flavor).
Character extend_character_finite(const Extension& ext, const Character& phi);

struct SplitHomSpace {
  RationalSubspace fix;
  AbelianizationData hom_k;
  std::size_t dim = 0;  // dim fix + rank Hom(K)
};

SplitHomSpace hom_space_split(const Extension& ext);
/// (alpha on H, beta on K) -> alpha-hat + beta o pi.
Character split_assemble(const Extension& ext, const Character& alpha, const Character& beta);
/// phi on G -> (phi o i, phi o sigma).
std::pair<Character, Character> split_project(const Extension& ext, const Character& phi);

bool transversal_invariance_check(const ExtensionSpec& spec,
                                  const std::vector<std::vector<Word>>& alternate);

bool same_subspace(const RationalSubspace& a, const RationalSubspace& b);

}  // namespace sok
