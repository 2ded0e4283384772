#pragma once

#include "sok/group/presentation.hpp"

#include <optional>

namespace sok {

inline constexpr std::size_t kDefaultEnumerationCap = 10000;

/// Right regular action of a finite group on itself, obtained by coset
/// enumeration over the trivial subgroup. Elements are numbered 0..order-1
/// with 0 the identity, in breadth-first order from the identity.
class FiniteGroup {
 public:
  /// Throws FiniteEnumerationCap when more than `cap` cosets are alive.
  static FiniteGroup enumerate(const Presentation& p, std::size_t cap = kDefaultEnumerationCap);

  std::size_t order() const { return table_.size(); }
  std::size_t generator_count() const { return gens_; }
  std::size_t multiply(std::size_t element, Letter l) const;
  std::size_t evaluate(std::span<const Letter> w, std::size_t start = 0) const;
  bool is_identity(std::span<const Letter> w) const { return evaluate(w) == 0; }

 private:
  std::size_t gens_ = 0;
  std::vector<std::vector<std::size_t>> table_;  // [element][2*gen + (sign<0)]
};

/// Decides triviality of words in a presented group: exactly for finite
/// groups and free groups; otherwise words with nonzero abelian image are
/// reported nontrivial and the rest throw Error(Undecidable).
class WordOracle {
 public:
  explicit WordOracle(const Presentation& p, std::size_t cap = kDefaultEnumerationCap);

  bool is_finite() const { return finite_.has_value(); }
  std::optional<std::size_t> order() const;
  const FiniteGroup* finite() const { return finite_ ? &*finite_ : nullptr; }
  bool is_trivial(std::span<const Letter> w) const;

 private:
  Presentation p_;
  std::optional<FiniteGroup> finite_;
  IntegerMatrix projection_;
  std::vector<Integer> torsion_;
};

}  // namespace sok
