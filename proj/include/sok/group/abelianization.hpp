#pragma once

#include "sok/group/presentation.hpp"

#include <json.hpp>

namespace sok {

/// G/G' = Z^rank + torsion. `projection` is rank x n: applied to a generator
/// exponent vector it gives the coordinates of its image in the free part.
struct AbelianizationData {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  IntegerMatrix projection;
};

AbelianizationData abelianization(const Presentation& p);
nlohmann::json to_json(const AbelianizationData& a);

/// Hom(G, R) in generator-value form: the solutions v of E v = 0 where E is
/// the exponent matrix. Coordinates of a character are its values on the
/// free (non-pivot) generators of the reduced echelon form of E, in
/// generator order; the standard inner product on these coordinates is the
/// metric used on the character sphere.
class HomSpace {
 public:
  HomSpace() = default;
  explicit HomSpace(const Presentation& p);

  std::size_t dim() const { return free_.size(); }
  std::size_t generator_count() const { return generator_count_; }
  const std::vector<std::size_t>& free_generators() const { return free_; }
  /// dim x n, row i = the character with coordinate vector e_i.
  const RationalMatrix& basis() const { return basis_; }

  RatVector coordinates(std::span<const Rational> generator_values) const;
  RatVector values(std::span<const Rational> coordinates) const;
  bool is_character(std::span<const Rational> generator_values) const;

 private:
  std::size_t generator_count_ = 0;
  IntegerMatrix exponents_;
  std::vector<std::size_t> free_;
  RationalMatrix basis_;
};

}  // namespace sok
