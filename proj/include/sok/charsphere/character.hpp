#pragma once

#include "sok/group/presentation.hpp"

#include <json.hpp>

namespace sok {

/// A homomorphism G -> R given by its values on the generators.
struct Character {
  RatVector values;

  bool is_zero() const { return sok::is_zero(std::span<const Rational>(values)); }
  friend bool operator==(const Character&, const Character&) = default;
};

/// Throws RelatorViolation naming the first relator the values do not kill.
Character make_character(const Presentation& p, RatVector values);

/// A point of the character sphere: a primitive integer direction. No sign
/// normalization, so a ray and its antipode are different objects.
class RationalRay {
 public:
  RationalRay() = default;
  /// Throws ZeroCharacter for the zero vector.
  explicit RationalRay(std::span<const Rational> v);
  explicit RationalRay(std::span<const Integer> v);
  static RationalRay of(std::initializer_list<long> v);

  const IntVector& direction() const { return dir_; }
  std::size_t dim() const { return dir_.size(); }
  RationalRay antipode() const;
  RatVector as_rational() const { return to_rational(std::span<const Integer>(dir_)); }

  friend auto operator<=>(const RationalRay&, const RationalRay&) = default;

 private:
  IntVector dir_;
};

RationalRay ray_of(const Character& chi);
std::string format_ray(const RationalRay& r);

nlohmann::json to_json(const RationalRay& r);
RationalRay ray_from_json(const nlohmann::json& j);
/// Comma separated rationals, e.g. "1,-2/3".
RatVector parse_vector(std::string_view text);

/// A linear subspace W of Q^ambient, given by independent basis rows. A
/// vector y in W-coordinates corresponds to sum_i y_i * basis_i.
class RationalSubspace {
 public:
  RationalSubspace() = default;
  /// Rows must be linearly independent (throws DimensionMismatch otherwise).
  RationalSubspace(std::size_t ambient, IntegerMatrix basis);

  static RationalSubspace whole(std::size_t ambient);
  static RationalSubspace zero(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const IntegerMatrix& basis() const { return basis_; }

  RatVector embed(std::span<const Rational> coords) const;
  IntVector embed(std::span<const Integer> coords) const;
  bool contains(std::span<const Rational> v) const;
  /// Coordinates of v in this basis; throws ValidationFailure if v is not in W.
  RatVector coordinates(std::span<const Rational> v) const;
  /// Basis * basis^T: the inner product induced from the ambient one.
  RationalMatrix gram() const;

  friend bool operator==(const RationalSubspace&, const RationalSubspace&) = default;

 private:
  std::size_t ambient_ = 0;
  IntegerMatrix basis_;
};

nlohmann::json to_json(const RationalSubspace& w);
RationalSubspace subspace_from_json(const nlohmann::json& j);

nlohmann::json integer_matrix_to_json(const IntegerMatrix& m);
IntegerMatrix integer_matrix_from_json(const nlohmann::json& j, std::size_t cols);
nlohmann::json rational_matrix_to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const nlohmann::json& j, std::size_t cols);
nlohmann::json vector_to_json(std::span<const Rational> v);
nlohmann::json vector_to_json(std::span<const Integer> v);
RatVector rational_vector_from_json(const nlohmann::json& j);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace sok
