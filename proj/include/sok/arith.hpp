#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sok {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
int sign(const Integer& a);
int sign(const Rational& a);

/// Parses "p", "-p" or "p/q". Throws Error(ParseError) on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);
/// "p" when the denominator is one, "p/q" otherwise.
std::string format_rational(const Rational& r);

/// Divides out the gcd of the absolute entries; the zero vector is returned
/// unchanged. Signs are preserved.
IntVector primitive(std::span<const Integer> v);
/// Clears denominators with a positive multiplier, then makes the result
/// primitive.
IntVector primitive(std::span<const Rational> v);

bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const Integer> a, std::span<const Rational> b);

RatVector to_rational(std::span<const Integer> v);
/// Throws if any entry is not an integer.
IntVector to_integer(std::span<const Rational> v);

std::string format_vector(std::span<const Integer> v);

}  // namespace sok
