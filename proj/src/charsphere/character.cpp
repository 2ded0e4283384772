#include "sok/charsphere/character.hpp"

#include "sok/error.hpp"

#include <sstream>

namespace sok {

Character make_character(const Presentation& p, RatVector values) {
  if (values.size() != p.generator_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(p.generator_count()) + " values, got " +
                    std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    auto e = exponent_vector(p.relators()[i], p.generator_count());
    Rational s = 0;
    for (std::size_t j = 0; j < e.size(); ++j) s += Rational(e[j]) * values[j];
    if (s != 0) {
      throw Error(ErrorCode::RelatorViolation,
                  "character does not vanish on relator " + std::to_string(i) + " (" +
                      p.format(p.relators()[i]) + ")");
    }
  }
  return Character{std::move(values)};
}

RationalRay::RationalRay(std::span<const Rational> v) : dir_(primitive(v)) {
  if (is_zero(std::span<const Integer>(dir_))) {
    throw Error(ErrorCode::ZeroCharacter, "the zero character has no ray");
  }
}

RationalRay::RationalRay(std::span<const Integer> v) : dir_(primitive(v)) {
  if (is_zero(std::span<const Integer>(dir_))) {
    throw Error(ErrorCode::ZeroCharacter, "the zero character has no ray");
  }
}

RationalRay RationalRay::of(std::initializer_list<long> v) {
  IntVector d;
  for (long x : v) d.emplace_back(x);
  return RationalRay(std::span<const Integer>(d));
}

RationalRay RationalRay::antipode() const {
  RationalRay r = *this;
  for (auto& x : r.dir_) x = -x;
  return r;
}

RationalRay ray_of(const Character& chi) {
  return RationalRay(std::span<const Rational>(chi.values));
}

std::string format_ray(const RationalRay& r) { return format_vector(r.direction()); }

nlohmann::json to_json(const RationalRay& r) { return vector_to_json(r.direction()); }

RationalRay ray_from_json(const nlohmann::json& j) {
  RatVector v = rational_vector_from_json(j);
  return RationalRay(std::span<const Rational>(v));
}

RatVector parse_vector(std::string_view text) {
  RatVector out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorCode::ParseError, "empty vector entry");
    out.push_back(parse_rational(std::string_view(item).substr(b, e - b + 1)));
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty vector");
  return out;
}

RationalSubspace::RationalSubspace(std::size_t ambient, IntegerMatrix basis)
    : ambient_(ambient), basis_(std::move(basis)) {
  if (basis_.rows() == 0) {
    basis_ = IntegerMatrix(0, ambient_);
    return;
  }
  if (basis_.cols() != ambient_) {
    throw Error(ErrorCode::DimensionMismatch, "subspace basis has wrong length");
  }
  if (rank(basis_) != basis_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace basis rows are dependent");
  }
}

RationalSubspace RationalSubspace::whole(std::size_t ambient) {
  return RationalSubspace(ambient, IntegerMatrix::identity(ambient));
}

RationalSubspace RationalSubspace::zero(std::size_t ambient) {
  return RationalSubspace(ambient, IntegerMatrix(0, ambient));
}

RatVector RationalSubspace::embed(std::span<const Rational> coords) const {
  if (coords.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace coordinates have wrong length");
  }
  RatVector v(ambient_, Rational(0));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) v[j] += coords[i] * Rational(basis_(i, j));
  return v;
}

IntVector RationalSubspace::embed(std::span<const Integer> coords) const {
  if (coords.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace coordinates have wrong length");
  }
  IntVector v(ambient_, Integer(0));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) v[j] += coords[i] * basis_(i, j);
  return v;
}

bool RationalSubspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_) return false;
  RationalMatrix m = to_rational(basis_);
  m.append_row(v);
  return rank(m) == dim();
}

RatVector RationalSubspace::coordinates(std::span<const Rational> v) const {
  if (v.size() != ambient_) {
    throw Error(ErrorCode::DimensionMismatch, "vector has wrong ambient dimension");
  }
  // Solve basis^T y = v through the reduced echelon form of [basis^T | v].
  const std::size_t k = dim();
  RationalMatrix aug(ambient_, k + 1);
  for (std::size_t j = 0; j < ambient_; ++j) {
    for (std::size_t i = 0; i < k; ++i) aug(j, i) = Rational(basis_(i, j));
    aug(j, k) = v[j];
  }
  EchelonForm ef = rref(aug);
  RatVector y(k, Rational(0));
  for (std::size_t r = 0; r < ef.pivots.size(); ++r) {
    if (ef.pivots[r] == k) {
      throw Error(ErrorCode::ValidationFailure, "vector is not in the subspace");
    }
    y[ef.pivots[r]] = ef.R(r, k);
  }
  return y;
}

RationalMatrix RationalSubspace::gram() const {
  RationalMatrix b = to_rational(basis_);
  return b * b.transpose();
}

nlohmann::json to_json(const RationalSubspace& w) {
  return {{"ambient", w.ambient_dim()}, {"basis", integer_matrix_to_json(w.basis())}};
}

RationalSubspace subspace_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("basis")) {
    throw Error(ErrorCode::ParseError, "subspace needs 'ambient' and 'basis'");
  }
  auto ambient = j.at("ambient").get<std::size_t>();
  return RationalSubspace(ambient, integer_matrix_from_json(j.at("basis"), ambient));
}

nlohmann::json vector_to_json(std::span<const Rational> v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

nlohmann::json vector_to_json(std::span<const Integer> v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

nlohmann::json integer_matrix_to_json(const IntegerMatrix& m) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
  return a;
}

nlohmann::json rational_matrix_to_json(const RationalMatrix& m) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
  return a;
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (denominator(q) != 1) throw Error(ErrorCode::ParseError, "expected an integer");
    return numerator(q);
  }
  throw Error(ErrorCode::ParseError, "expected an integer");
}

RatVector rational_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rationals");
  RatVector v;
  for (const auto& x : j) {
    if (x.is_number_integer()) v.emplace_back(x.get<long long>());
    else if (x.is_string()) v.push_back(parse_rational(x.get<std::string>()));
    else throw Error(ErrorCode::ParseError, "expected a rational");
  }
  return v;
}

RationalMatrix rational_matrix_from_json(const nlohmann::json& j, std::size_t cols) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a matrix");
  RationalMatrix m(0, cols);
  for (const auto& row : j) {
    RatVector v = rational_vector_from_json(row);
    if (v.size() != cols) throw Error(ErrorCode::DimensionMismatch, "matrix row has wrong length");
    m.append_row(v);
  }
  return m;
}

IntegerMatrix integer_matrix_from_json(const nlohmann::json& j, std::size_t cols) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a matrix");
  IntegerMatrix m(0, cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorCode::ParseError, "matrix row has wrong length");
    }
    IntVector r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    m.append_row(r);
  }
  return m;
}

}  // namespace sok
