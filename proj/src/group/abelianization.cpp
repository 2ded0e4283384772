#include "sok/group/abelianization.hpp"

#include "sok/error.hpp"

#include <json.hpp>

namespace sok {

AbelianizationData abelianization(const Presentation& p) {
  IntegerMatrix E = exponent_matrix(p);
  const std::size_t n = p.generator_count();
  AbelianizationData out;
  if (E.rows() == 0) {
    out.rank = n;
    out.projection = IntegerMatrix::identity(n);
    return out;
  }
  SmithForm snf = smith_normal_form(E);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.D(i, i) > 1) out.torsion.push_back(snf.D(i, i));
  }
  out.rank = n - snf.rank;
  // x V sends the relator lattice onto the row space of D, so the trailing
  // coordinates of x V are the free part.
  out.projection = IntegerMatrix(out.rank, n);
  for (std::size_t i = 0; i < out.rank; ++i)
    for (std::size_t j = 0; j < n; ++j) out.projection(i, j) = snf.V(j, snf.rank + i);
  return out;
}

nlohmann::json to_json(const AbelianizationData& a) {
  nlohmann::json torsion = nlohmann::json::array();
  for (const auto& t : a.torsion) torsion.push_back(t.str());
  nlohmann::json proj = nlohmann::json::array();
  for (std::size_t i = 0; i < a.projection.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.projection.cols(); ++j) row.push_back(a.projection(i, j).str());
    proj.push_back(row);
  }
  return {{"rank", a.rank}, {"torsion", torsion}, {"projection", proj}};
}

HomSpace::HomSpace(const Presentation& p)
    : generator_count_(p.generator_count()), exponents_(exponent_matrix(p)) {
  RationalMatrix E = to_rational(exponents_);
  if (E.rows() == 0) E = RationalMatrix(0, generator_count_);
  basis_ = nullspace(E);
  auto pivots = rref(E).pivots;
  std::vector<bool> is_pivot(generator_count_, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t g = 0; g < generator_count_; ++g)
    if (!is_pivot[g]) free_.push_back(g);
}

RatVector HomSpace::coordinates(std::span<const Rational> generator_values) const {
  if (generator_values.size() != generator_count_) {
    throw Error(ErrorCode::DimensionMismatch, "character length does not match generators");
  }
  RatVector c;
  c.reserve(free_.size());
  for (auto g : free_) c.push_back(generator_values[g]);
  return c;
}

RatVector HomSpace::values(std::span<const Rational> coordinates) const {
  if (coordinates.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector has wrong dimension");
  }
  RatVector v(generator_count_, Rational(0));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < generator_count_; ++j) v[j] += coordinates[i] * basis_(i, j);
  return v;
}

bool HomSpace::is_character(std::span<const Rational> generator_values) const {
  for (std::size_t i = 0; i < exponents_.rows(); ++i) {
    if (dot(exponents_.row(i), generator_values) != 0) return false;
  }
  return true;
}

}  // namespace sok
