#pragma once

#include "sok/arith.hpp"

#include <optional>
#include <vector>

namespace sok {

enum class Relation { Ge, Gt, Eq };

/// Homogeneous constraint <coeffs, x> (>= | > | =) 0.
struct LinearConstraint {
  IntVector coeffs;
  Relation rel = Relation::Ge;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

LinearConstraint ge(IntVector c);
LinearConstraint gt(IntVector c);
LinearConstraint eq(IntVector c);

bool satisfies(const LinearConstraint& c, std::span<const Rational> x);
bool satisfies(const LinearConstraint& c, std::span<const Integer> x);
std::string_view to_string(Relation r);
Relation relation_from_string(std::string_view s);

/// Primitive coefficients, duplicates removed, a strict row absorbing the
/// non-strict row with identical coefficients, opposite Ge pairs merged into
/// Eq. Deterministic order.
std::vector<LinearConstraint> normalize_constraints(std::vector<LinearConstraint> rows);

struct LpResult {
  bool feasible = false;
  RatVector witness;
};

/// Exact feasibility of the homogeneous system, by Fourier-Motzkin.
/// With require_nonzero the witness is additionally nonzero.
LpResult lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t dim,
                     bool require_nonzero = true);

/// Projection onto the first `keep` coordinates: the returned system, over
/// `keep` variables, holds exactly at the points that extend to a solution.
std::vector<LinearConstraint> fm_project(const std::vector<LinearConstraint>& constraints,
                                         std::size_t dim, std::size_t keep);

/// Upper bound on intermediate row counts; exceeding it throws
/// Error(UnsupportedForm).
inline constexpr std::size_t kFourierMotzkinRowCap = 20000;

}  // namespace sok
