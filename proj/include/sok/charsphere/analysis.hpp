#pragma once

#include "sok/charsphere/sphere_set.hpp"

#include <optional>

namespace sok {

/// A relatively open polyhedral piece of the sphere:
/// {x != 0 : constraints hold, and in every group some form is nonzero}.
struct Cell {
  std::vector<LinearConstraint> constraints;
  std::vector<std::vector<IntVector>> nonzero_groups;
};

bool cell_contains(const Cell& c, std::span<const Integer> x);
/// Exact emptiness test; on success `witness` (if given) receives a point.
bool cell_feasible(const Cell& c, std::size_t dim, RatVector* witness = nullptr);

inline constexpr std::size_t kCellCap = 4096;

/// Disjunctive normal form: S is the union of the returned cells, all of
/// them nonempty. Throws UnsupportedForm past kCellCap cells.
std::vector<Cell> normalize(const SphereSet& s);
std::vector<Cell> normalize_complement(const SphereSet& s);

bool is_empty(const SphereSet& s);
bool is_subset(const SphereSet& a, const SphereSet& b);
bool equivalent(const SphereSet& a, const SphereSet& b);
bool is_closed(const SphereSet& s);

struct PointCount {
  enum class Kind { Zero, One, TwoAntipodal, Several, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<RationalRay> rays;  // filled for the finite kinds
};

std::string_view to_string(PointCount::Kind k);
PointCount count_rational_points(const SphereSet& s);

/// {e : <f, e>_G <= 0 for every f outside sigma}, with <x, y>_G = x^T G y
/// (identity when gram is absent). Returns a single closed cone, Full when
/// sigma is the whole sphere, Empty in dimension 0.
SphereSet omega_from_sigma(const SphereSet& sigma,
                           const std::optional<RationalMatrix>& gram = std::nullopt);

/// Replaces s by Empty, Full or a finite Rays node when it is equivalent to
/// one; returns s unchanged otherwise.
SphereSet simplify(const SphereSet& s);

}  // namespace sok
