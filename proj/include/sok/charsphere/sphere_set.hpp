#pragma once

#include "sok/charsphere/character.hpp"
#include "sok/charsphere/lp.hpp"

#include <memory>
#include <optional>

namespace sok {

/// Symbolic subset of the character sphere S^{dim-1}. Values are immutable
/// and share their subtrees.
class SphereSet {
 public:
  enum class Kind { Empty, Full, Rays, Cone, Not, And, Or, Join, Restrict };

  SphereSet();  // Empty(0)

  static SphereSet empty(std::size_t dim);
  static SphereSet full(std::size_t dim);
  /// Rays are deduplicated and sorted.
  static SphereSet rays(std::size_t dim, std::vector<RationalRay> rays);
  /// {x != 0 : every constraint holds}; constraints are normalized.
  static SphereSet cone(std::size_t dim, std::vector<LinearConstraint> constraints);
  static SphereSet complement(const SphereSet& s);
  static SphereSet intersection(std::vector<SphereSet> parts);
  static SphereSet union_of(std::vector<SphereSet> parts);
  static SphereSet join(const SphereSet& left, const SphereSet& right);
  /// The set over W-coordinates whose rays r satisfy basis^T r in s.
  static SphereSet restrict(const SphereSet& s, const RationalSubspace& w);

  Kind kind() const;
  std::size_t dim() const;
  const std::vector<RationalRay>& ray_list() const;
  const std::vector<LinearConstraint>& constraints() const;
  const std::vector<SphereSet>& children() const;
  const RationalSubspace& subspace() const;

  /// Exact membership; throws DimensionMismatch.
  bool contains(const RationalRay& r) const;
  bool contains_vector(std::span<const Integer> x) const;

  friend bool operator==(const SphereSet& a, const SphereSet& b);

 private:
  struct Node;
  explicit SphereSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool sphere_member(const SphereSet& s, const RationalRay& r);
SphereSet spherical_join(const SphereSet& a, const SphereSet& b);
SphereSet restrict_to_subspace(const SphereSet& s, const RationalSubspace& w);

nlohmann::json to_json(const SphereSet& s);
SphereSet sphere_set_from_json(const nlohmann::json& j);
std::string describe(const SphereSet& s);

}  // namespace sok
