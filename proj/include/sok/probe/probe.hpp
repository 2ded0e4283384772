#pragma once

#include "sok/charsphere/character.hpp"
#include "sok/extension/extension.hpp"

#include <memory>
#include <unordered_map>

namespace sok {

/// Canonical normal form of a group element.
using Element = std::vector<std::int64_t>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// A group with solvable word problem: canonical normal forms, right
/// multiplication by generators and the height map to Hom coordinates.
/// Characters pair with heights by the standard dot product.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string name() const = 0;
  virtual std::vector<std::string> generator_names() const = 0;
  std::size_t generator_count() const { return generator_names().size(); }
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& e, Letter l) const = 0;
  virtual std::size_t hom_dim() const = 0;
  virtual RatVector height(const Element& e) const = 0;
  virtual std::string format(const Element& e) const = 0;

  /// Characters are given in these coordinates and mapped into height space.
  virtual std::size_t character_dim() const { return hom_dim(); }
  virtual RatVector embed_character(std::span<const Rational> chi) const;

  RatVector generator_height(std::size_t g) const;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

ModelPtr free_abelian_model(std::size_t k);
ModelPtr free_model(std::size_t k);
/// BS(1,m) = <a, b | b^-1 a b = a^m> as affine maps t -> m^k t + x, x in Z[1/m];
/// a: x += m^k, b: k -= 1. Height = exponent sum of b.
ModelPtr baumslag_solitar_model(std::int64_t m);
ModelPtr direct_product_model(std::vector<ModelPtr> factors);
/// Elements h * nu(k) of a split extension with finite K, or of a
/// finite-quotient extension with cyclic K. The H model must use the
/// generators of spec.H in order and HomSpace(spec.H) height coordinates.
/// Characters are given in Fix coordinates.
ModelPtr extension_model(const Extension& ext, ModelPtr h_model);
/// Model for a catalog id (Z<k>, F<k>, BS(1,m), products of these).
ModelPtr model_for_catalog_id(std::string_view id);

inline constexpr std::size_t kDefaultBallCap = 2'000'000;

struct Ball {
  std::vector<Element> vertices;                // breadth-first order from the identity
  std::vector<std::size_t> distance;
  std::vector<RatVector> heights;               // computed incrementally along the BFS tree
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (u, u*g), u < ... by generator order
  std::vector<std::vector<std::size_t>> adjacency;
  std::unordered_map<Element, std::size_t, ElementHash> index;
};

Ball build_ball(const GroupModel& model, std::size_t radius, std::size_t cap = kDefaultBallCap);

enum class ProbeVerdict { EvidenceConnected, EvidenceDisconnected, Inconclusive };
std::string_view to_string(ProbeVerdict v);

struct ProbeLevel {
  Rational s;
  std::size_t vertices = 0;
  std::size_t components = 0;
  std::optional<Rational> lambda;  // nullopt: no reconnection inside the ball
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::vector<std::string> witness_forms;
};

struct ProbeReport {
  std::string kind;  // "sigma" or "omega"
  std::string model;
  RatVector character;
  std::size_t radius = 0;
  std::vector<Rational> grid;
  Rational lambda_step;
  Rational tolerance;
  std::size_t ball_vertices = 0;
  std::vector<ProbeLevel> levels;
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::string reason;
};

nlohmann::json to_json(const ProbeReport& r);

struct ProbeOptions {
  Rational lambda_step{1, 2};
  std::size_t cap = kDefaultBallCap;
};

ProbeReport sigma_probe(const GroupModel& model, std::span<const Rational> chi, std::size_t radius,
                        std::vector<Rational> grid, const ProbeOptions& opt = {});
ProbeReport omega_probe(const GroupModel& model, std::span<const Rational> chi, std::size_t radius,
                        std::vector<Rational> grid, const ProbeOptions& opt = {});

/// Same analyses on a prebuilt ball (the ball must come from `model`).
ProbeReport sigma_probe(const GroupModel& model, const Ball& ball, std::span<const Rational> chi,
                        std::size_t radius, std::vector<Rational> grid, const ProbeOptions& opt = {});
ProbeReport omega_probe(const GroupModel& model, const Ball& ball, std::span<const Rational> chi,
                        std::size_t radius, std::vector<Rational> grid, const ProbeOptions& opt = {});

/// Membership predicates used by the probes: the half-space H_{gamma,s} and
/// the truncated cone C_{gamma,s}, for heights h and the character direction c.
bool in_half_space(std::span<const Rational> c, std::span<const Rational> h, const Rational& s);
bool in_truncated_cone(std::span<const Rational> c, std::span<const Rational> h, const Rational& s);

}  // namespace sok
