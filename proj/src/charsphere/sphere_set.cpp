#include "sok/charsphere/sphere_set.hpp"

#include "sok/error.hpp"

#include <algorithm>

namespace sok {

struct SphereSet::Node {
  Kind kind = Kind::Empty;
  std::size_t dim = 0;
  std::vector<RationalRay> rays;
  std::vector<LinearConstraint> constraints;
  std::vector<SphereSet> children;
  RationalSubspace subspace;
};

namespace {

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(got));
  }
}

}  // namespace

SphereSet::SphereSet() : SphereSet(empty(0)) {}

SphereSet SphereSet::empty(std::size_t dim) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Empty;
  n->dim = dim;
  return SphereSet(std::move(n));
}

SphereSet SphereSet::full(std::size_t dim) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Full;
  n->dim = dim;
  return SphereSet(std::move(n));
}

SphereSet SphereSet::rays(std::size_t dim, std::vector<RationalRay> rays) {
  for (const auto& r : rays) require_dim(dim, r.dim(), "rays");
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rays;
  n->dim = dim;
  n->rays = std::move(rays);
  return SphereSet(std::move(n));
}

SphereSet SphereSet::cone(std::size_t dim, std::vector<LinearConstraint> constraints) {
  for (const auto& c : constraints) require_dim(dim, c.coeffs.size(), "cone");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cone;
  n->dim = dim;
  n->constraints = normalize_constraints(std::move(constraints));
  return SphereSet(std::move(n));
}

SphereSet SphereSet::complement(const SphereSet& s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->dim = s.dim();
  n->children = {s};
  return SphereSet(std::move(n));
}

SphereSet SphereSet::intersection(std::vector<SphereSet> parts) {
  if (parts.empty()) throw Error(ErrorCode::DimensionMismatch, "empty intersection");
  for (const auto& p : parts) require_dim(parts.front().dim(), p.dim(), "intersection");
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->dim = parts.front().dim();
  n->children = std::move(parts);
  return SphereSet(std::move(n));
}

SphereSet SphereSet::union_of(std::vector<SphereSet> parts) {
  if (parts.empty()) throw Error(ErrorCode::DimensionMismatch, "empty union");
  for (const auto& p : parts) require_dim(parts.front().dim(), p.dim(), "union");
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->dim = parts.front().dim();
  n->children = std::move(parts);
  return SphereSet(std::move(n));
}

SphereSet SphereSet::join(const SphereSet& left, const SphereSet& right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Join;
  n->dim = left.dim() + right.dim();
  n->children = {left, right};
  return SphereSet(std::move(n));
}

SphereSet SphereSet::restrict(const SphereSet& s, const RationalSubspace& w) {
  require_dim(s.dim(), w.ambient_dim(), "restrict");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Restrict;
  n->dim = w.dim();
  n->children = {s};
  n->subspace = w;
  return SphereSet(std::move(n));
}

SphereSet::Kind SphereSet::kind() const { return node_->kind; }
std::size_t SphereSet::dim() const { return node_->dim; }
const std::vector<RationalRay>& SphereSet::ray_list() const { return node_->rays; }
const std::vector<LinearConstraint>& SphereSet::constraints() const {
  return node_->constraints;
}
const std::vector<SphereSet>& SphereSet::children() const { return node_->children; }
const RationalSubspace& SphereSet::subspace() const { return node_->subspace; }

bool SphereSet::contains(const RationalRay& r) const {
  require_dim(dim(), r.dim(), "membership");
  return contains_vector(r.direction());
}

bool SphereSet::contains_vector(std::span<const Integer> x) const {
  require_dim(dim(), x.size(), "membership");
  if (is_zero(x)) return false;
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::Rays: {
      RationalRay r(x);
      return std::binary_search(n.rays.begin(), n.rays.end(), r);
    }
    case Kind::Cone:
      return std::all_of(n.constraints.begin(), n.constraints.end(),
                         [&](const LinearConstraint& c) { return satisfies(c, x); });
    case Kind::Not: return !n.children[0].contains_vector(x);
    case Kind::And:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](const SphereSet& c) { return c.contains_vector(x); });
    case Kind::Or:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](const SphereSet& c) { return c.contains_vector(x); });
    case Kind::Join: {
      const SphereSet& a = n.children[0];
      const SphereSet& b = n.children[1];
      auto u = x.subspan(0, a.dim());
      auto v = x.subspan(a.dim());
      bool u0 = is_zero(u), v0 = is_zero(v);
      if (v0) return a.contains_vector(u);
      if (u0) return b.contains_vector(v);
      return a.contains_vector(u) && b.contains_vector(v);
    }
    case Kind::Restrict: return n.children[0].contains_vector(n.subspace.embed(x));
  }
  return false;
}

bool operator==(const SphereSet& a, const SphereSet& b) {
  return a.node_ == b.node_ || to_json(a) == to_json(b);
}

bool sphere_member(const SphereSet& s, const RationalRay& r) { return s.contains(r); }

SphereSet spherical_join(const SphereSet& a, const SphereSet& b) {
  return SphereSet::join(a, b);
}

SphereSet restrict_to_subspace(const SphereSet& s, const RationalSubspace& w) {
  return SphereSet::restrict(s, w);
}

namespace {

const char* tag(SphereSet::Kind k) {
  switch (k) {
    case SphereSet::Kind::Empty: return "empty";
    case SphereSet::Kind::Full: return "full";
    case SphereSet::Kind::Rays: return "rays";
    case SphereSet::Kind::Cone: return "cone";
    case SphereSet::Kind::Not: return "not";
    case SphereSet::Kind::And: return "and";
    case SphereSet::Kind::Or: return "or";
    case SphereSet::Kind::Join: return "join";
    case SphereSet::Kind::Restrict: return "restrict";
  }
  return "?";
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::ParseError, "unexpected key '" + key + "' in sphere set");
  }
}

}  // namespace

nlohmann::json to_json(const SphereSet& s) {
  nlohmann::json j;
  j["type"] = tag(s.kind());
  j["dim"] = s.dim();
  switch (s.kind()) {
    case SphereSet::Kind::Empty:
    case SphereSet::Kind::Full: break;
    case SphereSet::Kind::Rays: {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& r : s.ray_list()) a.push_back(to_json(r));
      j["rays"] = a;
      break;
    }
    case SphereSet::Kind::Cone: {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& c : s.constraints()) {
        a.push_back({{"coeffs", vector_to_json(std::span<const Integer>(c.coeffs))},
                     {"rel", std::string(to_string(c.rel))}});
      }
      j["constraints"] = a;
      break;
    }
    case SphereSet::Kind::Not: j["arg"] = to_json(s.children()[0]); break;
    case SphereSet::Kind::And:
    case SphereSet::Kind::Or: {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& c : s.children()) a.push_back(to_json(c));
      j["args"] = a;
      break;
    }
    case SphereSet::Kind::Join:
      j["left"] = to_json(s.children()[0]);
      j["right"] = to_json(s.children()[1]);
      break;
    case SphereSet::Kind::Restrict:
      j["set"] = to_json(s.children()[0]);
      j["basis"] = integer_matrix_to_json(s.subspace().basis());
      break;
  }
  return j;
}

SphereSet sphere_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("dim")) {
    throw Error(ErrorCode::ParseError, "sphere set needs 'type' and 'dim'");
  }
  const std::string type = j.at("type").get<std::string>();
  const auto dim = j.at("dim").get<std::size_t>();
  SphereSet out;
  if (type == "empty" || type == "full") {
    check_keys(j, {"type", "dim"});
    out = type == "empty" ? SphereSet::empty(dim) : SphereSet::full(dim);
  } else if (type == "rays") {
    check_keys(j, {"type", "dim", "rays"});
    std::vector<RationalRay> rays;
    for (const auto& r : j.at("rays")) rays.push_back(ray_from_json(r));
    out = SphereSet::rays(dim, std::move(rays));
  } else if (type == "cone") {
    check_keys(j, {"type", "dim", "constraints"});
    std::vector<LinearConstraint> cs;
    for (const auto& c : j.at("constraints")) {
      check_keys(c, {"coeffs", "rel"});
      IntVector coeffs;
      for (const auto& x : c.at("coeffs")) coeffs.push_back(integer_from_json(x));
      cs.push_back({std::move(coeffs), relation_from_string(c.at("rel").get<std::string>())});
    }
    out = SphereSet::cone(dim, std::move(cs));
  } else if (type == "not") {
    check_keys(j, {"type", "dim", "arg"});
    out = SphereSet::complement(sphere_set_from_json(j.at("arg")));
  } else if (type == "and" || type == "or") {
    check_keys(j, {"type", "dim", "args"});
    std::vector<SphereSet> parts;
    for (const auto& a : j.at("args")) parts.push_back(sphere_set_from_json(a));
    if (parts.empty()) throw Error(ErrorCode::ParseError, "empty boolean node");
    out = type == "and" ? SphereSet::intersection(std::move(parts))
                        : SphereSet::union_of(std::move(parts));
  } else if (type == "join") {
    check_keys(j, {"type", "dim", "left", "right"});
    out = SphereSet::join(sphere_set_from_json(j.at("left")),
                          sphere_set_from_json(j.at("right")));
  } else if (type == "restrict") {
    check_keys(j, {"type", "dim", "set", "basis"});
    SphereSet inner = sphere_set_from_json(j.at("set"));
    out = SphereSet::restrict(
        inner, RationalSubspace(inner.dim(), integer_matrix_from_json(j.at("basis"), inner.dim())));
  } else {
    throw Error(ErrorCode::ParseError, "unknown sphere set type '" + type + "'");
  }
  if (out.dim() != dim) {
    throw Error(ErrorCode::ParseError, "sphere set 'dim' does not match its content");
  }
  return out;
}

std::string describe(const SphereSet& s) {
  switch (s.kind()) {
    case SphereSet::Kind::Empty: return "Empty(" + std::to_string(s.dim()) + ")";
    case SphereSet::Kind::Full: return "Full(" + std::to_string(s.dim()) + ")";
    case SphereSet::Kind::Rays: {
      std::string out = "Rays{";
      for (std::size_t i = 0; i < s.ray_list().size(); ++i) {
        if (i) out += ", ";
        out += format_ray(s.ray_list()[i]);
      }
      return out + "}";
    }
    case SphereSet::Kind::Cone: {
      std::string out = "Cone{";
      for (std::size_t i = 0; i < s.constraints().size(); ++i) {
        if (i) out += ", ";
        out += format_vector(s.constraints()[i].coeffs) + " " +
               std::string(to_string(s.constraints()[i].rel)) + " 0";
      }
      return out + "}";
    }
    case SphereSet::Kind::Not: return "Not(" + describe(s.children()[0]) + ")";
    case SphereSet::Kind::And:
    case SphereSet::Kind::Or: {
      std::string out = s.kind() == SphereSet::Kind::And ? "And(" : "Or(";
      for (std::size_t i = 0; i < s.children().size(); ++i) {
        if (i) out += ", ";
        out += describe(s.children()[i]);
      }
      return out + ")";
    }
    case SphereSet::Kind::Join:
      return "Join(" + describe(s.children()[0]) + ", " + describe(s.children()[1]) + ")";
    case SphereSet::Kind::Restrict:
      return "Restrict(" + describe(s.children()[0]) + ", dim " + std::to_string(s.dim()) + ")";
  }
  return "?";
}

}  // namespace sok
