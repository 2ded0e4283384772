#include "sok/rinfty/rinfty.hpp"

#include "sok/error.hpp"

namespace sok {

namespace {

constexpr std::pair<Verdict, std::string_view> kVerdicts[] = {
    {Verdict::RInfinityForAutomorphism, "RInfinityForAutomorphism"},
    {Verdict::RInfinityForGroup, "RInfinityForGroup"},
    {Verdict::Inconclusive, "Inconclusive"},
};

constexpr std::pair<RinftyRule, std::string_view> kRules[] = {
    {RinftyRule::SinglePointOmega, "SinglePointOmega"},
    {RinftyRule::FiniteExtRationalPoint, "FiniteExtRationalPoint"},
    {RinftyRule::SplitExtJoinPoint, "SplitExtJoinPoint"},
    {RinftyRule::QuotientLift, "QuotientLift"},
    {RinftyRule::FiniteFixLift, "FiniteFixLift"},
};

template <class E, std::size_t N>
E parse_enum(const std::pair<E, std::string_view> (&table)[N], std::string_view s) {
  for (const auto& [e, name] : table)
    if (name == s) return e;
  throw Error(ErrorCode::ParseError, "unknown tag '" + std::string(s) + "'");
}

void require_degree(const InvariantRecord& rec, int n) {
  if (rec.degree != n) {
    throw Error(ErrorCode::DegreeMismatch, "record for '" + rec.group_id + "' has degree " +
                                               std::to_string(rec.degree) + ", requested " +
                                               std::to_string(n));
  }
}

// The unique rational point of s, when s is exactly one ray.
std::optional<RationalRay> single_point(const SphereSet& s) {
  PointCount c = count_rational_points(s);
  if (c.kind != PointCount::Kind::One) return std::nullopt;
  if (!equivalent(s, SphereSet::rays(s.dim(), c.rays))) return std::nullopt;
  return c.rays.front();
}

// x in the integer row lattice of m.
bool in_row_lattice(const IntegerMatrix& m, std::span<const Integer> x) {
  if (m.rows() == 0) return is_zero(x);
  SmithForm s = smith_normal_form(m);
  // x = y M  <=>  (y U^-1) D = x V.
  std::vector<Integer> w(m.cols(), Integer(0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t k = 0; k < m.cols(); ++k) w[j] += x[k] * s.V(k, j);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j < s.rank) {
      if (w[j] % s.D(j, j) != 0) return false;
    } else if (w[j] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(Verdict v) {
  for (const auto& [e, name] : kVerdicts)
    if (e == v) return name;
  return "?";
}

std::string_view to_string(RinftyRule r) {
  for (const auto& [e, name] : kRules)
    if (e == r) return name;
  return "?";
}

nlohmann::json to_json(const RinftyCertificate& c) {
  nlohmann::json j{{"verdict", to_string(c.verdict)},
                   {"rule", to_string(c.rule)},
                   {"citation", c.citation},
                   {"details", c.details}};
  if (c.witness) j["witness"] = to_json(*c.witness);
  j["premises"] = nlohmann::json::array();
  for (const auto& p : c.premises) j["premises"].push_back(to_json(p));
  j["sub"] = nlohmann::json::array();
  for (const auto& s : c.sub) j["sub"].push_back(to_json(s));
  return j;
}

RinftyCertificate rinfty_certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "certificate must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k != "verdict" && k != "rule" && k != "citation" && k != "details" && k != "witness" &&
        k != "premises" && k != "sub")
      throw Error(ErrorCode::ParseError, "unknown certificate key '" + k + "'");
  }
  RinftyCertificate c;
  c.verdict = parse_enum(kVerdicts, j.at("verdict").get<std::string>());
  c.rule = parse_enum(kRules, j.at("rule").get<std::string>());
  c.citation = j.value("citation", std::string());
  c.details = j.value("details", nlohmann::json::object());
  if (j.contains("witness")) c.witness = ray_from_json(j["witness"]);
  for (const auto& p : j.value("premises", nlohmann::json::array()))
    c.premises.push_back(certificate_from_json(p));
  for (const auto& s : j.value("sub", nlohmann::json::array()))
    c.sub.push_back(rinfty_certificate_from_json(s));
  return c;
}

std::optional<Integer> reidemeister_abelian(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  IntegerMatrix d = m;
  for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) -= 1;
  Integer det = determinant(d);
  if (det == 0) return std::nullopt;
  return det < 0 ? Integer(-det) : det;
}

std::optional<RinftyCertificate> rinfty_single_point(const InvariantRecord& rec) {
  if (!rec.omega) throw Error(ErrorCode::MissingInvariant, "no omega for '" + rec.group_id + "'");
  auto r = single_point(*rec.omega);
  if (!r) return std::nullopt;
  RinftyCertificate c;
  c.verdict = Verdict::RInfinityForGroup;
  c.rule = RinftyRule::SinglePointOmega;
  c.witness = r;
  c.citation = "a group whose Omega^n is a single discrete point has property R-infinity";
  c.details = {{"group", rec.group_id}, {"degree", rec.degree}, {"omega", to_json(*rec.omega)}};
  c.premises = {rec.provenance};
  return c;
}

std::optional<RinftyCertificate> rinfty_finite_ext(const ExtensionSpec& spec,
                                                   const InvariantRecord& recH, int n) {
  if (spec.flavor != Flavor::FiniteQuotient)
    throw Error(ErrorCode::InvalidSpec, "rinfty_finite_ext needs a finite_quotient spec");
  if (!recH.omega) throw Error(ErrorCode::MissingInvariant, "no omega for '" + recH.group_id + "'");
  require_degree(recH, n);
  Extension ext(spec);
  if (recH.dim != ext.hom_h().dim())
    throw Error(ErrorCode::DimensionMismatch, "record dimension does not match Hom(H,R)");
  SphereSet t = simplify(restrict_to_subspace(*recH.omega, ext.fix()));
  auto r = single_point(t);
  if (!r) return std::nullopt;

  // chi on G: the witness in Fix coordinates, as values on H, extended.
  IntVector fix_coords = r->direction();
  IntVector h_coords = ext.fix().embed(std::span<const Integer>(fix_coords));
  RatVector h_values = ext.hom_h().values(to_rational(std::span<const Integer>(h_coords)));
  Character chi = extend_character_finite(ext, Character{h_values});

  RinftyCertificate c;
  c.verdict = spec.h_characteristic ? Verdict::RInfinityForGroup : Verdict::RInfinityForAutomorphism;
  c.rule = RinftyRule::FiniteExtRationalPoint;
  c.witness = r;
  c.citation =
      "Omega^n(H) restricted to Fix has exactly one rational point [chi]: every automorphism "
      "leaving H invariant fixes chi, induces the identity on G/ker(chi) and has R = infinity";
  c.details = {{"degree", n},
               {"T", to_json(t)},
               {"fix", to_json(ext.fix())},
               {"chi_on_G", vector_to_json(chi.values)},
               {"generators", ext.presentation().generators()},
               {"scope", spec.h_characteristic ? "every automorphism (H asserted characteristic)"
                                               : "automorphisms leaving H invariant"}};
  c.premises = {recH.provenance};
  return c;
}

std::optional<RinftyCertificate> rinfty_split_ext(const ExtensionSpec& spec,
                                                  const InvariantRecord& recH,
                                                  const InvariantRecord& recK, int n) {
  if (spec.flavor != Flavor::Split)
    throw Error(ErrorCode::InvalidSpec, "rinfty_split_ext needs a split spec");
  if (!recH.omega || !recK.omega)
    throw Error(ErrorCode::MissingInvariant, "split rule needs Omega of H and of K");
  require_degree(recH, n);
  require_degree(recK, n);
  Extension ext(spec);
  if (recH.dim != ext.hom_h().dim())
    throw Error(ErrorCode::DimensionMismatch, "record dimension does not match Hom(H,R)");
  if (recK.dim != HomSpace(spec.K).dim())
    throw Error(ErrorCode::DimensionMismatch, "record dimension does not match Hom(K,R)");
  SphereSet th = simplify(restrict_to_subspace(*recH.omega, ext.fix()));
  SphereSet j = spherical_join(th, *recK.omega);
  auto r = single_point(j);
  if (!r) return std::nullopt;

  const std::size_t fd = ext.fix().dim();
  const IntVector& v = r->direction();
  bool h_side = std::all_of(v.begin() + static_cast<std::ptrdiff_t>(fd), v.end(),
                            [](const Integer& x) { return x == 0; });

  RinftyCertificate c;
  c.verdict = spec.h_characteristic ? Verdict::RInfinityForGroup : Verdict::RInfinityForAutomorphism;
  c.rule = RinftyRule::SplitExtJoinPoint;
  c.witness = r;
  c.citation =
      "the join of Omega^n(H) restricted to Fix with Omega^n(K) has exactly one rational point";
  c.details = {{"degree", n},
               {"join", to_json(j)},
               {"fix", to_json(ext.fix())},
               {"branch", h_side ? "H" : "K"},
               {"scope", spec.h_characteristic ? "every automorphism (H asserted characteristic)"
                                               : "automorphisms leaving H invariant"}};
  c.premises = {recH.provenance, recK.provenance};
  if (!h_side) {
    if (auto k = rinfty_single_point(recK)) c.sub.push_back(quotient_lift(*k, recK.group_id));
  }
  return c;
}

AutomorphismSpec automorphism_from_json(const nlohmann::json& j, const Presentation& owner) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "automorphism must map generators to words");
  AutomorphismSpec phi{owner, std::vector<Word>(owner.generator_count())};
  std::vector<bool> seen(owner.generator_count(), false);
  for (const auto& [k, v] : j.items()) {
    std::size_t g = owner.index_of(k);
    phi.images[g] = owner.word(v.get<std::string>());
    seen[g] = true;
  }
  for (std::size_t g = 0; g < seen.size(); ++g)
    if (!seen[g])
      throw Error(ErrorCode::InvalidSpec, "no image for generator '" + owner.generators()[g] + "'");
  return phi;
}

void validate_automorphism(const AutomorphismSpec& phi) {
  const Presentation& p = phi.owner;
  if (phi.images.size() != p.generator_count())
    throw Error(ErrorCode::InvalidSpec, "automorphism needs one image per generator");
  IntegerMatrix rel = exponent_matrix(p);
  for (const auto& r : p.relators()) {
    auto e = exponent_vector(substitute(r, phi.images), p.generator_count());
    IntVector x(e.begin(), e.end());
    if (!in_row_lattice(rel, x))
      throw Error(ErrorCode::InvalidSpec,
                  "image of relator '" + p.format(r) + "' is not a relation of the abelianization");
  }
  HomSpace hom(p);
  RationalMatrix a = action_matrix(hom, p, phi.images);
  Rational det = determinant(a);
  if (det != 1 && det != -1)
    throw Error(ErrorCode::InvalidSpec, "map is not invertible on the free part of the abelianization");
}

bool check_h_invariant(const AutomorphismSpec& phi, const ExtensionSpec& spec) {
  Extension ext(spec);
  if (!(phi.owner == ext.presentation()))
    throw Error(ErrorCode::InvalidSpec, "automorphism is not over the extension presentation");
  const std::uint32_t na = static_cast<std::uint32_t>(spec.H.generator_count());
  for (std::uint32_t a = 0; a < na; ++a) {
    Word k;
    for (const auto& l : phi.images[a])
      if (l.generator >= na) k.push_back({l.generator - na, l.sign});
    if (!ext.k_oracle().is_trivial(k)) return false;
  }
  return true;
}

RinftyCertificate quotient_lift(const RinftyCertificate& quotient, std::string quotient_name) {
  RinftyCertificate c;
  c.verdict = quotient.verdict == Verdict::RInfinityForGroup ? Verdict::RInfinityForAutomorphism
                                                             : quotient.verdict;
  c.rule = RinftyRule::QuotientLift;
  c.witness = quotient.witness;
  c.citation =
      "for an automorphism preserving the kernel, R(induced map on the quotient) = infinity "
      "implies R = infinity";
  c.details = {{"quotient", std::move(quotient_name)}};
  c.sub = {quotient};
  return c;
}

RinftyCertificate finite_fix_lift(const RinftyCertificate& subgroup, std::string fix_finite_reason) {
  RinftyCertificate c;
  c.verdict = subgroup.verdict == Verdict::Inconclusive ? Verdict::Inconclusive
                                                         : Verdict::RInfinityForAutomorphism;
  c.rule = RinftyRule::FiniteFixLift;
  c.witness = subgroup.witness;
  c.citation =
      "the induced map on the quotient has finitely many fixed points and the restriction to "
      "the normal subgroup has R = infinity, hence R = infinity";
  c.details = {{"fix_finite", std::move(fix_finite_reason)}};
  c.sub = {subgroup};
  return c;
}

}  // namespace sok
