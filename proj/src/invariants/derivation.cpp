#include "sok/error.hpp"
#include "sok/invariants/invariants.hpp"

#include <set>

namespace sok {

namespace {

constexpr std::pair<Rule, std::string_view> kRuleNames[] = {
    {Rule::CatalogEntry, "CatalogEntry"},
    {Rule::FiniteExtensionSigma, "FiniteExtensionSigma"},
    {Rule::OmegaFromSigma, "OmegaFromSigma"},
    {Rule::OmegaJoinProduct, "OmegaJoinProduct"},
    {Rule::OmegaBounds, "OmegaBounds"},
    {Rule::OmegaSufficiency, "OmegaSufficiency"},
    {Rule::Restriction, "Restriction"},
};

std::string extension_group_id(const ExtensionSpec& spec) {
  return spec.name.empty() ? std::string("G") : spec.name;
}

std::optional<SphereSet> restricted(const std::optional<SphereSet>& s, const RationalSubspace& w) {
  if (!s) return std::nullopt;
  return simplify(restrict_to_subspace(*s, w));
}

void require_dim(const InvariantRecord& rec, std::size_t dim, const std::string& what) {
  if (rec.dim != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                what + ": record for '" + rec.group_id + "' has dimension " +
                    std::to_string(rec.dim) + " but Hom(H,R) has dimension " + std::to_string(dim));
  }
}

RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// Fix subspace and the extension it came from, shared by the extension rules.
struct FixData {
  Extension ext;
  RationalSubspace fix;
};

FixData fix_data(const ExtensionSpec& spec, const InvariantRecord& recH) {
  Extension ext(spec);
  require_dim(recH, ext.hom_h().dim(), "extension");
  RationalSubspace fix = ext.fix();
  return {std::move(ext), std::move(fix)};
}

InvariantRecord derived_shell(const ExtensionSpec& spec, const InvariantRecord& recH,
                              const RationalSubspace& fix) {
  InvariantRecord r;
  r.group_id = extension_group_id(spec);
  r.degree = recH.degree;
  r.dim = fix.dim();
  r.gram = induced_gram(recH.gram, fix);
  r.provenance.inputs = {{"spec", to_json(spec)}};
  r.provenance.premises = {recH.provenance};
  return r;
}

}  // namespace

std::string_view to_string(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

Rule rule_from_string(std::string_view s) {
  for (const auto& [rule, name] : kRuleNames)
    if (name == s) return rule;
  throw Error(ErrorCode::ParseError, "unknown rule '" + std::string(s) + "'");
}

nlohmann::json to_json(const DerivationCertificate& c) {
  nlohmann::json j{{"rule", to_string(c.rule)}, {"citation", c.citation}, {"inputs", c.inputs}};
  if (c.rule == Rule::OmegaSufficiency) j["condition"] = c.condition;
  j["premises"] = nlohmann::json::array();
  for (const auto& p : c.premises) j["premises"].push_back(to_json(p));
  return j;
}

DerivationCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "certificate must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k != "rule" && k != "citation" && k != "inputs" && k != "condition" && k != "premises")
      throw Error(ErrorCode::ParseError, "unknown certificate key '" + k + "'");
  }
  DerivationCertificate c;
  c.rule = rule_from_string(j.at("rule").get<std::string>());
  c.citation = j.value("citation", std::string());
  c.inputs = j.value("inputs", nlohmann::json::object());
  c.condition = j.value("condition", 0);
  for (const auto& p : j.value("premises", nlohmann::json::array()))
    c.premises.push_back(certificate_from_json(p));
  return c;
}

nlohmann::json to_json(const InvariantRecord& r) {
  nlohmann::json j{{"group", r.group_id},
                   {"degree", r.degree},
                   {"dim", r.dim},
                   {"gram", rational_matrix_to_json(r.gram)}};
  if (r.sigma) j["sigma"] = to_json(*r.sigma);
  if (r.omega) j["omega"] = to_json(*r.omega);
  if (r.omega_lower) j["omega_lower"] = to_json(*r.omega_lower);
  if (r.omega_upper) j["omega_upper"] = to_json(*r.omega_upper);
  j["certificate"] = to_json(r.provenance);
  return j;
}

InvariantRecord invariant_record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "record must be an object");
  static const std::set<std::string> keys{"group", "degree", "dim", "gram", "sigma", "omega",
                                          "omega_lower", "omega_upper", "certificate"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw Error(ErrorCode::ParseError, "unknown record key '" + k + "'");
  InvariantRecord r;
  r.group_id = j.at("group").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.dim = j.at("dim").get<std::size_t>();
  r.gram = rational_matrix_from_json(j.at("gram"), r.dim);
  auto opt = [&](const char* key) -> std::optional<SphereSet> {
    if (!j.contains(key)) return std::nullopt;
    SphereSet s = sphere_set_from_json(j[key]);
    if (s.dim() != r.dim)
      throw Error(ErrorCode::DimensionMismatch, std::string(key) + " has the wrong dimension");
    return s;
  };
  r.sigma = opt("sigma");
  r.omega = opt("omega");
  r.omega_lower = opt("omega_lower");
  r.omega_upper = opt("omega_upper");
  r.provenance = certificate_from_json(j.at("certificate"));
  return r;
}

RationalMatrix induced_gram(const RationalMatrix& g, const RationalSubspace& w) {
  RationalMatrix b = to_rational(w.basis());
  return b * g * b.transpose();
}

InvariantRecord sigma_finite_extension(const ExtensionSpec& spec, const InvariantRecord& recH) {
  if (spec.flavor != Flavor::FiniteQuotient)
    throw Error(ErrorCode::InvalidSpec, "sigma_finite_extension needs a finite_quotient spec");
  if (!recH.sigma)
    throw Error(ErrorCode::MissingSigma, "no sigma for '" + recH.group_id + "'");
  auto [ext, fix] = fix_data(spec, recH);
  InvariantRecord r = derived_shell(spec, recH, fix);
  r.sigma = restricted(recH.sigma, fix);
  r.provenance.rule = Rule::FiniteExtensionSigma;
  r.provenance.citation =
      "finite-index extension: a character of G lies in Sigma^n(G) iff its restriction to H lies "
      "in Sigma^n(H); Hom(G,R) is the fixed subspace of the transversal action";
  return r;
}

InvariantRecord omega_product(const InvariantRecord& recH, const InvariantRecord& recK) {
  if (recH.degree != recK.degree) {
    throw Error(ErrorCode::DegreeMismatch, "degrees " + std::to_string(recH.degree) + " and " +
                                               std::to_string(recK.degree) + " differ");
  }
  if (!recH.omega || !recK.omega)
    throw Error(ErrorCode::MissingInvariant, "omega_product needs both omegas");
  InvariantRecord r;
  r.group_id = recH.group_id + "x" + recK.group_id;
  r.degree = recH.degree;
  r.dim = recH.dim + recK.dim;
  r.gram = block_diagonal(recH.gram, recK.gram);
  r.omega = spherical_join(*recH.omega, *recK.omega);
  std::string citation = "direct products: Omega^n(H x K) is the spherical join of the factors";
  if (r.degree == 1 && recH.sigma && recK.sigma) {
    // Sigma^1 of a product: a character is missing iff it vanishes on one
    // factor and is missing from the other.
    SphereSet left = spherical_join(SphereSet::complement(*recH.sigma), SphereSet::empty(recK.dim));
    SphereSet right = spherical_join(SphereSet::empty(recH.dim), SphereSet::complement(*recK.sigma));
    r.sigma = SphereSet::complement(SphereSet::union_of({left, right}));
    citation += "; Sigma^1(H x K)^c is the union of Sigma^1(H)^c and Sigma^1(K)^c";
  }
  r.provenance.rule = Rule::OmegaJoinProduct;
  r.provenance.citation = citation;
  r.provenance.premises = {recH.provenance, recK.provenance};
  return r;
}

InvariantRecord omega_bounds_finite_extension(const ExtensionSpec& spec,
                                              const InvariantRecord& recH) {
  if (!recH.omega || !recH.sigma)
    throw Error(ErrorCode::MissingInvariant,
                "bounds need both sigma and omega of '" + recH.group_id + "'");
  auto [ext, fix] = fix_data(spec, recH);
  InvariantRecord r = derived_shell(spec, recH, fix);
  r.omega_lower = restricted(recH.omega, fix);
  r.omega_upper = restricted(recH.sigma, fix);
  r.provenance.rule = Rule::OmegaBounds;
  r.provenance.citation =
      "Omega^n(H) restricted to Fix is contained in Omega^n(G), which is contained in Sigma^n(H) "
      "restricted to Fix";
  if (equivalent(*r.omega_lower, *r.omega_upper)) {
    r.omega = r.omega_lower;
    r.provenance.citation += "; the bounds coincide";
  }
  return r;
}

std::optional<InvariantRecord> omega_exact_if_sufficient(const ExtensionSpec& spec,
                                                         const InvariantRecord& recH) {
  if (!recH.omega) return std::nullopt;
  int condition = 0;
  if (recH.dim == 1) {
    condition = 1;
  } else if (recH.sigma && equivalent(*recH.sigma, SphereSet::full(recH.dim))) {
    condition = 2;
  } else if (recH.sigma && is_empty(*recH.sigma)) {
    condition = 3;
  }
  if (condition == 0) return std::nullopt;
  auto [ext, fix] = fix_data(spec, recH);
  InvariantRecord r = derived_shell(spec, recH, fix);
  r.omega = restricted(recH.omega, fix);
  r.provenance.rule = Rule::OmegaSufficiency;
  r.provenance.condition = condition;
  static const char* const reasons[] = {
      "", "Hom(H,R) is one-dimensional", "Sigma^n(H) is the whole sphere", "Sigma^n(H) is empty"};
  r.provenance.citation = std::string("Omega^n(G) = Omega^n(H) restricted to Fix because ") +
                          reasons[condition];
  return r;
}

InvariantRecord omega_from_sigma_record(const InvariantRecord& rec) {
  if (!rec.sigma) throw Error(ErrorCode::MissingSigma, "no sigma for '" + rec.group_id + "'");
  InvariantRecord r = rec;
  r.omega = simplify(omega_from_sigma(*rec.sigma, rec.gram));
  r.provenance = DerivationCertificate{};
  r.provenance.rule = Rule::OmegaFromSigma;
  r.provenance.citation =
      "a point lies in Omega^n iff its open pi/2-neighbourhood lies in Sigma^n";
  if (rec.dim == 1) r.provenance.citation += " (in dimension one Omega^n = Sigma^n)";
  r.provenance.premises = {rec.provenance};
  return r;
}

InvariantRecord restrict_record(const InvariantRecord& rec, const RationalSubspace& w) {
  if (w.ambient_dim() != rec.dim)
    throw Error(ErrorCode::DimensionMismatch, "subspace lives in the wrong ambient space");
  InvariantRecord r;
  r.group_id = rec.group_id + "|W";
  r.degree = rec.degree;
  r.dim = w.dim();
  r.gram = induced_gram(rec.gram, w);
  r.sigma = restricted(rec.sigma, w);
  r.omega = restricted(rec.omega, w);
  r.omega_lower = restricted(rec.omega_lower, w);
  r.omega_upper = restricted(rec.omega_upper, w);
  r.provenance.rule = Rule::Restriction;
  r.provenance.citation = "intersection with the sphere of a rational subspace";
  r.provenance.inputs = {{"subspace", to_json(w)}};
  r.provenance.premises = {rec.provenance};
  return r;
}

InvariantRecord h_record(const ExtensionSpec& spec, int n, const Catalog& catalog) {
  if (!spec.h_catalog)
    throw Error(ErrorCode::MissingInvariant, "the spec names no catalog group for H");
  InvariantRecord r = catalog.lookup(*spec.h_catalog, n);
  require_dim(r, HomSpace(spec.H).dim(), "H_catalog");
  return r;
}

InvariantRecord k_record(const ExtensionSpec& spec, int n, const Catalog& catalog) {
  if (!spec.k_catalog)
    throw Error(ErrorCode::MissingInvariant, "the spec names no catalog group for K");
  InvariantRecord r = catalog.lookup(*spec.k_catalog, n);
  if (r.dim != HomSpace(spec.K).dim())
    throw Error(ErrorCode::DimensionMismatch, "K_catalog dimension does not match Hom(K,R)");
  return r;
}

InvariantRecord replay(const DerivationCertificate& c, const Catalog& catalog) {
  std::vector<InvariantRecord> p;
  for (const auto& q : c.premises) p.push_back(replay(q, catalog));
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw Error(ErrorCode::ValidationFailure,
                  std::string(to_string(c.rule)) + " certificate has the wrong number of premises");
  };
  auto spec = [&] { return extension_spec_from_json(c.inputs.at("spec")); };
  switch (c.rule) {
    case Rule::CatalogEntry:
      need(0);
      return catalog.lookup(c.inputs.at("id").get<std::string>(), c.inputs.at("degree").get<int>());
    case Rule::FiniteExtensionSigma:
      need(1);
      return sigma_finite_extension(spec(), p[0]);
    case Rule::OmegaFromSigma:
      need(1);
      return omega_from_sigma_record(p[0]);
    case Rule::OmegaJoinProduct:
      need(2);
      return omega_product(p[0], p[1]);
    case Rule::OmegaBounds:
      need(1);
      return omega_bounds_finite_extension(spec(), p[0]);
    case Rule::OmegaSufficiency: {
      need(1);
      auto r = omega_exact_if_sufficient(spec(), p[0]);
      if (!r || r->provenance.condition != c.condition)
        throw Error(ErrorCode::ValidationFailure, "sufficiency condition does not replay");
      return *r;
    }
    case Rule::Restriction:
      need(1);
      return restrict_record(p[0], subspace_from_json(c.inputs.at("subspace")));
  }
  throw Error(ErrorCode::ValidationFailure, "unknown rule");
}

bool replay_matches(const InvariantRecord& rec, const Catalog& catalog) {
  return to_json(replay(rec.provenance, catalog)) == to_json(rec);
}

}  // namespace sok
