#pragma once

#include "sok/charsphere/analysis.hpp"
#include "sok/extension/extension.hpp"

#include <map>
#include <optional>

namespace sok {

enum class Rule {
  CatalogEntry,
  FiniteExtensionSigma,
  OmegaFromSigma,
  OmegaJoinProduct,
  OmegaBounds,
  OmegaSufficiency,
  Restriction,
};

std::string_view to_string(Rule r);
Rule rule_from_string(std::string_view s);

/// Audit trail for a derived invariant. `inputs` holds everything besides the
/// premises that is needed to re-run the step (catalog id, extension spec,
/// subspace), so a certificate tree can be replayed from its leaves.
struct DerivationCertificate {
  Rule rule = Rule::CatalogEntry;
  int condition = 0;  // OmegaSufficiency only: 1, 2 or 3
  std::string citation;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<DerivationCertificate> premises;
};

nlohmann::json to_json(const DerivationCertificate& c);
DerivationCertificate certificate_from_json(const nlohmann::json& j);

/// Sigma/Omega data for one group in one degree. Sets live on the sphere of
/// Hom(G,R) in the record's own coordinates; `gram` is the inner product used
/// for angles (identity for catalog groups, induced for subspaces).
struct InvariantRecord {
  std::string group_id;
  int degree = 1;
  std::size_t dim = 0;
  RationalMatrix gram;
  std::optional<SphereSet> sigma;
  std::optional<SphereSet> omega;
  std::optional<SphereSet> omega_lower;
  std::optional<SphereSet> omega_upper;
  DerivationCertificate provenance;
};

nlohmann::json to_json(const InvariantRecord& r);
InvariantRecord invariant_record_from_json(const nlohmann::json& j);

struct CatalogEntryData {
  std::string id;
  int degree = 1;
  std::size_t dim = 0;
  std::optional<SphereSet> sigma;
  std::optional<SphereSet> omega;
  std::string citation;
  std::optional<Presentation> presentation;
};

/// Known invariants. Atomic ids: Z<k>, F<k>, BS(1,<m>), ThompsonF, C<n>,
/// Trivial; the aliases Zk(k), FreeFk(k), BS1m(m) and FiniteGroup are
/// accepted. Ids joined by 'x' denote direct products.
class Catalog {
 public:
  static const Catalog& builtin();

  /// Adds entries from a JSON list of {id, degree, sigma, omega, citation}.
  void load_json(const nlohmann::json& j);
  void add(CatalogEntryData e);

  InvariantRecord lookup(std::string_view id, int n) const;
  std::optional<Presentation> presentation(std::string_view id) const;
  std::vector<std::string> ids() const;
  nlohmann::json to_json() const;

 private:
  std::optional<InvariantRecord> atomic(const std::string& id, int n) const;
  std::map<std::pair<std::string, int>, CatalogEntryData> entries_;
};

/// Canonical spelling of a catalog id (aliases resolved, factors kept in order).
std::string canonical_group_id(std::string_view id);
std::vector<std::string> product_factors(std::string_view id);

InvariantRecord lookup_known(std::string_view id, int n);

InvariantRecord sigma_finite_extension(const ExtensionSpec& spec, const InvariantRecord& recH);
InvariantRecord omega_product(const InvariantRecord& recH, const InvariantRecord& recK);
InvariantRecord omega_bounds_finite_extension(const ExtensionSpec& spec,
                                              const InvariantRecord& recH);
std::optional<InvariantRecord> omega_exact_if_sufficient(const ExtensionSpec& spec,
                                                         const InvariantRecord& recH);
/// Omega from sigma by the pi/2-neighbourhood rule, using rec.gram.
InvariantRecord omega_from_sigma_record(const InvariantRecord& rec);
/// Sigma, Omega and the bounds of rec restricted to the subspace w.
InvariantRecord restrict_record(const InvariantRecord& rec, const RationalSubspace& w);

/// Record for H of an extension: the catalog entry named by spec.h_catalog,
/// checked against the dimension of Hom(H,R).
InvariantRecord h_record(const ExtensionSpec& spec, int n, const Catalog& catalog = Catalog::builtin());
InvariantRecord k_record(const ExtensionSpec& spec, int n, const Catalog& catalog = Catalog::builtin());

/// Gram matrix of the subspace w under the ambient inner product g.
RationalMatrix induced_gram(const RationalMatrix& g, const RationalSubspace& w);

/// Re-executes the certificate tree; the catalog supplies the leaves.
InvariantRecord replay(const DerivationCertificate& c, const Catalog& catalog = Catalog::builtin());
/// True iff replaying rec.provenance reproduces rec's serialization exactly.
bool replay_matches(const InvariantRecord& rec, const Catalog& catalog = Catalog::builtin());

}  // namespace sok
