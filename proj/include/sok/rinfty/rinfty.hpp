#pragma once

#include "sok/invariants/invariants.hpp"

namespace sok {

enum class Verdict { RInfinityForAutomorphism, RInfinityForGroup, Inconclusive };
enum class RinftyRule {
  SinglePointOmega,
  FiniteExtRationalPoint,
  SplitExtJoinPoint,
  QuotientLift,
  FiniteFixLift,
};

std::string_view to_string(Verdict v);
std::string_view to_string(RinftyRule r);

struct RinftyCertificate {
  Verdict verdict = Verdict::Inconclusive;
  RinftyRule rule = RinftyRule::SinglePointOmega;
  std::optional<RationalRay> witness;
  std::string citation;
  /// Rule specific data: the set that was counted, the subspace, the
  /// character chi whose kernel N gives the quotient G/N, the split branch.
  nlohmann::json details = nlohmann::json::object();
  std::vector<DerivationCertificate> premises;
  std::vector<RinftyCertificate> sub;
};

nlohmann::json to_json(const RinftyCertificate& c);
RinftyCertificate rinfty_certificate_from_json(const nlohmann::json& j);

/// Number of twisted conjugacy classes of the endomorphism M of Z^m; nullopt
/// means infinitely many.
std::optional<Integer> reidemeister_abelian(const IntegerMatrix& m);

std::optional<RinftyCertificate> rinfty_single_point(const InvariantRecord& rec);
std::optional<RinftyCertificate> rinfty_finite_ext(const ExtensionSpec& spec,
                                                   const InvariantRecord& recH, int n);
std::optional<RinftyCertificate> rinfty_split_ext(const ExtensionSpec& spec,
                                                  const InvariantRecord& recH,
                                                  const InvariantRecord& recK, int n);

/// A map of a presented group given by generator images.
struct AutomorphismSpec {
  Presentation owner;
  std::vector<Word> images;
};

AutomorphismSpec automorphism_from_json(const nlohmann::json& j, const Presentation& owner);
/// Checks the abelianized map: relators go into the relator lattice and the
/// action on the free part is unimodular. Throws InvalidSpec otherwise.
void validate_automorphism(const AutomorphismSpec& phi);

/// True iff every H-generator is sent to a word whose K-projection is trivial.
bool check_h_invariant(const AutomorphismSpec& phi, const ExtensionSpec& spec);

/// Quotient rule: R(phi-bar) infinite on G/N implies R(phi) infinite.
RinftyCertificate quotient_lift(const RinftyCertificate& quotient, std::string quotient_name);
/// Subgroup rule over caller-supplied facts: phi-bar has finitely many fixed
/// points on the quotient and R(phi') is infinite on the normal subgroup.
RinftyCertificate finite_fix_lift(const RinftyCertificate& subgroup, std::string fix_finite_reason);

}  // namespace sok
