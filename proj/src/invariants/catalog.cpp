#include "sok/error.hpp"
#include "sok/invariants/invariants.hpp"

#include <charconv>
#include <regex>

namespace sok {

namespace {

RationalMatrix identity_gram(std::size_t d) { return RationalMatrix::identity(d); }

std::optional<long> parse_count(const std::string& s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string resolve_alias(const std::string& id) {
  static const std::regex zk(R"(Zk\((\d+)\))"), fk(R"(FreeFk\((\d+)\))"), bs(R"(BS1m\((\d+)\))");
  std::smatch m;
  if (std::regex_match(id, m, zk)) return "Z" + m[1].str();
  if (std::regex_match(id, m, fk)) return "F" + m[1].str();
  if (std::regex_match(id, m, bs)) return "BS(1," + m[1].str() + ")";
  if (id == "FiniteGroup") return "Trivial";
  return id;
}

struct Atomic {
  enum class Kind { FreeAbelian, Free, BS, Thompson, Finite } kind;
  long param = 0;
};

std::optional<Atomic> parse_atomic(const std::string& id) {
  static const std::regex bs(R"(BS\(1,(\d+)\))");
  std::smatch m;
  if (id == "ThompsonF") return Atomic{Atomic::Kind::Thompson, 2};
  if (id == "Trivial") return Atomic{Atomic::Kind::Finite, 1};
  if (std::regex_match(id, m, bs)) {
    auto v = parse_count(m[1].str());
    if (v && *v >= 2) return Atomic{Atomic::Kind::BS, *v};
    return std::nullopt;
  }
  if (id.size() < 2) return std::nullopt;
  auto v = parse_count(id.substr(1));
  if (!v || *v < 0) return std::nullopt;
  switch (id[0]) {
    case 'Z':
      return Atomic{Atomic::Kind::FreeAbelian, *v};
    case 'F':
      return *v <= 1 ? Atomic{Atomic::Kind::FreeAbelian, *v} : Atomic{Atomic::Kind::Free, *v};
    case 'C':
      if (*v >= 1) return Atomic{Atomic::Kind::Finite, *v};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::vector<std::string> numbered(const std::string& stem, long k) {
  std::vector<std::string> out;
  for (long i = 1; i <= k; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

Presentation atomic_presentation(const Atomic& a) {
  switch (a.kind) {
    case Atomic::Kind::FreeAbelian: {
      auto names = numbered("z", a.param);
      std::vector<std::string> rels;
      for (long i = 0; i < a.param; ++i)
        for (long j = i + 1; j < a.param; ++j)
          rels.push_back(names[i] + " " + names[j] + " " + names[i] + "^-1 " + names[j] + "^-1");
      return Presentation::parse(names, rels);
    }
    case Atomic::Kind::Free:
      return Presentation::parse(numbered("f", a.param), {});
    case Atomic::Kind::BS:
      return Presentation::parse({"a", "b"}, {"b^-1 a b a^-" + std::to_string(a.param)});
    case Atomic::Kind::Thompson:
      return Presentation::parse(
          {"x0", "x1"}, {"x0 x1^-1 x0^-1 x1 x0 x1 x0^-1 x0^-1 x1^-1 x0",
                         "x0 x1^-1 x0^-2 x1 x0^2 x1 x0^-1 x0^-2 x1^-1 x0^2"});
    case Atomic::Kind::Finite:
      if (a.param == 1) return Presentation({}, {});
      return Presentation::parse({"c"}, {"c^" + std::to_string(a.param)});
  }
  return {};
}

// Direct product presentation; clashing generator names get a factor suffix.
Presentation product_presentation(const std::vector<Presentation>& factors) {
  std::vector<std::string> names;
  std::vector<Word> rels;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& p = factors[f];
    const std::uint32_t off = static_cast<std::uint32_t>(names.size());
    for (const auto& n : p.generators()) {
      std::string name = n;
      if (std::find(names.begin(), names.end(), name) != names.end())
        name += "_" + std::to_string(f + 1);
      names.push_back(name);
    }
    for (auto r : p.relators()) {
      for (auto& l : r) l.generator += off;
      rels.push_back(std::move(r));
    }
    ranges.emplace_back(off, names.size());
  }
  for (std::size_t f = 0; f < ranges.size(); ++f)
    for (std::size_t g = f + 1; g < ranges.size(); ++g)
      for (std::size_t i = ranges[f].first; i < ranges[f].second; ++i)
        for (std::size_t j = ranges[g].first; j < ranges[g].second; ++j) {
          auto a = static_cast<std::uint32_t>(i), b = static_cast<std::uint32_t>(j);
          rels.push_back({{a, 1}, {b, 1}, {a, -1}, {b, -1}});
        }
  return Presentation(std::move(names), std::move(rels));
}

CatalogEntryData atomic_entry(const std::string& id, const Atomic& a, int n) {
  CatalogEntryData e;
  e.id = id;
  e.degree = n;
  e.presentation = atomic_presentation(a);
  switch (a.kind) {
    case Atomic::Kind::FreeAbelian:
      e.dim = static_cast<std::size_t>(a.param);
      e.sigma = SphereSet::full(e.dim);
      e.omega = SphereSet::full(e.dim);
      e.citation = "free abelian groups: every character is in Sigma^n, so Sigma^n = Omega^n = S(G)";
      break;
    case Atomic::Kind::Free:
      e.dim = static_cast<std::size_t>(a.param);
      e.sigma = SphereSet::empty(e.dim);
      e.omega = SphereSet::empty(e.dim);
      e.citation = "free groups of rank >= 2: Sigma^1 is empty, hence Sigma^n = Omega^n = empty";
      break;
    case Atomic::Kind::BS:
      // Hom(BS(1,m),R) is spanned by the character with b -> 1, a -> 0.
      e.dim = 1;
      e.sigma = SphereSet::complement(SphereSet::rays(1, {RationalRay::of({-1})}));
      e.omega = SphereSet::rays(1, {RationalRay::of({1})});
      e.citation = "BS(1,m), m >= 2: the complement of Sigma^n is the single point b -> -1";
      break;
    case Atomic::Kind::Thompson:
      e.dim = 2;
      if (n == 1) {
        e.sigma = SphereSet::complement(
            SphereSet::rays(2, {RationalRay::of({1, 0}), RationalRay::of({-1, -1})}));
        e.citation =
            "Thompson's F: Sigma^1 misses exactly chi_1 = (1,0) and chi_2 = (-1,-1) in "
            "(chi(x0), chi(x1)) coordinates";
      } else {
        // Closed arc from (1,0) to (-1,-1) through (0,-1).
        e.sigma = SphereSet::complement(
            SphereSet::cone(2, {ge({1, -1}), ge({0, -1})}));
        e.citation =
            "Thompson's F: Sigma^2 contains the larger open arc of Sigma^1 and misses the "
            "closed smaller arc from (1,0) to (-1,-1) through (0,-1)";
      }
      e.omega = SphereSet::cone(2, {ge({-1, 0}), ge({1, 1})});
      break;
    case Atomic::Kind::Finite:
      e.dim = 0;
      e.sigma = SphereSet::empty(0);
      e.omega = SphereSet::empty(0);
      e.citation = "finite groups: Hom(G,R) = 0 and the character sphere is empty";
      break;
  }
  return e;
}

InvariantRecord record_from_entry(const CatalogEntryData& e) {
  InvariantRecord r;
  r.group_id = e.id;
  r.degree = e.degree;
  r.dim = e.dim;
  r.gram = identity_gram(e.dim);
  r.sigma = e.sigma;
  r.omega = e.omega;
  r.provenance.rule = Rule::CatalogEntry;
  r.provenance.citation = e.citation;
  r.provenance.inputs = {{"id", e.id}, {"degree", e.degree}};
  return r;
}

}  // namespace

// Factor names never contain a lowercase 'x' outside parentheses.
std::vector<std::string> product_factors(std::string_view id) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : id) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'x' && depth == 0 && !cur.empty()) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  out.push_back(cur);
  return out;
}

std::string canonical_group_id(std::string_view id) {
  std::string out;
  for (const auto& f : product_factors(id)) {
    if (!out.empty()) out += "x";
    out += resolve_alias(f);
  }
  return out;
}

const Catalog& Catalog::builtin() {
  static const Catalog c;
  return c;
}

void Catalog::add(CatalogEntryData e) {
  e.id = canonical_group_id(e.id);
  if (e.degree < 1) throw Error(ErrorCode::UnknownDegree, "catalog degree must be >= 1");
  if (!e.sigma && !e.omega)
    throw Error(ErrorCode::MissingInvariant, "catalog entry '" + e.id + "' has neither sigma nor omega");
  std::size_t d = e.sigma ? e.sigma->dim() : e.omega->dim();
  if ((e.sigma && e.sigma->dim() != d) || (e.omega && e.omega->dim() != d))
    throw Error(ErrorCode::DimensionMismatch, "catalog entry '" + e.id + "' mixes dimensions");
  e.dim = d;
  entries_[{e.id, e.degree}] = std::move(e);
}

void Catalog::load_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "catalog file must be a JSON list");
  for (const auto& item : j) {
    if (!item.is_object()) throw Error(ErrorCode::ParseError, "catalog item must be an object");
    for (const auto& [k, v] : item.items()) {
      if (k != "id" && k != "degree" && k != "sigma" && k != "omega" && k != "citation")
        throw Error(ErrorCode::ParseError, "unknown catalog key '" + k + "'");
    }
    CatalogEntryData e;
    e.id = item.at("id").get<std::string>();
    e.degree = item.at("degree").get<int>();
    if (item.contains("sigma")) e.sigma = sphere_set_from_json(item["sigma"]);
    if (item.contains("omega")) e.omega = sphere_set_from_json(item["omega"]);
    e.citation = item.value("citation", std::string("user catalog"));
    add(std::move(e));
  }
}

std::optional<InvariantRecord> Catalog::atomic(const std::string& id, int n) const {
  if (auto it = entries_.find({id, n}); it != entries_.end()) return record_from_entry(it->second);
  auto a = parse_atomic(id);
  if (!a) return std::nullopt;
  if (n < 1 || n > 2) {
    throw Error(ErrorCode::UnknownDegree,
                "no catalog value for '" + id + "' in degree " + std::to_string(n));
  }
  return record_from_entry(atomic_entry(id, *a, n));
}

InvariantRecord Catalog::lookup(std::string_view raw, int n) const {
  std::string id = canonical_group_id(raw);
  if (auto r = atomic(id, n)) return *r;
  auto factors = product_factors(id);
  if (factors.size() < 2) throw Error(ErrorCode::UnknownGroup, "unknown group '" + id + "'");
  std::optional<InvariantRecord> acc;
  for (const auto& f : factors) {
    auto r = atomic(f, n);
    if (!r) throw Error(ErrorCode::UnknownGroup, "unknown group '" + f + "' in product '" + id + "'");
    acc = acc ? omega_product(*acc, *r) : *r;
  }
  return *acc;
}

std::optional<Presentation> Catalog::presentation(std::string_view raw) const {
  std::string id = canonical_group_id(raw);
  std::vector<Presentation> parts;
  for (const auto& f : product_factors(id)) {
    auto a = parse_atomic(f);
    if (!a) return std::nullopt;
    parts.push_back(atomic_presentation(*a));
  }
  if (parts.size() == 1) return parts.front();
  return product_presentation(parts);
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out{"Z<k>", "F<k>", "BS(1,<m>)", "ThompsonF", "C<n>", "Trivial"};
  for (const auto& [key, e] : entries_)
    if (std::find(out.begin(), out.end(), key.first) == out.end()) out.push_back(key.first);
  return out;
}

nlohmann::json Catalog::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [key, e] : entries_) {
    nlohmann::json item{{"id", e.id}, {"degree", e.degree}, {"citation", e.citation}};
    if (e.sigma) item["sigma"] = sok::to_json(*e.sigma);
    if (e.omega) item["omega"] = sok::to_json(*e.omega);
    list.push_back(std::move(item));
  }
  return {{"builtin", ids()}, {"entries", list}};
}

InvariantRecord lookup_known(std::string_view id, int n) { return Catalog::builtin().lookup(id, n); }

}  // namespace sok
