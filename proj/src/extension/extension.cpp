#include "sok/extension/extension.hpp"

#include "sok/error.hpp"

#include <algorithm>
#include <set>

namespace sok {

std::string_view to_string(Flavor f) {
  return f == Flavor::FiniteQuotient ? "finite_quotient" : "split";
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::InvalidSpec, message);
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::ParseError, "unknown key '" + key + "' in " + where);
  }
}

std::string string_at(const nlohmann::json& j, const std::string& what) {
  if (!j.is_string()) throw Error(ErrorCode::ParseError, what + " must be a string");
  return j.get<std::string>();
}

}  // namespace

std::vector<std::vector<Word>> conjugation_from_json(const nlohmann::json& j,
                                                     const Presentation& H,
                                                     const Presentation& K) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "'conjugation' must be an object");
  const std::size_t na = H.generator_count(), nb = K.generator_count();
  std::vector<std::vector<std::optional<Word>>> table(nb, std::vector<std::optional<Word>>(na));
  for (const auto& [key, value] : j.items()) {
    auto colon = key.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::ParseError, "conjugation key '" + key + "' is not of the form b:a");
    }
    std::size_t b = K.index_of(key.substr(0, colon));
    std::size_t a = H.index_of(key.substr(colon + 1));
    if (table[b][a]) throw Error(ErrorCode::ParseError, "duplicate conjugation key '" + key + "'");
    table[b][a] = H.word(string_at(value, "conjugation word"));
  }
  std::vector<std::vector<Word>> out(nb, std::vector<Word>(na));
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t a = 0; a < na; ++a) {
      require(table[b][a].has_value(), "conjugation table lacks " + K.generators()[b] + ":" +
                                           H.generators()[a]);
      out[b][a] = *table[b][a];
    }
  }
  return out;
}

ExtensionSpec extension_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "extension spec must be an object");
  check_keys(j, {"name", "H", "K", "flavor", "orders", "conjugation", "relator_words",
                 "H_catalog", "K_catalog", "h_characteristic"},
             "extension spec");
  for (const char* k : {"H", "K", "flavor", "conjugation"}) {
    if (!j.contains(k)) throw Error(ErrorCode::ParseError, std::string("extension spec lacks '") + k + "'");
  }
  ExtensionSpec s;
  if (j.contains("name")) s.name = string_at(j.at("name"), "'name'");
  s.H = presentation_from_json(j.at("H"));
  s.K = presentation_from_json(j.at("K"));
  const std::string flavor = string_at(j.at("flavor"), "'flavor'");
  if (flavor == "finite_quotient") s.flavor = Flavor::FiniteQuotient;
  else if (flavor == "split") s.flavor = Flavor::Split;
  else throw Error(ErrorCode::ParseError, "unknown flavor '" + flavor + "'");

  s.orders.assign(s.K.generator_count(), std::nullopt);
  if (j.contains("orders")) {
    const auto& o = j.at("orders");
    if (!o.is_object()) throw Error(ErrorCode::ParseError, "'orders' must be an object");
    for (const auto& [key, value] : o.items()) {
      std::size_t b = s.K.index_of(key);
      if (!value.is_object()) throw Error(ErrorCode::ParseError, "order entry must be an object");
      check_keys(value, {"m", "w"}, "order entry");
      if (!value.contains("m") || !value.at("m").is_number_integer()) {
        throw Error(ErrorCode::ParseError, "order entry needs an integer 'm'");
      }
      OrderEntry e;
      e.m = value.at("m").get<std::int64_t>();
      if (value.contains("w")) e.w = s.H.word(string_at(value.at("w"), "order word"));
      s.orders[b] = std::move(e);
    }
  }
  s.conjugation = conjugation_from_json(j.at("conjugation"), s.H, s.K);
  if (j.contains("relator_words")) {
    const auto& r = j.at("relator_words");
    if (!r.is_array()) throw Error(ErrorCode::ParseError, "'relator_words' must be an array");
    for (const auto& w : r) s.relator_words.push_back(s.H.word(string_at(w, "relator word")));
  }
  if (j.contains("H_catalog")) s.h_catalog = string_at(j.at("H_catalog"), "'H_catalog'");
  if (j.contains("K_catalog")) s.k_catalog = string_at(j.at("K_catalog"), "'K_catalog'");
  if (j.contains("h_characteristic")) {
    if (!j.at("h_characteristic").is_boolean()) {
      throw Error(ErrorCode::ParseError, "'h_characteristic' must be a boolean");
    }
    s.h_characteristic = j.at("h_characteristic").get<bool>();
  }
  return s;
}

nlohmann::json to_json(const ExtensionSpec& s) {
  nlohmann::json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["H"] = to_json(s.H);
  j["K"] = to_json(s.K);
  j["flavor"] = std::string(to_string(s.flavor));
  nlohmann::json orders = nlohmann::json::object();
  for (std::size_t b = 0; b < s.orders.size(); ++b) {
    if (!s.orders[b]) continue;
    orders[s.K.generators()[b]] = {{"m", s.orders[b]->m}, {"w", s.H.format(s.orders[b]->w)}};
  }
  if (!orders.empty()) j["orders"] = orders;
  nlohmann::json conj = nlohmann::json::object();
  for (std::size_t b = 0; b < s.conjugation.size(); ++b)
    for (std::size_t a = 0; a < s.conjugation[b].size(); ++a)
      conj[s.K.generators()[b] + ":" + s.H.generators()[a]] = s.H.format(s.conjugation[b][a]);
  j["conjugation"] = conj;
  if (!s.relator_words.empty()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& w : s.relator_words) r.push_back(s.H.format(w));
    j["relator_words"] = r;
  }
  if (s.h_catalog) j["H_catalog"] = *s.h_catalog;
  if (s.k_catalog) j["K_catalog"] = *s.k_catalog;
  if (s.h_characteristic) j["h_characteristic"] = true;
  return j;
}

RationalMatrix action_matrix(const HomSpace& hom_h, const Presentation& H,
                             std::span<const Word> images) {
  const std::size_t d = hom_h.dim(), n = H.generator_count();
  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    auto e = exponent_vector(images[hom_h.free_generators()[i]], n);
    for (std::size_t j = 0; j < d; ++j) {
      Rational s = 0;
      for (std::size_t a = 0; a < n; ++a) s += Rational(e[a]) * hom_h.basis()(j, a);
      m(i, j) = s;
    }
  }
  return m;
}

RationalSubspace fixed_subspace(std::size_t dim, const std::vector<RationalMatrix>& actions) {
  RationalMatrix stacked(0, dim);
  for (const auto& a : actions) {
    for (std::size_t i = 0; i < dim; ++i) {
      RatVector row = a.row_vector(i);
      row[i] -= 1;
      stacked.append_row(row);
    }
  }
  if (stacked.rows() == 0) return RationalSubspace::whole(dim);
  RationalMatrix ns = nullspace(stacked);
  if (ns.rows() == 0) return RationalSubspace::zero(dim);
  return RationalSubspace(dim, primitive_rows(ns));
}

bool same_subspace(const RationalSubspace& a, const RationalSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  return rref(to_rational(a.basis())).R == rref(to_rational(b.basis())).R;
}

Extension::Extension(ExtensionSpec spec, std::size_t cap)
    : spec_(std::move(spec)), hom_h_(spec_.H) {
  const Presentation& H = spec_.H;
  const Presentation& K = spec_.K;
  const std::size_t na = H.generator_count(), nb = K.generator_count();

  std::set<std::string> names(H.generators().begin(), H.generators().end());
  for (const auto& b : K.generators())
    require(!names.count(b), "generator name '" + b + "' used in both H and K");
  require(spec_.conjugation.size() == nb, "conjugation table has wrong number of rows");
  for (const auto& row : spec_.conjugation)
    require(row.size() == na, "conjugation table has wrong number of columns");
  spec_.orders.resize(nb);
  require(spec_.relator_words.empty() || spec_.relator_words.size() == K.relators().size(),
          "relator_words must have one entry per K relator");

  k_oracle_ = std::make_shared<WordOracle>(K, cap);
  if (spec_.flavor == Flavor::FiniteQuotient) {
    if (!k_oracle_->is_finite()) {
      throw Error(ErrorCode::FiniteEnumerationCap,
                  "K did not enumerate to a finite group within " + std::to_string(cap) +
                      " elements");
    }
    for (std::size_t b = 0; b < nb; ++b) {
      require(spec_.orders[b].has_value(), "missing order entry for " + K.generators()[b]);
      require(spec_.orders[b]->m >= 1, "order exponent must be positive");
      Word p(static_cast<std::size_t>(spec_.orders[b]->m), Letter{static_cast<std::uint32_t>(b), 1});
      require(k_oracle_->is_trivial(p), "order entry for " + K.generators()[b] +
                                            " is not a relation of K");
    }
    if (spec_.relator_words.empty()) {
      for (const auto& r : K.relators()) {
        bool power = std::all_of(r.begin(), r.end(), [&](const Letter& l) { return l == r.front(); });
        require(power && spec_.orders[r.front().generator] &&
                    static_cast<std::int64_t>(r.size()) % spec_.orders[r.front().generator]->m == 0,
                "K relator '" + K.format(r) + "' is not a generator power; give relator_words");
      }
    }
  } else {
    require(spec_.relator_words.empty(), "relator_words only apply to finite_quotient specs");
  }

  // The conjugation images must induce an endomorphism of H's abelianization.
  for (std::size_t b = 0; b < nb; ++b) {
    for (const auto& r : H.relators()) {
      auto e = exponent_vector(substitute(r, spec_.conjugation[b]), na);
      RatVector v(e.begin(), e.end());
      for (std::size_t i = 0; i < hom_h_.dim(); ++i) {
        require(dot(hom_h_.basis().row(i), std::span<const Rational>(v)) == 0,
                "conjugation by " + K.generators()[b] + " does not respect relator '" +
                    H.format(r) + "'");
      }
    }
    RationalMatrix a = action_matrix(hom_h_, H, spec_.conjugation[b]);
    try {
      (void)inverse(a);
    } catch (const Error&) {
      throw Error(ErrorCode::NonInvertibleAction,
                  "action of " + K.generators()[b] + " on Hom(H,R) is singular");
    }
    actions_.push_back(std::move(a));
  }
  fix_ = fixed_subspace(hom_h_.dim(), actions_);

  std::vector<std::string> gnames = H.generators();
  gnames.insert(gnames.end(), K.generators().begin(), K.generators().end());
  auto nu = [&](std::uint32_t b, std::int8_t s) {
    return Letter{static_cast<std::uint32_t>(na + b), s};
  };
  std::vector<Word> rel = H.relators();
  if (spec_.flavor == Flavor::FiniteQuotient) {
    for (std::size_t b = 0; b < nb; ++b) {
      Word x(static_cast<std::size_t>(spec_.orders[b]->m), nu(static_cast<std::uint32_t>(b), 1));
      Word winv = inverse(spec_.orders[b]->w);
      x.insert(x.end(), winv.begin(), winv.end());
      rel.push_back(free_reduce(x));
    }
    for (std::size_t s = 0; s < spec_.relator_words.size(); ++s) {
      Word x;
      for (const auto& l : K.relators()[s]) x.push_back(nu(l.generator, l.sign));
      Word winv = inverse(spec_.relator_words[s]);
      x.insert(x.end(), winv.begin(), winv.end());
      rel.push_back(free_reduce(x));
    }
  } else {
    for (const auto& r : K.relators()) {
      Word x;
      for (const auto& l : r) x.push_back(nu(l.generator, l.sign));
      rel.push_back(x);
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t a = 0; a < na; ++a) {
      Word y{nu(static_cast<std::uint32_t>(b), 1), Letter{static_cast<std::uint32_t>(a), 1},
             nu(static_cast<std::uint32_t>(b), -1)};
      Word winv = inverse(spec_.conjugation[b][a]);
      y.insert(y.end(), winv.begin(), winv.end());
      rel.push_back(free_reduce(y));
    }
  }
  std::vector<Word> kept;
  for (auto& r : rel)
    if (!r.empty()) kept.push_back(std::move(r));
  g_ = Presentation(std::move(gnames), std::move(kept));
}

bool Extension::is_fixed(std::span<const Rational> y) const {
  for (const auto& a : actions_) {
    RatVector z = a.apply(y);
    if (!std::equal(z.begin(), z.end(), y.begin(), y.end())) return false;
  }
  return true;
}

std::vector<RationalMatrix> action_on_homH(const ExtensionSpec& spec) {
  return Extension(spec).action_matrices();
}

RationalSubspace fix_subspace(const ExtensionSpec& spec) { return Extension(spec).fix(); }

Presentation build_extension_presentation(const ExtensionSpec& spec) {
  return Extension(spec).presentation();
}

namespace {

void validate_on_g(const Extension& ext, const RatVector& values) {
  try {
    (void)make_character(ext.presentation(), values);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RelatorViolation) throw;
    throw Error(ErrorCode::ValidationFailure, std::string("extended character: ") + e.what());
  }
}

Character checked_fixed(const Extension& ext, const Character& phi) {
  Character h = make_character(ext.spec().H, phi.values);
  RatVector y = ext.hom_h().coordinates(h.values);
  if (!ext.is_fixed(y)) {
    throw Error(ErrorCode::NotFixed, "character is not fixed by the transversal action");
  }
  return h;
}

}  // namespace

Character extend_character_finite(const Extension& ext, const Character& phi) {
  if (ext.spec().flavor != Flavor::FiniteQuotient) {
    throw Error(ErrorCode::InvalidSpec, "extend_character_finite needs a finite_quotient spec");
  }
  Character h = checked_fixed(ext, phi);
  RatVector values = h.values;
  const std::size_t na = ext.spec().H.generator_count();
  for (const auto& o : ext.spec().orders) {
    auto e = exponent_vector(o->w, na);
    Rational s = 0;
    for (std::size_t a = 0; a < na; ++a) s += Rational(e[a]) * h.values[a];
    values.push_back(s / Rational(o->m));
  }
  validate_on_g(ext, values);
  return Character{std::move(values)};
}

SplitHomSpace hom_space_split(const Extension& ext) {
  if (ext.spec().flavor != Flavor::Split) {
    throw Error(ErrorCode::InvalidSpec, "hom_space_split needs a split spec");
  }
  SplitHomSpace out;
  out.fix = ext.fix();
  out.hom_k = abelianization(ext.spec().K);
  out.dim = out.fix.dim() + out.hom_k.rank;
  return out;
}

Character split_assemble(const Extension& ext, const Character& alpha, const Character& beta) {
  if (ext.spec().flavor != Flavor::Split) {
    throw Error(ErrorCode::InvalidSpec, "split_assemble needs a split spec");
  }
  Character a = checked_fixed(ext, alpha);
  Character b = make_character(ext.spec().K, beta.values);
  RatVector values = a.values;
  values.insert(values.end(), b.values.begin(), b.values.end());
  validate_on_g(ext, values);
  return Character{std::move(values)};
}

std::pair<Character, Character> split_project(const Extension& ext, const Character& phi) {
  Character g = make_character(ext.presentation(), phi.values);
  const std::size_t na = ext.spec().H.generator_count();
  RatVector a(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(na));
  RatVector b(g.values.begin() + static_cast<std::ptrdiff_t>(na), g.values.end());
  return {Character{std::move(a)}, Character{std::move(b)}};
}

bool transversal_invariance_check(const ExtensionSpec& spec,
                                  const std::vector<std::vector<Word>>& alternate) {
  HomSpace hom(spec.H);
  auto fix_of = [&](const std::vector<std::vector<Word>>& table) {
    std::vector<RationalMatrix> actions;
    for (const auto& row : table) actions.push_back(action_matrix(hom, spec.H, row));
    return fixed_subspace(hom.dim(), actions);
  };
  return same_subspace(fix_of(spec.conjugation), fix_of(alternate));
}

}  // namespace sok
