#include "sok/error.hpp"
#include "sok/invariants/invariants.hpp"
#include "sok/probe/probe.hpp"

#include <boost/container_hash/hash.hpp>

#include <charconv>
#include <limits>
#include <regex>

namespace sok {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  return boost::hash_range(e.begin(), e.end());
}

RatVector GroupModel::embed_character(std::span<const Rational> chi) const {
  if (chi.size() != hom_dim())
    throw Error(ErrorCode::DimensionMismatch, "character has " + std::to_string(chi.size()) +
                                                  " coordinates, model '" + name() + "' expects " +
                                                  std::to_string(hom_dim()));
  return {chi.begin(), chi.end()};
}

RatVector GroupModel::generator_height(std::size_t g) const {
  return height(multiply(identity(), Letter{static_cast<std::uint32_t>(g), 1}));
}

namespace {

std::vector<std::string> numbered(const std::string& stem, std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::int64_t checked(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::Overflow, "normal form coordinate exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

std::string power_token(const std::string& name, std::int64_t e) {
  if (e == 1) return name;
  return name + "^" + std::to_string(e);
}

class FreeAbelianModel final : public GroupModel {
 public:
  explicit FreeAbelianModel(std::size_t k) : names_(numbered("z", k)) {}
  std::string name() const override { return "Z" + std::to_string(names_.size()); }
  std::vector<std::string> generator_names() const override { return names_; }
  Element identity() const override { return Element(names_.size(), 0); }
  Element multiply(const Element& e, Letter l) const override {
    Element r = e;
    r.at(l.generator) += l.sign;
    return r;
  }
  std::size_t hom_dim() const override { return names_.size(); }
  RatVector height(const Element& e) const override {
    RatVector h;
    for (auto v : e) h.emplace_back(v);
    return h;
  }
  std::string format(const Element& e) const override {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += " ";
      out += power_token(names_[i], e[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::vector<std::string> names_;
};

// Reduced words; letter codes are +-(generator + 1).
class FreeModel final : public GroupModel {
 public:
  explicit FreeModel(std::size_t k) : names_(numbered("f", k)) {}
  std::string name() const override { return "F" + std::to_string(names_.size()); }
  std::vector<std::string> generator_names() const override { return names_; }
  Element identity() const override { return {}; }
  Element multiply(const Element& e, Letter l) const override {
    if (l.generator >= names_.size()) throw Error(ErrorCode::ParseError, "generator out of range");
    std::int64_t code = static_cast<std::int64_t>(l.generator + 1) * l.sign;
    Element r = e;
    if (!r.empty() && r.back() == -code)
      r.pop_back();
    else
      r.push_back(code);
    return r;
  }
  std::size_t hom_dim() const override { return names_.size(); }
  RatVector height(const Element& e) const override {
    RatVector h(names_.size(), Rational(0));
    for (auto c : e) h[static_cast<std::size_t>(std::abs(c)) - 1] += c > 0 ? 1 : -1;
    return h;
  }
  std::string format(const Element& e) const override {
    std::string out;
    std::size_t i = 0;
    while (i < e.size()) {
      std::size_t j = i;
      while (j < e.size() && e[j] == e[i]) ++j;
      if (!out.empty()) out += " ";
      auto g = static_cast<std::size_t>(std::abs(e[i])) - 1;
      out += power_token(names_[g], static_cast<std::int64_t>(j - i) * (e[i] > 0 ? 1 : -1));
      i = j;
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::vector<std::string> names_;
};

// Element (k, num, e) is the affine map t -> m^k t + num / m^e with e >= 0
// minimal. Right multiplication composes matrices [[m^k, x], [0, 1]].
class BaumslagSolitarModel final : public GroupModel {
 public:
  explicit BaumslagSolitarModel(std::int64_t m) : m_(m) {
    if (m < 2) throw Error(ErrorCode::UnknownGroup, "BS(1,m) needs m >= 2");
  }
  std::string name() const override { return "BS(1," + std::to_string(m_) + ")"; }
  std::vector<std::string> generator_names() const override { return {"a", "b"}; }
  Element identity() const override { return {0, 0, 0}; }
  Element multiply(const Element& el, Letter l) const override {
    std::int64_t k = el[0], num = el[1], e = el[2];
    if (l.generator == 1) return {k - l.sign, num, e};
    if (l.generator != 0) throw Error(ErrorCode::ParseError, "generator out of range");
    // x + sign * m^k with x = num / m^e, over the common denominator m^E.
    std::int64_t E = std::max<std::int64_t>(e, -k);
    Integer n = Integer(num) * pow(E - e) + Integer(l.sign) * pow(E + k);
    while (E > 0 && n % m_ == 0) {
      n /= m_;
      --E;
    }
    return {k, checked(n), E};
  }
  std::size_t hom_dim() const override { return 1; }
  RatVector height(const Element& e) const override { return {Rational(-e[0])}; }
  /// b^p a^q b^-r with p = max(e, -k), q = x m^p, r = k + p.
  std::string format(const Element& el) const override {
    std::int64_t k = el[0], e = el[2];
    std::int64_t p = std::max<std::int64_t>(e, -k);
    Integer q = Integer(el[1]) * pow(p - e);
    std::int64_t r = k + p;
    std::string out;
    auto add = [&](const std::string& t) {
      if (!out.empty()) out += " ";
      out += t;
    };
    if (p != 0) add(power_token("b", p));
    if (q != 0) add(q == 1 ? std::string("a") : "a^" + q.str());
    if (r != 0) add(power_token("b", -r));
    return out.empty() ? "1" : out;
  }

 private:
  Integer pow(std::int64_t e) const {
    Integer r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= m_;
    return r;
  }
  std::int64_t m_;
};

// Concatenated factor normal forms, each prefixed by its length.
class DirectProductModel final : public GroupModel {
 public:
  explicit DirectProductModel(std::vector<ModelPtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorCode::InvalidSpec, "direct product needs a factor");
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      for (const auto& n : factors_[f]->generator_names()) {
        std::string nm = n;
        if (std::find(names_.begin(), names_.end(), nm) != names_.end()) nm += "_" + std::to_string(f + 1);
        names_.push_back(nm);
        owner_.emplace_back(f, static_cast<std::uint32_t>(owner_.size() - first_gen(f)));
      }
      first_.push_back(names_.size());
    }
  }
  std::string name() const override {
    std::string out;
    for (const auto& f : factors_) out += (out.empty() ? "" : "x") + f->name();
    return out;
  }
  std::vector<std::string> generator_names() const override { return names_; }
  Element identity() const override {
    Element r;
    for (const auto& f : factors_) {
      auto id = f->identity();
      r.push_back(static_cast<std::int64_t>(id.size()));
      r.insert(r.end(), id.begin(), id.end());
    }
    return r;
  }
  Element multiply(const Element& e, Letter l) const override {
    if (l.generator >= owner_.size()) throw Error(ErrorCode::ParseError, "generator out of range");
    auto parts = split(e);
    auto [f, g] = owner_[l.generator];
    parts[f] = factors_[f]->multiply(parts[f], Letter{g, l.sign});
    return join(parts);
  }
  std::size_t hom_dim() const override {
    std::size_t d = 0;
    for (const auto& f : factors_) d += f->hom_dim();
    return d;
  }
  RatVector height(const Element& e) const override {
    RatVector h;
    auto parts = split(e);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      auto hf = factors_[f]->height(parts[f]);
      h.insert(h.end(), hf.begin(), hf.end());
    }
    return h;
  }
  std::string format(const Element& e) const override {
    auto parts = split(e);
    std::string out;
    for (std::size_t f = 0; f < factors_.size(); ++f) out += (f ? ", " : "(") + factors_[f]->format(parts[f]);
    return out + ")";
  }

 private:
  std::size_t first_gen(std::size_t f) const { return f == 0 ? 0 : first_[f - 1]; }
  std::vector<Element> split(const Element& e) const {
    std::vector<Element> parts;
    std::size_t i = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      auto len = static_cast<std::size_t>(e.at(i++));
      parts.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(i),
                         e.begin() + static_cast<std::ptrdiff_t>(i + len));
      i += len;
    }
    return parts;
  }
  static Element join(const std::vector<Element>& parts) {
    Element r;
    for (const auto& p : parts) {
      r.push_back(static_cast<std::int64_t>(p.size()));
      r.insert(r.end(), p.begin(), p.end());
    }
    return r;
  }

  std::vector<ModelPtr> factors_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::uint32_t>> owner_;
  std::vector<std::size_t> first_;
};

// Element [k, h...] stands for h * nu(k), k an element index of the finite
// quotient. Heights are projected orthogonally onto Fix.
class ExtensionModel final : public GroupModel {
 public:
  ExtensionModel(const Extension& ext, ModelPtr h) : h_(std::move(h)) {
    const auto& spec = ext.spec();
    if (h_->generator_count() != spec.H.generator_count())
      throw Error(ErrorCode::DimensionMismatch, "H model and extension spec disagree on generators");
    if (h_->hom_dim() != ext.hom_h().dim())
      throw Error(ErrorCode::DimensionMismatch, "H model and extension spec disagree on Hom(H,R)");
    const FiniteGroup* kg = ext.k_oracle().finite();
    if (!kg) throw Error(ErrorCode::UnsupportedForm, "extension models need a finite quotient K");
    k_ = *kg;
    name_ = spec.name.empty() ? "G" : spec.name;
    nh_ = spec.H.generator_count();
    nk_ = spec.K.generator_count();
    names_ = spec.H.generators();
    names_.insert(names_.end(), spec.K.generators().begin(), spec.K.generators().end());
    k_names_ = spec.K.generators();
    split_ = spec.flavor == Flavor::Split;

    const auto& basis = ext.hom_h().basis();
    auto height_of = [&](std::span<const Letter> w) {
      auto ex = exponent_vector(w, nh_);
      RatVector out(basis.rows(), Rational(0));
      for (std::size_t i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < nh_; ++j) out[i] += basis(i, j) * Rational(ex[j]);
      return out;
    };

    fix_ = ext.fix();
    auto B = to_rational(fix_.basis());
    const std::size_t m = ext.hom_h().dim();
    if (fix_.dim() == 0) {
      proj_ = RationalMatrix(m, m);
    } else {
      auto Bt = B.transpose();
      proj_ = Bt * inverse(B * Bt) * B;
    }

    // nu(k) words by breadth-first search over positive K letters.
    const std::size_t order = k_.order();
    std::vector<bool> seen(order, false);
    psi_.assign(order, {});
    k_word_.assign(order, {});
    power_.assign(order, 0);
    seen[0] = true;
    for (std::size_t a = 0; a < nh_; ++a) psi_[0].push_back({Letter{static_cast<std::uint32_t>(a), 1}});
    std::vector<std::size_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t k = queue[qi];
      for (std::uint32_t b = 0; b < nk_; ++b) {
        std::size_t k2 = k_.multiply(k, Letter{b, 1});
        if (seen[k2]) continue;
        seen[k2] = true;
        for (std::size_t a = 0; a < nh_; ++a)
          psi_[k2].push_back(free_reduce(substitute(spec.conjugation[b][a], psi_[k])));
        k_word_[k2] = k_word_[k];
        k_word_[k2].push_back(Letter{b, 1});
        power_[k2] = power_[k] + 1;
        queue.push_back(k2);
      }
    }

    eta_ = RatVector(m, Rational(0));
    if (!split_) {
      if (nk_ != 1 || !spec.orders[0] || static_cast<std::size_t>(spec.orders[0]->m) != order)
        throw Error(ErrorCode::UnsupportedForm,
                    "finite-quotient extension models need K cyclic with nu(b)^|K| = w given");
      wrap_ = spec.orders[0]->w;
      auto hw = proj_.apply(height_of(wrap_));
      for (std::size_t i = 0; i < m; ++i) eta_[i] = hw[i] / Rational(static_cast<long>(order));
    }
  }

  std::string name() const override { return name_; }
  std::vector<std::string> generator_names() const override { return names_; }
  Element identity() const override {
    Element r{0};
    auto id = h_->identity();
    r.insert(r.end(), id.begin(), id.end());
    return r;
  }
  Element multiply(const Element& e, Letter l) const override {
    auto k = static_cast<std::size_t>(e.at(0));
    Element h(e.begin() + 1, e.end());
    if (l.generator < nh_) {
      const Word& w = psi_[k][l.generator];
      if (l.sign > 0)
        for (auto x : w) h = h_->multiply(h, x);
      else
        for (auto it = w.rbegin(); it != w.rend(); ++it) h = h_->multiply(h, it->inverse());
      return pack(k, h);
    }
    Letter kl{l.generator - static_cast<std::uint32_t>(nh_), l.sign};
    if (kl.generator >= nk_) throw Error(ErrorCode::ParseError, "generator out of range");
    std::size_t k2 = k_.multiply(k, kl);
    if (!split_) {
      const std::size_t order = k_.order();
      if (l.sign > 0 && power_[k] + 1 == order)
        for (auto x : wrap_) h = h_->multiply(h, x);
      if (l.sign < 0 && power_[k] == 0)
        for (auto it = wrap_.rbegin(); it != wrap_.rend(); ++it) h = h_->multiply(h, it->inverse());
    }
    return pack(k2, h);
  }
  std::size_t hom_dim() const override { return proj_.rows(); }
  RatVector height(const Element& e) const override {
    auto k = static_cast<std::size_t>(e.at(0));
    Element h(e.begin() + 1, e.end());
    auto v = proj_.apply(h_->height(h));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += eta_[i] * Rational(static_cast<long>(power_[k]));
    return v;
  }
  std::string format(const Element& e) const override {
    auto k = static_cast<std::size_t>(e.at(0));
    Element h(e.begin() + 1, e.end());
    std::string out = h_->format(h);
    if (k == 0) return out;
    return out + " * nu(" + format_word(k_word_[k], k_names_) + ")";
  }
  std::size_t character_dim() const override { return fix_.dim(); }
  RatVector embed_character(std::span<const Rational> chi) const override {
    if (chi.size() != fix_.dim())
      throw Error(ErrorCode::DimensionMismatch, "character has " + std::to_string(chi.size()) +
                                                    " Fix coordinates, expected " + std::to_string(fix_.dim()));
    return fix_.embed(chi);
  }

 private:
  static Element pack(std::size_t k, const Element& h) {
    Element r{static_cast<std::int64_t>(k)};
    r.insert(r.end(), h.begin(), h.end());
    return r;
  }

  ModelPtr h_;
  FiniteGroup k_;
  std::string name_;
  std::size_t nh_ = 0, nk_ = 0;
  std::vector<std::string> names_, k_names_;
  bool split_ = false;
  RationalSubspace fix_;
  RationalMatrix proj_;
  std::vector<std::vector<Word>> psi_;  // [k][a] = nu(k) a nu(k)^-1 as a word in H
  std::vector<Word> k_word_;
  std::vector<std::size_t> power_;
  Word wrap_;
  RatVector eta_;
};

ModelPtr atomic_model(const std::string& id) {
  static const std::regex bs(R"(BS\(1,(\d+)\))");
  std::smatch m;
  auto count = [](const std::string& s) -> std::optional<long> {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 0) return std::nullopt;
    return v;
  };
  if (id == "Trivial") return free_abelian_model(0);
  if (std::regex_match(id, m, bs)) {
    auto v = count(m[1].str());
    if (v && *v >= 2) return baumslag_solitar_model(*v);
  } else if (id.size() >= 2 && (id[0] == 'Z' || id[0] == 'F')) {
    if (auto v = count(id.substr(1))) {
      if (id[0] == 'Z' || *v <= 1) return free_abelian_model(static_cast<std::size_t>(*v));
      return free_model(static_cast<std::size_t>(*v));
    }
  }
  if (id == "ThompsonF" || (!id.empty() && id[0] == 'C'))
    throw Error(ErrorCode::UnsupportedForm, "no normal form model for '" + id + "'");
  throw Error(ErrorCode::UnknownGroup, "unknown group '" + id + "'");
}

}  // namespace

ModelPtr free_abelian_model(std::size_t k) { return std::make_shared<FreeAbelianModel>(k); }
ModelPtr free_model(std::size_t k) { return std::make_shared<FreeModel>(k); }
ModelPtr baumslag_solitar_model(std::int64_t m) { return std::make_shared<BaumslagSolitarModel>(m); }
ModelPtr direct_product_model(std::vector<ModelPtr> factors) {
  if (factors.size() == 1) return factors.front();
  return std::make_shared<DirectProductModel>(std::move(factors));
}
ModelPtr extension_model(const Extension& ext, ModelPtr h_model) {
  return std::make_shared<ExtensionModel>(ext, std::move(h_model));
}

ModelPtr model_for_catalog_id(std::string_view id) {
  std::vector<ModelPtr> parts;
  for (const auto& f : product_factors(canonical_group_id(id))) parts.push_back(atomic_model(f));
  return direct_product_model(std::move(parts));
}

}  // namespace sok
