#include <doctest.h>

#include "../support/random_specs.hpp"
#include "sok/error.hpp"
#include "sok/extension/extension.hpp"

#include <fstream>

using namespace sok;

namespace {

ExtensionSpec load(const std::string& name) {
  std::ifstream in(std::string(SOK_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  return extension_spec_from_json(nlohmann::json::parse(in));
}

RatVector rv(std::initializer_list<long> v) {
  RatVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

RationalMatrix rm(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto row : rows) r.emplace_back(rv(row));
  return RationalMatrix::from_rows(r, r.front().size());
}

IntegerMatrix im(std::initializer_list<std::initializer_list<long>> rows) {
  return to_integer(rm(rows));
}

std::size_t order_of(const Presentation& p) { return FiniteGroup::enumerate(p).order(); }

}  // namespace

TEST_CASE("coset enumeration orders") {
  CHECK(order_of(Presentation::parse({"a"}, {"a^2"})) == 2);
  CHECK(order_of(Presentation::parse({"a"}, {"a"})) == 1);
  CHECK(order_of(Presentation::parse({"a", "b"}, {"a^2", "b^3", "a b a b"})) == 6);
  CHECK(order_of(Presentation::parse({"a", "b"}, {"a^4", "b^2", "a b a b"})) == 8);
  CHECK(order_of(Presentation::parse({"a", "b"}, {"a^2", "b^2", "a b a^-1 b^-1"})) == 4);
  CHECK(order_of(Presentation::parse({"a", "b"}, {"a^2", "b^3", "a b a b a b a b a b"})) == 60);
  CHECK(order_of(Presentation({}, {})) == 1);
  CHECK(order_of(Presentation::parse({"a", "b"}, {"a b^-1", "b^7"})) == 7);

  auto g = FiniteGroup::enumerate(Presentation::parse({"a", "b"}, {"a^2", "b^3", "a b a b"}));
  auto p = Presentation::parse({"a", "b"}, {});
  CHECK(g.is_identity(p.word("a b a b")));
  CHECK(g.is_identity(p.word("b^3")));
  CHECK_FALSE(g.is_identity(p.word("a b")));

  CHECK_THROWS_AS(FiniteGroup::enumerate(Presentation::parse({"a"}, {"a^20000"})), Error);
  CHECK_THROWS_AS(FiniteGroup::enumerate(Presentation::parse({"a", "b"}, {})), Error);
  CHECK_THROWS_AS(FiniteGroup::enumerate(Presentation::parse({"a", "b"}, {"a b a^-1 b^-1"})),
                  Error);
}

TEST_CASE("word oracle") {
  WordOracle free2(Presentation::parse({"a", "b"}, {}));
  CHECK_FALSE(free2.is_finite());
  CHECK(free2.is_trivial(Word{}));
  auto p = Presentation::parse({"a", "b"}, {});
  CHECK(free2.is_trivial(p.word("a b b^-1 a^-1")));
  CHECK_FALSE(free2.is_trivial(p.word("a b a^-1 b^-1")));

  WordOracle z2(Presentation::parse({"a", "b"}, {"a b a^-1 b^-1"}));
  CHECK_FALSE(z2.is_trivial(p.word("a")));
  CHECK_THROWS_AS((void)z2.is_trivial(p.word("a b a^-1 b^-1")), Error);
}

TEST_CASE("action_on_homH examples") {
  auto klein = action_on_homH(load("klein.json"));
  REQUIRE(klein.size() == 1);
  CHECK(klein[0] == rm({{-1, 0}, {0, 1}}));

  auto dinf = action_on_homH(load("dinf.json"));
  REQUIRE(dinf.size() == 1);
  CHECK(dinf[0] == rm({{-1}}));

  auto swap_extension = action_on_homH(load("swap.json"));
  REQUIRE(swap_extension.size() == 1);
  CHECK(swap_extension[0] == rm({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));

  auto f = action_on_homH(load("thompson_z2.json"));
  CHECK(f[0] == rm({{-1, 0}, {-1, 1}}));
}

TEST_CASE("fix_subspace examples") {
  auto klein = fix_subspace(load("klein.json"));
  CHECK(klein.dim() == 1);
  CHECK(klein.basis() == im({{0, 1}}));

  CHECK(fix_subspace(load("dinf.json")).dim() == 0);
  CHECK(fix_subspace(load("dinf_split.json")).dim() == 0);

  auto swap_extension = fix_subspace(load("swap.json"));
  CHECK(swap_extension.basis() == im({{1, 1, 0, 0}, {0, 0, 1, 1}}));

  auto f = fix_subspace(load("thompson_z2.json"));
  CHECK(f.basis() == im({{0, 1}}));
}

TEST_CASE("build_extension_presentation examples") {
  auto g = build_extension_presentation(load("dinf.json"));
  CHECK(g.generators() == std::vector<std::string>{"a", "t"});
  REQUIRE(g.relators().size() == 2);
  CHECK(g.relators()[0] == g.word("t^2"));
  CHECK(g.relators()[1] == g.word("t a t^-1 a"));
  auto ab = abelianization(g);
  CHECK(ab.rank == 0);
  CHECK(ab.torsion == std::vector<Integer>{2, 2});

  auto f = load("thompson_z2.json");
  auto gf = build_extension_presentation(f);
  CHECK(gf.generators() == std::vector<std::string>{"x0", "x1", "t"});
  std::vector<std::string> rels;
  for (const auto& r : gf.relators()) rels.push_back(gf.format(r));
  REQUIRE(rels.size() == 5);
  CHECK(gf.relators()[2] == gf.word("t^2"));
  CHECK(rels[3] == "t x0 t^-1 x0");
  CHECK(rels[4] == gf.format(gf.word("t x1 t^-1 x0^2 x1^-1 x0^-1")));
  CHECK(abelianization(gf).rank == 1);

  ExtensionSpec trivial;
  trivial.H = Presentation::parse({"a", "b"}, {"a b a^-1 b^-1"});
  trivial.K = Presentation({}, {});
  CHECK(build_extension_presentation(trivial) == trivial.H);
}

TEST_CASE("extend_character_finite examples") {
  Extension klein(load("klein.json"));
  auto phi = extend_character_finite(klein, Character{rv({0, 1})});
  CHECK(phi.values == RatVector{0, 1, Rational(1, 2)});
  CHECK_THROWS_AS(extend_character_finite(klein, Character{rv({1, 0})}), Error);
  try {
    (void)extend_character_finite(klein, Character{rv({1, 1})});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFixed);
  }

  Extension dinf(load("dinf.json"));
  CHECK(extend_character_finite(dinf, Character{rv({0})}).values == rv({0, 0}));

  Extension f(load("thompson_z2.json"));
  CHECK(extend_character_finite(f, Character{rv({0, 1})}).values == rv({0, 1, 0}));

  // [p, q] = c cannot hold once phi(c) != 0 and p, q have trivial images.
  ExtensionSpec bad;
  bad.H = Presentation::parse({"c"}, {});
  bad.K = Presentation::parse({"p", "q"}, {"p^2", "q^2", "p q p^-1 q^-1"});
  bad.orders = {OrderEntry{2, {}}, OrderEntry{2, {}}};
  bad.relator_words = {{}, {}, bad.H.word("c")};
  bad.conjugation = {{bad.H.word("c")}, {bad.H.word("c")}};
  Extension ext(bad);
  try {
    (void)extend_character_finite(ext, Character{rv({1})});
    FAIL("expected ValidationFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationFailure);
  }
  Extension comm(load("dinf_commutator.json"));
  CHECK(comm.fix().dim() == 0);
  CHECK(abelianization(comm.presentation()).rank == 0);
}

TEST_CASE("hom_space_split examples") {
  ExtensionSpec prod;
  prod.H = Presentation::parse({"a", "b"}, {"a b a^-1 b^-1"});
  prod.K = Presentation::parse({"t"}, {});
  prod.flavor = Flavor::Split;
  prod.conjugation = {{prod.H.word("a"), prod.H.word("b")}};
  Extension ext(prod);
  auto s = hom_space_split(ext);
  CHECK(s.fix.dim() == 2);
  CHECK(s.hom_k.rank == 1);
  CHECK(s.dim == 3);
  auto phi = split_assemble(ext, Character{rv({1, 2})}, Character{rv({3})});
  CHECK(phi.values == rv({1, 2, 3}));
  auto [a, b] = split_project(ext, phi);
  CHECK(a.values == rv({1, 2}));
  CHECK(b.values == rv({3}));

  Extension dinf(load("dinf_split.json"));
  auto d = hom_space_split(dinf);
  CHECK(d.dim == 0);
  CHECK(abelianization(dinf.presentation()).rank == 0);

  Extension swap_extension(load("swap_split.json"));
  auto e = hom_space_split(swap_extension);
  CHECK(e.fix.dim() == 2);
  CHECK(e.hom_k.rank == 0);
  CHECK(e.dim == 2);
  CHECK(abelianization(swap_extension.presentation()).rank == 2);

  try {
    (void)split_assemble(dinf, Character{rv({1})}, Character{rv({0})});
    FAIL("expected NotFixed");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotFixed);
  }
}

TEST_CASE("transversal_invariance_check examples") {
  auto klein = load("klein.json");
  const auto& H = klein.H;
  // nu2(beta) = alpha beta: alpha -> alpha (alpha^-1) alpha^-1, delta -> alpha delta alpha^-1.
  std::vector<std::vector<Word>> nu2{{H.word("alpha alpha^-1 alpha^-1"),
                                      H.word("alpha delta alpha^-1")}};
  CHECK(transversal_invariance_check(klein, nu2));
  CHECK(transversal_invariance_check(klein, klein.conjugation));
  std::vector<std::vector<Word>> corrupted{{H.word("alpha"), H.word("delta")}};
  CHECK_FALSE(transversal_invariance_check(klein, corrupted));
}

TEST_CASE("spec validation") {
  auto klein = load("klein.json");
  SUBCASE("json round trip") {
    CHECK(to_json(extension_spec_from_json(to_json(klein))) == to_json(klein));
  }
  SUBCASE("unknown key rejected") {
    auto j = to_json(klein);
    j["extra"] = 1;
    CHECK_THROWS_AS(extension_spec_from_json(j), Error);
  }
  SUBCASE("incomplete conjugation table") {
    auto j = to_json(klein);
    j["conjugation"].erase("beta:delta");
    CHECK_THROWS_AS(extension_spec_from_json(j), Error);
  }
  SUBCASE("order that is not a relation of K") {
    auto s = klein;
    s.orders[0]->m = 3;
    CHECK_THROWS_AS(Extension{s}, Error);
  }
  SUBCASE("infinite K with finite_quotient flavor") {
    auto s = klein;
    s.K = Presentation::parse({"beta"}, {});
    try {
      Extension e(s);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FiniteEnumerationCap);
    }
  }
  SUBCASE("singular action") {
    auto s = klein;
    s.flavor = Flavor::Split;
    s.orders.clear();
    s.K = Presentation::parse({"beta"}, {});
    s.conjugation = {{s.H.word("alpha delta"), s.H.word("alpha delta")}};
    try {
      Extension e(s);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonInvertibleAction);
    }
  }
  SUBCASE("shared generator names") {
    auto s = klein;
    s.K = Presentation::parse({"alpha"}, {"alpha^2"});
    CHECK_THROWS_AS(Extension{s}, Error);
  }
}

TEST_CASE("extension properties on random specs") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 120; ++trial) {
    auto spec = testing::random_spec(rng);
    CAPTURE(to_json(spec).dump());
    Extension ext(spec);
    const auto& fix = ext.fix();
    for (std::size_t i = 0; i < fix.dim(); ++i) {
      RatVector y = to_rational(fix.basis().row(i));
      CHECK(ext.is_fixed(y));
      for (const auto& a : ext.action_matrices()) CHECK(a.apply(y) == y);
    }
    auto ab = abelianization(ext.presentation());
    const auto& hom = ext.hom_h();
    if (spec.flavor == Flavor::FiniteQuotient) {
      CHECK(ab.rank == fix.dim());
      for (std::size_t i = 0; i < fix.dim(); ++i) {
        RatVector h = hom.values(to_rational(fix.basis().row(i)));
        auto g = extend_character_finite(ext, Character{h});
        RatVector back(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(h.size()));
        CHECK(back == h);
      }
    } else {
      auto s = hom_space_split(ext);
      CHECK(ab.rank == s.dim);
      const std::size_t nk = spec.K.generator_count();
      HomSpace homk(spec.K);
      auto basis_pairs = [&] {
        std::vector<std::pair<RatVector, RatVector>> out;
        for (std::size_t i = 0; i < fix.dim(); ++i)
          out.emplace_back(hom.values(to_rational(fix.basis().row(i))), RatVector(nk, Rational(0)));
        for (std::size_t j = 0; j < homk.dim(); ++j)
          out.emplace_back(RatVector(spec.H.generator_count(), Rational(0)),
                           homk.basis().row_vector(j));
        return out;
      }();
      CHECK(basis_pairs.size() == s.dim);
      for (const auto& [alpha, beta] : basis_pairs) {
        auto phi = split_assemble(ext, Character{alpha}, Character{beta});
        auto [a, b] = split_project(ext, phi);
        CHECK(a.values == alpha);
        CHECK(b.values == beta);
      }
      HomSpace homg(ext.presentation());
      for (std::size_t k = 0; k < homg.dim(); ++k) {
        RatVector phi = homg.basis().row_vector(k);
        auto [a, b] = split_project(ext, Character{phi});
        CHECK(split_assemble(ext, a, b).values == phi);
      }
    }
  }
}
