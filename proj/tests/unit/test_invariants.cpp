#include <doctest.h>

#include "../support/random_specs.hpp"
#include "sok/error.hpp"
#include "sok/invariants/invariants.hpp"

#include <fstream>

using namespace sok;

namespace {

ExtensionSpec load(const std::string& name) {
  std::ifstream in(std::string(SOK_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  return extension_spec_from_json(nlohmann::json::parse(in));
}

RationalRay ray(std::initializer_list<long> v) { return RationalRay::of(v); }

RationalRay random_ray(std::mt19937& rng, std::size_t dim, long b = 5) {
  for (;;) {
    IntVector v;
    for (std::size_t i = 0; i < dim; ++i) v.emplace_back(static_cast<long>(rng() % (2 * b + 1)) - b);
    if (!is_zero(std::span<const Integer>(v))) return RationalRay(std::span<const Integer>(v));
  }
}

// The displayed Omega^1(H) of BS(1,2) x BS(1,2) x F2 in (b, d, x, y):
// chi(x) = chi(y) = 0, chi(b) > 0, chi(d) > 0.
bool swap_displayed(const RationalRay& r) {
  auto v = r.direction();
  return v[2] == 0 && v[3] == 0 && v[0] > 0 && v[1] > 0;
}

}  // namespace

TEST_CASE("lookup_known examples") {
  auto f1 = lookup_known("ThompsonF", 1);
  CHECK(equivalent(SphereSet::complement(*f1.sigma),
                   SphereSet::rays(2, {ray({1, 0}), ray({-1, -1})})));
  CHECK(f1.provenance.rule == Rule::CatalogEntry);

  auto z2 = lookup_known("Z2", 1);
  CHECK(*z2.sigma == SphereSet::full(2));
  CHECK(lookup_known("Zk(2)", 1).group_id == "Z2");

  auto f2 = lookup_known("ThompsonF", 2);
  RationalSubspace pole(2, to_integer(RationalMatrix::from_rows({{0, 1}}, 2)));
  CHECK(simplify(restrict_to_subspace(*f2.omega, pole)) == SphereSet::rays(1, {ray({1})}));
  // Arc orientation: the missing arc of Sigma^2 passes through the south pole,
  // and Omega^2 is the closed arc from 90 to 135 degrees.
  auto missing = SphereSet::complement(*f2.sigma);
  CHECK(missing.contains(ray({0, -1})));
  CHECK(missing.contains(ray({1, 0})));
  CHECK(missing.contains(ray({-1, -1})));
  CHECK_FALSE(missing.contains(ray({0, 1})));
  CHECK_FALSE(missing.contains(ray({-1, 0})));
  CHECK(f2.omega->contains(ray({0, 1})));
  CHECK(f2.omega->contains(ray({-1, 1})));
  CHECK(f2.omega->contains(ray({-1, 2})));
  CHECK_FALSE(f2.omega->contains(ray({1, 1})));
  CHECK_FALSE(f2.omega->contains(ray({-2, 1})));
  CHECK(is_subset(*f2.sigma, *f1.sigma));

  auto bs = lookup_known("BS1m(2)", 1);
  CHECK(bs.dim == 1);
  CHECK(bs.sigma->contains(ray({1})));
  CHECK_FALSE(bs.sigma->contains(ray({-1})));

  CHECK(is_empty(*lookup_known("F2", 1).sigma));
  CHECK(lookup_known("FiniteGroup", 1).dim == 0);
  CHECK(lookup_known("C4", 2).dim == 0);

  try {
    (void)lookup_known("Q8", 1);
    FAIL("expected UnknownGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGroup);
  }
  try {
    (void)lookup_known("ThompsonF", 3);
    FAIL("expected UnknownDegree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownDegree);
  }
}

TEST_CASE("catalog presentations match catalog dimensions") {
  for (std::string id : {"Z3", "F2", "BS(1,2)", "ThompsonF", "C3", "Trivial", "BS(1,2)xBS(1,2)xF2",
                         "Z1xThompsonF"}) {
    CAPTURE(id);
    auto p = Catalog::builtin().presentation(id);
    REQUIRE(p);
    CHECK(HomSpace(*p).dim() == lookup_known(id, 1).dim);
  }
  auto swap_extension = load("swap.json");
  CHECK(HomSpace(swap_extension.H).dim() == 4);
}

TEST_CASE("catalog json") {
  Catalog c;
  c.load_json(nlohmann::json::parse(R"([{"id": "Mine", "degree": 1,
      "sigma": {"type": "full", "dim": 1}, "omega": {"type": "full", "dim": 1},
      "citation": "test"}])"));
  auto r = c.lookup("Mine", 1);
  CHECK(r.dim == 1);
  CHECK(r.provenance.citation == "test");
  CHECK_THROWS_AS(c.load_json(nlohmann::json::parse(R"([{"id": "X", "degree": 1, "bogus": 1}])")),
                  Error);
  CHECK(c.lookup("Z2", 1).dim == 2);
}

TEST_CASE("sigma_finite_extension examples") {
  auto klein = load("klein.json");
  auto g = sigma_finite_extension(klein, h_record(klein, 1));
  CHECK(g.dim == 1);
  CHECK(*g.sigma == SphereSet::full(1));

  auto dinf = load("dinf.json");
  auto d = sigma_finite_extension(dinf, h_record(dinf, 1));
  CHECK(d.dim == 0);
  CHECK(is_empty(*d.sigma));

  auto f = load("thompson_z2.json");
  auto s2 = sigma_finite_extension(f, h_record(f, 2));
  CHECK(*s2.sigma == SphereSet::rays(1, {ray({1})}));
  auto s1 = sigma_finite_extension(f, h_record(f, 1));
  CHECK(*s1.sigma == SphereSet::full(1));

  InvariantRecord bare = h_record(klein, 1);
  bare.sigma.reset();
  CHECK_THROWS_AS(sigma_finite_extension(klein, bare), Error);
}

TEST_CASE("omega_product examples") {
  auto h = lookup_known("BS(1,2)xBS(1,2)xF2", 1);
  CHECK(h.dim == 4);
  CHECK(h.provenance.rule == Rule::OmegaJoinProduct);
  std::mt19937 rng(7);
  int boundary = 0;
  for (int i = 0; i < 1000; ++i) {
    auto r = random_ray(rng, 4, 3);
    auto v = r.direction();
    bool on_boundary = v[2] == 0 && v[3] == 0 && (v[0] == 0 || v[1] == 0);
    if (on_boundary) {
      ++boundary;
      // The join of closed sets is closed: edge points (b > 0, d = 0) belong.
      CHECK(h.omega->contains(r) == (v[0] >= 0 && v[1] >= 0));
    } else {
      CHECK(h.omega->contains(r) == swap_displayed(r));
    }
  }
  CHECK(h.omega->contains(ray({1, 0, 0, 0})));
  CHECK_FALSE(h.omega->contains(ray({1, 1, 1, 0})));

  auto zz = omega_product(lookup_known("Z1", 1), lookup_known("Z1", 1));
  for (auto r : {ray({1, 0}), ray({0, 1}), ray({-1, 0}), ray({0, -1}), ray({1, 1}), ray({-1, 1}),
                 ray({-1, -1}), ray({1, -1})})
    CHECK(zz.omega->contains(r));
  CHECK(equivalent(*zz.omega, SphereSet::full(2)));

  auto t = omega_product(lookup_known("ThompsonF", 1), lookup_known("C2", 1));
  CHECK(t.dim == 2);
  CHECK(equivalent(*t.omega, *lookup_known("ThompsonF", 1).omega));

  CHECK_THROWS_AS(omega_product(lookup_known("Z1", 1), lookup_known("Z1", 2)), Error);

  // Sigma^1 of the product: complement = {-b} u {-d} u {b = d = 0}.
  auto expected = SphereSet::complement(SphereSet::union_of(
      {SphereSet::rays(4, {ray({-1, 0, 0, 0}), ray({0, -1, 0, 0})}),
       SphereSet::cone(4, {eq({1, 0, 0, 0}), eq({0, 1, 0, 0})})}));
  CHECK(equivalent(*h.sigma, expected));
}

TEST_CASE("omega_bounds_finite_extension examples") {
  auto f = load("thompson_z2.json");
  auto b = omega_bounds_finite_extension(f, h_record(f, 1));
  CHECK(*b.omega_lower == SphereSet::rays(1, {ray({1})}));
  CHECK(*b.omega_upper == SphereSet::full(1));
  CHECK_FALSE(b.omega);
  auto g = omega_from_sigma_record(sigma_finite_extension(f, h_record(f, 1)));
  CHECK(*g.omega == *b.omega_upper);
  CHECK(is_subset(*b.omega_lower, *g.omega));
  CHECK_FALSE(equivalent(*b.omega_lower, *g.omega));

  auto ex = load("swap.json");
  auto e = omega_bounds_finite_extension(ex, h_record(ex, 1));
  CHECK(*e.omega_lower == SphereSet::rays(2, {ray({1, 0})}));
  CHECK(equivalent(*e.omega_upper,
                   SphereSet::complement(SphereSet::rays(2, {ray({0, 1}), ray({0, -1})}))));
  auto sg = sigma_finite_extension(ex, h_record(ex, 1));
  CHECK(equivalent(*sg.sigma, *e.omega_upper));
  auto og = omega_from_sigma_record(sg);
  CHECK(equivalent(*og.omega, SphereSet::rays(2, {ray({1, 0}), ray({-1, 0})})));

  ExtensionSpec trivial;
  trivial.H = *Catalog::builtin().presentation("ThompsonF");
  trivial.K = Presentation({}, {});
  trivial.h_catalog = "ThompsonF";
  auto t = omega_bounds_finite_extension(trivial, h_record(trivial, 1));
  CHECK(equivalent(*t.omega_lower, *lookup_known("ThompsonF", 1).omega));
  CHECK(equivalent(*t.omega_upper, *lookup_known("ThompsonF", 1).sigma));
}

TEST_CASE("omega_exact_if_sufficient examples") {
  auto klein = load("klein.json");
  auto k = omega_exact_if_sufficient(klein, h_record(klein, 1));
  REQUIRE(k);
  CHECK(k->provenance.condition == 2);
  CHECK(*k->omega == SphereSet::full(1));

  ExtensionSpec f2swap;
  f2swap.H = Presentation::parse({"f1", "f2"}, {});
  f2swap.K = Presentation::parse({"t"}, {"t^2"});
  f2swap.orders = {OrderEntry{2, {}}};
  f2swap.conjugation = {{f2swap.H.word("f2"), f2swap.H.word("f1")}};
  f2swap.h_catalog = "F2";
  auto e = omega_exact_if_sufficient(f2swap, h_record(f2swap, 1));
  REQUIRE(e);
  CHECK(e->provenance.condition == 3);
  CHECK(is_empty(*e->omega));

  auto f = load("thompson_z2.json");
  CHECK_FALSE(omega_exact_if_sufficient(f, h_record(f, 1)));
  CHECK_FALSE(omega_exact_if_sufficient(f, h_record(f, 2)));

  auto dinf = load("dinf.json");
  auto d = omega_exact_if_sufficient(dinf, h_record(dinf, 1));
  REQUIRE(d);
  CHECK(d->provenance.condition == 1);
  CHECK(is_empty(*d->omega));
}

TEST_CASE("catalog omega agrees with the pi/2 rule") {
  for (std::string id : {"Z1", "Z3", "F2", "F3", "BS(1,2)", "BS(1,5)", "ThompsonF", "C2",
                         "BS(1,2)xBS(1,2)xF2", "Z1xBS(1,2)", "ThompsonFxZ1"}) {
    for (int n : {1, 2}) {
      auto r = lookup_known(id, n);
      if (!r.sigma) continue;
      CAPTURE(id);
      CAPTURE(n);
      CHECK(equivalent(omega_from_sigma(*r.sigma, r.gram), *r.omega));
    }
  }
}

TEST_CASE("derived records: monotonicity, bounds and replay") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto spec = testing::random_catalog_spec(rng);
    CAPTURE(to_json(spec).dump());
    for (int n : {1, 2}) {
      auto recH = h_record(spec, n);
      Extension ext(spec);

      InvariantRecord full = recH;
      full.sigma = SphereSet::full(recH.dim);
      if (spec.flavor == Flavor::FiniteQuotient) {
        CHECK(equivalent(*sigma_finite_extension(spec, full).sigma, SphereSet::full(ext.fix().dim())));
      }

      if (!recH.sigma) continue;
      auto b = omega_bounds_finite_extension(spec, recH);
      for (int i = 0; i < (ext.fix().dim() == 0 ? 0 : 1000); ++i) {
        auto r = random_ray(rng, ext.fix().dim());
        if (b.omega_lower->contains(r)) CHECK(b.omega_upper->contains(r));
      }
      CHECK(is_subset(*b.omega_lower, *b.omega_upper));
      CHECK(replay_matches(b));
      if (auto e = omega_exact_if_sufficient(spec, recH)) CHECK(replay_matches(*e));
      if (spec.flavor == Flavor::FiniteQuotient) {
        auto s = sigma_finite_extension(spec, recH);
        CHECK(replay_matches(s));
        auto o = omega_from_sigma_record(s);
        CHECK(replay_matches(o));
        CHECK(is_subset(*b.omega_lower, *o.omega));
        CHECK(is_subset(*o.omega, *b.omega_upper));
        auto j = to_json(o);
        CHECK(to_json(invariant_record_from_json(j)) == j);
      }
    }
  }
}
