#include <doctest.h>

#include "../support/random_specs.hpp"
#include "sok/error.hpp"
#include "sok/rinfty/rinfty.hpp"

#include <fstream>
#include <set>

using namespace sok;

namespace {

ExtensionSpec load(const std::string& name) {
  std::ifstream in(std::string(SOK_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  return extension_spec_from_json(nlohmann::json::parse(in));
}

IntegerMatrix im(std::initializer_list<std::initializer_list<long>> rows) {
  IntegerMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (auto r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

// Orbits of h -> h + k - M^T k on (Z/B)^m, B a multiple of |det(M - I)|.
long brute_force_orbits(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  IntegerMatrix d = m.transpose();
  for (std::size_t i = 0; i < n; ++i) d(i, i) -= 1;
  long det = static_cast<long>(determinant(d));
  long b = std::abs(det);
  long size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= b;
  auto mod = [&](long x) { return ((x % b) + b) % b; };
  std::vector<int> seen(static_cast<std::size_t>(size), 0);
  long orbits = 0;
  for (long start = 0; start < size; ++start) {
    if (seen[start]) continue;
    ++orbits;
    std::vector<long> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      long cur = stack.back();
      stack.pop_back();
      std::vector<long> h(n);
      for (std::size_t i = 0, c = cur; i < n; ++i, c /= b) h[i] = static_cast<long>(c % b);
      for (std::size_t k = 0; k < n; ++k) {
        for (int s : {1, -1}) {
          long next = 0, scale = 1;
          for (std::size_t i = 0; i < n; ++i) {
            // k-th unit vector: h + e_k - M^T e_k = h - (M^T - I) e_k.
            long v = mod(h[i] - s * static_cast<long>(d(i, k)));
            next += v * scale;
            scale *= b;
          }
          if (!seen[next]) {
            seen[next] = 1;
            stack.push_back(next);
          }
        }
      }
    }
  }
  return orbits;
}

}  // namespace

TEST_CASE("reidemeister_abelian examples") {
  CHECK_FALSE(reidemeister_abelian(im({{1}})));
  CHECK(*reidemeister_abelian(im({{-1}})) == 2);
  CHECK(*reidemeister_abelian(im({{2}})) == 1);
  CHECK(brute_force_orbits(im({{-1}})) == 2);
  CHECK(brute_force_orbits(im({{2}})) == 1);
}

TEST_CASE("reidemeister_abelian agrees with brute force") {
  for (long a = -3; a <= 3; ++a) {
    if (a == 1) continue;
    CHECK(*reidemeister_abelian(im({{a}})) == brute_force_orbits(im({{a}})));
  }
  int checked = 0;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          auto m = im({{a, b}, {c, d}});
          auto r = reidemeister_abelian(m);
          if (!r) continue;
          ++checked;
          REQUIRE(*r == brute_force_orbits(m));
        }
  CHECK(checked > 1500);
}

TEST_CASE("quotient rule consistency on block-triangular matrices") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    long a = static_cast<long>(rng() % 7) - 3, b = static_cast<long>(rng() % 7) - 3;
    long c = i % 2 ? 1 : static_cast<long>(rng() % 7) - 3;
    auto m = im({{a, b}, {0, c}});
    if (!reidemeister_abelian(im({{c}}))) CHECK_FALSE(reidemeister_abelian(m));
  }
}

TEST_CASE("rinfty_single_point examples") {
  auto bs = rinfty_single_point(lookup_known("BS(1,2)", 1));
  REQUIRE(bs);
  CHECK(bs->verdict == Verdict::RInfinityForGroup);
  CHECK(*bs->witness == RationalRay::of({1}));
  CHECK_FALSE(rinfty_single_point(lookup_known("Z1", 1)));

  auto f = load("thompson_z2.json");
  auto g2 = omega_from_sigma_record(sigma_finite_extension(f, h_record(f, 2)));
  auto c = rinfty_single_point(g2);
  REQUIRE(c);
  CHECK(c->verdict == Verdict::RInfinityForGroup);
  auto g1 = omega_from_sigma_record(sigma_finite_extension(f, h_record(f, 1)));
  CHECK(count_rational_points(*g1.omega).kind == PointCount::Kind::TwoAntipodal);
  CHECK_FALSE(rinfty_single_point(g1));

  auto w = rinfty_single_point(lookup_known("BS(1,2)xF2", 1));
  REQUIRE(w);
  CHECK(*w->witness == RationalRay::of({1, 0, 0}));
}

TEST_CASE("rinfty_finite_ext examples") {
  auto ex = load("swap.json");
  auto c = rinfty_finite_ext(ex, h_record(ex, 1), 1);
  REQUIRE(c);
  CHECK(c->rule == RinftyRule::FiniteExtRationalPoint);
  CHECK(c->verdict == Verdict::RInfinityForAutomorphism);
  CHECK(*c->witness == RationalRay::of({1, 0}));

  auto f = load("thompson_z2.json");
  for (int n : {1, 2}) {
    auto t = rinfty_finite_ext(f, h_record(f, n), n);
    REQUIRE(t);
    CHECK(*t->witness == RationalRay::of({1}));
    auto round = rinfty_certificate_from_json(to_json(*t));
    CHECK(to_json(round) == to_json(*t));
  }
  f.h_characteristic = true;
  CHECK(rinfty_finite_ext(f, h_record(f, 1), 1)->verdict == Verdict::RInfinityForGroup);

  auto klein = load("klein.json");
  CHECK_FALSE(rinfty_finite_ext(klein, h_record(klein, 1), 1));
  CHECK_THROWS_AS(rinfty_finite_ext(klein, h_record(klein, 1), 2), Error);
}

TEST_CASE("rinfty_split_ext examples") {
  // K = BS(1,2) acting trivially on H = F2.
  ExtensionSpec s;
  s.H = Presentation::parse({"f1", "f2"}, {});
  s.K = Presentation::parse({"a", "b"}, {"b^-1 a b a^-2"});
  s.flavor = Flavor::Split;
  s.conjugation = {{s.H.word("f1"), s.H.word("f2")}, {s.H.word("f1"), s.H.word("f2")}};
  auto c = rinfty_split_ext(s, lookup_known("F2", 1), lookup_known("BS(1,2)", 1), 1);
  REQUIRE(c);
  CHECK(c->details["branch"] == "K");
  CHECK(*c->witness == RationalRay::of({0, 0, 1}));
  REQUIRE(c->sub.size() == 1);
  CHECK(c->sub[0].rule == RinftyRule::QuotientLift);

  auto ex = load("swap_split.json");
  auto h = rinfty_split_ext(ex, h_record(ex, 1), k_record(ex, 1), 1);
  REQUIRE(h);
  CHECK(h->details["branch"] == "H");
  CHECK(*h->witness == RationalRay::of({1, 0}));

  ExtensionSpec zz;
  zz.H = Presentation::parse({"u"}, {});
  zz.K = Presentation::parse({"v"}, {});
  zz.flavor = Flavor::Split;
  zz.conjugation = {{zz.H.word("u")}};
  CHECK_FALSE(rinfty_split_ext(zz, lookup_known("Z1", 1), lookup_known("Z1", 1), 1));
}

TEST_CASE("check_h_invariant examples") {
  auto ex = load("swap.json");
  Extension e(ex);
  const auto& g = e.presentation();
  auto make = [&](std::vector<std::string> images) {
    AutomorphismSpec phi{g, {}};
    for (const auto& w : images) phi.images.push_back(g.word(w));
    return phi;
  };
  auto swap = make({"c", "d", "a", "b", "y", "x", "t"});
  validate_automorphism(swap);
  CHECK(check_h_invariant(swap, ex));
  auto twist = make({"a", "b", "c", "d", "y t", "x t", "t"});
  validate_automorphism(twist);
  CHECK_FALSE(check_h_invariant(twist, ex));

  auto f = load("thompson_z2.json");
  Extension fe(f);
  const auto& fg = fe.presentation();
  AutomorphismSpec phi{fg, {fg.word("x0"), fg.word("x1 t"), fg.word("x0 t")}};
  validate_automorphism(phi);
  CHECK_FALSE(check_h_invariant(phi, f));

  AutomorphismSpec bad{fg, {fg.word("x0"), fg.word("x1^2"), fg.word("t")}};
  CHECK_THROWS_AS(validate_automorphism(bad), Error);
}

TEST_CASE("rinfty properties on random catalog extensions") {
  std::mt19937 rng(31337);
  std::set<std::string> kinds;
  for (int trial = 0; trial < 120; ++trial) {
    auto spec = testing::random_catalog_spec(rng);
    CAPTURE(to_json(spec).dump());
    Extension ext(spec);
    for (int n : {1, 2}) {
      auto recH = h_record(spec, n);
      SphereSet t = simplify(restrict_to_subspace(*recH.omega, ext.fix()));
      auto count = count_rational_points(t);
      kinds.insert(std::string(to_string(count.kind)));
      CHECK(count.kind != PointCount::Kind::Several);
      if (count.kind == PointCount::Kind::TwoAntipodal)
        CHECK(count.rays[0].antipode() == count.rays[1]);
      if (spec.flavor == Flavor::FiniteQuotient) {
        auto c = rinfty_finite_ext(spec, recH, n);
        CHECK(c.has_value() == (count.kind == PointCount::Kind::One));
        if (c) CHECK_FALSE(sphere_member(t, c->witness->antipode()));
      } else {
        auto c = rinfty_split_ext(spec, recH, k_record(spec, n), n);
        CHECK(c.has_value() == (count.kind == PointCount::Kind::One));
      }
    }
  }
  CHECK(kinds.count("one"));
  CHECK(kinds.count("zero"));
  CHECK(kinds.count("two_antipodal"));
  CHECK(kinds.count("unknown") == 0);
}
