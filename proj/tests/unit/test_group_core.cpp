#include <doctest.h>

#include "sok/error.hpp"
#include "sok/group/abelianization.hpp"

#include <random>

using namespace sok;

namespace {

Presentation klein() { return Presentation::parse({"alpha", "beta"}, {"alpha beta alpha beta^-1"}); }

IntegerMatrix imat(std::vector<std::vector<long>> rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

bool diagonal_chain(const IntegerMatrix& d) {
  Integer prev = 1;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  std::size_t n = std::min(d.rows(), d.cols());
  bool zero_seen = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) < 0) return false;
    if (d(i, i) == 0) {
      zero_seen = true;
      continue;
    }
    if (zero_seen) return false;
    if (d(i, i) % prev != 0) return false;
    prev = d(i, i);
  }
  return true;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  std::vector<std::string> names{"a", "b"};
  CHECK(free_reduce(parse_word("a a^-1", names)).empty());
  CHECK(format_word(free_reduce(parse_word("a b b^-1 a", names)), names) == "a a");
  std::vector<std::string> greek{"alpha", "beta"};
  auto w = parse_word("alpha beta alpha beta^-1", greek);
  CHECK(free_reduce(w) == w);
}

TEST_CASE("word parsing") {
  std::vector<std::string> names{"x0", "x1"};
  CHECK(parse_word("x0^-2 x1^3", names).size() == 5);
  CHECK(format_word(parse_word("x0^-2", names), names) == "x0^-1 x0^-1");
  CHECK_THROWS_AS(parse_word("x2", names), Error);
  CHECK_THROWS_AS(parse_word("x0^0", names), Error);
  CHECK_THROWS_AS(parse_word("x0^a", names), Error);
}

TEST_CASE("free_reduce is idempotent and length-nonincreasing") {
  std::mt19937 rng(7);
  for (int t = 0; t < 500; ++t) {
    Word w;
    int len = static_cast<int>(rng() % 20);
    for (int i = 0; i < len; ++i)
      w.push_back({static_cast<std::uint32_t>(rng() % 3), static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
    Word r = free_reduce(w);
    CHECK(r.size() <= w.size());
    CHECK(is_freely_reduced(r));
    CHECK(free_reduce(r) == r);
    CHECK(exponent_vector(r, 3) == exponent_vector(w, 3));
  }
}

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(Presentation::parse({"a", "a"}, {}), Error);
  CHECK_THROWS_AS(Presentation::parse({""}, {}), Error);
  CHECK_THROWS_AS(Presentation::parse({"a"}, {"a a^-1"}), Error);
  auto j = nlohmann::json::parse(R"({"generators":["a","b"],"relators":["a b a b^-1"]})");
  Presentation p = presentation_from_json(j);
  CHECK(to_json(p) == j);
  auto bad = nlohmann::json::parse(R"({"generators":["a"],"relators":[],"extra":1})");
  CHECK_THROWS_AS(presentation_from_json(bad), Error);
}

TEST_CASE("exponent_matrix examples") {
  CHECK(exponent_matrix(klein()) == imat({{2, 0}}));
  auto free2 = Presentation::parse({"a", "b"}, {});
  CHECK(exponent_matrix(free2).rows() == 0);
  CHECK(exponent_matrix(free2).cols() == 2);
  auto bs = Presentation::parse({"a", "b"}, {"b^-1 a b a^-2"});
  CHECK(exponent_matrix(bs) == imat({{-1, 0}}));
}

TEST_CASE("smith_normal_form examples") {
  auto check = [](const IntegerMatrix& m, const IntegerMatrix& expected) {
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(s.D == expected);
  };
  check(IntegerMatrix::identity(2), IntegerMatrix::identity(2));
  check(imat({{2, 0}}), imat({{2, 0}}));
  check(imat({{2, 4}, {6, 8}}), imat({{2, 0}, {0, 4}}));
}

TEST_CASE("smith_normal_form on random matrices") {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<int>(rng() % 13) - 6;
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(diagonal_chain(s.D));
    CHECK(s.rank == rank(m));
  }
}

TEST_CASE("abelianization examples") {
  auto k = abelianization(klein());
  CHECK(k.rank == 1);
  CHECK(k.torsion == std::vector<Integer>{2});
  auto z2 = abelianization(Presentation::parse({"a", "b"}, {"a b a^-1 b^-1"}));
  CHECK(z2.rank == 2);
  CHECK(z2.torsion.empty());
  auto dinf = abelianization(Presentation::parse({"a", "t"}, {"t t", "t a t^-1 a"}));
  CHECK(dinf.rank == 0);
  CHECK(dinf.torsion == std::vector<Integer>{2, 2});
}

TEST_CASE("abelianization projection kills relators; Tietze invariance") {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 4;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
    std::vector<Word> rels;
    std::size_t nr = rng() % 4;
    for (std::size_t r = 0; r < nr; ++r) {
      Word w;
      for (int i = 0; i < 1 + static_cast<int>(rng() % 6); ++i)
        w.push_back({static_cast<std::uint32_t>(rng() % n), static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
      w = free_reduce(w);
      if (!w.empty()) rels.push_back(w);
    }
    Presentation p(names, rels);
    auto a = abelianization(p);
    for (const auto& r : p.relators()) {
      auto e = exponent_vector(r, n);
      for (std::size_t i = 0; i < a.projection.rows(); ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) s += a.projection(i, j) * e[j];
        CHECK(s == 0);
      }
    }
    CHECK(a.rank == HomSpace(p).dim());
    if (!rels.empty()) {
      auto more = rels;
      more.push_back(free_reduce(concat(rels[0], rels[0])));
      CHECK(abelianization(Presentation(names, more)).rank == a.rank);
    }
    auto names2 = names;
    names2.push_back("extra");
    auto rels2 = rels;
    Word def{{static_cast<std::uint32_t>(n), 1}};
    def.push_back({0, -1});
    rels2.push_back(def);
    auto b = abelianization(Presentation(names2, rels2));
    CHECK(b.rank == a.rank);
    CHECK(b.torsion == a.torsion);
  }
}

TEST_CASE("Hom space coordinates") {
  HomSpace h(klein());
  CHECK(h.dim() == 1);
  CHECK(h.free_generators() == std::vector<std::size_t>{1});
  RatVector v{0, 1};
  CHECK(h.is_character(v));
  CHECK(h.coordinates(v) == RatVector{1});
  CHECK(h.values(RatVector{3}) == RatVector{0, 3});
  HomSpace bs(Presentation::parse({"a", "b"}, {"b^-1 a b a^-2"}));
  CHECK(bs.dim() == 1);
  CHECK(bs.free_generators() == std::vector<std::size_t>{1});
}
