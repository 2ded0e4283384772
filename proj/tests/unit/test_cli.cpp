#include <doctest.h>

#include "sok/cli.hpp"
#include "sok/rinfty/rinfty.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace sok;

namespace {

struct Result {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SOK_TEST_DATA) + "/" + name; }

nlohmann::json without(nlohmann::json j, std::initializer_list<const char*> keys) {
  for (auto k : keys) j.erase(k);
  return j;
}

}  // namespace

TEST_CASE("cli sigma on the Klein bottle") {
  auto r = run({"sigma", "--spec", data("klein.json"), "--n", "1"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["schema_version"] == cli::kSchemaVersion);
  CHECK(j["dim"] == 1);
  CHECK(sphere_set_from_json(j["sigma"]).kind() == SphereSet::Kind::Full);
  auto rec = invariant_record_from_json(without(j, {"schema_version", "command"}));
  CHECK(rec.provenance.rule == Rule::FiniteExtensionSigma);
  REQUIRE(rec.provenance.premises.size() == 1);
  CHECK(rec.provenance.premises[0].rule == Rule::CatalogEntry);
  CHECK(replay_matches(rec));
}

TEST_CASE("cli rinfty on the swap extension") {
  auto r = run({"rinfty", "--spec", data("swap.json"), "--n", "1"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  auto cert = rinfty_certificate_from_json(without(j, {"schema_version", "command", "group"}));
  CHECK(cert.rule == RinftyRule::FiniteExtRationalPoint);
  REQUIRE(cert.witness);
  CHECK(*cert.witness == RationalRay::of({1, 0}));
  CHECK(cert.verdict == Verdict::RInfinityForAutomorphism);
}

TEST_CASE("cli probe") {
  auto r = run({"probe", "--model", "Z2", "--chi", "1,1", "--radius", "6"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["verdict"] == "EvidenceConnected");
  CHECK(j["radius"] == 6);

  auto f = run({"probe", "--model", "F2", "--chi", "1,0", "--probe", "both"});
  REQUIRE(f.code == 0);
  CHECK(f.json()["sigma"]["verdict"] == "EvidenceDisconnected");
  CHECK(f.json()["omega"]["verdict"] == "EvidenceDisconnected");

  auto k = run({"probe", "--spec", data("klein.json"), "--chi", "1", "--radius", "5"});
  REQUIRE(k.code == 0);
  CHECK(k.json()["verdict"] == "EvidenceConnected");

  CHECK(run({"probe", "--chi", "1"}).code == 2);
  CHECK(run({"probe", "--model", "ThompsonF", "--chi", "1,0"}).code == 1);
  CHECK(run({"probe", "--model", "Z2", "--chi", "0,0"}).json()["error"]["code"] == "DegenerateCharacter");
}

TEST_CASE("cli linear algebra commands") {
  auto a = run({"abelianize", "--spec", data("klein.json")});
  REQUIRE(a.code == 0);
  CHECK(a.json()["rank"] == 1);
  CHECK(a.json()["torsion"] == nlohmann::json::array({"2"}));

  auto h = run({"hom", "--group", "BS(1,2)xZ1"});
  REQUIRE(h.code == 0);
  CHECK(h.json()["dim"] == 2);

  auto fx = run({"fix", "--spec", data("dinf_split.json")});
  REQUIRE(fx.code == 0);
  CHECK(subspace_from_json(fx.json()["fix"]).dim() == 0);

  auto b = run({"bounds", "--spec", data("thompson_z2.json"), "--n", "1"});
  REQUIRE(b.code == 0);
  CHECK(b.json().contains("omega_lower"));
  CHECK(b.json().contains("omega_upper"));

  auto o = run({"omega", "--group", "BS(1,2)"});
  REQUIRE(o.code == 0);
  CHECK(sphere_set_from_json(o.json()["omega"]) == SphereSet::rays(1, {RationalRay::of({1})}));

  auto c = run({"catalog"});
  REQUIRE(c.code == 0);
  CHECK(c.json()["ids"].size() == 6);
  auto ce = run({"catalog", "--group", "F2", "--n", "2"});
  REQUIRE(ce.code == 0);
  CHECK(ce.json()["presentation"]["generators"] == nlohmann::json::array({"f1", "f2"}));
}

TEST_CASE("cli exit codes and errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"sigma", "--spec", data("klein.json"), "--frobnicate"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"sigma", "--spec", data("klein.json"), "--group", "Z2"}).code == 2);
  CHECK(run({"sigma", "--spec", data("klein.json"), "--n", "0"}).code == 2);
  CHECK(run({"--schema-version", "7", "catalog"}).code == 2);
  CHECK(run({"sigma", "--spec", "/nonexistent.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  auto u = run({"sigma", "--group", "Q8"});
  CHECK(u.code == 1);
  CHECK(u.json()["error"]["code"] == "UnknownGroup");

  auto d = run({"sigma", "--group", "Z2", "--n", "3"});
  CHECK(d.code == 1);
  CHECK(d.json()["error"]["code"] == "UnknownDegree");

  std::string bad = "cli_bad_spec.json";
  {
    std::ofstream f(bad);
    f << "{\n  \"H\": {\"generators\": [\"a\"], \"relators\": []},\n  oops\n}\n";
  }
  auto p = run({"sigma", "--spec", bad});
  CHECK(p.code == 1);
  CHECK(p.json()["error"]["code"] == "ParseError");
  CHECK(p.json()["error"]["file"] == bad);
  CHECK(p.json()["error"]["message"].get<std::string>().find("line 3") != std::string::npos);

  {
    std::ofstream f(bad);
    f << R"({"H": {"generators": ["a"], "relators": []}, "K": {"generators": ["t"], "relators": ["t^2"]},
             "flavor": "finite_quotient", "orders": {"t": {"m": 2, "w": ""}}, "conjugation": {"t:a": "a"},
             "colour": "red"})";
  }
  auto k = run({"fix", "--spec", bad});
  CHECK(k.code == 1);
  CHECK(k.json()["error"]["file"] == bad);
  std::remove(bad.c_str());
}

TEST_CASE("cli output is deterministic and --out writes the same bytes") {
  std::vector<std::vector<std::string>> cmds{
      {"sigma", "--spec", data("swap.json"), "--n", "1"},
      {"bounds", "--spec", data("swap.json"), "--n", "1"},
      {"rinfty", "--spec", data("thompson_z2.json"), "--n", "2"},
      {"probe", "--model", "BS(1,2)", "--chi", "-1", "--probe", "both"},
  };
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.back() == '\n');
    std::string path = "cli_out.json";
    auto args = c;
    args.insert(args.begin(), {"--out", path});
    auto w = run(args);
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == a.out);
    std::remove(path.c_str());
  }
}
