#include <catch_amalgamated.hpp>

#include <sstream>

#include "cli.hpp"
#include "nilorb/serialize.hpp"
#include "repro.hpp"

using namespace nilorb;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: orbit listing") {
  const auto r7 = run({"orbits", "list", "--algebra", "sl", "--n", "3", "--p", "7", "--json"});
  REQUIRE(r7.code == 0);
  CHECK(Json::parse(r7.out).size() == 11);
  const auto r5 = run({"orbits", "list", "--algebra", "sl", "--n", "3", "--p", "5", "--json"});
  REQUIRE(r5.code == 0);
  CHECK(Json::parse(r5.out).size() == 5);

  const auto table = run({"orbits", "list", "--algebra", "sl", "--n", "3", "--p", "5"});
  CHECK(table.out == "(3) d=1  dim 6\n(3) d=pi  dim 6\n(3) d=pi^2  dim 6\n(2,1)  dim 4\n(1,1,1)  dim 0\n");
}

TEST_CASE("cli: listed labels feed back into rep") {
  const auto list = run({"orbits", "list", "--algebra", "sp", "--n", "2", "--p", "5", "--json"});
  REQUIRE(list.code == 0);
  for (const auto& entry : Json::parse(list.out)) {
    Json label = entry;
    label.erase("name");
    label.erase("orbit_dimension");
    const auto rep = run({"orbits", "rep", "--p", "5", "--json", "--label", label.dump()});
    REQUIRE(rep.code == 0);
    const Json j = Json::parse(rep.out);
    CHECK(j["name"] == entry["name"]);
    CHECK(j["nilpotent"] == true);
    CHECK(j["orbit_dimension"] == entry["orbit_dimension"]);
  }
}

TEST_CASE("cli: exit codes") {
  CHECK(run({"orbits", "list", "--p", "2"}).code == cli::kDomain);
  CHECK(run({"orbits", "list", "--p", "9"}).code == cli::kDomain);
  CHECK(run({"orbits", "list", "--bogus"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"orbits", "list", "--algebra", "so"}).code == cli::kUsage);
  CHECK(run({"orbits", "rep", "--label", "{not json"}).code == cli::kUsage);
  CHECK(run({"orbits", "rep", "--label", R"({"alg":"sl","lambda":[3],"datum":{"j":0,"i":7}})"}).code == cli::kDomain);
  CHECK(run({"dp", "eval", "--formula", "x + = 1"}).code == cli::kDomain);
  CHECK(run({"dp", "eval", "--formula", "n = 1", "--z-window", "3:1"}).code == cli::kUsage);
  CHECK(run({"qform", "classify", "--entries", "1,0"}).code == cli::kDomain);

  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("repro") != std::string::npos);
  const auto sub_help = run({"dp", "eval", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(sub_help.out.find("--z-window") != std::string::npos);
}

TEST_CASE("cli: repro matches the golden data") {
  for (const auto& [example, p] : {std::pair{"sl3", "7"}, {"sl3", "5"}, {"sp4", "5"}, {"sp4", "7"}}) {
    const auto r = run({"repro", example, "--p", p});
    INFO(example << " p=" << p << "\n" << r.err);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
  }
  // Byte stability.
  CHECK(run({"repro", "sl3", "--p", "7"}).out == run({"repro", "sl3", "--p", "7"}).out);
  // q = 9: the cube roots of unity live in the extension.
  const auto c9 = FieldContext::make(3, 2);
  const auto rep = cli::repro_sl3(c9);
  CHECK(rep.ok());
  CHECK(rep.actual.find("X (3) d=") != std::string::npos);
}

TEST_CASE("cli: golden content") {
  const std::string& sl3 = cli::golden_sl3();
  CHECK(sl3.find("F4 (2/3, -1/3, -1/3)\ng\nO P^-1 P^-1\nP O O\nP O O\ng+\nP O O\nP^2 P P\nP^2 P P\n") !=
        std::string::npos);
  CHECK(cli::golden_sp4().find("g\nO O P P\nO O P P\nP^-1 P^-1 O O\nP^-1 P^-1 O O\n") != std::string::npos);

  const auto c = FieldContext::make(7);
  auto rep = cli::repro_sl3(c);
  REQUIRE(rep.ok());
  // A single wrong exponent must be reported.
  std::string tampered = rep.actual;
  tampered.replace(tampered.find("O P^-1 P^-1"), 11, "O P^-1 P^-2");
  const auto diff = cli::line_diff(rep.expected, tampered);
  CHECK(diff.find("- O P^-1 P^-1") != std::string::npos);
  CHECK(diff.find("+ O P^-1 P^-2") != std::string::npos);
}

TEST_CASE("cli: template expansion") {
  const std::string t = "head\n@each\nx={v}{v}\n@end\ntail\n";
  CHECK(cli::expand_template(t, {{{"v", "1"}}, {{"v", "ab"}}}) == "head\nx=11\nx=abab\ntail\n");
  CHECK(cli::expand_template(t, {}) == "head\ntail\n");
}

TEST_CASE("cli: building and match") {
  const auto lat = run({"building", "lattice", "--algebra", "sp", "--n", "2", "--point", "-1/2,-1/2", "--json"});
  REQUIRE(lat.code == 0);
  const Json j = Json::parse(lat.out);
  CHECK(j["bounds"] == Json::parse("[[0,0,1,1],[0,0,1,1],[-1,-1,0,0],[-1,-1,0,0]]"));
  CHECK(j["facet_dimension"] == 0);

  const auto text = run({"building", "lattice", "--algebra", "sl", "--n", "3", "--point", "0,0,0"});
  CHECK(text.out == "point (0, 0, 0)\nfacet dimension 0\ng\nO O O\nO O O\nO O O\ng+\nP P P\nP P P\nP P P\n");
  CHECK(run({"building", "lattice", "--algebra", "sl", "--n", "3", "--point", "1,2"}).code == cli::kDomain);

  const auto m = run({"match", "--algebra", "sl", "--n", "3", "--p", "7", "--json"});
  REQUIRE(m.code == 0);
  const Json all = Json::parse(m.out);
  CHECK(all.size() == 11);
  for (const auto& r : all) CHECK(r["checks"]["in_lattice"] == true);

  const auto one = run({"match", "--p", "5", "--label",
                        R"({"alg":"sp","lambda":[4],"datum":{"4":{"witt":0,"aniso":"eps*pi"}}})"});
  REQUIRE(one.code == 0);
  CHECK(one.out.find("H H(e1-e2) ∩ H(2e2+1)\npoint (-1/2, -1/2)\n") != std::string::npos);
  CHECK(run({"match", "--json", "--table"}).code == cli::kUsage);
}

TEST_CASE("cli: svg") {
  const auto s = run({"match", "--algebra", "sp", "--n", "2", "--p", "5", "--svg"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("<svg", 0) == 0);
  CHECK(s.out.find("</svg>") != std::string::npos);
  CHECK(s.out.find("(-1/2, -1/2)") != std::string::npos);
  CHECK(s.out.find("<polygon") != std::string::npos);
  const auto b = run({"building", "lattice", "--algebra", "sl", "--n", "3", "--point", "1/3,0,-1/3", "--svg"});
  CHECK(b.code == 0);
  CHECK(run({"match", "--algebra", "sl", "--n", "4", "--svg"}).code == cli::kDomain);
}

TEST_CASE("cli: dp") {
  const auto e = run({"dp", "eval", "--formula", "exists n:Z. ord(x) = n + 1", "--assign", "x=pi^3"});
  REQUIRE(e.code == 0);
  CHECK(Json::parse(e.out) == Json::parse(R"({"result":"true","exact":true,"flags":[]})"));

  const auto w = run({"dp", "eval", "--formula", "exists n:Z. n > 100", "--z-window", "-3:3"});
  REQUIRE(w.code == 0);
  const Json wj = Json::parse(w.out);
  CHECK(wj["exact"] == false);
  CHECK(wj["flags"] == Json::array({"z-window"}));

  const auto rf = run({"dp", "eval", "--formula", "exists y:RF. y^3 = ac(d2)", "--m", "3", "--p", "7"});
  CHECK(Json::parse(rf.out)["result"] == "false");

  const auto psi = run({"dp", "psi", "--m", "6", "--p", "7"});
  CHECK(psi.out == "psi(1,6) false\npsi(2,6) false\npsi(3,6) false\npsi(6,6) true\n");
  const auto psi11 = run({"dp", "psi", "--m", "6", "--p", "11", "--json"});
  int truths = 0;
  for (const auto& item : Json::parse(psi11.out))
    if (item["result"]["result"] == "true") {
      ++truths;
      CHECK(item["ell"] == 2);
    }
  CHECK(truths == 1);

  const auto nnf = run({"dp", "print", "--nnf", "--formula", "not (exists x:RF. x = 0 and r = 1)"});
  CHECK(nnf.out == "forall x:RF. x != 0 or r != 1\n");
  CHECK(run({"dp", "eval", "--formula", "ac(x) = r"}).code == cli::kDomain);
  CHECK(run({"dp", "eval", "--formula", "ac(x) = 1", "--assign", "y=1"}).code == cli::kUsage);
}

TEST_CASE("cli: quadratic forms") {
  const auto c = run({"qform", "classify", "--entries", "1,eps,pi,eps*pi", "--p", "5", "--json"});
  REQUIRE(c.code == 0);
  const Json j = Json::parse(c.out);
  CHECK(j["dim"] == 4);
  CHECK(j["witt"] == 0);
  CHECK(j["disc"] == "1");
  const auto hyper = run({"qform", "classify", "--entries", "1,-1", "--p", "7"});
  CHECK(hyper.out == "q0^1\n");
  const auto list = run({"qform", "list", "--dim", "2", "--p", "7", "--json"});
  const Json classes = Json::parse(list.out);
  CHECK(classes.size() == 7);
  int anisotropic = 0;
  for (const auto& cls : classes) anisotropic += cls["witt"] == 0;
  CHECK(anisotropic == 6);
}
