#include "lira/io.hpp"
#include "lira/lira.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace lira;

namespace {

const std::string kFixtures = LIRA_FIXTURES_DIR;
const std::string kCli = LIRA_CLI_PATH;

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string out_path = std::string(std::tmpnam(nullptr)) + ".out";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(status), ss.str()};
}

}  // namespace

TEST_CASE("rational scalars") {
  CHECK(format_rational(*parse_rational("3/4")) == "3/4");
  CHECK(format_rational(*parse_rational("-7")) == "-7");
  CHECK(*parse_rational("4/2") == Rational(2));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("x").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("1.5").has_value());
}

TEST_CASE("builtin round trips through the file format") {
  for (const auto* name : {"dual_numbers", "der_plus_a", "sl2", "heisenberg", "abelian(2)",
                           "transformation(sl2,dual_numbers,0)"}) {
    const LieRinehartAlgebra l = builtin(name);
    const auto doc = io::algebra_to_json(l);
    const LieRinehartAlgebra back = io::algebra_from_json(doc);
    CHECK(back == l);
  }
}

TEST_CASE("fixtures parse and match the builtins") {
  const auto sl2 = io::parse_algebra(kFixtures + "/sl2.json");
  CHECK(sl2 == builtin("sl2"));
  const auto dn = io::parse_algebra(kFixtures + "/dual_numbers.json");
  CHECK(dn == builtin("dual_numbers"));
  CHECK_THROWS_AS(io::parse_algebra(kFixtures + "/bad_unit_dim.json"), io::ParseError);
  CHECK_THROWS_AS(io::parse_algebra(kFixtures + "/no_such_file.json"), io::ParseError);

  const auto mod = io::parse_module(kFixtures + "/sl2_trivial_module.json", sl2);
  CHECK(mod.is_left());
  const auto rmod = io::parse_module(kFixtures + "/sl2_right_module.json", sl2);
  CHECK(!rmod.is_left());
  const auto chev = io::parse_morphism(kFixtures + "/chevalley_sl2.json");
  CHECK(validate_morphism(chev).ok());
  const auto cov = io::parse_morphism(kFixtures + "/uce_sl2_covering.json");
  CHECK(is_central(cov).central());
  const auto der = io::parse_derivation(kFixtures + "/sl2_ad_e.json", sl2);
  CHECK(validate_derivation_pair(sl2, der).ok());
  const auto acts = io::parse_actions(kFixtures + "/sl2_actions.json", sl2, sl2);
  CHECK(check_compatible(sl2, sl2, acts).ok());
}

TEST_CASE("malformed documents are rejected with positioned messages") {
  const auto tmp = std::string(std::tmpnam(nullptr)) + ".json";
  {
    std::ofstream f(tmp);
    f << "{\"base\": {\"dim\": 1, \"unit\": [\"1/0\"], \"mult\": [[[1]]]},"
      << "\"algebra\": {\"dim\": 0, \"a_action\": [[]], \"bracket\": [], \"anchor\": []}}";
  }
  CHECK_THROWS_AS(io::parse_algebra(tmp), io::ParseError);
  std::remove(tmp.c_str());
}

TEST_CASE("cli: check") {
  CHECK(run_cli("check --builtin sl2").code == 0);
  CHECK(run_cli("check --builtin sl2 --json").out.find("\"valid\":true") != std::string::npos);
  CHECK(run_cli("check " + kFixtures + "/sl2.json").code == 0);
  CHECK(run_cli("check " + kFixtures + "/bad_unit_dim.json").code == 1);
  CHECK(run_cli("check --builtin no_such_algebra").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("check").code == 2);
}

TEST_CASE("cli: structure reports") {
  const auto center = run_cli("center --builtin heisenberg --json");
  CHECK(center.code == 0);
  CHECK(center.out.find("\"dim\":1") != std::string::npos);

  const auto comm = run_cli("commutator --builtin sl2 --json");
  CHECK(comm.out.find("\"perfect\":true") != std::string::npos);

  const auto uce = run_cli("uce --builtin sl2 --json");
  CHECK(uce.code == 0);
  CHECK(uce.out.find("\"quotient_dim\":3") != std::string::npos);
  CHECK(uce.out.find("\"kernel_dim\":0") != std::string::npos);
  CHECK(uce.out.find("\"perfect\":true") != std::string::npos);
  CHECK(uce.out.find("\"central\":true") != std::string::npos);
  CHECK(uce.out.find("\"image_is_commutator\":true") != std::string::npos);

  // reports are deterministic across runs
  CHECK(run_cli("uce --builtin sl2 --json").out == uce.out);
}

TEST_CASE("cli: cohomology and homology") {
  const auto coh = run_cli("cohomology --builtin sl2 --trivial-module 1 --degree 2 --json");
  CHECK(coh.code == 0);
  CHECK(coh.out.find("\"dims\":[1,0,0]") != std::string::npos);
  CHECK(coh.out.find("\"dim\":0") != std::string::npos);

  const auto hom = run_cli("homology --builtin 'abelian(2)' --trivial-module 1 --degree 1 --json");
  CHECK(hom.code == 0);
  CHECK(hom.out.find("\"dims\":[1,2]") != std::string::npos);

  // right modules need a zero anchor: validation failure
  CHECK(run_cli("homology --builtin dual_numbers --trivial-module 1 --degree 1").code == 1);

  // degree cap: usage error, overridable through the environment
  CHECK(run_cli("cohomology --builtin sl2 --trivial-module 1 --degree 9").code == 2);
  const std::string out_path = std::string(std::tmpnam(nullptr));
  const int status = std::system(("LIRA_MAX_DEGREE=4 " + kCli +
                                  " cohomology --builtin 'abelian(2)' --trivial-module 1 "
                                  "--degree 4 > " +
                                  out_path + " 2>/dev/null")
                                     .c_str());
  CHECK(WEXITSTATUS(status) == 0);
  std::remove(out_path.c_str());

  const auto file_mod = run_cli("cohomology " + kFixtures + "/sl2.json --module " + kFixtures +
                                "/sl2_trivial_module.json --degree 1 --json");
  CHECK(file_mod.code == 0);
  CHECK(file_mod.out.find("\"dims\":[1,0]") != std::string::npos);
}

TEST_CASE("cli: compare-ce") {
  const auto cmp = run_cli(
      "compare-ce --lie heisenberg --base dual_numbers --trivial-module 1 --degree 2 --json");
  CHECK(cmp.code == 0);
  CHECK(cmp.out.find("\"equal\":true") != std::string::npos);
  CHECK(run_cli("compare-ce --lie nope --base rationals").code == 2);
}

TEST_CASE("cli: tensor") {
  const auto hat = run_cli("tensor --builtin sl2 --hat --json");
  CHECK(hat.code == 0);
  CHECK(hat.out.find("\"dim\":3") != std::string::npos);
  CHECK(hat.out.find("\"uce_iso\":true") != std::string::npos);
  CHECK(hat.out.find("\"central\":true") != std::string::npos);

  const auto plain = run_cli("tensor builtin:sl2 builtin:sl2 --actions " + kFixtures +
                             "/sl2_actions.json --json");
  CHECK(plain.code == 0);
  CHECK(plain.out.find("\"dim\":3") != std::string::npos);
  CHECK(plain.out.find("\"mu_rank\":3") != std::string::npos);

  CHECK(run_cli("tensor --builtin sl2").code == 2);             // missing inputs
  CHECK(run_cli("tensor --builtin dual_numbers --hat").code == 1);  // not perfect
}

TEST_CASE("cli: lifting") {
  const auto la = run_cli("lift-aut " + kFixtures + "/uce_sl2_covering.json " + kFixtures +
                          "/chevalley_sl2.json --json");
  CHECK(la.code == 0);
  CHECK(la.out.find("\"lifted\":true") != std::string::npos);
  CHECK(la.out.find("lift_matrix") != std::string::npos);

  const auto ld = run_cli("lift-der " + kFixtures + "/uce_sl2_covering.json " + kFixtures +
                          "/sl2_ad_e.json --json");
  CHECK(ld.code == 0);
  CHECK(ld.out.find("\"lifted\":true") != std::string::npos);
}

TEST_CASE("cli: pullback and split-uce") {
  const auto pb = run_cli("pullback " + kFixtures + "/uce_sl2_covering.json " + kFixtures +
                          "/chevalley_sl2.json --json");
  CHECK(pb.code == 0);
  CHECK(pb.out.find("\"central\":true") != std::string::npos);
  CHECK(pb.out.find("\"splits\":true") != std::string::npos);

  const auto su = run_cli("split-uce --f " + kFixtures + "/sl2_into_product.json --g " +
                          kFixtures + "/product_onto_sl2.json --s " + kFixtures +
                          "/sl2_section_of_product.json --json");
  CHECK(su.code == 0);
  CHECK(su.out.find("\"ok\":true") != std::string::npos);
  CHECK(su.out.find("\"product_iso\":true") != std::string::npos);
}
