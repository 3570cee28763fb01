#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "baut/cli.hpp"
#include "baut/dsl.hpp"

using namespace baut;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

std::string slurp_path(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string slurp(const std::string& name) { return slurp_path(fixture_path(name)); }

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/* Scratch file in the test working directory; removed on destruction. */
struct TempFile {
  std::string path;
  TempFile(std::string name, const std::string& text) : path(std::move(name)) {
    std::ofstream(path, std::ios::binary) << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

void expect_parse_error(const std::string& text, int line, int col, const std::string& msg) {
  CAPTURE(text);
  try {
    parse_model(text);
    FAIL_CHECK("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == col);
    CHECK(std::string(e.what()) == "line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": " + msg);
  }
}

const std::vector<std::string> kFixtures = {
    "example_2_3",
    "example_2_4",
    "theorem_3_1_r2_m0",
    "theorem_3_1_r2_m1",
    "theorem_3_1_r2_m1_ks",
    "theorem_3_1_r2_m1_ks_trivial",
    "theorem_3_2_n1",
    "theorem_3_2_n3",
    "theorem_3_2_n5",
    "theorem_4_1_r1",
    "theorem_4_1_r2",
    "theorem_4_2_q0",
    "theorem_4_2_q1",
    "theorem_4_5",
    "kq3",
    "kq5",
    "kq7",
    "empty",
};

}  // namespace

TEST_CASE("parse errors carry exact line, column, and message") {
  // declarations
  expect_parse_error("generator\n", 1, 10, "expected a generator name");
  expect_parse_error("generator x\n", 1, 12, "expected a degree");
  expect_parse_error("generator x 0\n", 1, 13, "generator degree must be at least 1");
  expect_parse_error("generator x 99999999999\n", 1, 13,
                     "integer out of range '99999999999'");
  expect_parse_error("generator x 3 7\n", 1, 15, "unexpected trailing input '7'");
  expect_parse_error("extend z 1\n", 1, 10, "extension base degree must be at least 2");
  expect_parse_error("generator x 3\ngenerator x 5\n", 2, 11, "duplicate generator 'x'");
  expect_parse_error("generator x 3\nextend x 2\n", 2, 8, "duplicate generator 'x'");
  expect_parse_error("generator x 3\nextend z 2\nextend y 4\n", 3, 1,
                     "duplicate 'extend' declaration");
  expect_parse_error("foo bar\n", 1, 1, "expected 'generator', 'extend', 'd', or a comment");
  expect_parse_error("generator x 3\nd x % 2\n", 2, 5, "unexpected character '%'");

  // differential lines
  expect_parse_error("generator x 3\nd x\n", 2, 4, "expected '=' or '+='");
  expect_parse_error("generator x 3\nd x =\n", 2, 6, "expected an expression");
  expect_parse_error("generator x 3\nd y = x\n", 2, 3, "unknown generator 'y'");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = v*v\nd y = 0\n", 4, 3,
                     "differential for 'y' already given");

  // expressions
  expect_parse_error("generator x 3\nd x = q*x\n", 2, 7, "unknown generator 'q'");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = 1/0*v^2\n", 3, 7,
                     "malformed rational '1/0'");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = 1/ *v\n", 3, 10,
                     "expected a denominator after '/'");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = -v^2\n", 3, 7,
                     "a leading '-' must be followed by a rational coefficient");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = 2 v^2\n", 3, 9,
                     "expected '*' after the coefficient");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = 0 + v^2\n", 3, 9,
                     "expected '*' after the coefficient");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = v^0\n", 3, 9,
                     "exponent must be at least 1");
  expect_parse_error("generator x 3\ngenerator z 7\nd z = x^2\n", 3, 8,
                     "'^' needs an even-degree generator ('x' has degree 3)");
  expect_parse_error("generator v 2\ngenerator y 3\nd y = v^2 v\n", 3, 11,
                     "expected '+' or '-' between terms");

  // extensions
  expect_parse_error("generator u 3\nextend z 2\nd z = u*u\n", 3, 3,
                     "the extension base 'z' stays closed; it cannot carry a differential line");
  expect_parse_error("generator u 3\nextend z 2\nd u = z*u\n", 3, 7,
                     "the extension base may appear only in 'd NAME +=' lines");
  expect_parse_error("generator u 3\nd u += u*u\n", 2, 3,
                     "'d u +=' needs an 'extend' declaration");
  expect_parse_error("generator u 3\ngenerator v 4\nextend z 2\nd v += u*u\n", 4, 8,
                     "every perturbation term must contain the extension base 'z'");
}

TEST_CASE("comments, blank lines, and a missing final newline are accepted") {
  ParsedModel pm = parse_model(
      "# leading comment\n"
      "\n"
      "generator x 3\n"
      "   \t\n"
      "  # indented comment\n"
      "d x = 0\n"
      "generator w 7");
  CHECK(pm.model.generators().size() == 2);
  CHECK_FALSE(pm.extension.has_value());
  CHECK(print_model(pm) == "generator x 3\ngenerator w 7\n");
}

TEST_CASE("products and coefficients print in canonical form") {
  // odd-odd reorder picks up the Koszul sign
  CHECK(print_model(parse_model("generator u 3\ngenerator v 5\ngenerator y 7\nd y = v*u\n")) ==
        "generator u 3\ngenerator v 5\ngenerator y 7\nd y = -1*u*v\n");

  // unit coefficient is dropped; a repeated even factor becomes a power
  std::string canon = "generator v 2\ngenerator y 3\nd y = v^2\n";
  CHECK(print_model(parse_model("generator v 2\ngenerator y 3\nd y = 1*v^2\n")) == canon);
  CHECK(print_model(parse_model("generator v 2\ngenerator y 3\nd y = v*v\n")) == canon);

  // explicit zero and a vanishing odd square leave no differential line
  ParsedModel sq = parse_model("generator x 3\ngenerator w 7\nd w = x*x\n");
  CHECK(sq.model.differential(sq.model.algebra().find("w")).is_zero());
  CHECK(print_model(sq) == "generator x 3\ngenerator w 7\n");
  CHECK(print_model(parse_model("generator x 3\nd x = 0\n")) == "generator x 3\n");
}

TEST_CASE("reordered terms and factors normalize to the recorded fixture text") {
  std::string reordered =
      "generator a 2\n"
      "generator b 2\n"
      "generator c 2\n"
      "generator x 3\n"
      "generator y 3\n"
      "generator z 3\n"
      "generator phi 4\n"
      "generator psi 4\n"
      "generator w 5\n"
      "d w = phi*a + x*y - psi*a + c^3 + b^3\n"
      "d x = a*c + 1*a^2\n"
      "d y = a*b\n"
      "d z = c*b\n"
      "d phi = b*x - z*a - 1*y*a\n"
      "d psi = y*c - a*z\n";
  CHECK(print_model(parse_model(reordered)) == slurp("theorem_4_5.mm"));
}

TEST_CASE("perturbation lines for one generator accumulate") {
  std::string head = "generator u 3\ngenerator v 4\ngenerator y 6\nextend z 2\nd y = u*v\n";
  ParsedModel pm = parse_model(head + "d v += z*u\nd v += z*u\n");
  REQUIRE(pm.extension.has_value());
  CHECK(pm.extension->base_name == "z");
  CHECK(pm.extension->base_degree == 2);
  CHECK(print_model(pm) == head + "d v += 2*z*u\n");

  // cancelling perturbations print as the unperturbed extension
  CHECK(print_model(parse_model(head + "d v += z*u\nd v += -1*z*u\n")) ==
        slurp("theorem_3_1_r2_m1_ks_trivial.mm"));
}

TEST_CASE("every fixture round-trips byte for byte") {
  for (const std::string& name : kFixtures) {
    CAPTURE(name);
    std::string text = slurp(name + ".mm");
    std::string printed = print_model(parse_model(text));
    CHECK(printed == text);
    CHECK(print_model(parse_model(printed)) == printed);
  }
}

TEST_CASE("cli exit codes distinguish usage, domain, and success") {
  CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("validate") != std::string::npos);
  CHECK(help.out.find("ks-check") != std::string::npos);

  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"weights"}).code == 2);
  CHECK(cli({"baut", fixture_path("example_2_3.mm"), "--nope"}).code == 2);

  CliResult missing = cli({"homology", "no_such_file.mm"});
  CHECK(missing.code == 2);
  CHECK(missing.err == "error: cannot open 'no_such_file.mm'\n");

  TempFile bad("cli_tmp_bad.mm", "generator\n");
  CliResult parse = cli({"homology", bad.path});
  CHECK(parse.code == 2);
  CHECK(parse.err == "error: cli_tmp_bad.mm: line 1, column 10: expected a generator name\n");

  CliResult invalid = cli({"homology", fixture_path("theorem_4_2_q1.mm")});
  CHECK(invalid.code == 1);
  CHECK(invalid.out.empty());
  CHECK(invalid.err == "error [y]: term v^3 has degree 6, expected 7\n");

  CliResult noext = cli({"ks-check", fixture_path("example_2_3.mm")});
  CHECK(noext.code == 1);
  CHECK(noext.err == "error: ks-check needs a file with an 'extend' declaration\n");

  // a perturbation that breaks D^2 = 0 is rejected when the total model is built
  TempFile badks("cli_tmp_ks_bad.mm",
                 "generator v1 2\ngenerator v2 2\ngenerator u1 3\ngenerator u2 3\n"
                 "generator y 4\nextend z 2\nd y = v1*u1 + v2*u2\n"
                 "d u1 += z*v2\nd u2 += z*v1\n");
  CliResult broken = cli({"ks-check", badks.path});
  CHECK(broken.code == 1);
  CHECK(broken.out.empty());
  CHECK(broken.err.rfind("error: ", 0) == 0);
}

TEST_CASE("cli text reports are stable") {
  CHECK(cli({"validate", fixture_path("example_2_3.mm")}).out == "valid\n");
  CHECK(cli({"validate", fixture_path("theorem_3_1_r2_m0.mm")}).out ==
        "valid (1 warning)\n"
        "warning [u]: degree-1 generator: model is at most nilpotent, not simply connected\n");
  CliResult q1 = cli({"validate", fixture_path("theorem_4_2_q1.mm")});
  CHECK(q1.code == 1);
  CHECK(q1.out ==
        "invalid (1 error)\n"
        "error [y]: term v^3 has degree 6, expected 7\n");

  CHECK(cli({"homology", fixture_path("example_2_3.mm"), "--reps"}).out ==
        "H_1 = 0\nH_2 = 0\nH_3 = 0\nH_4 = 1\n  rep: (w,y)\nH_5 = 0\nH_6 = 0\n"
        "H_7 = 1\n  rep: w*\n");
  CHECK(cli({"baut", fixture_path("example_2_3.mm")}).out == "π₅ = ℚ, π₈ = ℚ\n");
  CHECK(cli({"baut", fixture_path("theorem_4_2_q0.mm")}).out == "π₂ = ℚ, π₄ = ℚ^2, π₇ = ℚ\n");
  CHECK(cli({"gottlieb", fixture_path("example_2_3.mm"), "--reps"}).out ==
        "G_1 = 0\nG_2 = 0\nG_3 = 0\nG_4 = 0\nG_5 = 0\nG_6 = 0\n"
        "G_7 = 1\n  functional: w = 1\n");

  CHECK(cli({"weights", fixture_path("example_2_3.mm")}).out ==
        "FEASIBLE\nwt(x) = 1\nwt(y) = 1\nwt(z) = 2\nwt(w) = 3\n");
  CliResult w45 = cli({"weights", fixture_path("theorem_4_5.mm")});
  CHECK(w45.code == 1);
  CHECK(w45.out ==
        "INFEASIBLE\n"
        "from d(x): wt(x) = wt(a^2) => wt(x) = 2*wt(a)\n"
        "from d(x): wt(a^2) = wt(a*c) => wt(c) = wt(a)\n"
        "from d(y): wt(y) = wt(a*b) => wt(y) = wt(a) + wt(b)\n"
        "from d(z): wt(z) = wt(b*c) => wt(z) = wt(a) + wt(b)\n"
        "from d(phi): wt(phi) = wt(a*y) => wt(phi) = 2*wt(a) + wt(b)\n"
        "from d(psi): wt(psi) = wt(a*z) => wt(psi) = 2*wt(a) + wt(b)\n"
        "from d(w): wt(w) = wt(a*phi) => wt(w) = 3*wt(a) + wt(b)\n"
        "from d(w): wt(a*phi) = wt(b^3) => wt(b) = 3/2*wt(a)\n"
        "from d(w): wt(a*phi) = wt(c^3) => wt(a) = 0\n"
        "contradiction: wt(a) = 0 violates wt(a) > 0\n");

  CliResult pass = cli({"ks-check", fixture_path("theorem_3_1_r2_m1_ks.mm")});
  CHECK(pass.code == 0);
  CHECK(pass.out == "PASS: every degree-2 D-cycle vanishes on z (cycle space dimension 2)\n");
  CliResult fail = cli({"ks-check", fixture_path("theorem_3_1_r2_m1_ks_trivial.mm")});
  CHECK(fail.code == 1);
  CHECK(fail.out == "FAIL: degree-2 witness cycle z*\n");

  CHECK(cli({"der-table", fixture_path("example_2_3.mm")}).out ==
        "degree | generators\n"
        "     7 | w*\n"
        "     5 | z*\n"
        "     4 | (w,x), (w,y)\n"
        "     3 | x*, y*\n"
        "     2 | (z,x), (z,y), (w,z)\n"
        "     1 | (w,x*y)\n");

  CliResult empty_baut = cli({"baut", fixture_path("empty.mm")});
  CHECK(empty_baut.code == 0);
  CHECK(empty_baut.out.empty());
}

TEST_CASE("cli --degrees restricts reports and rejects malformed ranges") {
  CHECK(cli({"homology", fixture_path("example_2_3.mm"), "--degrees", "4..5"}).out ==
        "H_4 = 1\nH_5 = 0\n");
  CHECK(cli({"baut", fixture_path("example_2_3.mm"), "--degrees", "6..9"}).out == "π₈ = ℚ\n");
  CHECK(cli({"gottlieb", fixture_path("example_2_3.mm"), "--degrees", "7..7"}).out ==
        "G_7 = 1\n");
  CHECK(cli({"der-table", fixture_path("example_2_3.mm"), "--degrees", "2..3"}).out ==
        "degree | generators\n"
        "     3 | x*, y*\n"
        "     2 | (z,x), (z,y), (w,z)\n");

  for (const char* bad : {"4..x", "5..2", "7", "a..b", "1.2"}) {
    CAPTURE(bad);
    CliResult r = cli({"homology", fixture_path("example_2_3.mm"), "--degrees", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("--degrees") != std::string::npos);
  }
}

TEST_CASE("cli json reports match the recorded files") {
  struct Golden {
    std::vector<std::string> args;
    std::string file;
    int code;
  };
  std::vector<Golden> cases;
  for (const std::string& f : kFixtures)
    cases.push_back({{"validate", fixture_path(f + ".mm"), "--json"},
                     f + ".validate.expected.json",
                     f == "theorem_4_2_q1" ? 1 : 0});
  auto add = [&](std::vector<std::string> args, const std::string& file, int code) {
    cases.push_back({std::move(args), file, code});
  };
  std::string e23 = fixture_path("example_2_3.mm");
  add({"homology", e23, "--reps", "--json"}, "example_2_3.homology.expected.json", 0);
  add({"baut", e23, "--json"}, "example_2_3.baut.expected.json", 0);
  add({"gottlieb", e23, "--reps", "--json"}, "example_2_3.gottlieb.expected.json", 0);
  add({"weights", e23, "--json"}, "example_2_3.weights.expected.json", 0);
  add({"der-table", e23, "--json"}, "example_2_3.der-table.expected.json", 0);
  for (const char* f : {"theorem_3_1_r2_m0", "theorem_3_1_r2_m1", "theorem_3_2_n1",
                        "theorem_3_2_n3", "theorem_3_2_n5", "theorem_4_1_r1"})
    add({"baut", fixture_path(std::string(f) + ".mm"), "--json"},
        std::string(f) + ".baut.expected.json", 0);
  add({"ks-check", fixture_path("theorem_3_1_r2_m1_ks.mm"), "--json"},
      "theorem_3_1_r2_m1_ks.ks-check.expected.json", 0);
  add({"ks-check", fixture_path("theorem_3_1_r2_m1_ks_trivial.mm"), "--json"},
      "theorem_3_1_r2_m1_ks_trivial.ks-check.expected.json", 1);
  add({"ks-check", fixture_path("theorem_4_1_r2.mm"), "--json"},
      "theorem_4_1_r2.ks-check.expected.json", 0);
  add({"homology", fixture_path("theorem_4_2_q0.mm"), "--json"},
      "theorem_4_2_q0.homology.expected.json", 0);
  add({"weights", fixture_path("theorem_4_5.mm"), "--json"},
      "theorem_4_5.weights.expected.json", 1);
  for (const char* f : {"kq3", "kq5", "kq7"})
    add({"gottlieb", fixture_path(std::string(f) + ".mm"), "--json"},
        std::string(f) + ".gottlieb.expected.json", 0);
  add({"homology", fixture_path("empty.mm"), "--json"}, "empty.homology.expected.json", 0);
  add({"baut", fixture_path("empty.mm"), "--json"}, "empty.baut.expected.json", 0);

  for (const Golden& g : cases) {
    CAPTURE(g.file);
    CliResult r = cli(g.args);
    CHECK(r.code == g.code);
    CHECK(r.err.empty());
    CHECK(r.out == slurp(g.file));
  }
}
