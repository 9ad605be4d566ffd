#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ormat/cli.hpp"
#include "ormat/constructions.hpp"
#include "ormat/search.hpp"

using namespace ormat;

namespace {

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = run(std::move(args), out, err);
  return {rc, out.str(), err.str()};
}

std::string fixture(const std::string &name) {
  return std::string(ORMAT_DATA_DIR) + "/" + name;
}

std::string temp_file(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("verify prints the verdict and maps it to the exit code") {
  CliResult r = run_cli({"verify", "--kind", "sor", fixture("sor_33x8.txt")});
  CHECK(r.rc == 0);
  CHECK(r.out == "HOLDS\n");
  CHECK(r.err.empty());

  r = run_cli({"verify", "--kind", "sor", fixture("psor_35x8.txt")});
  CHECK(r.rc == 1);
  CHECK(r.out == "VIOLATED (6,9)\n");
  CHECK(r.err == "# missing secondary witness\n");

  r = run_cli({"verify", fixture("extremal_8x4.txt")}); // default kind: or
  CHECK(r.rc == 0);
  CHECK(r.out == "HOLDS\n");

  r = run_cli({"verify", "--kind", "psor", fixture("psor_35x8.txt")});
  CHECK(r.rc == 0);
  CHECK(r.out == "HOLDS\n");
}

TEST_CASE("verify distinguishes usage, verdict, and i/o failures") {
  CHECK(run_cli({"verify", "--kind", "nonsense", fixture("sor_33x8.txt")}).rc ==
        2);
  CHECK(run_cli({"verify", "/no/such/file"}).rc == 3);

  const std::string bad = temp_file("ormat_cli_bad.txt");
  {
    std::ofstream f(bad);
    f << "01\n0x\n";
  }
  CHECK(run_cli({"verify", bad}).rc == 3); // parse failure is a data error
  std::filesystem::remove(bad);
}

TEST_CASE("construct emits the matrix on stdout and the shape on stderr") {
  CliResult r = run_cli({"construct", "--levels", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out == "000\n111\n110\n010\n");
  CHECK(r.err == "# constructed 4x3\n");

  r = run_cli({"construct", "--levels", "2", "--verify"});
  CHECK(r.rc == 0);
  CHECK(r.err == "# constructed 4x3\n# verify: or holds\n");

  r = run_cli({"construct", "--scheme", "main", "--block", "sor_3x2",
               "--levels", "2", "--verify"});
  CHECK(r.rc == 0);
  CHECK(r.out == emit_matrix(construct_main(find_block("sor_3x2").matrix, 2)));
  CHECK(r.err == "# constructed 9x6\n# verify: or holds\n");

  r = run_cli({"construct", "--levels", "1", "--pad", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out == "000\n100\n"); // padded columns read as zeros
}

TEST_CASE("construct rejects bad scheme and level combinations as usage") {
  CHECK(run_cli({"construct", "--scheme", "main", "--levels", "2"}).rc == 2);
  CHECK(run_cli({"construct", "--block", "sor_3x2", "--levels", "2"}).rc == 2);
  CHECK(run_cli({"construct", "--levels", "0"}).rc == 2);
  CHECK(run_cli({"construct", "--levels", "17"}).rc == 2); // needs --allow-large
  CHECK(run_cli({"construct", "--scheme", "modified", "--block", "no_such",
                 "--levels", "2"}).rc == 3); // falls through to file lookup
}

TEST_CASE("search reports the row counts and target verdict") {
  CliResult r = run_cli({"search", "--n", "3"});
  CHECK(r.rc == 0);
  const std::string header =
      "# kind: or*\n# rows: 6\n# or rows: 5\n# exhausted: yes\n";
  REQUIRE(r.out.substr(0, header.size()) == header);
  const BinaryMatrix best = parse_matrix(r.out.substr(header.size()));
  CHECK(best.rows() == 6);
  CHECK(check(best, RegularityKind::ORstar).holds);
  CHECK(r.err.substr(0, 8) == "# nodes=");

  r = run_cli({"search", "--n", "3", "--target", "6"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("# target 6 reached\n") != std::string::npos);

  r = run_cli({"search", "--n", "3", "--target", "7"});
  CHECK(r.rc == 1); // width 3 tops out at 6 rows
  CHECK(r.out.find("# target 7 not reached\n") != std::string::npos);

  // psor* has no duplicate-row reading, so no base-kind row line.
  r = run_cli({"search", "--n", "3", "--kind", "psor*"});
  CHECK(r.rc == 0);
  CHECK(r.out.substr(0, 26) == "# kind: psor*\n# rows: 5\n# ");
  CHECK(r.out.find("# psor rows:") == std::string::npos);

  CHECK(run_cli({"search", "--n", "3", "--kind", "sor"}).rc == 2);
  CHECK(run_cli({"search", "--kind", "or*"}).rc == 2); // --n is required
  CHECK(run_cli({"search", "--n", "3", "--symmetry", "--no-symmetry"}).rc == 2);
}

TEST_CASE("search accepts a root prefix file") {
  const std::string root = temp_file("ormat_cli_root.txt");
  {
    std::ofstream f(root);
    f << "000\n111\n";
  }
  const CliResult r = run_cli({"search", "--n", "3", "--root", root});
  CHECK(r.rc == 0);
  CHECK(r.out.find("# rows: 6\n") != std::string::npos);
  std::filesystem::remove(root);
  CHECK(run_cli({"search", "--n", "3", "--root", root}).rc == 3);
}

TEST_CASE("exhaustive prints the extremal table entry") {
  CliResult r = run_cli({"exhaustive", "--n", "3", "--progress", "0"});
  CHECK(r.rc == 0);
  const std::string header =
      "# kind: or*\n# extremal star rows: 6\n# extremal or rows: 5\n"
      "# exhausted: yes\n";
  REQUIRE(r.out.substr(0, header.size()) == header);
  const BinaryMatrix best = parse_matrix(r.out.substr(header.size()));
  CHECK(best.rows() == 6);
  CHECK(check(best, RegularityKind::ORstar).holds);
  CHECK(r.err.find("# roots total=") != std::string::npos);

  // No unstarred count for psor*: the correspondence fails there.
  r = run_cli({"exhaustive", "--n", "3", "--kind", "psor*", "--progress", "0"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "# kind: psor*\n# extremal star rows: 5\n# exhausted: yes\n"
        "000\n111\n001\n011\n010\n");
}

TEST_CASE("back-and-forth drives the local search from flags") {
  const CliResult r = run_cli({"baf", "--n", "4", "--d", "3", "--seed", "5",
                               "--stall", "2", "--restarts", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out.substr(0, 24) == "# kind: sor*\n# rows: 8\n#");
  CHECK(r.err.find("# restarts=") != std::string::npos);
  CHECK(r.err.find("traces=") != std::string::npos);

  const CliResult hit = run_cli({"baf", "--n", "4", "--d", "3", "--seed", "1",
                                 "--target", "8"});
  CHECK(hit.rc == 0);
  CHECK(hit.out.find("# target 8 reached\n") != std::string::npos);

  // A restart cap without target keeps the run finite but "unreached".
  const CliResult miss = run_cli({"baf", "--n", "3", "--kind", "or*", "--d",
                                  "2", "--stall", "2", "--restarts", "1",
                                  "--target", "9"});
  CHECK(miss.rc == 1);
  CHECK(miss.out.find("# target 9 not reached\n") != std::string::npos);

  CHECK(run_cli({"baf", "--n", "4", "--kind", "sor"}).rc == 2);
  CHECK(run_cli({"baf", "--n", "4", "--restarts", "-1"}).rc == 2);
}

TEST_CASE("map renders the witness grid and optionally a pixel file") {
  CliResult r = run_cli({"map", fixture("extremal_5x3.txt")});
  CHECK(r.rc == 0);
  CHECK(r.out == "1\nB1\nBB1\nBB11\n");
  CHECK(r.err.empty());

  const std::string png = temp_file("ormat_cli_map.ppm");
  r = run_cli({"map", fixture("extremal_5x3.txt"), "--png", png});
  CHECK(r.rc == 0);
  {
    std::ifstream f(png, std::ios::binary);
    REQUIRE(f.good());
    std::string head(9, '\0');
    f.read(head.data(), 9);
    CHECK(head == "P6\n4 4\n25"); // 255 max value follows
  }
  CHECK(r.err.find("# wrote") != std::string::npos);
  std::filesystem::remove(png);

  CHECK(run_cli({"map", "/no/such/file"}).rc == 3);
}

TEST_CASE("blocks lists the embedded seeds and can emit one") {
  CliResult r = run_cli({"blocks"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "extremal_5x3 psor 5x3\n"
        "extremal_8x4 or 8x4\n"
        "sor_3x2 sor 3x2\n"
        "sor_33x8 sor 33x8\n"
        "psor_35x8 psor 35x8\n");

  r = run_cli({"blocks", "--emit", "sor33x8"}); // underscore-tolerant
  CHECK(r.rc == 0);
  CHECK(r.out == emit_matrix(find_block("sor_33x8").matrix));

  CHECK(run_cli({"blocks", "--emit", "no_such"}).rc == 2);
}

TEST_CASE("bounds tabulates sizes and growth rates") {
  CliResult r = run_cli({"bounds", "--levels", "3"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "# scheme: simple block: simple\n"
        "# level rows cols rate\n"
        "1 2 1 2.00000\n"
        "2 4 3 1.58740\n"
        "3 8 5 1.51572\n"
        "# asymptotic rate: 1.41421\n");

  r = run_cli({"bounds", "--block", "sor_33x8", "--levels", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "# scheme: main block: sor_33x8 (33x8)\n"
        "# level rows cols rate\n"
        "1 33 8 1.54815\n"
        "2 1089 18 1.47477\n"
        "# asymptotic rate: 1.41857\n");

  r = run_cli({"bounds", "--block", "psor_35x8", "--levels", "1"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("# scheme: modified") == 0); // inferred from the block kind
  CHECK(r.out.find("# asymptotic rate: 1.42694\n") != std::string::npos);

  // Row counts beyond the exact integer range print as '-'.
  r = run_cli({"bounds", "--block", "sor_33x8", "--levels", "14"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("\n12 ") != std::string::npos);
  CHECK(r.out.find("\n13 - ") != std::string::npos);

  CHECK(run_cli({"bounds", "--scheme", "main"}).rc == 2); // scheme needs block
}

TEST_CASE("top level usage errors and help") {
  CHECK(run_cli({}).rc == 2);
  CHECK(run_cli({"frobnicate"}).rc == 2);
  const CliResult help = run_cli({"--help"});
  CHECK(help.rc == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(help.out.find("exhaustive") != std::string::npos);
}

TEST_CASE("matrix output is byte-identical across repeated invocations") {
  const std::vector<std::vector<std::string>> cases = {
      {"search", "--n", "4", "--seed", "9"},
      {"search", "--n", "4"},
      {"exhaustive", "--n", "3", "--progress", "0"},
      {"baf", "--n", "4", "--d", "3", "--seed", "5", "--stall", "2",
       "--restarts", "2"},
      {"construct", "--scheme", "modified", "--block", "extremal_5x3",
       "--levels", "2"},
      {"bounds", "--levels", "8"},
  };
  for (const std::vector<std::string> &args : cases) {
    CAPTURE(args[0]);
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.rc == b.rc);
    CHECK(a.out == b.out);
  }
}
