#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "spin_tradeoff_cli_tests";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
  const std::string cmd = env_prefix + std::string(SPIN_TRADEOFF_CLI) + " " + args +
                          " > " + out.string() + " 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.output = slurp(out);
  return result;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("curve: schema, endpoints, and determinism") {
  const CliResult r = run_cli("curve --two-j 2 --points 11 --ho-overlay");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.output, '\n');
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "p,G,F,I,D,trace_xi,lambda_max,D_ho");

  const std::vector<std::string> first = split(lines[1], ',');
  REQUIRE(first.size() == 8);
  CHECK(std::stod(first[0]) == 0.0);
  CHECK(std::abs(std::stod(first[3])) <= 1e-9);   // I
  CHECK(std::abs(std::stod(first[4])) <= 1e-9);   // D
  CHECK(std::abs(std::stod(first[5]) - 3.0) <= 1e-9);  // trace_xi

  const std::vector<std::string> last = split(lines[11], ',');
  CHECK(std::stod(last[0]) == 1.0);
  CHECK(std::abs(std::stod(last[3]) - 1.0) <= 1e-9);
  CHECK(std::abs(std::stod(last[4]) - 1.0) <= 1e-9);
  CHECK(std::abs(std::stod(last[7]) - 1.0) <= 1e-9);  // D_ho at I=1

  const CliResult again = run_cli("curve --two-j 2 --points 11 --ho-overlay");
  CHECK(again.output == r.output);

  const CliResult no_overlay = run_cli("curve --two-j 2 --points 11");
  CHECK(split(no_overlay.output, '\n')[0] == "p,G,F,I,D,trace_xi,lambda_max");

  const CliResult js = run_cli("curve --two-j 2 --points 5 --format json");
  CHECK(js.exit_code == 0);
  CHECK(js.output.find("\"points\"") != std::string::npos);
  const CliResult js2 = run_cli("curve --two-j 2 --points 5 --format json");
  CHECK(js.output == js2.output);
}

TEST_CASE("curve: output file and I/O failure") {
  const fs::path out = scratch_dir() / "curve.csv";
  const CliResult r = run_cli("curve --two-j 4 --points 7 --out " + out.string());
  CHECK(r.exit_code == 0);
  const std::string content = slurp(out);
  CHECK(split(content, '\n').size() == 8);

  const CliResult bad =
      run_cli("curve --two-j 4 --points 7 --out /nonexistent_dir_xyz/curve.csv");
  CHECK(bad.exit_code == 4);
}

TEST_CASE("point: reference values and usage errors") {
  // j = 1/2 at G = G_min: the identity operation, F = 1, a = (1, 1)
  const CliResult r = run_cli("point --two-j 1 --g 0.5");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.output, '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "p,G,F,I,D,trace_xi,lambda_max,a0,a1");
  const std::vector<std::string> row = split(lines[1], ',');
  REQUIRE(row.size() == 9);
  CHECK(std::abs(std::stod(row[2]) - 1.0) <= 1e-8);  // F
  CHECK(std::abs(std::stod(row[7]) - 1.0) <= 1e-6);  // a0
  CHECK(std::abs(std::stod(row[8]) - 1.0) <= 1e-6);  // a1

  // j = 1/2 near G_max: pure estimation, F -> 2/3, a -> (sqrt(2), 0). The
  // frontier has a square-root cusp at the endpoint, so a 7e-8 step in G
  // still moves F by a few 1e-4.
  const CliResult hi = run_cli("point --two-j 1 --g 0.6666666");
  REQUIRE(hi.exit_code == 0);
  const std::vector<std::string> hrow = split(split(hi.output, '\n')[1], ',');
  CHECK(std::abs(std::stod(hrow[2]) - 2.0 / 3.0) <= 1e-3);
  CHECK(std::abs(std::stod(hrow[7]) - std::sqrt(2.0)) <= 1e-2);
  CHECK(std::abs(std::stod(hrow[8])) <= 1e-2);

  // paper reference: j = 2 at G = 1/2 reaches F about 0.795
  const CliResult paper = run_cli("point --two-j 4 --g 0.5");
  REQUIRE(paper.exit_code == 0);
  const std::vector<std::string> prow = split(split(paper.output, '\n')[1], ',');
  CHECK(std::abs(std::stod(prow[2]) - 0.795) <= 0.003);

  CHECK(run_cli("point --two-j 4 --g 0.9").exit_code == 2);
  CHECK(run_cli("point --two-j 4").exit_code == 2);

  const CliResult js = run_cli("point --two-j 4 --g 0.5 --format json");
  CHECK(js.exit_code == 0);
  CHECK(js.output.find("\"a\"") != std::string::npos);
}

TEST_CASE("cg-table: values, symmetry, and transpose identity") {
  const CliResult r = run_cli("cg-table --two-j 1");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.output, '\n');
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "-0.5,0.5");
  const std::vector<std::string> row0 = split(lines[1], ',');
  CHECK(std::stod(row0[0]) == 1.0);
  CHECK(std::abs(std::stod(row0[1]) - 0.707106781187) <= 1e-10);

  // the emitted numeric block transposes to itself, byte for byte
  const CliResult big = run_cli("cg-table --two-j 5");
  const std::vector<std::string> blines = split(big.output, '\n');
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 1; i < blines.size(); ++i)
    if (!blines[i].empty()) cells.push_back(split(blines[i], ','));
  REQUIRE(cells.size() == 6);
  CHECK(cells[0][0] == "1");
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = 0; b < cells.size(); ++b) CHECK(cells[a][b] == cells[b][a]);
}

TEST_CASE("verify: deterministic reports, exit codes, and gating") {
  const CliResult r = run_cli("verify --two-j 1 --samples 2000 --seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("RESULT PASS") != std::string::npos);
  CHECK(r.output.find("FAIL    ") == std::string::npos);
  CHECK(r.output.find("SKIPPED") == std::string::npos);

  const CliResult again = run_cli("verify --two-j 1 --samples 2000 --seed 42");
  CHECK(again.output == r.output);

  // beyond 2j = 6 the full-space checks are skipped, explicitly
  const CliResult big = run_cli("verify --two-j 14 --samples 2000 --seed 42");
  CHECK(big.exit_code == 0);
  CHECK(big.output.find("SKIPPED ansatz_overlap") != std::string::npos);
  CHECK(big.output.find("RESULT PASS") != std::string::npos);

  const CliResult js = run_cli("verify --two-j 1 --samples 2000 --seed 7 --format json");
  CHECK(js.exit_code == 0);
  CHECK(js.output.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("verify: seed from the environment, flag wins") {
  const CliResult flagged = run_cli("verify --two-j 1 --samples 2000 --seed 99");
  const CliResult env = run_cli("verify --two-j 1 --samples 2000",
                                "SPIN_TRADEOFF_SEED=99 ");
  CHECK(env.exit_code == 0);
  CHECK(env.output == flagged.output);

  const CliResult both = run_cli("verify --two-j 1 --samples 2000 --seed 42",
                                 "SPIN_TRADEOFF_SEED=99 ");
  const CliResult seed42 = run_cli("verify --two-j 1 --samples 2000 --seed 42");
  CHECK(both.output == seed42.output);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("curve").exit_code == 2);                       // missing --two-j
  CHECK(run_cli("curve --two-j -3").exit_code == 2);
  CHECK(run_cli("curve --two-j 2 --points 1").exit_code == 2);
  CHECK(run_cli("curve --two-j 2 --format yaml").exit_code == 2);
  CHECK(run_cli("verify --two-j 2 --samples 10").exit_code == 2);
}
