#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "idforge/algebra.hpp"
#include "idforge/models.hpp"

using namespace idforge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = IDFORGE_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "idforge-cli-test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  fs::path out = work_dir() / "stdout.txt";
  fs::path err = work_dir() / "stderr.txt";
  std::string cmd = kCli + " " + args + " > " + out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, slurp(out), slurp(err)};
}

json slurp_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return json::parse(in);
}

} // namespace

TEST_CASE("build: exact LJY3 round-trips to the in-memory tables") {
  fs::path path = work_dir() / "ljy3.json";
  RunResult r = run("build --family ljy --n 3 --field q-sqrt2 --out " + path.string());
  REQUIRE(r.exit_code == 0);

  json j = slurp_json(path);
  CHECK(j.at("dim") == 7);
  CHECK(j.at("field") == "q-sqrt2");
  CHECK(j.at("manifest").at("command") == "build");
  CHECK(j.at("manifest").contains("seed"));

  QAlgebra loaded = qalgebra_from_json(j);
  QAlgebra direct = build_LJY(3);
  REQUIRE(loaded.dim == direct.dim);
  for (int i = 0; i < direct.dim; ++i)
    for (int k = 0; k < direct.dim; ++k) {
      CHECK(loaded.bin_row(i, k) == direct.bin_row(i, k));
      for (int m = 0; m < direct.dim; ++m) CHECK(loaded.ter_row(i, k, m) == direct.ter_row(i, k, m));
    }
}

TEST_CASE("build: modular LY4 file carries the field spec") {
  fs::path path = work_dir() / "ly4m.json";
  RunResult r = run("build --family ly --n 4 --field gfp:103:sqrt2=38 --out " + path.string());
  REQUIRE(r.exit_code == 0);
  json j = slurp_json(path);
  CHECK(j.at("dim") == 30);
  CHECK(j.at("field") == "gfp:103:sqrt2=38");
  ModAlgebra loaded = mod_algebra_from_json(j);
  CHECK(loaded.fld.modulus() == 103);
}

TEST_CASE("build: the trivial case and malformed specs are usage errors") {
  CHECK(run("build --family ly --n 2").exit_code == 2);
  CHECK(run("build --family nonsense --n 3").exit_code == 2);
  CHECK(run("build --family ly --n 4 --field gfp:103:sqrt2=39").exit_code == 2);
  CHECK(run("bogus-subcommand").exit_code == 2);
  CHECK(run("reproduce").exit_code == 2);
  CHECK(run("reproduce --paper-section 7").exit_code == 2);
}

TEST_CASE("verify: suites pass and failures exit nonzero with a witness") {
  fs::path ly4 = work_dir() / "ly4m.json";
  run("build --family ly --n 4 --field gfp:103:sqrt2=38 --out " + ly4.string());
  RunResult ok = run("verify --algebra " + ly4.string() + " --identities LY --mode random");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("LY6: pass") != std::string::npos);

  fs::path ljy3 = work_dir() / "ljy3.json";
  run("build --family ljy --n 3 --field q-sqrt2 --out " + ljy3.string());
  RunResult bad =
      run("verify --algebra " + ljy3.string() + " --identities LieJordan-linking --mode exhaustive");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.out.find("witness") != std::string::npos);

  RunResult mixed = run("verify --algebra " + ljy3.string() +
                        " --identities Malcev,FilippovH --mode random");
  CHECK(mixed.exit_code == 0);
}

TEST_CASE("find: degree-3 search on LY4 recovers one identity") {
  fs::path ly4 = work_dir() / "ly4m.json";
  run("build --family ly --n 4 --field gfp:103:sqrt2=38 --out " + ly4.string());
  fs::path report = work_dir() / "find3.json";
  RunResult r = run("find --algebra " + ly4.string() + " --degree 3 --ops mixed --out " +
                    report.string());
  REQUIRE(r.exit_code == 0);
  json j = slurp_json(report);
  CHECK(j.at("monomials") == 6);
  CHECK(j.at("rank") == 5);
  CHECK(j.at("nullity") == 1);
  CHECK(j.at("new_generators").size() == 1);
  CHECK(j.at("manifest").at("known") == "builtin-catalog");
}

TEST_CASE("find: ranks and dimensions are seed-independent") {
  fs::path ly4 = work_dir() / "ly4m.json";
  run("build --family ly --n 4 --field gfp:103:sqrt2=38 --out " + ly4.string());
  json a, b;
  for (int seed : {2, 3}) {
    fs::path report = work_dir() / ("seed" + std::to_string(seed) + ".json");
    RunResult r = run("--seed " + std::to_string(seed) + " find --algebra " + ly4.string() +
                      " --degree 4 --ops mixed --out " + report.string());
    REQUIRE(r.exit_code == 0);
    (seed == 2 ? a : b) = slurp_json(report);
  }
  CHECK(a.at("rank") == b.at("rank"));
  CHECK(a.at("nullity") == b.at("nullity"));
  CHECK(a.at("lifted_dimension") == b.at("lifted_dimension"));
  CHECK(a.at("new_generators").size() == b.at("new_generators").size());
  CHECK(a.at("seed") == 2);
  CHECK(b.at("seed") == 3);
}

TEST_CASE("reproduce: section tables are written and mismatches exit nonzero") {
  fs::path dir = work_dir() / "repro";
  RunResult r5 = run("reproduce --paper-section 5 --out-dir " + dir.string());
  CHECK(r5.exit_code == 0);
  CHECK(fs::exists(dir / "section-5.txt"));
  CHECK(r5.out.find("all values reproduced") != std::string::npos);
}
