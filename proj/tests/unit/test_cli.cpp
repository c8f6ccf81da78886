#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <stdexcept>

#include "doctest.h"
#include "flashmod/cli.hpp"
#include "json.hpp"

using namespace flashmod;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "flashmod");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("simulate writes one row per q") {
  const auto path = temp_file("flashmod_cli_eta.csv");
  const CliResult r = run({"simulate", "--code", "self-randomized", "--k", "3", "--l", "2", "--q",
                           "2,4,8,16,32", "--cycles", "100", "--seed", "7", "--out", path.string()});
  CHECK(r.code == 0);
  const std::string csv = slurp(path);
  CHECK(count_lines(csv) == 6);
  CHECK(csv.starts_with("code,k,l,q,n,cycles,mean_r_inc,mean_r_total,eta,gamma,seed\n"));

  // Byte-identical on rerun.
  const auto again = temp_file("flashmod_cli_eta2.csv");
  run({"simulate", "--code", "self-randomized", "--k", "3", "--q", "2,4,8,16,32", "--cycles", "100",
       "--seed", "7", "--out", again.string(), "--threads", "3"});
  CHECK(slurp(again) == csv);
  std::filesystem::remove(path);
  std::filesystem::remove(again);
}

TEST_CASE("simulate json output") {
  const CliResult r = run({"simulate", "--code", "load-balancing", "--k", "2", "--q", "4,8",
                           "--cycles", "20", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto rows = nlohmann::json::parse(r.out);
  CHECK(rows.size() == 2);
  CHECK(rows[1]["q"] == 8);
  CHECK(rows[0]["code"] == "load-balancing");
}

TEST_CASE("simulate argument errors exit 2") {
  CHECK(run({"simulate", "--code", "self-randomized", "--k", "3", "--q", "1", "--cycles", "10"}).code == 2);
  CHECK(run({"simulate", "--code", "flm", "--k", "3", "--q", "4"}).code == 2);
  CHECK(run({"simulate", "--code", "sr", "--k", "2", "--q", "4", "--dist", "0.5,0.4,0,0"}).code == 2);
  CHECK(run({"simulate", "--code", "sr", "--k", "2", "--q", "4", "--dist", "0.5,0.5"}).code == 2);
  CHECK(run({"simulate", "--code", "sr", "--k", "2", "--q", "4", "--dist-file",
             "/nonexistent/dist.txt"}).code == 2);
  CHECK(run({"simulate", "--code", "sr", "--k", "2", "--l", "3", "--q", "4"}).code == 2);
  const CliResult missing = run({"simulate", "--k", "2"});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("simulate reads a distribution file") {
  const auto path = temp_file("flashmod_cli_dist.txt");
  {
    std::ofstream f(path);
    f << "# four values\n0.4\n0.3\n0.2\n0.1\n";
  }
  const CliResult r = run({"simulate", "--code", "sr", "--k", "2", "--q", "8", "--cycles", "10",
                           "--dist-file", path.string()});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 2);
  std::filesystem::remove(path);
}

TEST_CASE("seed falls back to FLASHMOD_SEED") {
  setenv("FLASHMOD_SEED", "1234", 1);
  const CliResult r = run({"simulate", "--code", "sr", "--k", "1", "--q", "4", "--cycles", "5"});
  unsetenv("FLASHMOD_SEED");
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",1234\n") != std::string::npos);
}

TEST_CASE("unwritable output is a runtime failure") {
  CHECK(run({"simulate", "--code", "sr", "--k", "1", "--q", "4", "--cycles", "5", "--out",
             "/nonexistent-dir/out.csv"}).code == 1);
}

TEST_CASE("bounds prints d(c)") {
  const CliResult r = run({"bounds", "--dc", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2.718281828") != std::string::npos);
  const CliResult list = run({"bounds", "--dc", "0.5,1,2"});
  CHECK(list.code == 0);
  CHECK(list.out.find("solve_dc c=0.5 ") != std::string::npos);
  CHECK(list.out.find("solve_dc c=2 ") != std::string::npos);
  const CliResult all = run({"bounds", "--k", "3", "--lambert", "2.718281828459045", "--maxload",
                             "10000,10000,2"});
  CHECK(all.code == 0);
  CHECK(all.out.find("arbitrary_change=3") != std::string::npos);
  CHECK(all.out.find("regime=two-choice") != std::string::npos);
  CHECK(run({"bounds", "--lambert", "-1"}).code == 2);
  CHECK(run({"bounds", "--maxload", "10000,10"}).code == 2);
}

TEST_CASE("ballsbins sweeps") {
  const CliResult over = run({"ballsbins", "--n", "8,16", "--d", "1,2", "--q", "4", "--trials", "20"});
  CHECK(over.code == 0);
  CHECK(count_lines(over.out) == 5);
  const CliResult thrown = run({"ballsbins", "--mode", "throw", "--n", "100", "--m", "100,1000",
                                "--trials", "5", "--format", "json"});
  CHECK(thrown.code == 0);
  CHECK(nlohmann::json::parse(thrown.out).size() == 4);
  CHECK(run({"ballsbins", "--mode", "throw", "--n", "100"}).code == 2);
  CHECK(run({"ballsbins", "--mode", "sideways", "--n", "100", "--q", "4"}).code == 2);
}

TEST_CASE("roundtrip reports pass counts") {
  const CliResult r = run({"roundtrip", "--k", "1,2", "--q", "4", "--writes", "2000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("roundtrip: 4 passed, 0 failed") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
}
