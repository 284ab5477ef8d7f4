#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = BURSTLAB_CLI;
const std::string kFixture = std::string(BURSTLAB_TEST_DATA) + "/synthetic_10k.txt";

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const std::string& args) {
  static int counter = 0;
  const auto base = fs::temp_directory_path() / ("burstlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string cmd = kCli + " " + args + " >" + base.string() + ".out 2>" + base.string() + ".err";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(base.string() + ".out");
  r.err = slurp(base.string() + ".err");
  return r;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("burstlab_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("--help prints usage and exits 0") {
  const auto r = run("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("analyze") != std::string::npos);
}

TEST_CASE("missing input: data error naming the path") {
  const auto r = run("ingest /no/such/file.txt");
  CHECK(r.code == 2);
  CHECK(r.err.find("/no/such/file.txt") != std::string::npos);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["code"] == 2);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("").code == 1);
  CHECK(run("lv " + kFixture + " --role sideways").code == 1);
  CHECK(run("synth poisson --n 2").code == 1);
  CHECK(run("analyze " + kFixture + " --bins 5,1").code == 1);
}

TEST_CASE("strict ingest fails on the fixture's malformed lines") {
  const auto r = run("ingest " + kFixture + " --strict");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 103") != std::string::npos);
}

TEST_CASE("ingest prints the summary as JSON") {
  const auto r = run("ingest " + kFixture);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const std::size_t rt = j["channels"]["rt"]["events"];
  const std::size_t mt = j["channels"]["mention"]["events"];
  const std::size_t re = j["channels"]["reply"]["events"];
  CHECK(rt + mt + re == j["total_events"].get<std::size_t>());
  CHECK(j["skipped"]["malformed"] == 3);
  CHECK(j["skipped"]["self"] == 5);
  CHECK(run("ingest " + kFixture + " --self keep").out.find("\"self\": 0") != std::string::npos);
}

TEST_CASE("trains, lv, null, synth emit CSV") {
  const auto dump = scratch("trains.csv");
  auto r = run("trains " + kFixture + " --role passive --channel rt --dump " + dump.string() + " --with-times");
  REQUIRE(r.code == 0);
  CHECK(slurp(dump).rfind("user_id,role,channel,n_spikes,timestamps\n", 0) == 0);

  r = run("lv " + kFixture + " --role active --channel mention");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("user_id,role,channel,n_spikes,lv,exclusion\n", 0) == 0);
  CHECK(r.out.find(",NA,too_few_spikes\n") != std::string::npos);

  const auto n1 = run("null " + kFixture + " --role passive --channel all --seed 4");
  const auto n2 = run("null " + kFixture + " --role passive --channel all --seed 4");
  REQUIRE(n1.code == 0);
  CHECK(n1.out == n2.out);

  r = run("synth gamma --n 500 --rate 2 --shape 0.5 --seed 3 --trains 4");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 5);
  CHECK(r.out.find("synthetic,all,500,") != std::string::npos);
}

TEST_CASE("analyze then analyze --manifest give identical files") {
  const auto a = scratch("analyze_a");
  const auto b = scratch("analyze_b");
  REQUIRE(run("analyze " + kFixture + " --out " + a.string() + " --null-seeds 1,2,3").code == 0);
  for (auto f : {"bins.csv", "lv_hist.csv", "zipf.csv", "zscores.csv", "correlations.csv", "summary.json", "manifest.json"}) {
    CHECK(fs::exists(a / f));
  }
  REQUIRE(run("analyze --manifest " + (a / "manifest.json").string() + " --out " + b.string()).code == 0);
  for (auto f : {"bins.csv", "lv_hist.csv", "zipf.csv", "zscores.csv", "correlations.csv", "summary.json"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("export formats") {
  auto r = run("export " + kFixture + " --format json --no-null");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["tables"].size() == 6);
  r = run("export " + kFixture + " --format gnuplot");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# zipf\n", 0) == 0);
}
