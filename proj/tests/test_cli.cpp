#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace orq;
using namespace orq::cli;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() : dir(fs::temp_directory_path() / ("orq_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string run_query(const std::string& index, const std::string& queries, int& code) {
  std::ostringstream out, err;
  code = cmd_query({index, queries, ""}, out, err);
  return code == kOk ? out.str() : err.str();
}

nlohmann::json without_clocks(nlohmann::json j) {
  if (!j.is_object()) return j;
  nlohmann::json r = nlohmann::json::object();
  for (auto& [k, v] : j.items())
    if (k.find("seconds") == std::string::npos && k.find("latency") == std::string::npos) r[k] = without_clocks(v);
  return r;
}

}  // namespace

TEST_CASE("point file parsing") {
  std::istringstream ok("# header\n\n3 1   # trailing\n 0 18446744073709551615\n");
  CHECK(parse_points(ok) == std::vector<Point>{{3, 1}, {0, 18446744073709551615ull}});
  std::istringstream bad("1 2\n3\n");
  CHECK_THROWS_WITH_AS(parse_points(bad), doctest::Contains("line 2:"), DataError);
  std::istringstream neg("1 -2\n");
  CHECK_THROWS_WITH_AS(parse_points(neg), doctest::Contains("line 1:"), DataError);
  std::istringstream big("1 18446744073709551616\n");
  CHECK_THROWS_AS(parse_points(big), DataError);
  std::istringstream dup("3 1\n3 1\n");
  CHECK_THROWS_WITH_AS(parse_points(dup), doctest::Contains("line 2: duplicate point"), DataError);
}

TEST_CASE("query file parsing") {
  std::istringstream in("report 1 2 3 4\nsorted 0 3 1 3 2\nsorted 0 3 1 3\n# c\nsucc 0 0 0 0\n");
  const auto qs = parse_queries(in);
  REQUIRE(qs.size() == 4);
  CHECK(qs[1].limit == 2u);
  CHECK_FALSE(qs[2].limit.has_value());
  std::istringstream extra("succ 1 2 3 4 5\n");
  CHECK_THROWS_WITH_AS(parse_queries(extra), doctest::Contains("line 1:"), DataError);
  std::istringstream unknown("\nrange 1 2 3 4\n");
  CHECK_THROWS_WITH_AS(parse_queries(unknown), doctest::Contains("line 2:"), DataError);
}

TEST_CASE("build and query examples") {
  TempDir t;
  const auto pts = t.write("p.txt", "0 0\n3 1\n1 2\n2 3\n");
  std::ostringstream err;
  for (std::string type : {"report", "succ", "sorted"})
    REQUIRE(cmd_build({pts, type, t.path(type + ".idx"), {}}, err) == kOk);
  int code = 0;
  CHECK(run_query(t.path("report.idx"), t.write("q1", "report 0 3 0 3\nreport 5 4 0 0\n"), code) ==
        "0,0 3,1 1,2 2,3\nnone\n");
  CHECK(run_query(t.path("succ.idx"), t.write("q2", "succ 1 3 0 3\n"), code) == "3,1\n");
  CHECK(run_query(t.path("sorted.idx"), t.write("q3", "sorted 0 3 1 3 2\nsorted 0 3 1 3 0\n"), code) ==
        "3,1 1,2\nnone\n");
  CHECK(run_query(t.path("report.idx"), t.path("q2"), code).find("'succ' query on a 'report' index") !=
        std::string::npos);
  CHECK(code == kData);

  std::ostringstream out;
  CHECK(cmd_query({t.path("succ.idx"), t.path("q2"), t.path("res.txt")}, out, err) == kOk);
  std::ifstream res(t.path("res.txt"));
  std::string line;
  std::getline(res, line);
  CHECK(line == "3,1");

  CHECK(cmd_build({t.write("e.txt", ""), "succ", t.path("e.idx"), {}}, err) == kOk);
  CHECK(run_query(t.path("e.idx"), t.path("q2"), code) == "none\n");
}

TEST_CASE("build errors") {
  TempDir t;
  std::ostringstream err;
  CHECK(cmd_build({t.write("d.txt", "3 1\n3 1\n"), "report", t.path("d.idx"), {}}, err) == kData);
  CHECK(err.str().find("line 2") != std::string::npos);
  CHECK(cmd_build({t.write("p.txt", "1 1\n"), "bogus", t.path("x.idx"), {}}, err) == kUsage);
  CHECK(cmd_build({t.path("p.txt"), "report", t.path("x.idx"), {"nope=1"}}, err) == kUsage);
  CHECK(cmd_build({t.path("missing.txt"), "report", t.path("x.idx"), {}}, err) == kData);
  CHECK(cmd_build({t.path("p.txt"), "report", t.path("x.idx"), {"lg_cap=12", "escalation=3"}}, err) == kOk);
  int code = 0;
  run_query(t.write("junk.idx", "not an index"), t.write("q", "report 0 1 0 1\n"), code);
  CHECK(code == kData);
}

TEST_CASE("verify") {
  std::ostringstream out, err;
  CHECK(cmd_verify({64, 20, 7, "all"}, out, err) == kOk);
  CHECK(cmd_verify({1, 1, 1, "all"}, out, err) == kOk);
  CHECK(cmd_verify({0, 3, 1, "all"}, out, err) == kOk);
  CHECK(cmd_verify({200, 4, 2, "sorted"}, out, err) == kOk);
  CHECK(cmd_verify({10, 1, 1, "nope"}, out, err) == kUsage);
  CHECK(err.str().find("mismatch") == std::string::npos);
}

TEST_CASE("bench counters are deterministic") {
  auto bench = [](uint64_t seed) {
    std::ostringstream out, err;
    BenchArgs a;
    a.n = 1 << 12;
    a.queries = 50;
    a.seed = seed;
    a.base_n = 256;
    a.json = true;
    REQUIRE(cmd_bench(a, out, err) == kOk);
    return nlohmann::json::parse(out.str());
  };
  const auto a = bench(4), b = bench(4);
  CHECK(without_clocks(a) == without_clocks(b));
  for (const char* e : {"report", "succ", "sorted"}) {
    CHECK(a["engines"][e]["build_counters"]["word_ops"].get<uint64_t>() > 0);
    CHECK(a["engines"][e]["query"]["mean_probes"].get<double>() > 0);
  }
  CHECK(a["succ_probe_growth"]["ratio"].get<double>() > 0);
}
