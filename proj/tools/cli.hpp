#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orq/common.hpp"
#include "orq/config.hpp"

namespace orq::cli {

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kMismatch = 3 };

// Malformed input; the message names the offending line.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point file: one "x y" pair per line, '#' starts a comment, blank lines ignored.
// Throws DataError on malformed lines and on duplicate points.
std::vector<Point> parse_points(std::istream& in);

struct Query {
  std::string kind;  // report | succ | sorted
  uint64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  std::optional<uint64_t> limit;
};
std::vector<Query> parse_queries(std::istream& in);

struct BuildArgs {
  std::string input, type, out;
  std::vector<std::string> config;  // KEY=VAL
};
struct QueryArgs {
  std::string index, queries, out;
};
struct VerifyArgs {
  uint64_t n = 64, cases = 10, seed = 1;
  std::string type = "all";
};
struct BenchArgs {
  uint64_t n = 1 << 16, sigma = 0, queries = 1000, seed = 1, base_n = 1 << 10;
  std::string type = "all";
  bool json = false;
};

// Each returns an exit code and writes diagnostics to err.
int cmd_build(const BuildArgs& a, std::ostream& err);
int cmd_query(const QueryArgs& a, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err);

// Parses argv and dispatches.
int run(int argc, char** argv);

}  // namespace orq::cli
