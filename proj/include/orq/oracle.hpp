#pragma once

// Definitional reference answers. Nothing here shares code with the indexes.

#include <cstdint>
#include <optional>
#include <vector>

#include "orq/common.hpp"

namespace orq::oracle {

struct Rect {
  uint64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
};

std::vector<Point> brute_report(const std::vector<Point>& pts, const Rect& q);
std::optional<Point> brute_successor(const std::vector<Point>& pts, const Rect& q);
// First k points of N ∩ Q by increasing y (ties by x).
std::vector<Point> brute_sorted(const std::vector<Point>& pts, const Rect& q, uint64_t k);

uint64_t brute_rank(const std::vector<uint64_t>& a, uint64_t c, uint64_t i);
int64_t brute_select(const std::vector<uint64_t>& a, uint64_t c, uint64_t k);
uint64_t brute_partial_rank(const std::vector<uint64_t>& a, uint64_t j);
uint64_t brute_rmq(const std::vector<uint64_t>& a, uint64_t i, uint64_t j, bool max);
int64_t brute_pred(const std::vector<uint64_t>& sorted, uint64_t x);
int64_t brute_succ(const std::vector<uint64_t>& sorted, uint64_t x);

}  // namespace orq::oracle
