#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "orq/orq.hpp"

namespace orq {

RankSpaceMap::RankSpaceMap(const std::vector<Point>& pts, std::vector<uint64_t>& x_of_y) {
  const uint64_t n = pts.size();
  std::vector<uint64_t> by_x(n), by_y(n);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::iota(by_y.begin(), by_y.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&](uint64_t i, uint64_t j) {
    return std::pair(pts[i].x, pts[i].y) < std::pair(pts[j].x, pts[j].y);
  });
  for (uint64_t r = 1; r < n; ++r)
    if (pts[by_x[r - 1]] == pts[by_x[r]]) throw std::invalid_argument("duplicate point");
  std::sort(by_y.begin(), by_y.end(), [&](uint64_t i, uint64_t j) {
    return std::pair(pts[i].y, pts[i].x) < std::pair(pts[j].y, pts[j].x);
  });
  count_ops(2 * n * bits_for(n));

  std::vector<uint64_t> xrank(n);
  xs_.resize(n);
  ys_.resize(n);
  for (uint64_t r = 0; r < n; ++r) {
    xrank[by_x[r]] = r;
    xs_[r] = pts[by_x[r]].x;
    ys_[r] = pts[by_y[r]].y;
  }
  x_of_y.resize(n);
  for (uint64_t r = 0; r < n; ++r) x_of_y[r] = xrank[by_y[r]];
}

bool RankSpaceMap::to_rank(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2, uint64_t& a, uint64_t& b,
                           uint64_t& c, uint64_t& d) const {
  if (x1 > x2 || y1 > y2) return false;
  auto bounds = [](const std::vector<uint64_t>& v, uint64_t lo, uint64_t hi, uint64_t& s, uint64_t& e) {
    const auto first = std::lower_bound(v.begin(), v.end(), lo);
    const auto last = std::upper_bound(first, v.end(), hi);
    if (first == last) return false;
    s = static_cast<uint64_t>(first - v.begin());
    e = static_cast<uint64_t>(last - v.begin()) - 1;
    return true;
  };
  return bounds(xs_, x1, x2, a, b) && bounds(ys_, y1, y2, c, d);
}

const char* type_name(IndexType t) {
  switch (t) {
    case IndexType::kReport:
      return "report";
    case IndexType::kSucc:
      return "succ";
    case IndexType::kSorted:
      return "sorted";
  }
  return "unknown";
}

IndexType parse_type(const std::string& s) {
  if (s == "report") return IndexType::kReport;
  if (s == "succ") return IndexType::kSucc;
  if (s == "sorted") return IndexType::kSorted;
  throw std::invalid_argument("unknown index type: " + s);
}

std::vector<Point> ReportIndex::report(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const {
  uint64_t a, b, c, d;
  std::vector<Point> out;
  if (!map_.to_rank(x1, x2, y1, y2, a, b, c, d)) return out;
  engine_.report(a, b, c, d, [&](const Point& p) { out.push_back(map_.original(p)); });
  return out;
}

std::optional<Point> SuccessorIndex::successor(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const {
  uint64_t a, b, c, d;
  Point p;
  if (!map_.to_rank(x1, x2, y1, y2, a, b, c, d) || !engine_.successor(a, b, c, d, p)) return std::nullopt;
  return map_.original(p);
}

PointStream SortedIndex::sorted(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const {
  uint64_t a, b, c, d;
  if (!map_.to_rank(x1, x2, y1, y2, a, b, c, d)) return empty_stream();
  return [this, s = engine_.sorted(a, b, c, d)](Point& out) mutable {
    Point p;
    if (!s(p)) return false;
    out = map_.original(p);
    return true;
  };
}

std::vector<Point> SortedIndex::sorted(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2,
                                       uint64_t limit) const {
  if (limit == 0) return {};
  auto s = sorted(x1, x2, y1, y2);
  return take(s, limit);
}

ReportIndex build_report(const std::vector<Point>& pts, const Config& cfg) {
  std::vector<uint64_t> x;
  RankSpaceMap map(pts, x);
  return {std::move(map), build_general_report(x, cfg), cfg};
}

SuccessorIndex build_successor(const std::vector<Point>& pts, const Config& cfg) {
  std::vector<uint64_t> x;
  RankSpaceMap map(pts, x);
  return {std::move(map), build_general_succ(x, cfg), cfg};
}

SortedIndex build_sorted_report(const std::vector<Point>& pts, const Config& cfg) {
  std::vector<uint64_t> x;
  RankSpaceMap map(pts, x);
  return {std::move(map), build_general_sorted(x, cfg), cfg};
}

}  // namespace orq
