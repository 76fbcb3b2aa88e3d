#include "orq/oracle.hpp"

#include <algorithm>

namespace orq::oracle {

namespace {
bool inside(const Point& p, const Rect& q) {
  return q.x1 <= p.x && p.x <= q.x2 && q.y1 <= p.y && p.y <= q.y2;
}
}  // namespace

std::vector<Point> brute_report(const std::vector<Point>& pts, const Rect& q) {
  std::vector<Point> out;
  for (const auto& p : pts)
    if (inside(p, q)) out.push_back(p);
  return out;
}

std::optional<Point> brute_successor(const std::vector<Point>& pts, const Rect& q) {
  std::optional<Point> best;
  for (const auto& p : pts)
    if (inside(p, q) && (!best || p.y < best->y || (p.y == best->y && p.x < best->x))) best = p;
  return best;
}

std::vector<Point> brute_sorted(const std::vector<Point>& pts, const Rect& q, uint64_t k) {
  auto out = brute_report(pts, q);
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

uint64_t brute_rank(const std::vector<uint64_t>& a, uint64_t c, uint64_t i) {
  uint64_t r = 0;
  for (uint64_t j = 0; j <= i && j < a.size(); ++j) r += a[j] == c;
  return r;
}

int64_t brute_select(const std::vector<uint64_t>& a, uint64_t c, uint64_t k) {
  if (k == 0) return -1;
  for (uint64_t j = 0; j < a.size(); ++j)
    if (a[j] == c && --k == 0) return static_cast<int64_t>(j);
  return kNotFound;
}

uint64_t brute_partial_rank(const std::vector<uint64_t>& a, uint64_t j) {
  return brute_rank(a, a[j], j);
}

uint64_t brute_rmq(const std::vector<uint64_t>& a, uint64_t i, uint64_t j, bool max) {
  uint64_t best = i;
  for (uint64_t k = i + 1; k <= j; ++k)
    if (max ? a[k] > a[best] : a[k] < a[best]) best = k;
  return best;
}

int64_t brute_pred(const std::vector<uint64_t>& sorted, uint64_t x) {
  int64_t r = kNotFound;
  for (uint64_t j = 0; j < sorted.size(); ++j)
    if (sorted[j] <= x) r = static_cast<int64_t>(j);
  return r;
}

int64_t brute_succ(const std::vector<uint64_t>& sorted, uint64_t x) {
  for (uint64_t j = 0; j < sorted.size(); ++j)
    if (x <= sorted[j]) return static_cast<int64_t>(j);
  return kNotFound;
}

}  // namespace orq::oracle
