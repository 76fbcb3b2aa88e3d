#include "orq/baseline.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>

namespace orq {

template <class T>
ExtremumTree<T>::ExtremumTree(std::span<const T> values, bool max) : n_(values.size()), max_(max) {
  while (leaves_ < n_) leaves_ <<= 1;
  const T pad = max ? T{0} : std::numeric_limits<T>::max();
  t_.assign(2 * leaves_, pad);
  std::copy(values.begin(), values.end(), t_.begin() + leaves_);
  for (uint64_t v = leaves_ - 1; v >= 1; --v)
    t_[v] = max ? std::max(t_[2 * v], t_[2 * v + 1]) : std::min(t_[2 * v], t_[2 * v + 1]);
  count_ops(2 * leaves_);
}

template <class T>
int64_t ExtremumTree<T>::first(uint64_t i, T a) const {
  if (i >= n_) return kNotFound;
  uint64_t v = leaves_ + i;
  uint64_t steps = 1;
  if (!hit(t_[v], a)) {
    for (;;) {
      while (v & 1) v >>= 1, ++steps;
      if (v == 0) {
        count_ops(steps);
        return kNotFound;
      }
      ++v;
      if (hit(t_[v], a)) break;
    }
    while (v < leaves_) v = hit(t_[2 * v], a) ? 2 * v : 2 * v + 1, ++steps;
  }
  count_ops(steps);
  return v - leaves_ < n_ ? static_cast<int64_t>(v - leaves_) : kNotFound;
}

template class ExtremumTree<uint32_t>;
template class ExtremumTree<uint64_t>;

RangeTreeBaseline::RangeTreeBaseline(std::vector<Point> points) : n_(points.size()) {
  for (const Point& p : points)
    if (p.x > UINT32_MAX || p.y > UINT32_MAX) throw std::invalid_argument("value overflow");
  std::sort(points.begin(), points.end());
  count_ops(n_ * (1 + std::bit_width(n_)));
  std::vector<uint32_t> ys, xi;
  for (const Point& p : points) {
    if (xs_.empty() || xs_.back() != p.x) {
      xs_.push_back(static_cast<uint32_t>(p.x));
      prefix_.push_back(static_cast<uint32_t>(ys.size()));
    }
    xi.push_back(static_cast<uint32_t>(xs_.size() - 1));
    ys.push_back(static_cast<uint32_t>(p.y));
  }
  prefix_.push_back(static_cast<uint32_t>(n_));
  ys_.push_back(std::move(ys));
  xi_.push_back(std::move(xi));
  // Merge neighbouring groups until one group spans every distinct x.
  for (uint64_t g = 1; g < xs_.size(); g <<= 1) {
    const auto& py = ys_.back();
    const auto& px = xi_.back();
    std::vector<uint32_t> ny(n_), nx(n_);
    for (uint64_t lo = 0; lo < xs_.size(); lo += 2 * g) {
      const uint64_t a = prefix_[lo], m = prefix_[std::min<uint64_t>(lo + g, xs_.size())],
                     e = prefix_[std::min<uint64_t>(lo + 2 * g, xs_.size())];
      uint64_t i = a, j = m, k = a;
      while (i < m || j < e) {
        const bool left = j >= e || (i < m && py[i] <= py[j]);
        const uint64_t s = left ? i++ : j++;
        ny[k] = py[s];
        nx[k++] = px[s];
      }
    }
    count_ops(n_);
    ys_.push_back(std::move(ny));
    xi_.push_back(std::move(nx));
  }
}

std::vector<RangeTreeBaseline::Span> RangeTreeBaseline::cover(uint64_t x1, uint64_t x2, uint64_t y1,
                                                              uint64_t y2) const {
  std::vector<Span> out;
  if (x1 > x2 || y1 > y2 || xs_.empty()) return out;
  uint64_t i = std::lower_bound(xs_.begin(), xs_.end(), x1) - xs_.begin();
  uint64_t j = std::upper_bound(xs_.begin(), xs_.end(), x2) - xs_.begin();
  unsigned level = 0;
  auto add = [&](uint64_t g) {  // group g at the current level
    const uint64_t size = uint64_t{1} << level;
    const uint64_t a = prefix_[g * size], e = prefix_[std::min<uint64_t>((g + 1) * size, xs_.size())];
    const auto& y = ys_[level];
    const uint64_t lo = std::lower_bound(y.begin() + a, y.begin() + e, y1) - y.begin();
    const uint64_t hi = std::upper_bound(y.begin() + lo, y.begin() + e, y2) - y.begin();
    count_ops(2 * std::bit_width(e - a + 1));
    if (lo < hi) out.push_back({level, lo, hi});
  };
  while (i < j) {  // half-open [i, j) of groups at this level
    if (i & 1) add(i++);
    if (j & 1) add(--j);
    i >>= 1;
    j >>= 1;
    ++level;
  }
  return out;
}

bool RangeTreeBaseline::successor(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2, Point& out) const {
  bool found = false;
  for (const Span& s : cover(x1, x2, y1, y2)) {
    const uint64_t y = ys_[s.level][s.lo];
    if (!found || y < out.y) out = {xs_[xi_[s.level][s.lo]], y}, found = true;
  }
  return found;
}

PointStream RangeTreeBaseline::sorted(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const {
  auto spans = cover(x1, x2, y1, y2);
  if (spans.empty()) return empty_stream();
  std::vector<PointStream> parts;
  for (const Span& s : spans)
    parts.push_back([this, s, k = s.lo](Point& p) mutable {
      if (k == s.hi) return false;
      p = {xs_[xi_[s.level][k]], ys_[s.level][k]};
      ++k;
      return true;
    });
  return merge_sorted_streams(std::move(parts));
}

uint64_t RangeTreeBaseline::bits() const {
  uint64_t b = 32 * (xs_.size() + prefix_.size());
  for (const auto& v : ys_) b += 64 * v.size();
  return b;
}

}  // namespace orq
