#include "orq/stream.hpp"

#include <memory>
#include <queue>
#include <stdexcept>

namespace orq {

PointStream single_stream(Point p) {
  return [p, done = false](Point& out) mutable {
    if (done) return false;
    out = p;
    done = true;
    return true;
  };
}

PointStream merge_sorted_streams(std::vector<PointStream> streams) {
  if (streams.empty()) return empty_stream();
  if (streams.size() == 1) {
    return [s = std::move(streams[0]), last = Point{}, any = false](Point& out) mutable {
      if (!s(out)) return false;
      if (any && out.y <= last.y) throw std::logic_error("stream order violation");
      any = true;
      last = out;
      return true;
    };
  }
  struct Head {
    Point p;
    size_t src;
    bool operator>(const Head& o) const { return p.y > o.p.y; }
  };
  struct State {
    std::vector<PointStream> in;
    std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
    bool primed = false;
    void pull(size_t i, const Point* prev) {
      Point p;
      if (!in[i](p)) return;
      if (prev && p.y <= prev->y) throw std::logic_error("stream order violation");
      count_ops(1);
      heap.push({p, i});
    }
  };
  auto st = std::make_shared<State>();
  st->in = std::move(streams);
  return [st](Point& out) {
    if (!st->primed) {
      st->primed = true;
      for (size_t i = 0; i < st->in.size(); ++i) st->pull(i, nullptr);
    }
    if (st->heap.empty()) return false;
    const Head h = st->heap.top();
    st->heap.pop();
    out = h.p;
    st->pull(h.src, &h.p);
    return true;
  };
}

std::vector<Point> take(PointStream& s, uint64_t limit) {
  std::vector<Point> out;
  Point p;
  while (out.size() < limit && s(p)) out.push_back(p);
  return out;
}

}  // namespace orq
