#include "orq/range_report.hpp"

#include <algorithm>

namespace orq {

template <class Middle>
ReportLayers<Middle>::ReportLayers(const PackedSequence& x, uint64_t sigma, const LayerOptions& opt,
                                   const Config& cfg)
    : core_(x, sigma, opt, cfg), verbatim_(opt.verbatim_sides) {
  const WaveletTree& tree = core_.tree();
  const uint64_t d = tree.fanout();
  rmq_.resize(tree.levels());
  if (verbatim_) values_.resize(tree.levels());
  for (unsigned l = 0; l < tree.levels(); ++l) {
    mid_.emplace_back(tree.symbols(l), d, opt.samples, cfg);
    if (l == 0) continue;
    const std::vector<uint64_t> v = tree.values(l).to_vector();
    rmq_[l] = RmqIndex(v);
    if (verbatim_) values_[l] = tree.values(l);
  }
  core_.release();
}

template <class Middle>
void ReportLayers<Middle>::side(unsigned level, uint64_t lo, uint64_t hi, uint64_t bound, bool ge,
                                const PointSink& emit) const {
  const BallIndex& ball = core_.ball();
  const WaveletTree& t = core_.tree();
  const RmqIndex& rmq = rmq_[level];
  auto top = [&](uint64_t i, uint64_t j) { return i == j ? i : (ge ? rmq.rMq(i, j) : rmq.rmq(i, j)); };
  if (verbatim_) {
    const PackedSequence& v = values_[level];
    three_sided_report_minmax(lo, hi, top, [&](uint64_t p) {
      const uint64_t x = v.get(p);
      if (ge ? x < bound : x > bound) return false;
      emit(ball.point_at(level, p));
      return true;
    });
    return;
  }
  const PackedSequence& sym = t.symbols(level);
  const uint64_t digit = t.digit(level, bound);
  three_sided_report_minmax(lo, hi, top, [&](uint64_t p) {
    const uint64_t s = sym.get(p);
    count_ops(1);
    if (ge ? s < digit : s > digit) return false;
    const Point q = ball.point_at(level, p);
    if (s == digit && (ge ? q.x < bound : q.x > bound)) return false;
    emit(q);
    return true;
  });
}

template <class Middle>
void ReportLayers<Middle>::report(uint64_t a, uint64_t b, uint64_t c, uint64_t d, const PointSink& emit) const {
  const LayerCore::Split s = core_.split(a, b, c, d);
  if (s.empty) return;
  const BallIndex& ball = core_.ball();
  if (s.leaf) {
    for (auto i = s.leaf_range.lo; i <= s.leaf_range.hi; ++i) emit(ball.point(s.ca, static_cast<uint64_t>(i)));
    return;
  }
  const unsigned l = s.level;
  auto all = [&](unsigned level, uint64_t lo, uint64_t hi) {
    for (uint64_t p = lo; p < hi; ++p) emit(ball.point_at(level, p));
  };
  if (s.alo < s.ahi) {
    if (s.a_all) all(l + 1, s.alo, s.ahi);
    else side(l + 1, s.alo, s.ahi - 1, s.a, true, emit);
  }
  if (s.alpha + 1 < s.beta)
    mid_[l].report(s.alpha + 1, s.beta - 1, s.lo, s.hi, [&](uint64_t p) { emit(ball.point_at(l, p)); });
  if (s.blo < s.bhi) {
    if (s.b_all) all(l + 1, s.blo, s.bhi);
    else side(l + 1, s.blo, s.bhi - 1, s.b, false, emit);
  }
}

template <class Middle>
std::vector<Point> ReportLayers<Middle>::report(uint64_t a, uint64_t b, uint64_t c, uint64_t d) const {
  std::vector<Point> out;
  report(a, b, c, d, [&](const Point& p) { out.push_back(p); });
  return out;
}

template <class Middle>
uint64_t ReportLayers<Middle>::bits() const {
  uint64_t total = core_.bits();
  for (const auto& v : values_) total += v.bit_size();
  for (const auto& r : rmq_) total += r.bits();
  for (const auto& m : mid_) total += m.bits();
  return total;
}

template class ReportLayers<NoMiddle>;
template class ReportLayers<NarrowGridReportIndex>;

NarrowGridReportIndex::NarrowGridReportIndex(const PackedSequence& s, uint64_t sigma, uint64_t,
                                             const Config& cfg)
    : sigma_(std::max<uint64_t>(sigma, 1)) {
  const Config rc = cfg.resolved();
  block_ = std::max<uint64_t>(rc.narrow_block, 1);
  LayerOptions opt;
  opt.fanout_bits = 1;
  opt.ball = LayerOptions::Ball::kSmallConstant;
  opt.verbatim_sides = true;
  grid_ = SmallGridReportIndex(s, sigma_, opt, cfg);

  const uint64_t n = s.size(), blocks = (n + block_ - 1) / block_;
  plist_ = PackedSequence(n, bits_for(block_ - 1));
  poff_ = PackedSequence(blocks * (sigma_ + 1), bits_for(block_));
  std::vector<Point> pts;
  std::vector<uint64_t> count(sigma_ + 1);
  for (uint64_t b = 0; b < blocks; ++b) {
    const uint64_t st = b * block_, e = std::min(n, st + block_);
    std::fill(count.begin(), count.end(), 0);
    for (uint64_t p = st; p < e; ++p) ++count[s.get(p) + 1];
    for (uint64_t v = 0; v < sigma_; ++v) {
      if (count[v + 1]) pts.push_back({v, b});
      count[v + 1] += count[v];
    }
    for (uint64_t v = 0; v <= sigma_; ++v) poff_.set(b * (sigma_ + 1) + v, count[v]);
    for (uint64_t p = st; p < e; ++p) plist_.set(st + count[s.get(p)]++, p - st);
    count_ops(2 * (e - st) + 2 * sigma_);
  }
  sampled_ = RangeTreeBaseline(std::move(pts));
}

void NarrowGridReportIndex::inside(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e, const PosSink& emit) const {
  grid_.report(s1, s2, c, e, [&](const Point& p) { emit(p.y); });
}

void NarrowGridReportIndex::report(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e, const PosSink& emit) const {
  const uint64_t n = size();
  if (s1 > s2 || c > e || c >= n) return;
  e = std::min(e, n - 1);
  const uint64_t k1 = c / block_, k2 = e / block_;
  if (k1 == k2) return inside(s1, s2, c, e, emit);
  inside(s1, s2, c, (k1 + 1) * block_ - 1, emit);
  if (k1 + 1 < k2)
    sampled_.report(s1, s2, k1 + 1, k2 - 1, [&](const Point& q) {
      const uint64_t base = q.y * (sigma_ + 1), st = q.y * block_;
      const uint64_t from = poff_.get(base + q.x), to = poff_.get(base + q.x + 1);
      for (uint64_t i = from; i < to; ++i) emit(st + plist_.get(st + i));
      count_ops(to - from);
    });
  inside(s1, s2, k2 * block_, e, emit);
}

uint64_t NarrowGridReportIndex::bits() const {
  return grid_.bits() + sampled_.bits() + plist_.bit_size() + poff_.bit_size();
}

GeneralReportIndex build_general_report(const std::vector<uint64_t>& x, const Config& cfg) {
  const uint64_t n = x.size();
  LayerOptions opt;
  opt.fanout_bits = std::max(1u, cfg.resolved().large_fanout_bits);
  opt.ball = LayerOptions::Ball::kLargeB;
  opt.verbatim_sides = false;
  return GeneralReportIndex(pack(x, bits_for(n ? n - 1 : 0)), std::max<uint64_t>(n, 1), opt, cfg);
}

}  // namespace orq
