#include "orq/wavelet.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace orq {

void WaveletTree::init(uint64_t n, uint64_t sigma, uint64_t d) {
  if (d < 2 || !std::has_single_bit(d)) throw std::invalid_argument("invalid fanout");
  n_ = n;
  sigma_ = std::max<uint64_t>(sigma, 1);
  lgd_ = static_cast<unsigned>(std::countr_zero(d));
  levels_ = std::max(1u, (bits_for(sigma_ - 1) + lgd_ - 1) / lgd_);
  if (lgd_ * levels_ > 40) throw std::invalid_argument("alphabet too large");
}

std::vector<uint64_t> WaveletTree::build_bounds(std::span<const uint64_t> a) {
  const uint64_t leaves = node_count(levels_);
  std::vector<uint64_t> cnt(leaves, 0);
  for (uint64_t x : a) {
    if (x >= sigma_) throw std::invalid_argument("value overflow");
    ++cnt[x];
  }
  count_ops(a.size() + leaves);
  bounds_.assign(levels_ + 1, {});
  for (unsigned l = levels_ + 1; l-- > 0;) {
    if (l < levels_) {  // fold children counts into parents
      for (uint64_t k = 0; k < node_count(l); ++k) {
        uint64_t s = 0;
        for (uint64_t j = 0; j < fanout(); ++j) s += cnt[(k << lgd_) | j];
        cnt[k] = s;
      }
      count_ops(node_count(l + 1));
    }
    BitVectorBuilder b;
    for (uint64_t k = 0; k < node_count(l); ++k) {
      b.push(true);
      b.push_run(false, cnt[k]);
    }
    bounds_[l] = b.build();
    count_ops(node_count(l) + n_ / 64);
  }
  // Leaf starts, recomputed from the bottom bitvector.
  std::vector<uint64_t> starts(leaves + 1);
  for (uint64_t k = 0; k <= leaves; ++k)
    starts[k] = k < leaves ? start({levels_, k}) : n_;
  count_ops(leaves);
  return starts;
}

uint64_t WaveletTree::node_size(NodeId v) const {
  const uint64_t s = start(v);
  const uint64_t e = v.index + 1 < node_count(v.level) ? start({v.level, v.index + 1}) : n_;
  return e - s;
}

NodeId WaveletTree::lca_leaves(uint64_t a, uint64_t b) const {
  if (a >= sigma_ || b >= sigma_) throw std::out_of_range("leaf out of bounds");
  const uint64_t x = a ^ b;
  if (x == 0) return leaf(a);
  const unsigned h = 63u - static_cast<unsigned>(std::countl_zero(x));
  const unsigned level = (symbol_bits() - 1 - h) / lgd_;
  return {level, a >> (lgd_ * (levels_ - level))};
}

uint64_t WaveletTree::bits() const {
  uint64_t total = 0;
  for (const auto& s : s_) total += s.bit_size();
  for (const auto& b : bounds_) total += b.size() + b.aux_bits();
  for (const auto& s : a_) total += s.bit_size();
  for (const auto& s : i_) total += s.bit_size();
  return total;
}

namespace {

// Position of each element's node at the next level: next[k] starts at the segment
// start of node k of level l + 1.
std::vector<uint64_t> next_starts(const WaveletTree& t, const std::vector<uint64_t>& leaf_start,
                                  unsigned l) {
  const unsigned span = t.fanout_bits() * (t.levels() - l - 1);
  std::vector<uint64_t> next(t.node_count(l + 1));
  for (uint64_t k = 0; k < next.size(); ++k) next[k] = leaf_start[k << span];
  count_ops(next.size());
  return next;
}

}  // namespace

WaveletTree build_wavelet_plain(std::span<const uint64_t> a, uint64_t sigma, uint64_t d, WaveletOptions opt) {
  WaveletTree t;
  t.init(a.size(), sigma, d);
  const uint64_t n = a.size();
  const auto leaf_start = t.build_bounds(a);
  const unsigned L = t.levels_, lgd = t.lgd_;
  const unsigned wx = bits_for(t.sigma_ - 1), wy = bits_for(n ? n - 1 : 0);
  std::vector<uint64_t> x(a.begin(), a.end()), y(n), nx(n), ny(n);
  std::iota(y.begin(), y.end(), 0);
  t.s_.resize(L);
  if (opt.with_values) t.a_.resize(L + 1);
  if (opt.with_indexes) t.i_.resize(L + 1);
  for (unsigned l = 0;; ++l) {
    if (opt.with_values) t.a_[l] = pack(x, wx);
    if (opt.with_indexes) t.i_[l] = pack(y, wy);
    if (l == L) break;
    PackedSequence s(n, lgd);
    for (uint64_t j = 0; j < n; ++j) s.set(j, t.digit(l, x[j]));
    t.s_[l] = std::move(s);
    auto next = next_starts(t, leaf_start, l);
    const unsigned span = lgd * (L - l - 1);
    for (uint64_t j = 0; j < n; ++j) {
      const uint64_t p = next[x[j] >> span]++;
      nx[p] = x[j];
      ny[p] = y[j];
    }
    count_ops(2 * n);
    x.swap(nx);
    y.swap(ny);
  }
  return t;
}

WaveletTree build_wavelet_packed(const PackedSequence& a, uint64_t sigma, uint64_t d, WaveletOptions opt,
                                 const Config& cfg_in) {
  const Config cfg = cfg_in.resolved();
  WaveletTree t;
  t.init(a.size(), sigma, d);
  const uint64_t n = a.size();
  const auto leaf_start = t.build_bounds(a.to_vector());
  const unsigned L = t.levels_, lgd = t.lgd_;
  // Elements carry x over the full digit width so digits come out of extract_bits.
  const unsigned wx = t.symbol_bits(), wy = bits_for(n ? n - 1 : 0);
  PackedSequence x = a.width() == wx ? a : pack(a.to_vector(), wx);
  PackedSequence y(n, wy), nx(n, wx), ny(n, wy);
  for (uint64_t j = 0; j < n; ++j) y.set(j, j);
  count_ops(y.words().size());
  const unsigned keep_wx = bits_for(t.sigma_ - 1);
  t.s_.resize(L);
  if (opt.with_values) t.a_.resize(L + 1);
  if (opt.with_indexes) t.i_.resize(L + 1);
  for (unsigned l = 0;; ++l) {
    if (opt.with_values) t.a_[l] = keep_wx == wx ? x : extract_bits(x, wx - keep_wx, wx - 1, cfg);
    if (opt.with_indexes) t.i_[l] = y;
    if (l == L) break;
    t.s_[l] = extract_bits(x, lgd * l, lgd * (l + 1) - 1, cfg);
    auto next = next_starts(t, leaf_start, l);
    const unsigned span = lgd * (L - l - 1);
    for (uint64_t j = 0; j < n; ++j) {
      const uint64_t v = x.get(j);
      const uint64_t p = next[v >> span]++;
      nx.set(p, v);
      ny.set(p, y.get(j));
    }
    count_ops(2 * n);
    std::swap(x, nx);
    std::swap(y, ny);
  }
  return t;
}

}  // namespace orq
