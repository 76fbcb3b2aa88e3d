#include "orq/partial_rank.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace orq {

namespace {

// M: every chunk's elements as (v << 1 | 1), each chunk followed by a zero boundary
// element. Blocks of b elements holding at most one chunk end go through table U.
PackedSequence build_m(const PackedSequence& a, std::span<const uint64_t> chunk_ends,
                       unsigned lg_sigma, const Config& cfg) {
  const unsigned w = lg_sigma + 1;
  const unsigned b = block_elems(cfg, lg_sigma);
  const unsigned tb = bits_for(b);
  const uint64_t n = a.size();
  PackedSequence m(0, w);
  const PackedSequence* table = nullptr;
  if (b >= 2 && (b + 1) * w <= 64)
    table = tables_for(cfg).get(
        "M:" + std::to_string(lg_sigma) + ":" + std::to_string(b), b * lg_sigma + tb, (b + 1) * w,
        [&](uint64_t in) {
          const uint64_t t = in >> (b * lg_sigma);
          uint64_t out = 0;
          unsigned k = 0;
          for (unsigned i = 0; i < b; ++i) {
            if (t != 0 && i == t) ++k;  // boundary is all zeros
            out |= (((in >> (i * lg_sigma)) & low_mask(lg_sigma)) << 1 | 1) << (k++ * w);
          }
          return out;
        });
  size_t next = 0;  // index of the first chunk end > pos
  uint64_t pos = 0;
  while (pos < n) {
    if (table && pos + b <= n) {
      size_t after = next;
      while (after < chunk_ends.size() && chunk_ends[after] <= pos + b) ++after;
      if (after - next <= 1) {
        const uint64_t t = after > next ? chunk_ends[next] - pos : 0;
        const uint64_t d = a.field(pos * lg_sigma, b * lg_sigma);
        m.append_packed(table->get(t << (b * lg_sigma) | d), b + (t > 0));
        ++counters().table_lookups;
        count_ops(1);
        next = after;
        pos += b;
        continue;
      }
    }
    m.push_back(a.get(pos) << 1 | 1);
    ++pos;
    if (next < chunk_ends.size() && chunk_ends[next] == pos) {
      m.push_back(0);
      ++next;
    }
    count_ops(1);
  }
  return m;
}

// Splits one node sequence of the classification tree by bit `bit` (0 = most
// significant of the symbol); boundary elements go to both children.
void split_node(const PackedSequence& src, unsigned bit, PackedSequence& left,
                PackedSequence& right, const Config& cfg) {
  const unsigned w = src.width();
  const unsigned b = block_elems(cfg, w - 1);
  const unsigned tb = bits_for(b);
  const unsigned shift = w - 1 - bit;
  const PackedSequence* table = nullptr;
  if (b >= 2 && 2 * b * w + 2 * tb <= 64)
    table = tables_for(cfg).get(
        "Msplit:" + std::to_string(w) + ":" + std::to_string(bit) + ":" + std::to_string(b), b * w,
        2 * b * w + 2 * tb, [&](uint64_t in) {
          uint64_t e0 = 0, e1 = 0;
          unsigned n0 = 0, n1 = 0;
          for (unsigned i = 0; i < b; ++i) {
            const uint64_t e = (in >> (i * w)) & low_mask(w);
            if (e == 0 || !(e >> shift & 1)) e0 |= e << (n0++ * w);
            if (e == 0 || (e >> shift & 1)) e1 |= e << (n1++ * w);
          }
          return e0 | e1 << (b * w) | uint64_t{n0} << (2 * b * w) | uint64_t{n1} << (2 * b * w + tb);
        });
  uint64_t i = 0;
  if (table) {
    for (; i + b <= src.size(); i += b) {
      const uint64_t r = table->get(src.field(i * w, b * w));
      const unsigned n0 = (r >> (2 * b * w)) & low_mask(tb);
      const unsigned n1 = (r >> (2 * b * w + tb)) & low_mask(tb);
      left.append_packed(r & low_mask(b * w), n0);
      right.append_packed((r >> (b * w)) & low_mask(b * w), n1);
      ++counters().table_lookups;
      count_ops(1);
    }
  }
  for (; i < src.size(); ++i) {
    const uint64_t e = src.get(i);
    if (e == 0 || !(e >> shift & 1)) left.push_back(e);
    if (e == 0 || (e >> shift & 1)) right.push_back(e);
    count_ops(1);
  }
}

}  // namespace

PartialRankIndex::PartialRankIndex(const PackedSequence& a, uint64_t sigma, const Config& cfg_in,
                                   std::span<const uint64_t> segment_lengths)
    : n_(a.size()), sigma_(std::max<uint64_t>(sigma, 1)) {
  const Config cfg = cfg_in.resolved();
  std::vector<uint64_t> one_segment;
  if (segment_lengths.empty()) {
    one_segment.push_back(n_);
    segment_lengths = one_segment;
  }
  if (n_ == 0) {
    regime_ = Regime::kExplicit;
    return;
  }
  if (sigma_ <= cfg.small_alphabet_max) {
    regime_ = Regime::kSmallAlphabet;
    small_ = SmallAlphabetRankIndex(a, sigma_, cfg);
    return;
  }
  if (sigma_ <= cfg.chunked_alphabet_max) {
    regime_ = Regime::kChunked;
    std::vector<uint64_t> chunks;
    for (uint64_t len : segment_lengths)
      for (uint64_t off = 0; off < len; off += sigma_) chunks.push_back(std::min(sigma_, len - off));
    build_chunked(a, chunks, cfg);
    return;
  }
  // Explicit answers: sort each segment's positions by symbol and number the runs.
  regime_ = Regime::kExplicit;
  uint64_t longest = 0;
  for (uint64_t len : segment_lengths) longest = std::max(longest, len);
  answers_ = PackedSequence(n_, bits_for(longest));
  std::vector<std::pair<uint64_t, uint64_t>> buf;
  uint64_t s = 0;
  for (uint64_t len : segment_lengths) {
    buf.clear();
    for (uint64_t j = s; j < s + len; ++j) buf.emplace_back(a.get(j), j);
    std::sort(buf.begin(), buf.end());
    for (size_t k = 0; k < buf.size(); ++k) {
      const uint64_t r = k > 0 && buf[k - 1].first == buf[k].first ? answers_.get(buf[k - 1].second) + 1 : 1;
      answers_.set(buf[k].second, r);
    }
    count_ops(len * std::max(1u, bits_for(len)));
    s += len;
  }
}

void PartialRankIndex::build_chunked(const PackedSequence& a_in, std::span<const uint64_t> chunk_lengths,
                                     const Config& cfg) {
  const unsigned lg_sigma = bits_for(sigma_ - 1);
  const unsigned wq = bits_for(sigma_);
  const unsigned b = block_elems(cfg, lg_sigma);
  PackedSequence a = a_in;
  if (a.width() != lg_sigma) {
    a = PackedSequence(n_, lg_sigma);
    for (uint64_t i = 0; i < n_; ++i) a.set(i, a_in.get(i));
    count_ops(n_);
  }

  std::vector<uint64_t> chunk_ends;
  BitVectorBuilder starts;
  uint64_t acc = 0;
  for (uint64_t len : chunk_lengths) {
    starts.push(true);
    starts.push_run(false, len - 1);
    acc += len;
    chunk_ends.push_back(acc);
  }
  chunk_start_ = starts.build();

  // B_c: split M down lg sigma levels; leaf c holds symbol c and all boundaries, so
  // its low bits spell B_c.
  std::vector<PackedSequence> nodes{build_m(a, chunk_ends, lg_sigma, cfg)};
  for (unsigned l = 0; l < lg_sigma; ++l) {
    std::vector<PackedSequence> next;
    next.reserve(2 * nodes.size());
    for (auto& u : nodes) {
      PackedSequence left(0, lg_sigma + 1), right(0, lg_sigma + 1);
      split_node(u, l, left, right, cfg);
      u = PackedSequence();
      next.push_back(std::move(left));
      next.push_back(std::move(right));
    }
    nodes = std::move(next);
  }
  b_.clear();
  for (uint64_t c = 0; c < sigma_; ++c)
    b_.emplace_back(extract_bits(nodes[c], lg_sigma, lg_sigma, cfg));
  nodes.clear();

  // P phase 1: per chunk, a binary split that stops at b elements; leaf answers come
  // from table U'' (short leaves) or are 1..len (long leaves hold one symbol).
  const PackedSequence* u2 = nullptr;
  const unsigned tbq = bits_for(b);
  if (b >= 2 && b * lg_sigma <= 24 && b * tbq <= 64)
    u2 = tables_for(cfg).get("Q:" + std::to_string(lg_sigma) + ":" + std::to_string(b),
                             b * lg_sigma, b * tbq, [&](uint64_t in) {
                               uint64_t out = 0;
                               for (unsigned i = 0; i < b; ++i) {
                                 const uint64_t v = (in >> (i * lg_sigma)) & low_mask(lg_sigma);
                                 unsigned r = 0;
                                 for (unsigned k = 0; k <= i; ++k)
                                   r += ((in >> (k * lg_sigma)) & low_mask(lg_sigma)) == v;
                                 out |= uint64_t{r} << (i * tbq);
                               }
                               return out;
                             });
  PackedSequence ip(0, lg_sigma), qp(0, wq);
  std::vector<uint64_t> vals, idx;
  std::function<void(std::vector<uint64_t>&, std::vector<uint64_t>&, unsigned)> leafify =
      [&](std::vector<uint64_t>& v, std::vector<uint64_t>& ix, unsigned level) {
        if (v.empty()) return;
        if (v.size() <= b || level == lg_sigma) {
          if (v.size() <= b && u2) {
            uint64_t f = 0;
            for (size_t i = 0; i < v.size(); ++i) f |= v[i] << (i * lg_sigma);
            const uint64_t g = u2->get(f);
            ++counters().table_lookups;
            for (size_t i = 0; i < v.size(); ++i) qp.push_back((g >> (i * tbq)) & low_mask(tbq));
          } else if (v.size() <= b) {
            for (size_t i = 0; i < v.size(); ++i)
              qp.push_back(static_cast<uint64_t>(std::count(v.begin(), v.begin() + i + 1, v[i])));
          } else {
            for (size_t i = 0; i < v.size(); ++i) qp.push_back(i + 1);
          }
          for (uint64_t x : ix) ip.push_back(x);
          count_ops((v.size() + b - 1) / b);
          return;
        }
        std::vector<uint64_t> v0, v1, i0, i1;
        const unsigned shift = lg_sigma - 1 - level;
        for (size_t i = 0; i < v.size(); ++i) {
          if (v[i] >> shift & 1) v1.push_back(v[i]), i1.push_back(ix[i]);
          else v0.push_back(v[i]), i0.push_back(ix[i]);
        }
        count_ops(v.size());
        leafify(v0, i0, level + 1);
        leafify(v1, i1, level + 1);
      };
  uint64_t pos = 0;
  for (size_t k = 0; k < chunk_lengths.size(); ++k) {
    const uint64_t len = chunk_lengths[k];
    vals.resize(len);
    idx.resize(len);
    for (uint64_t i = 0; i < len; ++i) vals[i] = a.get(pos + i), idx[i] = i;
    leafify(vals, idx, 0);
    // A short chunk in the middle gets placeholder answers so P_tau stays aligned.
    if (k + 1 < chunk_lengths.size())
      for (uint64_t i = len; i < sigma_; ++i) ip.push_back(i), qp.push_back(0);
    pos += len;
  }

  // P phase 2: stable distribution of (I', Q) by the bits of I'. Passes run from the
  // low bit up, which groups equal I' values exactly as the wavelet leaves would.
  const uint64_t m = ip.size();
  std::vector<uint64_t> cur(m), nxt(m);
  for (uint64_t i = 0; i < m; ++i) cur[i] = ip.get(i) << wq | qp.get(i);
  for (unsigned bit = 0; bit < lg_sigma; ++bit) {
    uint64_t zeros = 0;
    for (uint64_t e : cur) zeros += !(e >> (wq + bit) & 1);
    uint64_t z = 0, o = zeros;
    for (uint64_t e : cur) (e >> (wq + bit) & 1 ? nxt[o++] : nxt[z++]) = e;
    std::swap(cur, nxt);
    count_ops(m);
  }
  p_.assign(sigma_, PackedSequence(0, wq));
  for (uint64_t e : cur) p_[e >> wq].push_back(e & low_mask(wq));
  count_ops(m);
}

uint64_t PartialRankIndex::query(Accessor a, uint64_t j, uint64_t segment_start) const {
  if (j >= n_) throw std::out_of_range("index out of bounds");
  return regime_ == Regime::kExplicit ? answers_.get(j) : query_symbol(a(j), j, segment_start);
}

uint64_t PartialRankIndex::query_symbol(uint64_t c, uint64_t j, uint64_t segment_start) const {
  if (j >= n_) throw std::out_of_range("index out of bounds");
  switch (regime_) {
    case Regime::kSmallAlphabet:
      return small_.rank_before(c, j + 1) - small_.rank_before(c, segment_start);
    case Regime::kChunked: {
      const uint64_t t = chunk_start_.rank1_before(j + 1) - 1;
      const uint64_t tau = j - static_cast<uint64_t>(chunk_start_.select1(t + 1));
      const uint64_t t0 = chunk_start_.rank1_before(segment_start + 1) - 1;
      const auto& bc = b_[c];
      auto ones_before = [&](uint64_t chunk) {
        return bc.select0(chunk) - static_cast<int64_t>(chunk) + 1;
      };
      return static_cast<uint64_t>(ones_before(t) - ones_before(t0)) + p_[tau].get(t);
    }
    case Regime::kExplicit:
      return answers_.get(j);
  }
  return 0;
}

uint64_t PartialRankIndex::bits() const {
  uint64_t total = answers_.bit_size() + chunk_start_.size() + chunk_start_.aux_bits();
  if (regime_ == Regime::kSmallAlphabet) total += small_.sequence_bits() + small_.aux_bits();
  for (const auto& b : b_) total += b.size() + b.aux_bits();
  for (const auto& p : p_) total += p.bit_size();
  return total;
}

}  // namespace orq
