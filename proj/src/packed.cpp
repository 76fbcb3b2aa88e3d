#include "orq/packed.hpp"

#include <algorithm>
#include <stdexcept>

namespace orq {

OpCounters& counters() {
  thread_local OpCounters c;
  return c;
}

PackedSequence::PackedSequence(uint64_t length, unsigned width)
    : words_((length * width + 63) / 64, 0), length_(length), width_(width) {
  if (width == 0 || width > 64) throw std::invalid_argument("invalid width");
}

PackedSequence PackedSequence::from_words(std::vector<uint64_t> words, uint64_t length,
                                          unsigned width) {
  PackedSequence p;
  p.width_ = width;
  p.length_ = length;
  words.resize((length * width + 63) / 64, 0);
  p.words_ = std::move(words);
  const unsigned tail = (length * width) & 63;
  if (tail) p.words_.back() &= low_mask(tail);
  return p;
}

void PackedSequence::push_back(uint64_t v) {
  const uint64_t need = ((length_ + 1) * width_ + 63) / 64;
  if (words_.size() < need) words_.push_back(0);
  ++length_;
  set(length_ - 1, v);
}

void PackedSequence::resize(uint64_t length) {
  words_.resize((length * width_ + 63) / 64, 0);
  if (length < length_ && !words_.empty()) {
    const unsigned tail = (length * width_) & 63;
    if (tail) words_.back() &= low_mask(tail);
  }
  length_ = length;
}

std::vector<uint64_t> PackedSequence::to_vector() const {
  std::vector<uint64_t> out(length_);
  for (uint64_t i = 0; i < length_; ++i) out[i] = get(i);
  return out;
}

TableRegistry& TableRegistry::shared(uint64_t cap_bits) {
  static std::mutex mu;
  static std::map<uint64_t, std::unique_ptr<TableRegistry>> regs;
  std::lock_guard lock(mu);
  auto& r = regs[cap_bits];
  if (!r) r = std::make_unique<TableRegistry>(cap_bits);
  return *r;
}

const PackedSequence* TableRegistry::get(const std::string& key, unsigned in_bits,
                                         unsigned out_bits,
                                         const std::function<uint64_t(uint64_t)>& fill) {
  Entry* e = nullptr;
  {
    std::lock_guard lock(mu_);
    auto& slot = entries_[key];
    if (!slot) {
      slot = std::make_unique<Entry>();
      const uint64_t need = in_bits > 24 ? ~uint64_t{0} : (uint64_t{1} << in_bits) * out_bits;
      if (need <= cap_ && used_ + need <= cap_) {
        slot->usable = true;
        used_ += need;
      }
    }
    e = slot.get();
  }
  if (!e->usable) return nullptr;
  std::call_once(e->once, [&] {
    PackedSequence t(uint64_t{1} << in_bits, out_bits);
    for (uint64_t i = 0; i < t.size(); ++i) t.set(i, fill(i));
    e->table = std::move(t);
    std::lock_guard lock(mu_);
    ++builds_;
  });
  return &e->table;
}

uint64_t TableRegistry::used_bits() const {
  std::lock_guard lock(mu_);
  return used_;
}

uint64_t TableRegistry::builds() const {
  std::lock_guard lock(mu_);
  return builds_;
}

PackedSequence pack(std::span<const uint64_t> values, unsigned width) {
  PackedSequence out(values.size(), width);
  for (uint64_t i = 0; i < values.size(); ++i) {
    if (width < 64 && values[i] >> width) throw std::invalid_argument("value overflow");
    out.set(i, values[i]);
  }
  count_ops(out.words().size());
  return out;
}

PackedSequence extract_bits(const PackedSequence& c, unsigned s, unsigned f, const Config& cfg) {
  const unsigned w = c.width();
  if (s > f || f >= w) throw std::invalid_argument("invalid bit range");
  const unsigned r = f - s + 1;
  const unsigned shift = w - 1 - f;
  PackedSequence out(c.size(), r);
  const unsigned blk = block_elems(cfg, w);
  const PackedSequence* table = nullptr;
  if (blk >= 2 && blk * w <= 20) {
    table = tables_for(cfg).get(
        "extract:" + std::to_string(w) + ":" + std::to_string(s) + ":" + std::to_string(f) + ":" +
            std::to_string(blk),
        blk * w, blk * r, [&](uint64_t in) {
          uint64_t o = 0;
          for (unsigned k = 0; k < blk; ++k) o |= ((in >> (k * w) >> shift) & low_mask(r)) << (k * r);
          return o;
        });
  }
  uint64_t i = 0;
  if (table) {
    auto& ctr = counters();
    for (; i + blk <= c.size(); i += blk) {
      out.put_field(i * r, blk * r, table->get(c.field(i * w, blk * w)));
      ++ctr.table_lookups;
      ++ctr.word_ops;
    }
  }
  for (; i < c.size(); ++i) {
    out.set(i, (c.get(i) >> shift) & low_mask(r));
    count_ops(1);
  }
  return out;
}

PackedSequence packed_sort(const PackedSequence& a, const Config& cfg) {
  const unsigned w = a.width();
  const uint64_t n = a.size();
  if (n <= 1) return a;
  const unsigned blk = block_elems(cfg, w);
  const PackedSequence* table = nullptr;
  if (blk >= 2 && blk * w <= 20) {
    table = tables_for(cfg).get("sort:" + std::to_string(w) + ":" + std::to_string(blk), blk * w,
                                blk * w, [&](uint64_t in) {
                                  uint64_t v[64];
                                  for (unsigned k = 0; k < blk; ++k) v[k] = (in >> (k * w)) & low_mask(w);
                                  std::sort(v, v + blk);
                                  uint64_t o = 0;
                                  for (unsigned k = 0; k < blk; ++k) o |= v[k] << (k * w);
                                  return o;
                                });
  }
  // Sort runs of blk elements, then merge runs bottom-up.
  PackedSequence cur = a;
  const uint64_t run0 = blk;
  for (uint64_t i = 0; i < n; i += run0) {
    const uint64_t len = std::min<uint64_t>(run0, n - i);
    if (table && len == blk) {
      cur.put_field(i * w, blk * w, table->get(cur.field(i * w, blk * w)));
      ++counters().table_lookups;
      count_ops(1);
    } else {
      for (uint64_t p = i + 1; p < i + len; ++p) {  // insertion sort, len is tiny
        const uint64_t v = cur.get(p);
        uint64_t q = p;
        while (q > i && cur.get(q - 1) > v) {
          cur.set(q, cur.get(q - 1));
          --q;
        }
        cur.set(q, v);
      }
      count_ops(len * len);
    }
  }
  PackedSequence nxt(n, w);
  for (uint64_t run = run0; run < n; run *= 2) {
    for (uint64_t lo = 0; lo < n; lo += 2 * run) {
      const uint64_t mid = std::min(n, lo + run), hi = std::min(n, lo + 2 * run);
      uint64_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        const uint64_t x = cur.get(i), y = cur.get(j);
        if (y < x) { nxt.set(k++, y); ++j; }
        else { nxt.set(k++, x); ++i; }
      }
      while (i < mid) nxt.set(k++, cur.get(i++));
      while (j < hi) nxt.set(k++, cur.get(j++));
    }
    count_ops(n);
    std::swap(cur, nxt);
  }
  return cur;
}

}  // namespace orq
