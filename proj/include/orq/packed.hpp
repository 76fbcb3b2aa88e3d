#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "orq/common.hpp"
#include "orq/config.hpp"

namespace orq {

// Fixed-width integers packed LSB-first into 64-bit words. Element i occupies stream
// bits [i*width, (i+1)*width); the tail of the last word is zero.
class PackedSequence {
 public:
  PackedSequence() = default;
  PackedSequence(uint64_t length, unsigned width);
  // Adopt words already laid out in the packed format.
  static PackedSequence from_words(std::vector<uint64_t> words, uint64_t length, unsigned width);

  [[nodiscard]] uint64_t size() const { return length_; }
  [[nodiscard]] bool empty() const { return length_ == 0; }
  [[nodiscard]] unsigned width() const { return width_; }
  [[nodiscard]] uint64_t bit_size() const { return length_ * width_; }
  [[nodiscard]] const std::vector<uint64_t>& words() const { return words_; }

  [[nodiscard]] uint64_t get(uint64_t i) const { return field(i * width_, width_); }
  [[nodiscard]] uint64_t operator[](uint64_t i) const { return get(i); }
  void set(uint64_t i, uint64_t v) { put_field(i * width_, width_, v); }
  void push_back(uint64_t v);
  // Append `count` elements already packed LSB-first in `fields` (count * width <= 64).
  void append_packed(uint64_t fields, unsigned count) {
    const uint64_t pos = length_ * width_;
    resize(length_ + count);
    if (count) put_field(pos, count * width_, fields);
  }
  void resize(uint64_t length);

  // Raw stream access: len (<= 64) bits starting at bit offset pos.
  [[nodiscard]] uint64_t field(uint64_t pos, unsigned len) const {
    const uint64_t wi = pos >> 6;
    const unsigned off = pos & 63;
    uint64_t v = words_[wi] >> off;
    if (off + len > 64) v |= words_[wi + 1] << (64 - off);
    return v & low_mask(len);
  }
  void put_field(uint64_t pos, unsigned len, uint64_t v) {
    v &= low_mask(len);
    const uint64_t wi = pos >> 6;
    const unsigned off = pos & 63;
    words_[wi] = (words_[wi] & ~(low_mask(len) << off)) | (v << off);
    if (off + len > 64) {
      const unsigned spill = off + len - 64;
      words_[wi + 1] = (words_[wi + 1] & ~low_mask(spill)) | (v >> (64 - off));
    }
  }

  [[nodiscard]] std::vector<uint64_t> to_vector() const;
  bool operator==(const PackedSequence&) const = default;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(words_, length_, width_);
  }

 private:
  std::vector<uint64_t> words_;
  uint64_t length_ = 0;
  unsigned width_ = 1;
};

// Shared lookup tables keyed by name. A table holds one out_bits entry for each of the
// 2^in_bits inputs and is filled at most once. Requests that would push the total past
// the cap get nullptr and the caller falls back to per-element work.
class TableRegistry {
 public:
  explicit TableRegistry(uint64_t cap_bits = kDefaultTableCap) : cap_(cap_bits) {}

  // Process-wide registry for a given cap.
  static TableRegistry& shared(uint64_t cap_bits);

  const PackedSequence* get(const std::string& key, unsigned in_bits, unsigned out_bits,
                            const std::function<uint64_t(uint64_t)>& fill);

  [[nodiscard]] uint64_t cap_bits() const { return cap_; }
  [[nodiscard]] uint64_t used_bits() const;
  [[nodiscard]] uint64_t builds() const;

 private:
  struct Entry {
    std::once_flag once;
    bool usable = false;
    PackedSequence table;
  };
  uint64_t cap_;
  uint64_t used_ = 0;
  uint64_t builds_ = 0;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Entry>> entries_;
};

inline TableRegistry& tables_for(const Config& cfg) { return TableRegistry::shared(cfg.table_cap_bits); }

// Throws std::invalid_argument("value overflow") if a value does not fit.
PackedSequence pack(std::span<const uint64_t> values, unsigned width);

// Element i of the result is bits s..f of C[i], bit 0 being the most significant.
PackedSequence extract_bits(const PackedSequence& c, unsigned s, unsigned f, const Config& cfg = {});

// Stable nondecreasing sort (bit-packed mergesort; blocks sorted by table when it fits).
PackedSequence packed_sort(const PackedSequence& a, const Config& cfg = {});

}  // namespace orq
