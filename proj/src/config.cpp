#include "orq/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orq {

namespace {

uint64_t ceil_pow(double base, double exp) {
  return static_cast<uint64_t>(std::ceil(std::pow(base, exp) - 1e-9));
}

struct Field {
  const char* name;
  uint64_t Config::*u64;
  unsigned Config::*u32;
};

const Field kFields[] = {
    {"lg_cap", nullptr, &Config::lg_cap},
    {"table_cap_bits", &Config::table_cap_bits, nullptr},
    {"inv_epsilon", nullptr, &Config::inv_epsilon},
    {"large_fanout_bits", nullptr, &Config::large_fanout_bits},
    {"small_fanout_bits", nullptr, &Config::small_fanout_bits},
    {"narrow_block", &Config::narrow_block, nullptr},
    {"small_alphabet_max", &Config::small_alphabet_max, nullptr},
    {"chunked_alphabet_max", &Config::chunked_alphabet_max, nullptr},
    {"three_sided_block", &Config::three_sided_block, nullptr},
    {"three_sided_subblock", &Config::three_sided_subblock, nullptr},
    {"tiny_narrow", &Config::tiny_narrow, nullptr},
    {"escalation", &Config::escalation, nullptr},
    {"pred_block", &Config::pred_block, nullptr},
    {"patricia_block", &Config::patricia_block, nullptr},
    {"packed_width_max", nullptr, &Config::packed_width_max},
};

}  // namespace

Config Config::resolved() const {
  Config c = *this;
  c.lg_cap = std::clamp(c.lg_cap, 2u, 64u);
  c.inv_epsilon = std::max(c.inv_epsilon, 1u);
  const double lg = c.lg_cap;
  const unsigned sqrt_lg = static_cast<unsigned>(ceil_pow(lg, 0.5));
  const double lglg = std::log2(lg);

  if (c.large_fanout_bits == 0) c.large_fanout_bits = std::max(1u, sqrt_lg);
  if (c.small_fanout_bits == 0)
    c.small_fanout_bits = std::max(1u, static_cast<unsigned>(std::ceil(lglg / 4 - 1e-9)));
  if (c.narrow_block == 0) c.narrow_block = uint64_t{1} << std::min(2 * sqrt_lg, 40u);
  if (c.small_alphabet_max == 0) c.small_alphabet_max = c.lg_cap * c.lg_cap * c.lg_cap;
  if (c.chunked_alphabet_max == 0) c.chunked_alphabet_max = uint64_t{1} << std::min(sqrt_lg, 40u);
  if (c.three_sided_block == 0) c.three_sided_block = c.lg_cap * c.lg_cap * c.lg_cap;
  if (c.three_sided_subblock == 0) c.three_sided_subblock = ceil_pow(lg, 0.75);
  if (c.tiny_narrow == 0) c.tiny_narrow = c.lg_cap;
  if (c.escalation == 0) c.escalation = static_cast<uint64_t>(std::ceil(lglg - 1e-9));
  if (c.pred_block == 0) c.pred_block = c.lg_cap;
  if (c.patricia_block == 0) c.patricia_block = static_cast<uint64_t>(std::sqrt(lg) / 2);
  if (c.packed_width_max == 0) c.packed_width_max = std::max(sqrt_lg, c.large_fanout_bits);

  c.narrow_block = std::max<uint64_t>(c.narrow_block, 2);
  c.three_sided_block = std::max<uint64_t>(c.three_sided_block, 2);
  c.three_sided_subblock = std::clamp<uint64_t>(c.three_sided_subblock, 1, c.three_sided_block);
  c.escalation = std::max<uint64_t>(c.escalation, 2);
  c.pred_block = std::max<uint64_t>(c.pred_block, 2);
  c.patricia_block = std::max<uint64_t>(c.patricia_block, 2);
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  for (const auto& f : kFields) {
    if (key != f.name) continue;
    size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(value, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty())
      throw std::invalid_argument("bad value for " + key + ": " + value);
    if (f.u64) this->*f.u64 = v;
    else this->*f.u32 = static_cast<unsigned>(v);
    return;
  }
  throw std::invalid_argument("unknown config key: " + key);
}

std::map<std::string, uint64_t> Config::to_map() const {
  std::map<std::string, uint64_t> m;
  for (const auto& f : kFields) m[f.name] = f.u64 ? this->*f.u64 : this->*f.u32;
  return m;
}

Config Config::from_map(const std::map<std::string, uint64_t>& m) {
  Config c;
  for (const auto& f : kFields) {
    auto it = m.find(f.name);
    if (it == m.end()) continue;
    if (f.u64) c.*f.u64 = it->second;
    else c.*f.u32 = static_cast<unsigned>(it->second);
  }
  return c;
}

unsigned block_elems(const Config& cfg, unsigned width) {
  if (width == 0) width = 1;
  return std::max(1u, cfg.lg_cap / (2 * width));
}

}  // namespace orq
