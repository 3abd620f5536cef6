#pragma once

#include <cstdint>
#include <string_view>

namespace polarity {

// 64-bit FNV-1a; chainable via the seed parameter.
inline uint64_t fnv1a(std::string_view data, uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline uint64_t fnv1a_u64(uint64_t value, uint64_t h = 1469598103934665603ULL) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace polarity
