#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace slicesim {

// Shortest round-trip decimal form of a double. Used for all CSV and
// checkpoint-adjacent text output so identical values serialize to
// identical bytes.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xCBF29CE484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace slicesim
