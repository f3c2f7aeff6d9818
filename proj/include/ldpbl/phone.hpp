// Ten-digit caller ids split into a 3-digit area prefix and 7-digit suffix.
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace ldpbl {

inline constexpr uint32_t kSuffixSpace = 10'000'000;  // suffixes live in [0, 10^7)
inline constexpr uint16_t kPrefixSpace = 1000;        // raw 3-digit prefixes

struct PhoneNumber {
  // The ten digits as an integer in [0, 10^10); leading zeros preserved by
  // fixed-width formatting.
  uint64_t value = 0;

  uint16_t prefix() const { return static_cast<uint16_t>(value / kSuffixSpace); }
  uint32_t suffix() const { return static_cast<uint32_t>(value % kSuffixSpace); }

  std::string str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%010llu", static_cast<unsigned long long>(value));
    return buf;
  }
  std::string prefix_str() const {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%03u", prefix());
    return buf;
  }

  friend auto operator<=>(const PhoneNumber&, const PhoneNumber&) = default;
};

inline PhoneNumber make_number(uint16_t prefix, uint32_t suffix) {
  return PhoneNumber{static_cast<uint64_t>(prefix) * kSuffixSpace + suffix};
}

// Accepts exactly ten decimal digits after stripping the usual separators
// (spaces, dashes, dots, parentheses). Anything else is rejected: letters,
// country codes, short or long strings.
inline std::optional<PhoneNumber> parse_caller_id(std::string_view raw) {
  uint64_t v = 0;
  int digits = 0;
  for (char ch : raw) {
    if (ch >= '0' && ch <= '9') {
      if (++digits > 10) return std::nullopt;
      v = v * 10 + static_cast<uint64_t>(ch - '0');
    } else if (ch == ' ' || ch == '-' || ch == '.' || ch == '(' || ch == ')') {
      continue;
    } else {
      return std::nullopt;
    }
  }
  if (digits != 10) return std::nullopt;
  return PhoneNumber{v};
}

}  // namespace ldpbl
