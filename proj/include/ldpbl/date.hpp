// Calendar dates as a plain serial day count with ISO-8601 text form.
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace ldpbl {

// Days since 1970-01-01. The civil conversions are the classic
// era-based algorithms; exact over the full int32 range.
struct Date {
  int32_t serial = 0;

  friend auto operator<=>(const Date&, const Date&) = default;
  Date operator+(int32_t days) const { return Date{serial + days}; }
  Date operator-(int32_t days) const { return Date{serial - days}; }
  int32_t operator-(Date other) const { return serial - other.serial; }

  // 0 = Sunday ... 6 = Saturday.
  int weekday() const {
    int32_t d = (serial + 4) % 7;
    return d < 0 ? d + 7 : d;
  }
  bool is_weekend() const {
    int w = weekday();
    return w == 0 || w == 6;
  }
};

inline int32_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int32_t>(doe) - 719468;
}

inline void civil_from_days(int32_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const int era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int yr = static_cast<int>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yr + (m <= 2);
}

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{days_from_civil(y, m, d)};
}

inline std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  for (size_t i = 0; i < 10; ++i) {
    if (i == 4 || i == 7) continue;
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  y = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
  m = (text[5] - '0') * 10 + (text[6] - '0');
  d = (text[8] - '0') * 10 + (text[9] - '0');
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  // Round-trip to reject impossible days like Feb 30.
  Date dt = make_date(y, m, d);
  int yy;
  unsigned mm, dd;
  civil_from_days(dt.serial, yy, mm, dd);
  if (yy != y || mm != m || dd != d) return std::nullopt;
  return dt;
}

inline std::string to_string(Date dt) {
  int y;
  unsigned m, d;
  civil_from_days(dt.serial, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
  return buf;
}

}  // namespace ldpbl
