#include <catch2/catch_amalgamated.hpp>

#include "ldpbl/date.hpp"
#include "ldpbl/phone.hpp"

using namespace ldpbl;

TEST_CASE("caller id parsing accepts exactly ten digits") {
  auto v = parse_caller_id("2025550123");
  REQUIRE(v.has_value());
  CHECK(v->value == 2025550123ull);
  CHECK(v->prefix() == 202);
  CHECK(v->suffix() == 5550123u);

  CHECK(parse_caller_id("(202) 555-0123") == v);
  CHECK(parse_caller_id("202.555.0123") == v);
  CHECK(parse_caller_id("202 555 0123") == v);

  CHECK_FALSE(parse_caller_id("202555012"));      // nine digits
  CHECK_FALSE(parse_caller_id("20255501234"));    // eleven digits
  CHECK_FALSE(parse_caller_id("+12025550123"));   // country code
  CHECK_FALSE(parse_caller_id("202555O123"));     // letter O
  CHECK_FALSE(parse_caller_id(""));
  CHECK_FALSE(parse_caller_id(" - () ."));        // separators only
}

TEST_CASE("caller id formatting keeps leading zeros") {
  CHECK(PhoneNumber{5}.str() == "0000000005");
  CHECK(PhoneNumber{2025550123ull}.str() == "2025550123");
  CHECK(PhoneNumber{123}.prefix_str() == "000");
  CHECK(make_number(202, 5550123).value == 2025550123ull);
  CHECK(make_number(0, 0).str() == "0000000000");
}

TEST_CASE("prefix and suffix split round-trips") {
  for (uint64_t value : {0ull, 9999999999ull, 2025550123ull, 10000000ull, 9999999ull}) {
    PhoneNumber v{value};
    CHECK(make_number(v.prefix(), v.suffix()).value == value);
    CHECK(v.suffix() < kSuffixSpace);
    CHECK(v.prefix() < kPrefixSpace);
  }
}

TEST_CASE("dates parse and format as ISO-8601") {
  auto d = parse_date("2026-02-01");
  REQUIRE(d.has_value());
  CHECK(to_string(*d) == "2026-02-01");
  CHECK(*d == make_date(2026, 2, 1));

  CHECK_FALSE(parse_date("2026-02-30"));  // impossible day
  CHECK_FALSE(parse_date("2026-13-01"));
  CHECK_FALSE(parse_date("2026-00-10"));
  CHECK_FALSE(parse_date("26-02-01"));
  CHECK_FALSE(parse_date("2026/02/01"));
  CHECK_FALSE(parse_date("2026-2-1"));

  CHECK(parse_date("2024-02-29").has_value());   // leap year
  CHECK_FALSE(parse_date("2025-02-29"));
}

TEST_CASE("date arithmetic and ordering") {
  const Date feb1 = make_date(2026, 2, 1);
  CHECK(to_string(feb1 + 28) == "2026-03-01");
  CHECK(to_string(feb1 - 1) == "2026-01-31");
  CHECK((feb1 + 7) - feb1 == 7);
  CHECK(feb1 < feb1 + 1);
  CHECK(make_date(1970, 1, 1).serial == 0);
}

TEST_CASE("weekday and weekend flags") {
  CHECK(make_date(1970, 1, 1).weekday() == 4);   // Thursday
  CHECK(make_date(2026, 2, 1).weekday() == 0);   // Sunday
  CHECK(make_date(2026, 2, 2).weekday() == 1);   // Monday
  CHECK(make_date(2026, 2, 7).weekday() == 6);   // Saturday

  CHECK(make_date(2026, 2, 1).is_weekend());
  CHECK(make_date(2026, 2, 7).is_weekend());
  CHECK_FALSE(make_date(2026, 2, 4).is_weekend());

  int weekends = 0;
  for (int i = 0; i < 7; ++i)
    if ((make_date(2026, 2, 1) + i).is_weekend()) ++weekends;
  CHECK(weekends == 2);
}

TEST_CASE("civil conversions are inverse over a wide range") {
  for (int32_t serial = -100000; serial <= 100000; serial += 1234) {
    int y;
    unsigned m, d;
    civil_from_days(serial, y, m, d);
    CHECK(days_from_civil(y, m, d) == serial);
  }
}
