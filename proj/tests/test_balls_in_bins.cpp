#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ldpbl/balls_in_bins.hpp"
#include "ldpbl/rng.hpp"

using namespace ldpbl;

TEST_CASE("stirling numbers of the second kind") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 0) == 0);
  CHECK(stirling2(7, 1) == 1);
  CHECK(stirling2(7, 7) == 1);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(10, 3) == 9330);
  CHECK(stirling2(3, 5) == 0);  // more parts than elements

  // Row sums are the Bell numbers.
  const std::vector<uint64_t> bell = {1,   1,    2,    5,     15,    52,
                                      203, 877, 4140, 21147, 115975};
  for (uint32_t n = 0; n < bell.size(); ++n) {
    const auto row = stirling2_row(n, n);
    BigInt sum = 0;
    for (const auto& s : row) sum += s;
    CHECK(sum == bell[n]);
  }
}

TEST_CASE("fill distribution is a probability distribution") {
  for (auto [l, n] : {std::pair<uint32_t, uint32_t>{24, 84},
                      {31, 143},
                      {5, 3},
                      {8, 0},
                      {1, 10}}) {
    const auto dist = fill_distribution(l, n);
    REQUIRE(dist.size() == l + 1);
    double sum = 0.0;
    for (double p : dist) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == Catch::Approx(1.0).epsilon(1e-12));
    // No more bins occupied than balls thrown.
    for (uint32_t b = std::min(l, n) + 1; b <= l; ++b) CHECK(dist[b] == 0.0);
  }
  CHECK_THROWS_AS(fill_distribution(0, 10), std::invalid_argument);
}

TEST_CASE("fill distribution matches exhaustive enumeration for small cases") {
  for (uint32_t l = 1; l <= 5; ++l) {
    for (uint32_t n = 0; n <= 6; ++n) {
      std::vector<double> brute(l + 1, 0.0);
      uint64_t total = 1;
      for (uint32_t i = 0; i < n; ++i) total *= l;
      for (uint64_t code = 0; code < total; ++code) {
        uint64_t rem = code;
        uint32_t occupied_mask = 0;
        for (uint32_t i = 0; i < n; ++i) {
          occupied_mask |= 1u << (rem % l);
          rem /= l;
        }
        ++brute[static_cast<uint32_t>(std::popcount(occupied_mask))];
      }
      const auto dist = fill_distribution(l, n);
      for (uint32_t b = 0; b <= l; ++b)
        CHECK(dist[b] == Catch::Approx(brute[b] / double(total)).margin(1e-12));
    }
  }
}

TEST_CASE("fill probability edge cases and monotonicity") {
  CHECK(fill_probability(1, 1) == 1.0);
  CHECK(fill_probability(1, 5) == 1.0);
  CHECK(fill_probability(24, 23) == 0.0);  // fewer balls than bins
  CHECK(fill_probability(24, 0) == 0.0);

  double prev = 0.0;
  for (uint32_t n = 24; n <= 200; n += 8) {
    const double p = fill_probability(24, n);
    CHECK(p >= prev);
    prev = p;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("report-count anchors") {
  CHECK(min_reports_for(24, 0.80) == 111);
  CHECK(min_reports_for(34, 0.80) == 170);
  CHECK(fill_probability(24, 84) == Catch::Approx(0.4875).margin(5e-5));
  CHECK(fill_probability(24, 84) < 0.5);

  // min_reports_for returns the first count at or above the target.
  CHECK(fill_probability(24, 111) >= 0.80);
  CHECK(fill_probability(24, 110) < 0.80);
  CHECK_THROWS_AS(min_reports_for(24, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(min_reports_for(24, 1.0), std::invalid_argument);
}

TEST_CASE("31-bin model tracks the pipeline report thresholds") {
  // One corrected coordinate leaves 31 that must be hit at least once.
  const std::vector<uint32_t> expected = {144, 152, 161, 174, 196};
  const std::vector<double> targets = {0.75, 0.80, 0.85, 0.90, 0.95};
  for (size_t i = 0; i < targets.size(); ++i)
    CHECK(min_reports_for(31, targets[i]) == expected[i]);
}

TEST_CASE("monte carlo agrees with the exact fill probability") {
  Rng rng(515);
  for (auto [l, n] : {std::pair<uint32_t, uint32_t>{24, 111}, {32, 143}, {32, 195}}) {
    const double exact = fill_probability(l, n);
    const int trials = 100000;
    int filled = 0;
    for (int t = 0; t < trials; ++t) {
      uint64_t mask = 0;
      for (uint32_t i = 0; i < n; ++i) mask |= 1ull << rng.below(l);
      if (std::popcount(mask) == int(l)) ++filled;
    }
    const double sd = std::sqrt(exact * (1.0 - exact) / trials);
    CHECK(std::abs(double(filled) / trials - exact) <= 3.0 * sd);
  }
}
