// Exact occupancy probabilities for n uniform balls in l bins.
//
// P(exactly b bins occupied) = S(n, b) * C(l, b) * b! / l^n with S the
// Stirling numbers of the second kind. Everything is computed in exact
// big-integer rationals and only converted to double at the edge, so the
// report-count tables derived from these probabilities are reproducible to
// the last unit.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ldpbl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Row S(n, 0..b_max) by the standard recurrence.
inline std::vector<BigInt> stirling2_row(uint32_t n, uint32_t b_max) {
  std::vector<BigInt> row(b_max + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (uint32_t i = 1; i <= n; ++i) {
    // In-place update walking b downward keeps S(i-1, *) available.
    for (uint32_t b = std::min(i, b_max); b >= 1; --b)
      row[b] = BigInt(b) * row[b] + row[b - 1];
    row[0] = 0;
  }
  return row;
}

inline BigInt stirling2(uint32_t n, uint32_t b) {
  if (b > n) return 0;
  return stirling2_row(n, b)[b];
}

inline BigInt falling_factorial(uint32_t l, uint32_t b) {
  BigInt r = 1;
  for (uint32_t i = 0; i < b; ++i) r *= (l - i);
  return r;
}

// P(exactly b distinct bins hit), for b = 0..l.
inline std::vector<double> fill_distribution(uint32_t l, uint32_t n) {
  if (l == 0) throw std::invalid_argument("need at least one bin");
  const auto row = stirling2_row(n, l);
  BigInt total = 1;
  for (uint32_t i = 0; i < n; ++i) total *= l;
  std::vector<double> dist(l + 1, 0.0);
  for (uint32_t b = 0; b <= l && b <= n; ++b) {
    // C(l, b) * b! is the falling factorial l * (l-1) * ... * (l-b+1).
    BigRat p(row[b] * falling_factorial(l, b), total);
    dist[b] = p.convert_to<double>();
  }
  return dist;
}

namespace bib_detail {

// Exact comparison P(all l bins hit by n balls) >= p, sharing the running
// Stirling row so threshold searches stay incremental.
struct FillScan {
  uint32_t l;
  uint32_t n = 0;
  std::vector<BigInt> row;  // S(n, 0..l)
  BigInt total = 1;         // l^n
  BigInt lfact = 1;         // l!

  explicit FillScan(uint32_t bins) : l(bins), row(bins + 1, 0) {
    if (bins == 0) throw std::invalid_argument("need at least one bin");
    row[0] = 1;
    for (uint32_t i = 1; i <= bins; ++i) lfact *= i;
  }

  void step() {
    ++n;
    for (uint32_t b = std::min(n, l); b >= 1; --b)
      row[b] = BigInt(b) * row[b] + row[b - 1];
    row[0] = 0;
    total *= l;
  }

  bool fill_at_least(const BigRat& p) const {
    return BigRat(row[l] * lfact, total) >= p;
  }

  double fill() const { return BigRat(row[l] * lfact, total).convert_to<double>(); }
};

}  // namespace bib_detail

inline double fill_probability(uint32_t l, uint32_t n) {
  bib_detail::FillScan scan(l);
  while (scan.n < n) scan.step();
  return scan.fill();
}

// Smallest n with P(all l bins hit) >= p.
inline uint32_t min_reports_for(uint32_t l, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("target must be in (0, 1)");
  bib_detail::FillScan scan(l);
  const BigRat target(p);  // doubles convert to exact rationals
  while (scan.n < l || !scan.fill_at_least(target)) {
    scan.step();
    if (scan.n > 1000000) throw std::runtime_error("fill target out of reach");
  }
  return scan.n;
}

}  // namespace ldpbl
