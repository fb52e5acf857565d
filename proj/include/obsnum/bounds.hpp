#pragma once

// Thresholds at which the encoding counts drop below 2^C(n,2), evaluated in
// exact integer arithmetic.
//
//   h mode: 2 h n log2(2n) < C(n,2)    <=>  (2n)^(4h) < 2^(n-1)
//   s mode: c N log2(N) < C(n,2), N = n + s, c = p/q
//                                       <=>  N^(p N) < 2^(q C(n,2))

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "obsnum/geometry.hpp"

namespace obsnum {

struct BoundsQuery {
  std::optional<std::uint64_t> h;  // obstacle count
  std::optional<std::uint64_t> s;  // total obstacle sides
  Rational c = 1;                  // constant of the order-type count, s mode only

  void validate() const {
    if (h.has_value() == s.has_value()) throw std::invalid_argument("bounds: give exactly one of h or s");
    if (h && *h < 1) throw std::invalid_argument("bounds: h must be >= 1");
    if (s && *s < 3) throw std::invalid_argument("bounds: s must be >= 3");
    if (c <= 0) throw std::invalid_argument("bounds: c must be positive");
  }
};

inline Integer pow2(std::uint64_t e) {
  Integer r = 1;
  r <<= e;
  return r;
}

inline Integer ipow(const Integer& base, std::uint64_t e) {
  Integer result = 1;
  Integer b = base;
  while (e > 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

/// Does 2 h n log2(2n) < C(n,2) hold?
inline bool convex_bound_beaten(std::uint64_t n, std::uint64_t h) {
  if (n < 2) return false;
  return ipow(Integer(2 * n), 4 * h) < pow2(n - 1);
}

/// Does c (n+s) log2(n+s) < C(n,2) hold?
inline bool sides_bound_beaten(std::uint64_t n, std::uint64_t s, const Rational& c) {
  if (n < 2) return false;
  const std::uint64_t big_n = n + s;
  const std::uint64_t pairs = n * (n - 1) / 2;
  const Integer p = numerator(c);
  const Integer q = denominator(c);
  if (p > Integer(UINT64_MAX / (big_n + 1)) || q > Integer(UINT64_MAX / (pairs + 1)))
    throw std::overflow_error("bounds: constant too large");
  const auto pn = static_cast<std::uint64_t>(p) * big_n;
  const auto qm = static_cast<std::uint64_t>(q) * pairs;
  return ipow(Integer(big_n), pn) < pow2(qm);
}

/// ((2n)!)^h / h!, the number of h-tuples of tangent sequences up to order.
inline Rational convex_sequence_count(std::uint64_t n, std::uint64_t h) {
  Integer fact2n = 1;
  for (std::uint64_t i = 2; i <= 2 * n; ++i) fact2n *= i;
  Integer fact_h = 1;
  for (std::uint64_t i = 2; i <= h; ++i) fact_h *= i;
  return Rational(ipow(fact2n, h), fact_h);
}

/// Smallest n for which the counting bound is beaten.
inline std::uint64_t bounds_threshold(const BoundsQuery& q, std::uint64_t search_limit = 1'000'000) {
  q.validate();
  for (std::uint64_t n = 1; n <= search_limit; ++n) {
    const bool beaten = q.h ? convex_bound_beaten(n, *q.h) : sides_bound_beaten(n, *q.s, q.c);
    if (beaten) return n;
  }
  throw std::runtime_error("bounds: no threshold below search limit");
}

}  // namespace obsnum
