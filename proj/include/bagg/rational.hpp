/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rational scalar and parsing/rendering helpers.
 *
 * Every mechanism-level quantity in this library is a Rational; floating point is
 * never used for computation, only (optionally) for human-readable rendering.
 * Values are always stored canonically: lowest terms, positive denominator.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bagg {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Convenience constructor: p/q in lowest terms.
inline Rat frac(long p, long q) { return Rat(p, q); }

/// Renders as "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rat& r);

/// Fixed-point decimal rendering with `places` digits after the point,
/// rounded half away from zero. Approximate by design; for reports only.
std::string to_decimal_string(const Rat& r, int places = 12);

/// Parses "p/q", an integer "p", or an exact decimal like "0.25" (scaled by a
/// power of ten, no precision loss). Returns nullopt on malformed input.
std::optional<Rat> parse_rational(std::string_view text);

/// Sum of a vector of rationals (empty sum is 0).
Rat sum(const std::vector<Rat>& xs);

}  // namespace bagg
