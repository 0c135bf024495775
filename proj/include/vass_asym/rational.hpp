#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vass {

/// Arbitrary-precision integer; counter updates are unbounded in magnitude.
using Integer = mpz_class;

/// Exact rational, always kept in canonical (reduced, positive denominator) form.
using Rational = mpq_class;

/// Parses "a/b" or an integer literal ("-3", "7"). Decimal points, exponents,
/// whitespace and zero denominators are rejected.
Rational parse_rational(std::string_view text);

/// Parses a base-10 integer literal with optional leading '-'.
Integer parse_integer(std::string_view text);

/// "a/b" for non-integers, "a" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool fits_int64(const Integer& z);
std::int64_t to_int64(const Integer& z);

/// floor(q * 2^64) for q in [0,1]; q == 1 saturates to UINT64_MAX.
std::uint64_t scaled_threshold_2_64(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& values);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

}  // namespace vass
