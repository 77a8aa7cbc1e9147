#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "mwis/errors.hpp"

namespace mwis {

/// Exact arbitrary-precision rational. All weights, duals and thresholds in
/// this library are held as Rational so that feasibility and bound checks are
/// equalities/inequalities over Q, never float comparisons.
using Rational = mpq_class;

/// mpq_class has no long long constructor; all integer-to-rational
/// conversions in this codebase go through here.
inline Rational to_rational(long long v) {
    return Rational(static_cast<long>(v));
}

/// Parses "p" or "p/q" (q > 0). Throws ParseError on anything else.
Rational parse_rational(const std::string& text);

/// Renders as "p" for integers, "p/q" otherwise.
std::string rational_str(const Rational& r);

/// Approximate decimal rendering (for the CLI --decimal convenience column).
std::string rational_decimal_str(const Rational& r);

/// Bits needed to serialize numerator + denominator (payload accounting).
std::size_t rational_bits(const Rational& r);

std::size_t int_bits(long long v);

mpz_class rational_floor(const Rational& r);
mpz_class rational_ceil(const Rational& r);
long long rational_floor_ll(const Rational& r);
long long rational_ceil_ll(const Rational& r);

bool is_integer(const Rational& r);

/// base^exp over Q, exp >= 0.
Rational rational_pow(const Rational& base, unsigned long exp);

/// Smallest integer A >= 0 with A^k >= x (x >= 0, k >= 1).
long long ceil_kth_root(const Rational& x, int k);

/// Iterated base-2 logarithm (number of log2 applications to reach <= 1).
int log_star(long long n);

} // namespace mwis
