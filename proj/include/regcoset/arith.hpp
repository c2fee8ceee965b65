#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace regcoset {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" (decimal, no whitespace). The result is
/// canonicalized; a zero denominator is a ParseError.
Rational parse_rational(std::string_view text);

/// Canonical wire form: "p" when the denominator is 1, otherwise "p/q" in
/// lowest terms with the sign on the numerator.
std::string format_rational(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Generator of the fractional ideal aZ + bZ of Q; zero if both are zero.
Rational rational_gcd(const Rational& a, const Rational& b);

Integer lcm(const Integer& a, const Integer& b);

// Valuation conventions: ord_p(0) is kInfiniteOrder.
inline constexpr int kInfiniteOrder = 1 << 28;
int ord_p(const Integer& value, unsigned long p);
int ord_p(const Rational& value, unsigned long p);

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of |n| in increasing order (n != 0).
std::vector<std::uint64_t> prime_divisors(const Integer& n);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

Integer ipow(const Integer& base, unsigned long exponent);

/// Least nonnegative residue of value mod modulus, where value may be a
/// rational whose denominator is prime to modulus.
Integer mod_rational(const Rational& value, const Integer& modulus);

/// Multiplicative order of a modulo m (gcd(a, m) = 1); returns 1 for m = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

}  // namespace regcoset
