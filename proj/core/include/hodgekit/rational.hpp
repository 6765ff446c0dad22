#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace hodgekit {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. GMP canonicalizes after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms. Prefer this over the two-argument mpq_class
/// constructor, which does not canonicalize.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Canonical "num/den" rendering. Integers render with an explicit "/1".
std::string to_string(const Rational& q);

/// Parses "a", "a/b" or "-a/b". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

Integer factorial(unsigned n);
Integer binomial(long n, long k);
/// (2k-1)!! with the convention (-1)!! = 1.
Integer double_factorial_odd(int k);

/// Generalized binomial coefficient binom(alpha, k) for rational alpha.
Rational binomial(const Rational& alpha, unsigned k);

/// Bernoulli number B_n with B_1 = -1/2, computed from the standard recurrence.
Rational bernoulli(unsigned n);

Rational pow(const Rational& base, unsigned e);

}  // namespace hodgekit
