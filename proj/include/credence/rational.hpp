#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace credence {

// Exact rational arithmetic for every probability, utility and LP value.
using Rational = mpq_class;

// Accepts "p/q", "p", "p/2^k" and finite decimals such as "0.3" or "-1.25".
// Throws Error(Parse) on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

// Always renders "num/den" (den = 1 for integers), the wire format.
std::string to_string(const Rational& value);

// Smallest k with 2^-k <= eps. eps must be positive.
int exponent_for_tolerance(const Rational& eps);

Rational pow2_inverse(int k);

// num/den in canonical form; mpq_class(num, den) alone does not reduce and
// GMP arithmetic requires reduced operands. den must be nonzero.
inline Rational ratio(const mpz_class& num, const mpz_class& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace credence
