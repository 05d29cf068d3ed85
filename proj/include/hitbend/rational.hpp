#pragma once

#include <gmpxx.h>

#include <string>

namespace hitbend {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" with q > 0, always including the denominator.
std::string to_pq_string(const Rational& q);
Rational parse_rational(const std::string& text);

Integer floor_div(const Integer& a, const Integer& b);
Integer round_nearest(const Rational& q);  // ties toward +infinity
Integer lcm_denominator(const Integer& acc, const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Integer& z) { return sgn(z); }

Rational rational_pow(const Rational& base, unsigned exponent);
Integer binomial(unsigned n, unsigned k);
bool is_probable_prime(unsigned long p);

}  // namespace hitbend
