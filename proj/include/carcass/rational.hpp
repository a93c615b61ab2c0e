#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace carcass {

// All exact quantities in the library (breakpoints, grid points, slopes,
// interval widths) are carried by arbitrary-precision rationals.  GMP keeps
// them canonical: lowest terms, positive denominator.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "p/q" (q a positive integer) or a bare integer "p".
/// Throws ParseError on malformed input or q <= 0.
Rational parse_rational(const std::string& text);

/// Formats as "p/q" with the canonical sign on the numerator. Integers
/// are still rendered with an explicit "/1" so the format is uniform.
std::string fraction_string(const Rational& r);

Rational rational_pow(const Rational& base, unsigned exp);

/// True when r = p / 2^k in lowest terms.
bool is_dyadic(const Rational& r);

/// The reflection t -> 1 - t applied to subdivision ratios.
inline Rational rot(const Rational& t) { return Rational(1) - t; }

inline Rational rot_pow(const Rational& t, unsigned exponent)
{
    return (exponent % 2 == 0) ? t : rot(t);
}

BigInt binomial(unsigned n, unsigned k);

}  // namespace carcass
