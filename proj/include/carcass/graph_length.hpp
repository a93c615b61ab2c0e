#pragma once

#include "carcass/bigfloat.hpp"
#include "carcass/carcass_map.hpp"
#include "carcass/conjugacy.hpp"
#include "carcass/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace carcass {

inline constexpr unsigned kDefaultLengthPrecision = 128;
inline constexpr unsigned kBinomialDepthCap = 2000;

/// Sum over segments of sqrt(dx^2 + dy^2): the inner squares are exact
/// rationals, the square roots are taken 64 guard bits above the requested
/// precision, and the sum is compensated.
BigFloat polyline_length(const std::vector<Breakpoint>& vertices,
                         unsigned precision_bits = kDefaultLengthPrecision);
BigFloat polyline_length(const ConjugacyApprox& h,
                         unsigned precision_bits = kDefaultLengthPrecision);

/// Closed form for the tent -> skew_tent(v) level-(n+1) approximation:
/// 2^{-n} * sum_k C(n,k) sqrt(1 + 2^{2n} v^{2k} (1-v)^{2(n-k)}), summed
/// largest terms first with compensation. v in {0,1} degenerates to 1.
BigFloat binomial_length(const Rational& v, unsigned n,
                         unsigned precision_bits = kDefaultLengthPrecision);

struct LengthSequence {
    enum class Formula { polyline, binomial } formula = Formula::binomial;
    unsigned first_level = 2;        // values[i] is l_{first_level + i}
    std::vector<BigFloat> values;
    std::vector<bool> monotone_ok;   // l_n >= l_{n-1} (first entry true)
    std::vector<bool> bound_ok;      // 1 <= l_n <= 2
};

LengthSequence length_sequence_binomial(const Rational& v, unsigned max_level,
                                        unsigned precision_bits = kDefaultLengthPrecision);
LengthSequence length_sequence_polyline(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                        unsigned max_level,
                                        unsigned precision_bits = kDefaultLengthPrecision);

/// CSV: n,l_n (30 decimal digits),monotone_flag,bound_flag.
void write_lengths_csv(const LengthSequence& seq, std::ostream& out);

}  // namespace carcass
