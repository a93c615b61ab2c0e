#include "carcass/graph_length.hpp"

#include "carcass/errors.hpp"

#include <algorithm>
#include <ostream>

namespace carcass {

namespace {

constexpr unsigned kGuardBits = 64;

BigFloat segment_sum(const std::vector<Rational>& squared_lengths, mpfr_prec_t wp)
{
    CompensatedSum sum(wp);
    for (const Rational& s : squared_lengths) sum.add(BigFloat(s, wp).sqrt());
    return sum.value();
}

}  // namespace

BigFloat polyline_length(const std::vector<Breakpoint>& vertices, unsigned precision_bits)
{
    const mpfr_prec_t wp = precision_bits + kGuardBits;
    std::vector<Rational> squares;
    squares.reserve(vertices.size());
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const Rational dx = vertices[i].x - vertices[i - 1].x;
        const Rational dy = vertices[i].y - vertices[i - 1].y;
        squares.push_back(dx * dx + dy * dy);
    }
    return segment_sum(squares, wp);
}

BigFloat polyline_length(const ConjugacyApprox& h, unsigned precision_bits)
{
    const mpfr_prec_t wp = precision_bits + kGuardBits;
    const auto& src = h.source_grid().level(h.level());
    const auto& dst = h.target_grid().level(h.level());
    std::vector<Rational> squares;
    squares.reserve(src.size());
    for (std::size_t i = 1; i < src.size(); ++i) {
        const Rational dx = src[i] - src[i - 1];
        const Rational dy = dst[i] - dst[i - 1];
        squares.push_back(dx * dx + dy * dy);
    }
    return segment_sum(squares, wp);
}

BigFloat binomial_length(const Rational& v, unsigned n, unsigned precision_bits)
{
    if (v < 0 || v > 1)
        throw OutOfRangeError("binomial length parameter must lie in [0,1]");
    const mpfr_prec_t wp = precision_bits + kGuardBits;
    if (v == 0 || v == 1) return BigFloat(1ul, wp);

    // Inner arguments 1 + 2^{2n} v^{2k} (1-v)^{2(n-k)} stay exact; the k -> k+1
    // step multiplies the product term by (v/(1-v))^2.
    const Rational one_minus = rot(v);
    const Rational ratio = (v / one_minus) * (v / one_minus);
    Rational term = rational_pow(Rational(4), n) * rational_pow(one_minus, 2 * n);

    std::vector<BigFloat> terms;
    terms.reserve(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        const BigFloat root = BigFloat(Rational(1) + term, wp).sqrt();
        terms.push_back(BigFloat(binomial(n, k), wp) * root);
        if (k < n) term *= ratio;
    }
    std::sort(terms.begin(), terms.end(), [](const BigFloat& a, const BigFloat& b) { return b < a; });

    CompensatedSum sum(wp);
    for (const BigFloat& t : terms) sum.add(t);
    return sum.value().ldexp(-static_cast<long>(n));
}

namespace {

LengthSequence finish_sequence(LengthSequence seq)
{
    const BigFloat one(1ul, 64);
    const BigFloat two(2ul, 64);
    seq.monotone_ok.assign(seq.values.size(), true);
    seq.bound_ok.assign(seq.values.size(), true);
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        if (i > 0) seq.monotone_ok[i] = seq.values[i] >= seq.values[i - 1];
        seq.bound_ok[i] = seq.values[i] >= one && seq.values[i] <= two;
    }
    return seq;
}

}  // namespace

LengthSequence length_sequence_binomial(const Rational& v, unsigned max_level,
                                        unsigned precision_bits)
{
    if (max_level > kBinomialDepthCap)
        throw DepthCapExceededError("binomial length capped at level " +
                                    std::to_string(kBinomialDepthCap));
    if (max_level < 2)
        throw OutOfRangeError("length sequences start at level 2");
    LengthSequence seq;
    seq.formula = LengthSequence::Formula::binomial;
    seq.values.reserve(max_level - 1);
    for (unsigned level = 2; level <= max_level; ++level)
        seq.values.push_back(binomial_length(v, level - 1, precision_bits));
    return finish_sequence(std::move(seq));
}

LengthSequence length_sequence_polyline(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                        unsigned max_level, unsigned precision_bits)
{
    if (max_level < 2)
        throw OutOfRangeError("length sequences start at level 2");
    LengthSequence seq;
    seq.formula = LengthSequence::Formula::polyline;
    seq.values.reserve(max_level - 1);
    for (unsigned level = 2; level <= max_level; ++level)
        seq.values.push_back(polyline_length(build_hn(g1grid, g2grid, level), precision_bits));
    return finish_sequence(std::move(seq));
}

void write_lengths_csv(const LengthSequence& seq, std::ostream& out)
{
    out << "n,l_n,monotone_flag,bound_flag\n";
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        out << (seq.first_level + i) << "," << seq.values[i].str_fixed(30) << ","
            << (seq.monotone_ok[i] ? 1 : 0) << "," << (seq.bound_ok[i] ? 1 : 0) << "\n";
    }
}

}  // namespace carcass
