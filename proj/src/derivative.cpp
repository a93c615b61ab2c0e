#include "carcass/derivative.hpp"

#include "carcass/errors.hpp"
#include "carcass/path_walker.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace carcass {

const char* to_string(SlopeTrend trend)
{
    switch (trend) {
        case SlopeTrend::tends_to_zero: return "tends_to_zero";
        case SlopeTrend::tends_to_infinity: return "tends_to_infinity";
        case SlopeTrend::converges_finite: return "converges_finite";
        case SlopeTrend::oscillates: return "oscillates";
        case SlopeTrend::undetermined: return "undetermined";
    }
    return "?";
}

const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

Rational slope_hn(const ConjugacyApprox& h, const Rational& x, Side side)
{
    if (x == 0 && side == Side::left)
        throw SideUnavailableError("no left slope at x = 0");
    if (x == 1 && side == Side::right)
        throw SideUnavailableError("no right slope at x = 1");
    const IntervalLocation loc = h.source_grid().interval_index(h.level(), x);
    const auto& src = h.source_grid().level(h.level());
    const auto& dst = h.target_grid().level(h.level());
    std::uint64_t segment = loc.k;
    if (loc.on_boundary && side == Side::left) segment = loc.k - 1;
    return (dst[segment + 1] - dst[segment]) / (src[segment + 1] - src[segment]);
}

Rational ae_factor(const Rational& v, int a, int b) { return a == b ? v : rot(v); }

Rational product_formula_general(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                 const std::vector<int>& bits)
{
    const unsigned base = std::max(g1grid.map().n0(), g2grid.map().n0());
    return width_product(g2grid, bits, base) / width_product(g1grid, bits, base);
}

Rational product_formula_skew(const Rational& v, const std::vector<int>& bits_with_x0)
{
    if (bits_with_x0.empty() || bits_with_x0[0] != 0)
        throw BitsTooShortError("skew product needs the leading x_0 = 0");
    Rational result(1);
    for (std::size_t k = 1; k < bits_with_x0.size(); ++k)
        result *= 2 * ae_factor(v, bits_with_x0[k], bits_with_x0[k - 1]);
    return result;
}

namespace {

// Bit source for one-sided slope paths: explicit prefix, then a constant tail.
struct SidedBits {
    std::vector<int> prefix;
    int tail = 0;
    int at(std::size_t i) const  // x_{i+1}, i.e. 0-based after x_0
    {
        return i < prefix.size() ? prefix[i] : tail;
    }
};

// The interval chain approaching x from the given side. For a point interior
// to every level (truncated expansion) both sides share its chain; for a grid
// point the right chain pads the finite bits with zeros and the left chain
// decrements the index and pads with ones.
SidedBits sided_bits(const GExpansion& e, Side side)
{
    SidedBits out;
    out.prefix.assign(e.bits.begin() + 1, e.bits.end());
    if (e.finiteness == Finiteness::truncated) {
        if (!out.prefix.empty() && std::all_of(out.prefix.begin(), out.prefix.end(),
                                               [](int b) { return b == 1; })) {
            out.tail = 1;  // x = 1
        }
        return out;
    }
    if (side == Side::right) {
        out.tail = 0;
        return out;
    }
    // Left side: the finite bits of k_m - 1 followed by ones.
    out.tail = 1;
    std::size_t i = out.prefix.size();
    while (i > 0 && out.prefix[i - 1] == 0) out.prefix[--i] = 1;
    if (i == 0)
        throw SideUnavailableError("no left slope at x = 0");
    out.prefix[i - 1] = 0;
    return out;
}

std::vector<Rational> slope_values(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                   const SidedBits& bits, unsigned depth)
{
    PathWalker source(g1grid);
    PathWalker target(g2grid);
    std::vector<Rational> values;
    values.reserve(depth - 1);
    for (unsigned n = 2; n <= depth; ++n) {
        const int bit = bits.at(n - 2);
        source.descend(bit);
        target.descend(bit);
        values.push_back(target.width() / source.width());
    }
    return values;
}

}  // namespace

SlopeTrend classify_slope_sequence(const std::vector<Rational>& values, unsigned window,
                                   const ClassifyThresholds& thresholds, double* limit_out)
{
    if (values.size() < window || window < 2) return SlopeTrend::undetermined;
    const std::size_t start = values.size() - window;

    bool all_tiny = true, all_huge = true;
    Rational lo = values[start], hi = values[start];
    for (std::size_t i = start; i < values.size(); ++i) {
        const Rational& v = values[i];
        all_tiny = all_tiny && v < thresholds.zero_cutoff;
        all_huge = all_huge && v > thresholds.infinity_cutoff;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (all_tiny) return SlopeTrend::tends_to_zero;
    if (all_huge) return SlopeTrend::tends_to_infinity;
    if (hi - lo < hi * thresholds.spread_tolerance) {
        if (limit_out) *limit_out = values.back().convert_to<double>();
        return SlopeTrend::converges_finite;
    }

    const Rational up = 1 + thresholds.ratio_margin;
    const Rational down = 1 - thresholds.ratio_margin;
    unsigned rising = 0, falling = 0, flat = 0;
    for (std::size_t i = start; i + 1 < values.size(); ++i) {
        const Rational ratio = values[i + 1] / values[i];
        if (ratio > up)
            ++rising;
        else if (ratio < down)
            ++falling;
        else
            ++flat;
    }
    if (falling > 0 && rising == 0 && flat == 0) return SlopeTrend::tends_to_zero;
    if (rising > 0 && falling == 0 && flat == 0) return SlopeTrend::tends_to_infinity;
    if (rising >= 2 && falling >= 2) return SlopeTrend::oscillates;
    return SlopeTrend::undetermined;
}

std::pair<SlopeSequence, SlopeSequence> lr_limits(const PreimageGrid& g1grid,
                                                  const PreimageGrid& g2grid, const Rational& x,
                                                  unsigned depth, unsigned window,
                                                  const ClassifyThresholds& thresholds)
{
    if (window < 4 || depth < window)
        throw WindowOutOfRangeError("need depth >= window >= 4");
    const GExpansion e = encode(g1grid, x, depth + 2);

    // At the endpoints only one side exists; both sequences report it.
    SidedBits right_bits, left_bits;
    if (x == 0) {
        right_bits = left_bits = sided_bits(e, Side::right);
    } else if (x == 1) {
        right_bits = left_bits = sided_bits(e, Side::left);
    } else {
        right_bits = sided_bits(e, Side::right);
        left_bits = sided_bits(e, Side::left);
    }

    SlopeSequence left, right;
    left.side = Side::left;
    right.side = Side::right;
    left.values = slope_values(g1grid, g2grid, left_bits, depth);
    right.values = slope_values(g1grid, g2grid, right_bits, depth);
    left.trend = classify_slope_sequence(left.values, window, thresholds, &left.limit);
    right.trend = classify_slope_sequence(right.values, window, thresholds, &right.limit);
    return {left, right};
}

DeltaLR delta_LR(const ConjugacyApprox& h, unsigned n, std::uint64_t k, const Rational& t,
                 const Rational& eps)
{
    const Rational& a1 = h.source_grid().mu(n, k);
    const Rational& b1 = h.source_grid().mu(n, k + 1);
    if (!(t > a1 && t < b1))
        throw TOnBoundaryError("t = " + fraction_string(t) + " is not strictly inside I_{" +
                               std::to_string(n) + "," + std::to_string(k) + "}");
    const Rational& a2 = h.target_grid().mu(n, k);
    const Rational& b2 = h.target_grid().mu(n, k + 1);
    const Rational slope = (b2 - a2) / (b1 - a1);

    const auto [lo, hi] = eval_h(h.source_grid(), h.target_grid(), t, eps);
    const Rational mid = (lo + hi) / 2;
    const Rational half = (hi - lo) / 2;

    DeltaLR out;
    out.delta_l = abs((mid - a2) / (slope * (t - a1)) - 1);
    out.err_l = half / (slope * (t - a1));
    out.delta_r = abs((b2 - mid) / (slope * (b1 - t)) - 1);
    out.err_r = half / (slope * (b1 - t));
    return out;
}

ConjugacyClassification classify_conjugacy(const PreimageGrid& g1grid,
                                           const PreimageGrid& g2grid, unsigned probe_depth)
{
    // Stabilisation witness: every new vertex of h_{n+1} already lies on h_n.
    const ConjugacyApprox coarse = build_hn(g1grid, g2grid, probe_depth);
    const auto& src = g1grid.level(probe_depth + 1);
    const auto& dst = g2grid.level(probe_depth + 1);
    bool stabilised = true;
    for (std::size_t j = 1; j < src.size(); j += 2) {
        if (coarse.eval(src[j]) != dst[j]) {
            stabilised = false;
            break;
        }
    }
    if (stabilised) {
        ConjugacyClassification out;
        out.kind = ConjugacyClassification::Kind::piecewise_linear;
        out.witness_level = probe_depth;
        return out;
    }

    std::vector<Rational> probes;
    probes.emplace_back(0);
    probes.emplace_back(1);
    for (int j = 1; j < 16; ++j) probes.emplace_back(j, 16);
    probes.emplace_back(1, 3);
    probes.emplace_back(2, 5);
    probes.emplace_back(5, 7);
    for (const Rational& x : probes) {
        const auto [left, right] = lr_limits(g1grid, g2grid, x, kEvidenceDepth, kEvidenceWindow);
        for (const SlopeSequence* seq : {&left, &right}) {
            if (seq->trend == SlopeTrend::tends_to_zero ||
                seq->trend == SlopeTrend::tends_to_infinity) {
                ConjugacyClassification out;
                out.kind = ConjugacyClassification::Kind::singular;
                out.evidence_x = x;
                out.evidence_side = seq->side;
                out.evidence_trend = seq->trend;
                return out;
            }
        }
    }
    throw InconclusiveError("no stabilisation witness and no escaping slope sequence at depth " +
                            std::to_string(probe_depth));
}

namespace {

void write_sequence_rows(const SlopeSequence& seq, std::ostream& out)
{
    const Rational huge = rational_pow(Rational(10), 300);
    const Rational tiny = 1 / huge;
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        const Rational& v = seq.values[i];
        out << (seq.first_level + i) << ",";
        if (v > huge || v < tiny) {
            std::ostringstream text;
            text.precision(17);
            text << v.convert_to<double>();
            out << text.str() << ",1";
        } else {
            out << numerator(v) << "," << denominator(v);
        }
        out << "," << to_string(seq.side) << "," << to_string(seq.trend) << "\n";
    }
}

}  // namespace

void write_slopes_csv(const std::vector<const SlopeSequence*>& sequences, std::ostream& out)
{
    out << "n,slope_num,slope_den,side,classification\n";
    for (const SlopeSequence* seq : sequences) write_sequence_rows(*seq, out);
}

void write_slopes_csv(const SlopeSequence& left, const SlopeSequence& right, std::ostream& out)
{
    write_slopes_csv({&left, &right}, out);
}

}  // namespace carcass
