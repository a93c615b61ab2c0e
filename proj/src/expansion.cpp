#include "carcass/expansion.hpp"

#include "carcass/errors.hpp"
#include "carcass/path_walker.hpp"

#include <algorithm>

namespace carcass {

int GExpansion::bit(std::size_t i) const
{
    if (i < bits.size()) return bits[i];
    if (finiteness == Finiteness::finite) return 0;
    throw BitsExhaustedError("bit " + std::to_string(i) + " past a truncated expansion of " +
                             std::to_string(bits.size()) + " bits");
}

namespace {

void trim_trailing_zeros(std::vector<int>& bits)
{
    while (bits.size() > 1 && bits.back() == 0) bits.pop_back();
}

GExpansion all_ones(unsigned depth)
{
    GExpansion e;
    e.bits.assign(std::max(depth, 2u), 1);
    e.bits[0] = 0;
    e.finiteness = Finiteness::truncated;
    return e;
}

}  // namespace

GExpansion encode(const PreimageGrid& grid, const Rational& x, unsigned depth)
{
    if (x < 0 || x > 1)
        throw OutOfDomainError("encode at " + fraction_string(x));
    if (depth == 0)
        throw OutOfRangeError("encode depth must be >= 1");
    if (x == 1) return all_ones(depth);

    GExpansion e;
    e.bits.push_back(0);
    if (x == 0) return e;

    PathWalker walker(grid);
    while (e.bits.size() < depth) {
        const Rational c = walker.subdivision();
        if (x == c) {
            e.bits.push_back(1);
            return e;  // exact grid point, canonical finite form
        }
        const int bit = (x < c) ? 0 : 1;
        walker.descend(bit);
        e.bits.push_back(bit);
    }
    e.finiteness = Finiteness::truncated;
    return e;
}

std::pair<Rational, Rational> decode(const PreimageGrid& grid, const GExpansion& e, unsigned n)
{
    if (e.bits.empty() || e.bits[0] != 0)
        throw BitsTooShortError("expansion must start with x_0 = 0");
    if (e.finiteness == Finiteness::truncated && n + 1 > e.bits.size())
        throw BitsExhaustedError("decode to depth " + std::to_string(n) + " needs " +
                                 std::to_string(n + 1) + " bits, have " +
                                 std::to_string(e.bits.size()));
    PathWalker walker(grid);
    for (unsigned i = 1; i <= n; ++i) walker.descend(e.bit(i));
    if (e.finiteness == Finiteness::finite && n + 1 >= e.bits.size())
        return {walker.lower(), walker.lower()};
    return {walker.lower(), walker.upper()};
}

GExpansion shift(const GExpansion& e)
{
    if (e.bits.size() < 2)
        throw BitsExhaustedError("shift needs at least x_0 and x_1");
    GExpansion out;
    out.bits.push_back(0);
    out.finiteness = e.finiteness;
    const int x1 = e.bits[1];
    if (x1 == 0) {
        out.bits.insert(out.bits.end(), e.bits.begin() + 2, e.bits.end());
        return out;
    }
    for (std::size_t i = 2; i < e.bits.size(); ++i) out.bits.push_back(1 - e.bits[i]);
    if (e.finiteness == Finiteness::truncated) return out;

    // Finite input: the reflected zero tail is a ones tail, i.e. the right
    // endpoint of the current interval. Increment to its finite form.
    std::size_t i = out.bits.size();
    while (i > 1 && out.bits[i - 1] == 1) out.bits[--i] = 0;
    if (i == 1) return all_ones(static_cast<unsigned>(std::max<std::size_t>(e.bits.size(), 2)));
    out.bits[i - 1] = 1;
    trim_trailing_zeros(out.bits);
    return out;
}

int lex_compare(const GExpansion& a, const GExpansion& b)
{
    const std::size_t len = std::max(a.bits.size(), b.bits.size());
    for (std::size_t i = 0; i < len; ++i) {
        const int ai = (i < a.bits.size()) ? a.bits[i] : (a.finiteness == Finiteness::finite ? 0 : -1);
        const int bi = (i < b.bits.size()) ? b.bits[i] : (b.finiteness == Finiteness::finite ? 0 : -1);
        if (ai == -1 || bi == -1) return 0;  // truncated ran out: equal through prefix
        if (ai != bi) return ai < bi ? -1 : 1;
    }
    return 0;
}

int alpha_parity(const GExpansion& e, std::size_t n)
{
    int parity = 0;
    int prev = e.bit(0);
    for (std::size_t i = 1; i <= n; ++i) {
        const int cur = e.bit(i);
        parity ^= (cur != prev) ? 1 : 0;
        prev = cur;
    }
    return parity;
}

std::uint64_t p_index(const GExpansion& e, std::size_t i, unsigned n0)
{
    if (n0 < 2)
        throw WindowOutOfRangeError("p_index needs n0 >= 2");
    if (i + 1 < n0)
        throw WindowOutOfRangeError("window starts before x_0");
    const std::size_t anchor_pos = i + 1 - n0;
    const int anchor = e.bit(anchor_pos);
    std::uint64_t p = 0;
    for (std::size_t j = i - n0 + 2; j <= i; ++j)
        p = 2 * p + static_cast<unsigned>(e.bit(j) ^ anchor);
    return p;
}

std::string expansion_text(const GExpansion& e)
{
    std::string s = "0.";
    for (std::size_t i = 1; i < e.bits.size(); ++i) s += static_cast<char>('0' + e.bits[i]);
    return s;
}

GExpansion parse_expansion(const std::string& text, Finiteness finiteness)
{
    if (text.size() < 2 || text[0] != '0' || text[1] != '.')
        throw ParseError("expansion must look like '0.0110...': '" + text + "'");
    GExpansion e;
    e.finiteness = finiteness;
    e.bits.push_back(0);
    for (std::size_t i = 2; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
            throw ParseError("expansion digits must be 0/1: '" + text + "'");
        e.bits.push_back(text[i] - '0');
    }
    if (finiteness == Finiteness::finite) trim_trailing_zeros(e.bits);
    return e;
}

}  // namespace carcass
