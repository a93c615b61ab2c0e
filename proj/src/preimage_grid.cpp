#include "carcass/preimage_grid.hpp"

#include "carcass/errors.hpp"

#include <algorithm>
#include <ostream>

namespace carcass {

PreimageGrid::PreimageGrid(CarcassMap map, unsigned levels, unsigned depth_cap)
    : map_(std::move(map)), depth_cap_(depth_cap)
{
    if (!map_.is_firm_certified())
        throw NotFirmError("pre-image grids require a firm-certified map");
    levels_.push_back({Rational(0), Rational(1)});  // level 1 = g^{-1}(0)
    ensure_levels(std::max(levels, 1u));
}

unsigned PreimageGrid::levels_built() const
{
    std::lock_guard lock(extend_mutex_);
    return static_cast<unsigned>(levels_.size());
}

void PreimageGrid::ensure_levels(unsigned n) const
{
    if (n > depth_cap_)
        throw DepthCapExceededError("level " + std::to_string(n) + " exceeds grid depth cap " +
                                    std::to_string(depth_cap_));
    std::lock_guard lock(extend_mutex_);
    extend_locked(n);
}

void PreimageGrid::extend_locked(unsigned target) const
{
    while (levels_.size() < target) {
        const std::vector<Rational>& prev = levels_.back();
        std::vector<Rational> next;
        next.reserve(2 * prev.size() - 1);
        // Increasing branch maps [0, peak] onto [0,1]: one pre-image per point,
        // in the same order. The decreasing branch contributes the mirror run.
        for (const Rational& y : prev) next.push_back(map_.preimage_increasing(y));
        for (std::size_t i = prev.size() - 1; i-- > 0;)
            next.push_back(map_.preimage_decreasing(prev[i]));
        levels_.push_back(std::move(next));
    }
}

const std::vector<Rational>& PreimageGrid::level(unsigned n) const
{
    if (n == 0)
        throw IndexOutOfRangeError("levels are numbered from 1");
    ensure_levels(n);
    std::lock_guard lock(extend_mutex_);
    return levels_[n - 1];
}

const Rational& PreimageGrid::mu(unsigned n, std::uint64_t k) const
{
    const auto& lv = level(n);
    if (k >= lv.size())
        throw IndexOutOfRangeError("mu index " + std::to_string(k) + " out of range at level " +
                                   std::to_string(n));
    return lv[k];
}

Rational PreimageGrid::width(unsigned n, std::uint64_t k) const
{
    const auto& lv = level(n);
    if (k + 1 >= lv.size())
        throw IndexOutOfRangeError("interval index " + std::to_string(k) +
                                   " out of range at level " + std::to_string(n));
    return lv[k + 1] - lv[k];
}

Rational PreimageGrid::delta(unsigned n, std::uint64_t k) const
{
    const auto& fine = level(n + 1);
    const auto& coarse = level(n);
    if (k + 1 >= coarse.size())
        throw IndexOutOfRangeError("delta index " + std::to_string(k) +
                                   " out of range at level " + std::to_string(n));
    return (fine[2 * k + 1] - coarse[k]) / (coarse[k + 1] - coarse[k]);
}

IntervalLocation PreimageGrid::interval_index(unsigned n, const Rational& x) const
{
    if (x < 0 || x > 1)
        throw OutOfDomainError("interval_index at " + fraction_string(x));
    const auto& lv = level(n);
    // First point strictly greater than x.
    auto it = std::upper_bound(lv.begin(), lv.end(), x);
    std::uint64_t k = static_cast<std::uint64_t>(it - lv.begin()) - 1;
    if (lv[k] == x) return {true, k};
    return {false, k};
}

DeltaProfile PreimageGrid::delta_profile() const
{
    DeltaProfile profile;
    profile.n0 = map_.n0();
    const unsigned base = profile.n0 - 1;  // n0 >= 2: the peak alone needs two steps
    const std::uint64_t count = std::uint64_t(1) << (base - 1);
    profile.values.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) profile.values.push_back(delta(base, k));
    profile.v_minus = Rational(1);
    profile.v_plus = Rational(0);
    for (const Rational& v : profile.values) {
        profile.v_minus = std::min(profile.v_minus, std::min(v, rot(v)));
        profile.v_plus = std::max(profile.v_plus, std::max(v, rot(v)));
    }
    return profile;
}

std::vector<Rational> PreimageGrid::delta_table(unsigned base_level) const
{
    const std::uint64_t count = std::uint64_t(1) << (base_level - 1);
    std::vector<Rational> table;
    table.reserve(count);
    for (std::uint64_t p = 0; p < count; ++p) table.push_back(delta(base_level, p));
    return table;
}

WidthBoundsReport PreimageGrid::width_bounds_check(unsigned n) const
{
    const unsigned n0 = map_.n0();
    if (n < n0)
        throw IndexOutOfRangeError("width bounds need level >= n0");
    WidthBoundsReport report;
    report.level = n;

    const auto& coarse = level(n0 - 1);
    Rational d(0);
    for (std::size_t p = 0; p + 1 < coarse.size(); ++p)
        d = std::max(d, coarse[p + 1] - coarse[p]);

    const DeltaProfile profile = delta_profile();
    const Rational lo_factor = rational_pow(profile.v_minus, n - n0 + 1);
    const Rational hi_factor = rational_pow(profile.v_plus, n - n0 + 1);
    report.upper_bound = d * hi_factor;

    const auto& lv = level(n);
    report.max_width = Rational(0);
    std::size_t p = 0;  // containing coarse interval, advanced in lockstep
    for (std::uint64_t k = 0; k + 1 < lv.size(); ++k) {
        while (coarse[p + 1] <= lv[k]) ++p;
        const Rational w = lv[k + 1] - lv[k];
        report.max_width = std::max(report.max_width, w);
        const Rational parent = coarse[p + 1] - coarse[p];
        const Rational lower = parent * lo_factor;
        const Rational upper = parent * hi_factor;
        if (w < lower || w > upper)
            report.violations.push_back({k, lower, w, upper});
    }
    return report;
}

PreimageGrid build_grid(const CarcassMap& map, unsigned n, unsigned depth_cap)
{
    return PreimageGrid(map, n, depth_cap);
}

Rational width_product(const PreimageGrid& grid, const std::vector<int>& bits)
{
    return width_product(grid, bits, grid.map().n0());
}

Rational width_product(const PreimageGrid& grid, const std::vector<int>& bits,
                       unsigned base_level)
{
    const unsigned n0 = base_level;
    const unsigned n = static_cast<unsigned>(bits.size());
    if (n0 < grid.map().n0())
        throw IndexOutOfRangeError("base level below the map's n0");
    if (n < n0)
        throw BitsTooShortError("width product needs at least n0 = " + std::to_string(n0) +
                                " bits, got " + std::to_string(n));
    for (int b : bits)
        if (b != 0 && b != 1) throw BitsTooShortError("bits must be 0/1");

    const std::vector<Rational> table = grid.delta_table(n0);
    const auto bit = [&](unsigned i) { return static_cast<unsigned>(bits[i - 1]); };  // x_i

    // Base: the level-n0 interval indexed by x_1..x_{n0-1}.
    std::uint64_t base_index = 0;
    for (unsigned i = 1; i < n0; ++i) base_index = 2 * base_index + bit(i);
    Rational w = grid.width(n0, base_index);

    // One subdivision ratio per refinement step m -> m+1.  The first step
    // reads the table directly; later steps reach it through the window
    // index p_{m-1} with every window bit reflected when x_{m-n0} = 1.
    w *= rot_pow(table[base_index], bit(n0));
    for (unsigned m = n0 + 1; m <= n; ++m) {
        const unsigned anchor = bit(m - n0);
        std::uint64_t p = 0;
        for (unsigned j = m - n0 + 1; j <= m - 1; ++j) p = 2 * p + (bit(j) ^ anchor);
        w *= rot_pow(table[p], bit(m) ^ anchor);
    }
    return w;
}

void write_level_csv(const PreimageGrid& grid, unsigned n, std::ostream& out)
{
    const auto& lv = grid.level(n);
    out << "k,num,den,width_num,width_den\n";
    for (std::size_t k = 0; k < lv.size(); ++k) {
        out << k << "," << numerator(lv[k]) << "," << denominator(lv[k]) << ",";
        if (k + 1 < lv.size()) {
            const Rational w = lv[k + 1] - lv[k];
            out << numerator(w) << "," << denominator(w) << "\n";
        } else {
            out << "0,1\n";
        }
    }
}

}  // namespace carcass
