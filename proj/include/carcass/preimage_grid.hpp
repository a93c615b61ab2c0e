#pragma once

#include "carcass/carcass_map.hpp"
#include "carcass/rational.hpp"

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <mutex>
#include <vector>

namespace carcass {

/// Default cap on explicitly stored levels; denominators grow geometrically
/// with depth, so deeper work goes through PathWalker instead.
inline constexpr unsigned kDefaultGridDepthCap = 24;

struct IntervalLocation {
    bool on_boundary = false;
    std::uint64_t k = 0;  // interior: mu_{n,k} < x < mu_{n,k+1}; boundary: x = mu_{n,k}
};

/// The level-(n0-1) subdivision ratios of a firm map and their extremes.
struct DeltaProfile {
    unsigned n0 = 0;
    std::vector<Rational> values;  // delta_{n0-1,k} in interval order
    Rational v_minus;              // min over values of min(v, 1-v)
    Rational v_plus;               // max over values of max(v, 1-v)
};

struct WidthBoundsReport {
    unsigned level = 0;
    Rational max_width;
    Rational upper_bound;  // d * v_plus^(n - n0 + 1), d = max level-(n0-1) width
    struct Violation {
        std::uint64_t k;
        Rational lower, width, upper;
    };
    std::vector<Violation> violations;
};

/// The hierarchy of exact roots of g^n(x) = 0, one sorted level per n.
/// Levels are appended under a mutex and never modified afterwards, so
/// completed levels can be read concurrently.
class PreimageGrid {
public:
    explicit PreimageGrid(CarcassMap map, unsigned levels = 1,
                          unsigned depth_cap = kDefaultGridDepthCap);

    const CarcassMap& map() const { return map_; }
    unsigned depth_cap() const { return depth_cap_; }
    unsigned levels_built() const;

    /// Extends storage up to level n (no-op when already present).
    void ensure_levels(unsigned n) const;

    /// The sorted points mu_{n,0} < ... < mu_{n,2^{n-1}} of level n >= 1.
    const std::vector<Rational>& level(unsigned n) const;

    const Rational& mu(unsigned n, std::uint64_t k) const;
    Rational width(unsigned n, std::uint64_t k) const;  // #I_{n,k}

    /// delta_{n,k}: relative position of the level-(n+1) point inside I_{n,k}.
    Rational delta(unsigned n, std::uint64_t k) const;

    IntervalLocation interval_index(unsigned n, const Rational& x) const;

    DeltaProfile delta_profile() const;

    /// The level-n0 subdivision ratios delta_{base,p}; the table the width
    /// and slope product formulas index into. base defaults to the map's n0.
    std::vector<Rational> delta_table(unsigned base_level) const;

    WidthBoundsReport width_bounds_check(unsigned n) const;

private:
    void extend_locked(unsigned target) const;

    CarcassMap map_;
    unsigned depth_cap_;
    mutable std::mutex extend_mutex_;
    // deque: appending never invalidates references to existing levels.
    mutable std::deque<std::vector<Rational>> levels_;
};

/// Builds the grid with levels 1..n. Requires a firmness certificate.
PreimageGrid build_grid(const CarcassMap& map, unsigned n,
                        unsigned depth_cap = kDefaultGridDepthCap);

/// Evaluates the width of I_{n+1,k_n} as the product of subdivision ratios
/// taken from the level-n0 table, where bits = x_1..x_n indexes the interval.
/// base_level defaults to the map's n0 and must be >= it. Must agree exactly
/// with the direct width mu_{n+1,k_n+1} - mu_{n+1,k_n}.
Rational width_product(const PreimageGrid& grid, const std::vector<int>& bits);
Rational width_product(const PreimageGrid& grid, const std::vector<int>& bits,
                       unsigned base_level);

/// CSV: k,num,den,width_num,width_den (last point has width 0/1).
void write_level_csv(const PreimageGrid& grid, unsigned n, std::ostream& out);

}  // namespace carcass
