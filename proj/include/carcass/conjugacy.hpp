#pragma once

#include "carcass/carcass_map.hpp"
#include "carcass/preimage_grid.hpp"
#include "carcass/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace carcass {

/// The increasing polyline h_n matching the two maps' level-n grids: vertex k
/// sits at (mu_{n,k}(g1), mu_{n,k}(g2)). Holds references to both grids.
class ConjugacyApprox {
public:
    ConjugacyApprox(const PreimageGrid& source, const PreimageGrid& target, unsigned level);

    unsigned level() const { return level_; }
    const PreimageGrid& source_grid() const { return *source_; }
    const PreimageGrid& target_grid() const { return *target_; }

    std::size_t vertex_count() const;
    std::pair<Rational, Rational> vertex(std::uint64_t k) const;
    std::vector<Breakpoint> vertices() const;

    /// Exact piecewise-linear value.
    Rational eval(const Rational& x) const;

private:
    const PreimageGrid* source_;
    const PreimageGrid* target_;
    unsigned level_;
};

ConjugacyApprox build_hn(const PreimageGrid& g1grid, const PreimageGrid& g2grid, unsigned n);

inline Rational eval_hn(const ConjugacyApprox& h, const Rational& x) { return h.eval(x); }

struct SemiconjugacyReport {
    unsigned level = 0;
    std::size_t points_checked = 0;
    std::vector<std::uint64_t> violations;  // grid indices k where the identity failed
    bool ok() const { return violations.empty(); }
};

/// Checks h_n(g1(mu)) = g2(h_n(mu)) exactly at every level-n point of g1.
SemiconjugacyReport verify_semiconjugacy(const ConjugacyApprox& h);

inline constexpr unsigned kDefaultEvalDepthCap = 128;

/// Brackets the limit conjugacy at x: descends the paired interval chains
/// until the target interval is narrower than eps and returns it. A grid
/// point of g1 maps to an exact target grid point (degenerate interval).
std::pair<Rational, Rational> eval_h(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                     const Rational& x, const Rational& eps,
                                     unsigned depth_cap = kDefaultEvalDepthCap);

/// n applications of the two-branch rescaling operator for the skew-tent
/// pair (c1, c2), starting from the identity. The resulting polyline equals
/// the level-(n+1) conjugacy approximation vertex for vertex.
std::vector<Breakpoint> functional_iteration(const Rational& c1, const Rational& c2, unsigned n);

/// CSV: x_num,x_den,y_num,y_den.
void write_conjugacy_csv(const ConjugacyApprox& h, std::ostream& out);

}  // namespace carcass
