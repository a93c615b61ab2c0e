#include "carcass/path_walker.hpp"

#include "carcass/errors.hpp"

namespace carcass {

PathWalker::PathWalker(const PreimageGrid& grid)
    : grid_(&grid), n0_(grid.map().n0())
{
    grid.ensure_levels(n0_ + 1);
    table_ = grid.delta_table(n0_);
}

Rational PathWalker::current_delta() const
{
    const unsigned m = level_;
    if (m <= n0_) {
        std::uint64_t k = 0;
        for (int b : bits_) k = 2 * k + static_cast<unsigned>(b);
        return grid_->delta(m, k);
    }
    // delta_{m,k_{m-1}} = Rot^{x_{m-n0}}(delta_{n0,p}) with the window
    // x_{m-n0+1}..x_{m-1} reflected by the anchor bit x_{m-n0}.
    const auto bit = [&](unsigned i) { return static_cast<unsigned>(bits_[i - 1]); };
    const unsigned anchor = bit(m - n0_);
    std::uint64_t p = 0;
    for (unsigned j = m - n0_ + 1; j <= m - 1; ++j) p = 2 * p + (bit(j) ^ anchor);
    return rot_pow(table_[p], anchor);
}

Rational PathWalker::subdivision() const
{
    return lower_ + current_delta() * (upper_ - lower_);
}

void PathWalker::descend(int bit)
{
    if (bit != 0 && bit != 1)
        throw BitsTooShortError("descend expects bit 0 or 1");
    const Rational c = subdivision();
    if (bit == 0)
        upper_ = c;
    else
        lower_ = c;
    bits_.push_back(bit);
    ++level_;
}

}  // namespace carcass
