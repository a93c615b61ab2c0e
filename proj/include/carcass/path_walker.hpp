#pragma once

#include "carcass/preimage_grid.hpp"
#include "carcass/rational.hpp"

#include <vector>

namespace carcass {

/// Follows one nested chain of grid intervals without materialising deep
/// levels. The tracked interval after m-1 descents is I_{m,k_{m-1}}, whose
/// endpoints and subdivision ratio are maintained exactly: ratios at levels
/// beyond n0 repeat the level-n0 table up to reflection, so each step costs
/// O(1) rational operations regardless of depth.
class PathWalker {
public:
    explicit PathWalker(const PreimageGrid& grid);

    unsigned level() const { return level_; }
    const Rational& lower() const { return lower_; }
    const Rational& upper() const { return upper_; }
    Rational width() const { return upper_ - lower_; }
    const std::vector<int>& bits() const { return bits_; }  // x_1..x_{level-1}

    /// The unique level-(level+1) grid point strictly inside the interval.
    Rational subdivision() const;

    /// Replaces the interval by its left (0) or right (1) child.
    void descend(int bit);

private:
    Rational current_delta() const;

    const PreimageGrid* grid_;
    unsigned n0_;
    std::vector<Rational> table_;  // level-n0 subdivision ratios
    unsigned level_ = 1;
    Rational lower_{0};
    Rational upper_{1};
    std::vector<int> bits_;
};

}  // namespace carcass
