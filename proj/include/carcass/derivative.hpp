#pragma once

#include "carcass/conjugacy.hpp"
#include "carcass/expansion.hpp"
#include "carcass/preimage_grid.hpp"
#include "carcass/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace carcass {

enum class Side { left, right };

enum class SlopeTrend {
    tends_to_zero,
    tends_to_infinity,
    converges_finite,
    oscillates,
    undetermined,
};

const char* to_string(SlopeTrend trend);
const char* to_string(Side side);

/// Finite-depth classification cutoffs. The absolute cutoffs decide once the
/// values have left [10^-12, 10^12]; before that a window of consistently
/// one-sided consecutive ratios decides the same trends, since the sequences
/// move by a bounded ratio per level and would otherwise need impractical
/// depths to cross the absolute cutoffs.
struct ClassifyThresholds {
    Rational zero_cutoff{1, 1000000000000LL};   // 10^-12
    Rational infinity_cutoff{1000000000000LL};  // 10^12
    Rational spread_tolerance{1, 1000000000};   // 10^-9 relative over the window
    Rational ratio_margin{1, 1000000};          // ratios beyond 1 +/- 10^-6 count as drift
};

struct SlopeSequence {
    Side side = Side::right;
    unsigned first_level = 2;       // values[i] is the slope of h_{first_level + i}
    std::vector<Rational> values;
    SlopeTrend trend = SlopeTrend::undetermined;
    double limit = 0.0;             // meaningful for converges_finite
};

/// Exact slope of the h_n segment adjacent to x on the requested side.
Rational slope_hn(const ConjugacyApprox& h, const Rational& x, Side side);

/// Slope of h_{n+1} on the interval selected by bits = x_1..x_n, evaluated as
/// the ratio of the two maps' width products over their common table level.
/// Equals slope_hn exactly on that interval.
Rational product_formula_general(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                 const std::vector<int>& bits);

/// Tent -> skew_tent(v) slope from the bits alone: the product of
/// 2*ae_v(x_k, x_{k-1}) over consecutive pairs starting at (x_1, x_0).
/// bits_with_x0 must include the leading x_0 = 0; with m bits after x_0 the
/// result is the slope of h_{m+1}.
Rational product_formula_skew(const Rational& v, const std::vector<int>& bits_with_x0);

/// v when the two bits agree, 1 - v otherwise.
Rational ae_factor(const Rational& v, int a, int b);

/// One-sided slope sequences of h_n at x for n = 2..depth, classified.
std::pair<SlopeSequence, SlopeSequence> lr_limits(const PreimageGrid& g1grid,
                                                  const PreimageGrid& g2grid, const Rational& x,
                                                  unsigned depth, unsigned window,
                                                  const ClassifyThresholds& thresholds = {});

SlopeTrend classify_slope_sequence(const std::vector<Rational>& values, unsigned window,
                                   const ClassifyThresholds& thresholds, double* limit_out);

/// Relative deviations of the conjugacy from the chord of h_n over I_{n,k},
/// measured at t. h(t) is only known as an eval_h interval; the deviations
/// are computed at its midpoint and the half-width is carried as error bars.
struct DeltaLR {
    Rational delta_l;
    Rational delta_r;
    Rational err_l;
    Rational err_r;
};

DeltaLR delta_LR(const ConjugacyApprox& h, unsigned n, std::uint64_t k, const Rational& t,
                 const Rational& eps);

struct ConjugacyClassification {
    enum class Kind { piecewise_linear, singular } kind;
    // piecewise_linear: the level at which consecutive approximations agree.
    unsigned witness_level = 0;
    // singular: a point whose slope sequence escapes, and how.
    Rational evidence_x;
    Side evidence_side = Side::right;
    SlopeTrend evidence_trend = SlopeTrend::undetermined;
};

inline constexpr unsigned kEvidenceDepth = 60;
inline constexpr unsigned kEvidenceWindow = 8;

/// piecewise_linear when h_{probe_depth+1} adds no new kinks over
/// h_{probe_depth} (the approximations have stabilised, so the limit is that
/// polyline); otherwise singular with a witness point whose slope sequence
/// escapes to 0 or infinity. Throws InconclusiveError when neither fires.
ConjugacyClassification classify_conjugacy(const PreimageGrid& g1grid,
                                           const PreimageGrid& g2grid, unsigned probe_depth);

/// CSV: n,slope_num,slope_den,side,classification. Slopes whose magnitude
/// leaves [10^-300, 10^300] are written as a decimal in slope_num with
/// slope_den = 1.
void write_slopes_csv(const std::vector<const SlopeSequence*>& sequences, std::ostream& out);
void write_slopes_csv(const SlopeSequence& left, const SlopeSequence& right, std::ostream& out);

}  // namespace carcass
