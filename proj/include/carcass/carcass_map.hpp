#pragma once

#include "carcass/rational.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace carcass {

struct Breakpoint {
    Rational x;
    Rational y;
    bool operator==(const Breakpoint& other) const = default;
};

/// Certificate that every interior kink reaches 0 under iteration.
/// n0 is the smallest iteration count that flattens all of them.
struct FirmnessCertificate {
    unsigned n0 = 0;
    // Kink abscissa -> minimal m with g^m(kink) = 0.
    std::map<Rational, unsigned> kink_orbits;
};

/// A piecewise-linear unimodal self-map of [0,1]: strictly increasing from
/// (0,0) up to a unique peak (v,1), strictly decreasing down to (1,0).
/// Immutable after construction; all member operations are pure.
class CarcassMap {
public:
    const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
    std::size_t peak_index() const { return peak_index_; }
    const Rational& peak() const { return breakpoints_[peak_index_].x; }

    const std::optional<FirmnessCertificate>& firmness() const { return firmness_; }
    bool is_firm_certified() const { return firmness_.has_value(); }
    unsigned n0() const;  // throws NotFirmError when uncertified

    /// Exact value by linear interpolation on the containing segment.
    Rational eval(const Rational& x) const;

    /// eval applied n times; iterate(x, 0) = x.
    Rational iterate(const Rational& x, unsigned n) const;

    /// Exact pre-images on the increasing branch [0, peak] (returns the x
    /// with eval(x) = y there) and on the decreasing branch [peak, 1].
    Rational preimage_increasing(const Rational& y) const;
    Rational preimage_decreasing(const Rational& y) const;

    bool operator==(const CarcassMap& other) const
    {
        return breakpoints_ == other.breakpoints_;
    }

    friend CarcassMap make_carcass(std::vector<Breakpoint> breakpoints);
    friend CarcassMap certify_firm(const CarcassMap& map, unsigned max_iter);

private:
    CarcassMap() = default;

    std::vector<Breakpoint> breakpoints_;
    std::size_t peak_index_ = 0;
    std::optional<FirmnessCertificate> firmness_;
};

/// Validates the breakpoint list and builds the map (no firmness certificate).
/// Throws NotUnimodalError / DuplicateAbscissaError.
CarcassMap make_carcass(std::vector<Breakpoint> breakpoints);

/// The two-segment map with peak (v, 1). Carries its certificate (n0 = 2).
CarcassMap skew_tent(const Rational& v);

/// skew_tent(1/2).
CarcassMap tent();

/// Runs every interior kink forward until it reaches 0 and returns a copy of
/// the map carrying the certificate. A kink that fails to reach 0 within
/// max_iter raises NotFirmWithinBoundError; that does not prove the map
/// non-firm, only that it could not be certified at this bound.
CarcassMap certify_firm(const CarcassMap& map, unsigned max_iter = 32);

/// An increasing piecewise-linear bijection of [0,1], kept as its vertices.
using Homeomorphism = std::vector<Breakpoint>;

/// Conjugates g by phi: returns phi o g o phi^{-1} with breakpoints computed
/// exactly by segment-wise composition. No firmness handling here.
CarcassMap conjugate_by_homeomorphism(const CarcassMap& g, const Homeomorphism& phi);

/// phi o tent o phi^{-1} for a piecewise-linear increasing homeomorphism phi
/// whose interior vertices have dyadic abscissas. Every kink of the result is
/// phi(d) for some dyadic d, so its orbit mirrors the dyadic orbit under the
/// tent map and hits 0; the returned map carries its firmness certificate.
/// Throws NotHomeomorphismError / NonDyadicKinkError.
CarcassMap generate_firm_from_homeomorphism(const Homeomorphism& phi_vertices);

/// Map definition text: one "p/q r/s" breakpoint per line, '#' comments.
CarcassMap parse_map_file(std::istream& in);
CarcassMap load_map_file(const std::string& path);
void write_map_file(const CarcassMap& map, std::ostream& out);

}  // namespace carcass
