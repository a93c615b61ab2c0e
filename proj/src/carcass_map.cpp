#include "carcass/carcass_map.hpp"

#include "carcass/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace carcass {

unsigned CarcassMap::n0() const
{
    if (!firmness_)
        throw NotFirmError("map carries no firmness certificate");
    return firmness_->n0;
}

Rational CarcassMap::eval(const Rational& x) const
{
    if (x < 0 || x > 1)
        throw OutOfDomainError("eval at " + fraction_string(x) + " outside [0,1]");
    // Largest breakpoint with bp.x <= x.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                               [](const Rational& v, const Breakpoint& bp) { return v < bp.x; });
    --it;
    if (it->x == x) return it->y;
    const Breakpoint& l = *it;
    const Breakpoint& r = *(it + 1);
    return l.y + (x - l.x) * (r.y - l.y) / (r.x - l.x);
}

Rational CarcassMap::iterate(const Rational& x, unsigned n) const
{
    Rational value = x;
    for (unsigned i = 0; i < n; ++i) value = eval(value);
    return value;
}

Rational CarcassMap::preimage_increasing(const Rational& y) const
{
    // y-values are strictly increasing from 0 to 1 over breakpoints 0..peak.
    std::size_t lo = 0, hi = peak_index_;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (breakpoints_[mid].y <= y) lo = mid; else hi = mid;
    }
    const Breakpoint& l = breakpoints_[lo];
    const Breakpoint& r = breakpoints_[hi];
    if (l.y == y) return l.x;
    if (r.y == y) return r.x;
    return l.x + (y - l.y) * (r.x - l.x) / (r.y - l.y);
}

Rational CarcassMap::preimage_decreasing(const Rational& y) const
{
    // y-values strictly decrease from 1 to 0 over breakpoints peak..last.
    std::size_t lo = peak_index_, hi = breakpoints_.size() - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (breakpoints_[mid].y >= y) lo = mid; else hi = mid;
    }
    const Breakpoint& l = breakpoints_[lo];
    const Breakpoint& r = breakpoints_[hi];
    if (l.y == y) return l.x;
    if (r.y == y) return r.x;
    return l.x + (y - l.y) * (r.x - l.x) / (r.y - l.y);
}

CarcassMap make_carcass(std::vector<Breakpoint> breakpoints)
{
    if (breakpoints.size() < 3)
        throw NotUnimodalError("need at least 3 breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i].x == breakpoints[i - 1].x)
            throw DuplicateAbscissaError("duplicate abscissa " + fraction_string(breakpoints[i].x));
        if (breakpoints[i].x < breakpoints[i - 1].x)
            throw NotUnimodalError("abscissas must be strictly increasing");
    }
    if (!(breakpoints.front().x == 0 && breakpoints.front().y == 0))
        throw NotUnimodalError("first breakpoint must be (0,0)");
    if (!(breakpoints.back().x == 1 && breakpoints.back().y == 0))
        throw NotUnimodalError("last breakpoint must be (1,0)");

    std::size_t peak = breakpoints.size();
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const Rational& y = breakpoints[i].y;
        if (y < 0 || y > 1)
            throw NotUnimodalError("ordinate outside [0,1] at x=" + fraction_string(breakpoints[i].x));
        if (y == 1) {
            if (peak != breakpoints.size())
                throw NotUnimodalError("more than one breakpoint with y = 1");
            peak = i;
        }
    }
    if (peak == breakpoints.size())
        throw NotUnimodalError("no breakpoint with y = 1");
    if (peak == 0 || peak == breakpoints.size() - 1)
        throw NotUnimodalError("peak must be interior");

    for (std::size_t i = 1; i <= peak; ++i)
        if (!(breakpoints[i].y > breakpoints[i - 1].y))
            throw NotUnimodalError("ordinates must strictly increase before the peak");
    for (std::size_t i = peak + 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i].y < breakpoints[i - 1].y))
            throw NotUnimodalError("ordinates must strictly decrease after the peak");

    CarcassMap map;
    map.breakpoints_ = std::move(breakpoints);
    map.peak_index_ = peak;
    return map;
}

CarcassMap skew_tent(const Rational& v)
{
    if (!(v > 0 && v < 1))
        throw OutOfRangeError("skew tent parameter must lie in (0,1), got " + fraction_string(v));
    CarcassMap map = make_carcass({{Rational(0), Rational(0)}, {v, Rational(1)}, {Rational(1), Rational(0)}});
    return certify_firm(map, 2);  // the single kink v reaches 0 in two steps
}

CarcassMap tent() { return skew_tent(Rational(1, 2)); }

CarcassMap certify_firm(const CarcassMap& map, unsigned max_iter)
{
    FirmnessCertificate cert;
    cert.n0 = 0;
    const auto& bps = map.breakpoints();
    for (std::size_t i = 1; i + 1 < bps.size(); ++i) {
        const Rational& kink = bps[i].x;
        Rational value = kink;
        unsigned m = 0;
        while (value != 0) {
            if (m == max_iter)
                throw NotFirmWithinBoundError(
                    fraction_string(kink), max_iter,
                    "kink " + fraction_string(kink) + " did not reach 0 within " +
                        std::to_string(max_iter) + " iterations");
            value = map.eval(value);
            ++m;
        }
        cert.kink_orbits[kink] = m;
        cert.n0 = std::max(cert.n0, m);
    }
    CarcassMap certified = map;
    certified.firmness_ = cert;
    return certified;
}

namespace {

void validate_homeomorphism(const Homeomorphism& phi)
{
    if (phi.size() < 2)
        throw NotHomeomorphismError("need at least the two endpoint vertices");
    if (!(phi.front().x == 0 && phi.front().y == 0 && phi.back().x == 1 && phi.back().y == 1))
        throw NotHomeomorphismError("vertices must run from (0,0) to (1,1)");
    for (std::size_t i = 1; i < phi.size(); ++i) {
        if (!(phi[i].x > phi[i - 1].x) || !(phi[i].y > phi[i - 1].y))
            throw NotHomeomorphismError("vertices must be strictly increasing in both coordinates");
    }
}

Rational eval_polyline(const Homeomorphism& vertices, const Rational& x)
{
    auto it = std::upper_bound(vertices.begin(), vertices.end(), x,
                               [](const Rational& v, const Breakpoint& bp) { return v < bp.x; });
    --it;
    if (it->x == x) return it->y;
    const Breakpoint& l = *it;
    const Breakpoint& r = *(it + 1);
    return l.y + (x - l.x) * (r.y - l.y) / (r.x - l.x);
}

Homeomorphism invert(const Homeomorphism& phi)
{
    Homeomorphism inverse;
    inverse.reserve(phi.size());
    for (const auto& v : phi) inverse.push_back({v.y, v.x});
    return inverse;
}

}  // namespace

CarcassMap conjugate_by_homeomorphism(const CarcassMap& g, const Homeomorphism& phi)
{
    validate_homeomorphism(phi);
    const Homeomorphism phi_inv = invert(phi);

    // Kinks of phi o g o phi^{-1} can only sit where one of the three layers
    // kinks: at phi-images of g's breakpoints, at phi-images of g-pre-images
    // of phi's own vertices (both branches), and at phi's vertex ordinates.
    std::set<Rational> xs;
    xs.insert(Rational(0));
    xs.insert(Rational(1));
    for (const auto& bp : g.breakpoints()) xs.insert(eval_polyline(phi, bp.x));
    for (const auto& vertex : phi) {
        xs.insert(vertex.y);
        xs.insert(eval_polyline(phi, g.preimage_increasing(vertex.x)));
        xs.insert(eval_polyline(phi, g.preimage_decreasing(vertex.x)));
    }

    std::vector<Breakpoint> candidate;
    candidate.reserve(xs.size());
    for (const Rational& x : xs)
        candidate.push_back({x, eval_polyline(phi, g.eval(eval_polyline(phi_inv, x)))});

    // Drop interior vertices that sit on the chord of their neighbours.
    std::vector<Breakpoint> pruned;
    pruned.reserve(candidate.size());
    pruned.push_back(candidate.front());
    for (std::size_t i = 1; i + 1 < candidate.size(); ++i) {
        const Breakpoint& a = pruned.back();
        const Breakpoint& b = candidate[i];
        const Breakpoint& c = candidate[i + 1];
        const Rational lhs = (b.y - a.y) * (c.x - b.x);
        const Rational rhs = (c.y - b.y) * (b.x - a.x);
        if (lhs != rhs) pruned.push_back(b);
    }
    pruned.push_back(candidate.back());

    return make_carcass(std::move(pruned));
}

CarcassMap generate_firm_from_homeomorphism(const Homeomorphism& phi_vertices)
{
    validate_homeomorphism(phi_vertices);
    for (std::size_t i = 1; i + 1 < phi_vertices.size(); ++i)
        if (!is_dyadic(phi_vertices[i].x))
            throw NonDyadicKinkError("vertex abscissa " + fraction_string(phi_vertices[i].x) +
                                     " is not dyadic");

    const CarcassMap pushed = conjugate_by_homeomorphism(tent(), phi_vertices);
    // Kinks are phi(dyadic); its orbit is phi of the tent orbit of that
    // dyadic, which reaches 0 after at most bitlength+1 steps.
    unsigned max_bits = 2;
    for (const auto& vertex : phi_vertices) {
        const BigInt d = denominator(vertex.x);
        if (d > 1) max_bits = std::max<unsigned>(max_bits, boost::multiprecision::msb(d));
    }
    return certify_firm(pushed, max_bits + 3);
}

CarcassMap parse_map_file(std::istream& in)
{
    std::vector<Breakpoint> breakpoints;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string xs, ys;
        if (!(fields >> xs)) continue;  // blank / comment-only line
        if (!(fields >> ys))
            throw ParseError("line " + std::to_string(lineno) + ": expected 'p/q r/s'");
        std::string extra;
        if (fields >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing content '" + extra + "'");
        breakpoints.push_back({parse_rational(xs), parse_rational(ys)});
    }
    return make_carcass(std::move(breakpoints));
}

CarcassMap load_map_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open map file '" + path + "'");
    return parse_map_file(in);
}

void write_map_file(const CarcassMap& map, std::ostream& out)
{
    for (const auto& bp : map.breakpoints())
        out << fraction_string(bp.x) << " " << fraction_string(bp.y) << "\n";
}

}  // namespace carcass
