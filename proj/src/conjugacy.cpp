#include "carcass/conjugacy.hpp"

#include "carcass/errors.hpp"
#include "carcass/path_walker.hpp"

#include <ostream>

namespace carcass {

ConjugacyApprox::ConjugacyApprox(const PreimageGrid& source, const PreimageGrid& target,
                                 unsigned level)
    : source_(&source), target_(&target), level_(level)
{
    if (level == 0)
        throw LevelMissingError("conjugacy approximations start at level 1");
    source.ensure_levels(level);
    target.ensure_levels(level);
}

std::size_t ConjugacyApprox::vertex_count() const
{
    return source_->level(level_).size();
}

std::pair<Rational, Rational> ConjugacyApprox::vertex(std::uint64_t k) const
{
    return {source_->mu(level_, k), target_->mu(level_, k)};
}

std::vector<Breakpoint> ConjugacyApprox::vertices() const
{
    const auto& src = source_->level(level_);
    const auto& dst = target_->level(level_);
    std::vector<Breakpoint> out;
    out.reserve(src.size());
    for (std::size_t k = 0; k < src.size(); ++k) out.push_back({src[k], dst[k]});
    return out;
}

Rational ConjugacyApprox::eval(const Rational& x) const
{
    const IntervalLocation loc = source_->interval_index(level_, x);
    const auto& src = source_->level(level_);
    const auto& dst = target_->level(level_);
    if (loc.on_boundary) return dst[loc.k];
    const Rational& xl = src[loc.k];
    const Rational& xr = src[loc.k + 1];
    return dst[loc.k] + (x - xl) * (dst[loc.k + 1] - dst[loc.k]) / (xr - xl);
}

ConjugacyApprox build_hn(const PreimageGrid& g1grid, const PreimageGrid& g2grid, unsigned n)
{
    return ConjugacyApprox(g1grid, g2grid, n);
}

SemiconjugacyReport verify_semiconjugacy(const ConjugacyApprox& h)
{
    SemiconjugacyReport report;
    report.level = h.level();
    const CarcassMap& g1 = h.source_grid().map();
    const CarcassMap& g2 = h.target_grid().map();
    const auto& points = h.source_grid().level(h.level());
    report.points_checked = points.size();
    for (std::uint64_t k = 0; k < points.size(); ++k) {
        const Rational& mu = points[k];
        const Rational lhs = h.eval(g1.eval(mu));
        const Rational rhs = g2.eval(h.eval(mu));
        if (lhs != rhs) report.violations.push_back(k);
    }
    return report;
}

std::pair<Rational, Rational> eval_h(const PreimageGrid& g1grid, const PreimageGrid& g2grid,
                                     const Rational& x, const Rational& eps, unsigned depth_cap)
{
    if (x < 0 || x > 1)
        throw OutOfDomainError("eval_h at " + fraction_string(x));
    if (!(eps > 0))
        throw OutOfRangeError("eval_h needs eps > 0");
    if (x == 0) return {Rational(0), Rational(0)};
    if (x == 1) return {Rational(1), Rational(1)};

    PathWalker source(g1grid);
    PathWalker target(g2grid);
    while (target.width() >= eps) {
        if (source.level() > depth_cap)
            throw DepthCapExceededError("eval_h needed more than " + std::to_string(depth_cap) +
                                        " levels for eps = " + fraction_string(eps));
        const Rational c = source.subdivision();
        if (x == c) {
            const Rational y = target.subdivision();
            return {y, y};
        }
        const int bit = (x < c) ? 0 : 1;
        source.descend(bit);
        target.descend(bit);
    }
    return {target.lower(), target.upper()};
}

std::vector<Breakpoint> functional_iteration(const Rational& c1, const Rational& c2, unsigned n)
{
    if (!(c1 > 0 && c1 < 1) || !(c2 > 0 && c2 < 1))
        throw OutOfRangeError("functional iteration parameters must lie in (0,1)");
    std::vector<Breakpoint> vertices = {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
    const Rational d1 = rot(c1);
    const Rational d2 = rot(c2);
    for (unsigned step = 0; step < n; ++step) {
        std::vector<Breakpoint> next;
        next.reserve(2 * vertices.size() - 1);
        for (const auto& v : vertices) next.push_back({c1 * v.x, c2 * v.y});
        for (std::size_t i = vertices.size() - 1; i-- > 0;) {
            const auto& v = vertices[i];
            next.push_back({Rational(1) - d1 * v.x, Rational(1) - d2 * v.y});
        }
        vertices = std::move(next);
    }
    return vertices;
}

void write_conjugacy_csv(const ConjugacyApprox& h, std::ostream& out)
{
    out << "x_num,x_den,y_num,y_den\n";
    const auto& src = h.source_grid().level(h.level());
    const auto& dst = h.target_grid().level(h.level());
    for (std::size_t k = 0; k < src.size(); ++k)
        out << numerator(src[k]) << "," << denominator(src[k]) << "," << numerator(dst[k]) << ","
            << denominator(dst[k]) << "\n";
}

}  // namespace carcass
