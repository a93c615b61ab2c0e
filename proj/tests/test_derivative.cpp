#include "carcass/derivative.hpp"
#include "carcass/errors.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace carcass;
namespace ct = carcass::testing;

TEST_CASE("slopes of the polyline approximations")
{
    const PreimageGrid tg = build_grid(tent(), 6);
    const PreimageGrid sg = build_grid(skew_tent(Rational(1, 3)), 6);
    const ConjugacyApprox h3 = build_hn(tg, sg, 3);

    CHECK(slope_hn(h3, Rational(3, 8), Side::left) == Rational(8, 9));
    CHECK(slope_hn(h3, Rational(3, 8), Side::right) == Rational(8, 9));
    // just left of the vertex at 1/4 the segment is (0,1/4) -> slope 4/9
    CHECK(slope_hn(h3, Rational(1, 4), Side::left) == Rational(4, 9));
    CHECK(slope_hn(h3, Rational(1, 4), Side::right) == Rational(8, 9));

    const PreimageGrid id = build_grid(tent(), 6);
    const ConjugacyApprox hid = build_hn(tg, id, 5);
    CHECK(slope_hn(hid, Rational(1, 3), Side::left) == 1);
    CHECK(slope_hn(hid, Rational(0), Side::right) == 1);
    CHECK(slope_hn(hid, Rational(1), Side::left) == 1);
    CHECK_THROWS_AS(slope_hn(hid, Rational(0), Side::left), SideUnavailableError);
    CHECK_THROWS_AS(slope_hn(hid, Rational(1), Side::right), SideUnavailableError);
}

TEST_CASE("general product formula equals the polyline slope")
{
    std::mt19937_64 rng(61);
    const std::vector<std::pair<CarcassMap, CarcassMap>> pairs = {
        {tent(), skew_tent(Rational(1, 3))},
        {tent(), skew_tent(Rational(7, 10))},
        {skew_tent(Rational(2, 5)), ct::gen_map(1)},
        {ct::gen_map(2), ct::gen_map(3)},
    };
    for (const auto& [a, b] : pairs) {
        const PreimageGrid ga = build_grid(a, 13);
        const PreimageGrid gb = build_grid(b, 13);
        const unsigned n0 = std::max(a.n0(), b.n0());
        for (int trial = 0; trial < 200; ++trial) {
            const Rational x = ct::random_non_grid_point(rng);
            const unsigned n = n0 + 1 + static_cast<unsigned>(rng() % (12 - n0));
            const ConjugacyApprox h = build_hn(ga, gb, n);
            const GExpansion e = encode(ga, x, n);
            const std::vector<int> bits(e.bits.begin() + 1, e.bits.end());
            CHECK(product_formula_general(ga, gb, bits) == slope_hn(h, x, Side::right));
        }
    }

    // identity pair: always exactly 1
    const PreimageGrid ga = build_grid(ct::gen_map(1), 6);
    const PreimageGrid gb = build_grid(ct::gen_map(1), 6);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<int> bits = ct::random_bits(rng, 3 + (rng() % 3));
        CHECK(product_formula_general(ga, gb, bits) == 1);
    }
}

TEST_CASE("product formula matches width product ratios")
{
    std::mt19937_64 rng(67);
    const PreimageGrid ga = build_grid(tent(), 12);
    const PreimageGrid gb = build_grid(skew_tent(Rational(2, 5)), 12);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<int> bits = ct::random_bits(rng, 2 + (rng() % 9));
        CHECK(product_formula_general(ga, gb, bits) ==
              width_product(gb, bits) / width_product(ga, bits));
    }
}

TEST_CASE("skew product formula")
{
    CHECK(product_formula_skew(Rational(1, 2), {0, 1, 1, 0, 1}) == 1);
    // worked value: x in (1/4,1/2), v = 1/3, h_3 slope 8/9
    CHECK(product_formula_skew(Rational(1, 3), {0, 0, 1}) == Rational(8, 9));
    // x = 0 tail: (2v)^n
    CHECK(product_formula_skew(Rational(1, 3), {0, 0, 0, 0}) == Rational(8, 27));
    CHECK_THROWS_AS(product_formula_skew(Rational(1, 3), {1, 0}), BitsTooShortError);

    // equality with the exact polyline slope everywhere
    std::mt19937_64 rng(71);
    for (const Rational v : {Rational(1, 3), Rational(2, 5), Rational(7, 10)}) {
        const PreimageGrid tg = build_grid(tent(), 13);
        const PreimageGrid sg = build_grid(skew_tent(v), 13);
        for (int trial = 0; trial < 60; ++trial) {
            const Rational x = ct::random_non_grid_point(rng);
            const unsigned n = 3 + static_cast<unsigned>(rng() % 10);
            const ConjugacyApprox h = build_hn(tg, sg, n);
            const GExpansion e = encode(tg, x, n);
            CHECK(product_formula_skew(v, e.bits) == slope_hn(h, x, Side::right));
        }
    }
}

TEST_CASE("consecutive slope ratios come from the delta profiles")
{
    std::mt19937_64 rng(73);
    const CarcassMap a = ct::gen_map(1);
    const CarcassMap b = skew_tent(Rational(2, 5));
    const PreimageGrid ga = build_grid(a, 12);
    const PreimageGrid gb = build_grid(b, 12);

    auto closure = [](const DeltaProfile& p) {
        std::vector<Rational> values;
        for (const Rational& v : p.values) {
            values.push_back(v);
            values.push_back(rot(v));
        }
        return values;
    };
    const std::vector<Rational> va = closure(ga.delta_profile());
    const std::vector<Rational> vb = closure(gb.delta_profile());
    const unsigned n0 = std::max(a.n0(), b.n0());

    for (int trial = 0; trial < 40; ++trial) {
        const Rational x = ct::random_non_grid_point(rng);
        const auto [left, right] = lr_limits(ga, gb, x, 12, 4);
        for (std::size_t i = n0; i + 1 < right.values.size(); ++i) {
            const Rational ratio = right.values[i + 1] / right.values[i];
            bool found = false;
            for (const Rational& w : vb)
                for (const Rational& v : va)
                    if (ratio == w / v) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("sandwich growth bounds on slope sequences")
{
    std::mt19937_64 rng(79);
    const PreimageGrid ga = build_grid(ct::gen_map(2), 12);
    const PreimageGrid gb = build_grid(ct::gen_map(3), 12);
    const Rational lo = gb.delta_profile().v_minus / ga.delta_profile().v_plus;
    const Rational hi = gb.delta_profile().v_plus / ga.delta_profile().v_minus;
    for (int trial = 0; trial < 25; ++trial) {
        const Rational x = ct::random_non_grid_point(rng);
        const auto [left, right] = lr_limits(ga, gb, x, 12, 4);
        const unsigned m = 5;
        for (unsigned i = 1; i <= 6; ++i) {
            const Rational base = right.values[m - 2];
            const Rational deep = right.values[m - 2 + i];
            CHECK(deep >= base * rational_pow(lo, i));
            CHECK(deep <= base * rational_pow(hi, i));
        }
    }
}

TEST_CASE("one-sided limits classify")
{
    const PreimageGrid tg = build_grid(tent(), 6);

    SUBCASE("identity pair converges to 1")
    {
        const PreimageGrid id = build_grid(tent(), 6);
        std::mt19937_64 rng(83);
        for (int i = 0; i < 10; ++i) {
            const auto [left, right] =
                lr_limits(tg, id, ct::random_rational(rng), 20, 6);
            CHECK(left.trend == SlopeTrend::converges_finite);
            CHECK(right.trend == SlopeTrend::converges_finite);
            CHECK(left.limit == 1.0);
            CHECK(right.limit == 1.0);
        }
    }

    SUBCASE("x = 0 drifts geometrically")
    {
        const PreimageGrid s13 = build_grid(skew_tent(Rational(1, 3)), 6);
        const auto [l0, r0] = lr_limits(tg, s13, Rational(0), 60, 8);
        CHECK(r0.trend == SlopeTrend::tends_to_zero);
        CHECK(l0.trend == SlopeTrend::tends_to_zero);  // endpoint reports the same side
        CHECK(r0.values[0] == Rational(2, 3));          // h_2' = (1/3)/(1/2)
        CHECK(r0.values[1] == Rational(4, 9));          // (1/9)/(1/4)

        const PreimageGrid s23 = build_grid(skew_tent(Rational(2, 3)), 6);
        const auto [l1, r1] = lr_limits(tg, s23, Rational(0), 60, 8);
        CHECK(r1.trend == SlopeTrend::tends_to_infinity);
    }

    SUBCASE("deep sequences cross the absolute cutoffs")
    {
        const PreimageGrid s13 = build_grid(skew_tent(Rational(1, 3)), 6);
        const auto [l, r] = lr_limits(tg, s13, Rational(0), 80, 8);
        CHECK(r.trend == SlopeTrend::tends_to_zero);
        CHECK(r.values.back() < Rational(1, 1000000000000LL));
    }

    SUBCASE("generic points oscillate")
    {
        const PreimageGrid s13 = build_grid(skew_tent(Rational(1, 3)), 6);
        std::mt19937_64 rng(89);
        int oscillating = 0;
        for (int i = 0; i < 10; ++i) {
            const auto [left, right] =
                lr_limits(tg, s13, ct::random_non_grid_point(rng), 40, 12);
            if (right.trend == SlopeTrend::oscillates) ++oscillating;
        }
        CHECK(oscillating >= 8);  // all but degenerate bit patterns
    }

    SUBCASE("grid points split sides")
    {
        const PreimageGrid s13 = build_grid(skew_tent(Rational(1, 3)), 6);
        const auto [left, right] = lr_limits(tg, s13, Rational(3, 8), 60, 8);
        CHECK(left.trend == SlopeTrend::tends_to_zero);
        CHECK(right.trend == SlopeTrend::tends_to_zero);
        // the two sides follow different chains
        CHECK(left.values.back() != right.values.back());
    }

    CHECK_THROWS_AS(lr_limits(tg, tg, Rational(1, 2), 10, 2), WindowOutOfRangeError);
    CHECK_THROWS_AS(lr_limits(tg, tg, Rational(1, 2), 3, 4), WindowOutOfRangeError);
}

TEST_CASE("chord deviations")
{
    const PreimageGrid tg = build_grid(tent(), 10);
    const Rational eps(1, 1000000);

    SUBCASE("identity pair sits on its own chord")
    {
        const PreimageGrid id = build_grid(tent(), 10);
        const ConjugacyApprox h = build_hn(tg, id, 4);
        const DeltaLR d = delta_LR(h, 4, 2, Rational(2, 7), eps);
        CHECK(d.delta_l <= d.err_l);
        CHECK(d.delta_r <= d.err_r);
        CHECK_THROWS_AS(delta_LR(h, 4, 2, Rational(1, 4), eps), TOnBoundaryError);
    }

    SUBCASE("a polyline conjugacy sits on its approximations")
    {
        // With g2 = psi o g1 o psi^{-1} the conjugacy is psi; once psi's kink
        // is a grid point the approximations carry the graph of psi, so every
        // deviation vanishes.
        const CarcassMap g1 = skew_tent(Rational(1, 3));
        const Homeomorphism psi = {{Rational(0), Rational(0)},
                                   {Rational(1, 3), Rational(1, 2)},
                                   {Rational(1), Rational(1)}};
        const CarcassMap g2 = certify_firm(conjugate_by_homeomorphism(g1, psi), 8);
        const PreimageGrid a = build_grid(g1, 10);
        const PreimageGrid b = build_grid(g2, 10);
        std::mt19937_64 rng(103);
        for (int trial = 0; trial < 10; ++trial) {
            const Rational x = ct::random_non_grid_point(rng);
            const IntervalLocation loc = a.interval_index(4, x);
            REQUIRE(!loc.on_boundary);
            const DeltaLR d = delta_LR(build_hn(a, b, 4), 4, loc.k, x, eps);
            CHECK(d.delta_l <= d.err_l);
            CHECK(d.delta_r <= d.err_r);
        }
    }

    SUBCASE("level-to-level transport with side swap on the decreasing branch")
    {
        const PreimageGrid sg = build_grid(skew_tent(Rational(1, 3)), 10);
        std::mt19937_64 rng(97);
        for (int trial = 0; trial < 15; ++trial) {
            const Rational x = ct::random_non_grid_point(rng);
            const unsigned n = 5;
            const IntervalLocation loc = tg.interval_index(n, x);
            if (loc.on_boundary) continue;
            const ConjugacyApprox hn = build_hn(tg, sg, n);
            const DeltaLR fine = delta_LR(hn, n, loc.k, x, eps);

            const Rational gx = tent().eval(x);
            const IntervalLocation coarse_loc = tg.interval_index(n - 1, gx);
            REQUIRE(!coarse_loc.on_boundary);
            const ConjugacyApprox hc = build_hn(tg, sg, n - 1);
            const DeltaLR coarse = delta_LR(hc, n - 1, coarse_loc.k, gx, eps);

            const bool increasing = x < tent().peak();
            const Rational cl = increasing ? coarse.delta_l : coarse.delta_r;
            const Rational cr = increasing ? coarse.delta_r : coarse.delta_l;
            const Rational el = increasing ? coarse.err_l : coarse.err_r;
            const Rational er = increasing ? coarse.err_r : coarse.err_l;
            CHECK(abs(fine.delta_l - cl) <= fine.err_l + el);
            CHECK(abs(fine.delta_r - cr) <= fine.err_r + er);
        }
    }

    SUBCASE("deviation sets transport down to the base level along the orbit")
    {
        // Chaining the one-step law: the pair at (n, x) equals, as a set, the
        // pair at (n0, g1^{n-n0}(x)).
        const PreimageGrid sg = build_grid(skew_tent(Rational(2, 5)), 12);
        std::mt19937_64 rng(101);
        const unsigned n0 = 2;
        for (int trial = 0; trial < 50; ++trial) {
            const Rational x = ct::random_non_grid_point(rng);
            for (unsigned n = n0 + 1; n <= 7; n += 2) {
                const IntervalLocation loc = tg.interval_index(n, x);
                const DeltaLR deep = delta_LR(build_hn(tg, sg, n), n, loc.k, x, eps);
                const Rational image = tent().iterate(x, n - n0);
                const IntervalLocation base_loc = tg.interval_index(n0, image);
                REQUIRE(!base_loc.on_boundary);
                const DeltaLR base =
                    delta_LR(build_hn(tg, sg, n0), n0, base_loc.k, image, eps);
                const Rational tol_l = deep.err_l + base.err_l + base.err_r;
                const Rational tol_r = deep.err_r + base.err_l + base.err_r;
                const bool direct = abs(deep.delta_l - base.delta_l) <= tol_l &&
                                    abs(deep.delta_r - base.delta_r) <= tol_r;
                const bool swapped = abs(deep.delta_l - base.delta_r) <= tol_l &&
                                     abs(deep.delta_r - base.delta_l) <= tol_r;
                CHECK((direct || swapped));
            }
        }
    }

    SUBCASE("deviation sets are stationary at points with periodic orbits")
    {
        // 1/3 and 2/3 sit on a tent orbit that immediately fixes at 2/3, so
        // the transported pair returns to itself at every level; 5/7 enters a
        // three-cycle after one step.
        const PreimageGrid sg = build_grid(skew_tent(Rational(2, 5)), 12);
        for (const Rational x : {Rational(1, 3), Rational(2, 3), Rational(5, 7)}) {
            const unsigned period = (x == Rational(5, 7)) ? 3 : 1;
            std::vector<DeltaLR> pairs;
            for (unsigned n = 2; n <= 9; ++n) {
                const IntervalLocation loc = tg.interval_index(n, x);
                pairs.push_back(delta_LR(build_hn(tg, sg, n), n, loc.k, x, eps));
            }
            for (std::size_t i = period + (period > 1 ? 1 : 0); i < pairs.size(); ++i) {
                const DeltaLR& a = pairs[i];
                const DeltaLR& b = pairs[i - period];
                const Rational lo_a = std::min(a.delta_l, a.delta_r);
                const Rational hi_a = std::max(a.delta_l, a.delta_r);
                const Rational lo_b = std::min(b.delta_l, b.delta_r);
                const Rational hi_b = std::max(b.delta_l, b.delta_r);
                const Rational tol = a.err_l + a.err_r + b.err_l + b.err_r;
                CHECK(abs(lo_a - lo_b) <= tol);
                CHECK(abs(hi_a - hi_b) <= tol);
            }
        }
    }
}

TEST_CASE("classification of map pairs")
{
    SUBCASE("identity pair is piecewise linear")
    {
        const PreimageGrid a = build_grid(skew_tent(Rational(1, 3)), 14);
        const PreimageGrid b = build_grid(skew_tent(Rational(1, 3)), 14);
        const ConjugacyClassification c = classify_conjugacy(a, b, 12);
        CHECK(c.kind == ConjugacyClassification::Kind::piecewise_linear);
    }

    SUBCASE("tent vs skew is singular with evidence")
    {
        const PreimageGrid a = build_grid(tent(), 14);
        const PreimageGrid b = build_grid(skew_tent(Rational(1, 3)), 14);
        const ConjugacyClassification c = classify_conjugacy(a, b, 12);
        CHECK(c.kind == ConjugacyClassification::Kind::singular);
        CHECK(c.evidence_trend == SlopeTrend::tends_to_zero);
    }

    SUBCASE("piecewise-linearly conjugated pair stabilises")
    {
        // g2 = psi o g1 o psi^{-1} with psi kinked on g1's own grid: the
        // conjugacy is psi itself, a polyline.
        const CarcassMap g1 = skew_tent(Rational(1, 3));
        const Homeomorphism psi = {{Rational(0), Rational(0)},
                                   {Rational(1, 3), Rational(1, 2)},
                                   {Rational(1), Rational(1)}};
        const CarcassMap g2 = certify_firm(conjugate_by_homeomorphism(g1, psi), 8);
        const PreimageGrid a = build_grid(g1, 14);
        const PreimageGrid b = build_grid(g2, 14);
        const ConjugacyClassification c = classify_conjugacy(a, b, 12);
        CHECK(c.kind == ConjugacyClassification::Kind::piecewise_linear);
    }
}

TEST_CASE("slope ratios stabilise at grid points")
{
    // Beyond the point's own level both one-sided chains run through the
    // leftmost intervals, so consecutive slopes settle on the constant ratio
    // delta_{n0,0}(g2) / delta_{n0,0}(g1) - the same constant on both sides.
    const std::vector<std::pair<CarcassMap, CarcassMap>> pairs = {
        {tent(), skew_tent(Rational(2, 5))},
        {ct::gen_map(1), ct::gen_map(2)},
    };
    for (const auto& [a, b] : pairs) {
        const PreimageGrid ga = build_grid(a, 8);
        const PreimageGrid gb = build_grid(b, 8);
        const Rational stable_ratio =
            gb.delta(b.n0(), 0) / ga.delta(a.n0(), 0);
        for (const Rational x : {Rational(0), Rational(3, 8), Rational(5, 16)}) {
            const auto [left, right] = lr_limits(ga, gb, x, 30, 4);
            const std::size_t tail = 10 + std::max(a.n0(), b.n0());
            for (const SlopeSequence* seq : {&left, &right}) {
                for (std::size_t i = tail; i + 1 < seq->values.size(); ++i)
                    CHECK(seq->values[i + 1] / seq->values[i] == stable_ratio);
            }
        }
    }
}

TEST_CASE("g-finite points never converge to a positive finite slope")
{
    for (const Rational v : {Rational(1, 3), Rational(2, 3)}) {
        const PreimageGrid tg = build_grid(tent(), 6);
        const PreimageGrid sg = build_grid(skew_tent(v), 6);
        const SlopeTrend expected =
            v < Rational(1, 2) ? SlopeTrend::tends_to_zero : SlopeTrend::tends_to_infinity;
        for (int j = 0; j <= 20; ++j) {
            const auto [left, right] = lr_limits(tg, sg, Rational(j, 32), 60, 8);
            CHECK(left.trend == expected);
            CHECK(right.trend == expected);
        }
    }
}

TEST_CASE("slope CSV fallback for extreme magnitudes")
{
    SlopeSequence tiny;
    tiny.side = Side::right;
    tiny.trend = SlopeTrend::tends_to_zero;
    tiny.values = {rational_pow(Rational(1, 10), 301), Rational(1, 2)};
    std::ostringstream out;
    write_slopes_csv(tiny, tiny, out);
    const std::string text = out.str();
    CHECK(text.find("1e-301,1") != std::string::npos);
    CHECK(text.find("1,2,right,tends_to_zero") != std::string::npos);
}
