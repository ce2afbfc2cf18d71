#include "doctest.h"

#include "support/helpers.hpp"

using namespace hzreach;
using namespace hzreach::testing;

namespace
{

SosApproximation sin_grid_example()
{
    Vec bp(21), val(21);
    for (int i = 0; i <= 20; ++i)
    {
        bp(i) = -4.0 + 0.4 * i;
        val(i) = std::sin(bp(i));
    }
    return build_sos_1d(bp, val);
}

} // namespace

TEST_CASE("build_sos_1d lays out the banded incidence of a uniform grid")
{
    const SosApproximation s = sin_grid_example();
    CHECK(s.vmat.rows() == 2);
    CHECK(s.num_vertices() == 21);
    CHECK(s.num_simplexes() == 20);
    CHECK(s.vmat(0, 0) == doctest::Approx(-4.0));
    CHECK(s.vmat(0, 20) == doctest::Approx(4.0));
    CHECK(s.vmat(1, 10) == doctest::Approx(std::sin(0.0)));
    for (Eigen::Index i = 0; i < 20; ++i)
    {
        CHECK(s.incidence(i, i) == 1.0);
        CHECK(s.incidence(i + 1, i) == 1.0);
        CHECK(s.incidence.col(i).sum() == 2.0);
    }

    const SosApproximation seg = build_sos_1d(make_vec({0.0, 1.0}), make_vec({0.0, 1.0}));
    CHECK(seg.num_simplexes() == 1);

    CHECK_THROWS_AS(build_sos_1d(make_vec({1.0}), make_vec({1.0})), TooFewVertices);
    CHECK_THROWS_AS(build_sos_1d(make_vec({0.0, 0.0}), make_vec({0.0, 1.0})), UnsortedBreakpoints);
    CHECK_THROWS_AS(build_sos_1d(make_vec({1.0, 0.0}), make_vec({0.0, 1.0})), UnsortedBreakpoints);
}

TEST_CASE("saturation tables put their kinks on the breakpoints")
{
    const EnclosedFunction sat = enclose_sat(Interval(-115.28, 115.28), -20.0, 20.0);
    CHECK(sat.error_bound == 0.0);
    // 4 vertices, 3 segments
    CHECK(sat.graph_set.nb() == 3);
    CHECK(sat.truth(-50.0) == -20.0);
    CHECK(sat.truth(3.0) == doctest::Approx(3.0));
    CHECK(sat.truth(115.0) == 20.0);

    // limits wider than the domain collapse to a single segment
    const EnclosedFunction ident = enclose_sat(Interval(-1.0, 1.0), -100.0, 100.0);
    CHECK(ident.graph_set.nb() == 1);
}

TEST_CASE("theorem-4 conversion carries the documented complexity and leaves")
{
    const HybZono z = sos_to_hybzono(sin_grid_example());
    CHECK_NOTHROW(validate(z));
    CHECK(z.n() == 2);
    CHECK(z.complexity() == Complexity{42, 20, 23});
    CHECK(count_nonempty_leaves(z, 100).count == 20);
}

TEST_CASE("each leaf of the sin conversion projects onto one subinterval")
{
    const SosApproximation s = sin_grid_example();
    const HybZono z = sos_to_hybzono(s);
    const auto leaves = leaf_enumerate(z, 64);
    REQUIRE(leaves.size() == 20);
    std::vector<bool> seen(20, false);
    for (const Leaf& leaf : leaves)
    {
        const HullResult hull = interval_hull(leaf.set);
        REQUIRE(hull.exact);
        REQUIRE(!hull.empty);
        // match the x-range against a grid cell
        const double lo = hull.hull.lo(0);
        const double hi = hull.hull.hi(0);
        const auto idx = static_cast<int>(std::llround((lo + 4.0) / 0.4));
        REQUIRE(idx >= 0);
        REQUIRE(idx < 20);
        CHECK(lo == doctest::Approx(-4.0 + 0.4 * idx).epsilon(1e-7));
        CHECK(hi == doctest::Approx(-4.0 + 0.4 * (idx + 1)).epsilon(1e-7));
        seen[static_cast<size_t>(idx)] = true;
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST_CASE("single-segment conversion is exactly the segment")
{
    const HybZono z = sos_to_hybzono(build_sos_1d(make_vec({0.0, 1.0}), make_vec({0.0, 1.0})));
    // supports along (1,-1) and (-1,1) vanish on the graph of y = x
    CHECK(support(z, make_vec({1.0, -1.0})).value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(support(z, make_vec({-1.0, 1.0})).value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(support(z, make_vec({1.0, 0.0})).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("graph membership tracks the interpolant, not the function")
{
    const SosApproximation s = sin_grid_example();
    const HybZono z = sos_to_hybzono(s);
    Rng rng(71);
    for (int i = 0; i < 200; ++i)
    {
        const double x = rng.uniform(-4.0, 4.0);
        const double y = interp_1d(s, x);
        CHECK(contains_point(z, make_vec({x, y}), 1e-7) == Tribool::yes);
        CHECK(contains_point(z, make_vec({x, y + 0.1}), 1e-7) == Tribool::no);
    }
}

TEST_CASE("sampled error bounds respect the analytic interpolation ceiling")
{
    const SosApproximation s = sin_grid_example();
    const double delta = sos_error_bound([](double x) { return std::sin(x); }, s, 2000);
    // h^2/8 * max |f''| = 0.4^2 / 8 = 0.02 for sin
    CHECK(delta / 1.05 <= 0.02);
    CHECK(delta <= 0.021);
    CHECK(delta > 0.0);

    // linear functions interpolate exactly
    const SosApproximation lin = build_sos_1d(make_vec({-1.0, 0.3, 2.0}), make_vec({-2.0, 0.6, 4.0}));
    CHECK(sos_error_bound([](double x) { return 2.0 * x; }, lin, 500) <= 1.05e-12);

    // piecewise-linear functions with kinks on the grid too
    const EnclosedFunction sat = enclose_sat(Interval(-40.0, 40.0), -20.0, 20.0);
    Vec bp(4), val(4);
    bp << -40.0, -20.0, 20.0, 40.0;
    for (int i = 0; i < 4; ++i)
        val(i) = sat.truth(bp(i));
    const SosApproximation sat_sos = build_sos_1d(bp, val);
    CHECK(sos_error_bound(sat.truth, sat_sos, 500) <= 1e-12);
}

TEST_CASE("halving the grid does not worsen the sin error bound")
{
    const auto grid_delta = [](int segments)
    {
        Vec bp(segments + 1), val(segments + 1);
        for (int i = 0; i <= segments; ++i)
        {
            bp(i) = -4.0 + 8.0 * i / segments;
            val(i) = std::sin(bp(i));
        }
        return sos_error_bound([](double x) { return std::sin(x); }, build_sos_1d(bp, val), 1000);
    };
    CHECK(grid_delta(40) <= grid_delta(20));
}

TEST_CASE("envelope bloats only the output coordinate")
{
    const SosApproximation s = sin_grid_example();
    const HybZono z = sos_to_hybzono(s);

    const HybZono same = envelope(z, 0.0);
    CHECK(same.ng() == z.ng());
    CHECK(supports_agree(same, z, 5, 1e-9));
    CHECK_THROWS_AS(envelope(z, -0.1), NegativeDelta);

    const HybZono fat = envelope(z, 0.02);
    CHECK(fat.ng() == z.ng() + 1);
    // band membership at a breakpoint where interp(0) = 0
    CHECK(contains_point(fat, make_vec({0.0, 0.019}), 1e-9) == Tribool::yes);
    CHECK(contains_point(fat, make_vec({0.0, 0.03}), 1e-9) == Tribool::no);
}

TEST_CASE("sin envelope encloses the true graph")
{
    const EnclosedFunction sin_enc = enclose_sin(Interval(-4.0, 4.0), 20);
    Rng rng(73);
    for (int i = 0; i < 100; ++i)
    {
        const double x = rng.uniform(-4.0, 4.0);
        CHECK(contains_point(sin_enc.graph_set, make_vec({x, std::sin(x)}), 1e-9) == Tribool::yes);
    }
}

TEST_CASE("multi-dimensional vertex matrices are accepted with user incidence")
{
    // two triangles splitting the unit square, graph of f(x1,x2) = x1 + x2
    Mat vmat(3, 4);
    vmat << 0.0, 1.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 1.0,
            0.0, 1.0, 1.0, 2.0;
    Mat inc = Mat::Zero(4, 2);
    inc(0, 0) = inc(1, 0) = inc(2, 0) = 1.0;
    inc(1, 1) = inc(2, 1) = inc(3, 1) = 1.0;
    SosApproximation s{vmat, inc};
    CHECK_NOTHROW(validate(s));
    const HybZono z = sos_to_hybzono(s);
    CHECK(z.n() == 3);
    CHECK(count_nonempty_leaves(z, 10).count == 2);
    CHECK(contains_point(z, make_vec({0.25, 0.25, 0.5}), 1e-8) == Tribool::yes);
    CHECK(contains_point(z, make_vec({0.25, 0.25, 0.8}), 1e-7) == Tribool::no);
}
