#include "doctest.h"

#include "support/helpers.hpp"

using namespace hzreach;
using namespace hzreach::testing;

TEST_CASE("emptiness of constrained intervals")
{
    // unit interval constrained by xi = 3
    const HybZono impossible(make_mat({{1.0}}), Mat(1, 0), make_vec({0.0}), make_mat({{1.0}}), Mat(1, 0),
                             make_vec({3.0}));
    CHECK(is_empty(impossible) == Tribool::yes);

    const HybZono fine(make_mat({{1.0}}), Mat(1, 0), make_vec({0.0}), make_mat({{1.0}}), Mat(1, 0),
                       make_vec({0.5}));
    CHECK(is_empty(fine) == Tribool::no);
    CHECK(is_empty(HybZono::canonical_empty(2)) == Tribool::yes);
}

TEST_CASE("containment on the boundary of the initial box")
{
    const HybZono x0(make_mat({{M_PI, 0.0}, {0.0, 0.1}}), make_vec({0.0, 0.0}));
    CHECK(contains_point(x0, make_vec({M_PI, 0.0}), 1e-9) == Tribool::yes);
    CHECK(contains_point(x0, make_vec({M_PI + 1e-3, 0.0}), 1e-6) == Tribool::no);
    CHECK_THROWS_AS(contains_point(x0, make_vec({0.0}), 1e-9), DimensionMismatch);
}

TEST_CASE("containment is monotone in the tolerance")
{
    Rng rng(51);
    const HybZono z = random_hybzono(rng, 2, 3, 2, 1);
    for (int i = 0; i < 50; ++i)
    {
        Vec p(2);
        p << rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0);
        const bool tight = contains_point(z, p, 1e-8) == Tribool::yes;
        const bool loose = contains_point(z, p, 1e-2) == Tribool::yes;
        if (tight)
            CHECK(loose);
    }
}

TEST_CASE("support widths are nonnegative and hulls are boxes of supports")
{
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial)
    {
        const HybZono z = random_hybzono(rng, 2, 4, 2, 1);
        for (int k = 0; k < 10; ++k)
        {
            const Vec d = random_direction(rng, 2);
            const SupportResult up = support(z, d);
            const SupportResult dn = support(z, Vec(-d));
            if (up.empty || dn.empty)
                continue;
            REQUIRE(up.resolved == Tribool::yes);
            REQUIRE(dn.resolved == Tribool::yes);
            CHECK(up.value + dn.value >= -1e-9);
        }
    }

    const HullResult hull = interval_hull(interval_to_zonotope(Interval(make_vec({-1.0, 2.0}),
                                                                        make_vec({3.0, 5.0}))));
    REQUIRE(hull.exact);
    CHECK(hull.hull.lo.isApprox(make_vec({-1.0, 2.0})));
    CHECK(hull.hull.hi.isApprox(make_vec({3.0, 5.0})));
}

TEST_CASE("leaf enumeration matches the binary structure")
{
    // plain zonotope: one leaf
    const HybZono zono = interval_to_zonotope(Interval(-1.0, 1.0));
    CHECK(leaf_enumerate(zono, 10).size() == 1);
    CHECK(count_nonempty_leaves(zono, 10).count == 1);

    // two-point set: two leaves, cap honored
    const HybZono points(Mat(1, 0), make_mat({{1.0}}), make_vec({0.0}), Mat(0, 0), Mat(0, 0), Vec(0));
    CHECK(count_nonempty_leaves(points, 10).count == 2);
    CHECK_THROWS_AS(leaf_enumerate(points, 1), CapExceeded);
    const LeafCount capped = count_nonempty_leaves(points, 1);
    CHECK(capped.capped);

    // each leaf substitutes its binaries
    Rng rng(59);
    const HybZono z = random_hybzono(rng, 2, 3, 3, 1);
    const auto leaves = leaf_enumerate(z, 100);
    const LeafOptimum any = exhaustive_leaf_optimum(z, Vec(Vec::Zero(z.num_factors())), true);
    if (any.feasible)
        CHECK(!leaves.empty());
    for (const Leaf& leaf : leaves)
    {
        CHECK(leaf.set.nb() == 0);
        CHECK(leaf.set.ng() == z.ng());
        CHECK(is_empty(leaf.set) == Tribool::no);
    }
}

TEST_CASE("reduce_trivial removes planted redundancy and keeps the set")
{
    Rng rng(61);
    const HybZono z = random_hybzono(rng, 2, 3, 2, 2);

    // plant a zero generator column
    HybZono padded = z;
    padded.Gc = hcat(z.Gc, Mat::Zero(2, 1));
    padded.Ac = hcat(z.Ac, Mat::Zero(2, 1));
    const HybZono depadded = reduce_trivial(padded);
    CHECK(depadded.ng() == z.ng());
    CHECK(supports_agree(depadded, z, 20, 1e-9));

    // duplicate a constraint row
    HybZono dup = z;
    dup.Ac = vcat(z.Ac, Mat(z.Ac.row(0)));
    dup.Ab = vcat(z.Ab, Mat(z.Ab.row(0)));
    dup.b = vcat(z.b, Vec(z.b.segment(0, 1)));
    const HybZono dedup = reduce_trivial(dup);
    CHECK(dedup.nc() == z.nc());
    CHECK(supports_agree(dedup, z, 20, 1e-9));

    // a scaled duplicate row with mismatched rhs proves emptiness
    HybZono clash = z;
    clash.Ac = vcat(z.Ac, Mat(2.0 * z.Ac.row(0)));
    clash.Ab = vcat(z.Ab, Mat(2.0 * z.Ab.row(0)));
    clash.b = vcat(z.b, make_vec({2.0 * z.b(0) + 1.0}));
    const HybZono flagged = reduce_trivial(clash);
    CHECK(flagged.trivially_empty());
    CHECK(is_empty(flagged) == Tribool::yes);
}

TEST_CASE("reduce_trivial preserves leaf counts on small sets")
{
    Rng rng(67);
    for (int trial = 0; trial < 6; ++trial)
    {
        const HybZono z = random_hybzono(rng, 2, 3, 1 + rng.next() % 4, 1 + rng.next() % 2);
        HybZono padded = z;
        padded.Gc = hcat(z.Gc, Mat::Zero(2, 2));
        padded.Ac = hcat(z.Ac, Mat::Zero(z.nc(), 2));
        const HybZono reduced = reduce_trivial(padded);
        CHECK(reduced.nb() == z.nb());
        CHECK(count_nonempty_leaves(reduced, 1 << 8).count == count_nonempty_leaves(z, 1 << 8).count);
    }
}

TEST_CASE("grid export separates a box interior from its complement")
{
    const HybZono box = interval_to_zonotope(Interval(make_vec({-1.0, -1.0}), make_vec({1.0, 1.0})));
    const Interval window(make_vec({-2.0, -2.0}), make_vec({2.0, 2.0}));
    const auto cells = grid_membership(box, {0, 1}, window, 0.5);
    REQUIRE(cells.size() == 64);
    long inside = 0;
    for (const GridCell& c : cells)
    {
        const bool expect = std::abs(c.x) <= 1.0 && std::abs(c.y) <= 1.0;
        CHECK((c.status == CellStatus::in) == expect);
        inside += c.status == CellStatus::in ? 1 : 0;
    }
    CHECK(inside == 16);

    const auto out_cells = grid_membership(HybZono::canonical_empty(2), {0, 1}, window, 1.0);
    for (const GridCell& c : out_cells)
        CHECK(c.status == CellStatus::out);

    const std::string csv = grid_to_csv(cells);
    CHECK(csv.rfind("x,y,status\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);
}
