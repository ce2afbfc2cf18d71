#include "doctest.h"

#include "support/helpers.hpp"

using namespace hzreach;
using namespace hzreach::testing;

TEST_CASE("unconstrained box maximization hits the bound")
{
    const LpResult res = lp_solve(make_vec({1.0}), true, Mat(0, 1), Vec(0), make_vec({-1.0}), make_vec({1.0}));
    CHECK(res.status == LpStatus::optimal);
    CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.x(0) == doctest::Approx(1.0));
}

TEST_CASE("single equality constraint caps the optimum")
{
    const Mat a = make_mat({{1.0, 1.0}});
    const LpResult res =
        lp_solve(make_vec({1.0, 1.0}), true, a, make_vec({0.5}), make_vec({-1.0, -1.0}), make_vec({1.0, 1.0}));
    CHECK(res.status == LpStatus::optimal);
    CHECK(res.objective == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("infeasible bounds are detected")
{
    // xi = 3 with xi in [-1, 1]
    const Mat a = make_mat({{1.0}});
    const LpResult res = lp_solve(make_vec({1.0}), false, a, make_vec({3.0}), make_vec({-1.0}), make_vec({1.0}));
    CHECK(res.status == LpStatus::infeasible);
}

TEST_CASE("fixed variables are honored")
{
    const Mat a = make_mat({{1.0, 1.0}});
    const LpResult res =
        lp_solve(make_vec({0.0, 1.0}), false, a, make_vec({1.2}), make_vec({0.7, -1.0}), make_vec({0.7, 1.0}));
    CHECK(res.status == LpStatus::optimal);
    CHECK(res.x(0) == doctest::Approx(0.7));
    CHECK(res.objective == doctest::Approx(0.5).epsilon(1e-9));
}

namespace
{

// dense-grid brute force over [-1,1]^2 at resolution 1e-3
double grid_oracle(const Vec& c, bool maximize, const Mat& a, const Vec& b)
{
    const double res = 1e-3;
    double best = maximize ? -1e30 : 1e30;
    for (double x = -1.0; x <= 1.0 + 1e-12; x += res)
    {
        for (double y = -1.0; y <= 1.0 + 1e-12; y += res)
        {
            Vec p(2);
            p << x, y;
            if (a.rows() > 0 && (a * p - b).lpNorm<Eigen::Infinity>() > 1e-3)
                continue;
            const double v = c.dot(p);
            best = maximize ? std::max(best, v) : std::min(best, v);
        }
    }
    return best;
}

} // namespace

TEST_CASE("random feasible instances agree with a dense grid oracle")
{
    Rng rng(42);
    for (int trial = 0; trial < 12; ++trial)
    {
        const Eigen::Index m = trial % 2;
        Mat a(m, 2);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            // unit rows away from axis-degenerate slopes keep the oracle honest
            const double angle = rng.uniform(0.3, 1.27);
            a(i, 0) = std::cos(angle) * rng.sign();
            a(i, 1) = std::sin(angle) * rng.sign();
        }
        // pick b through a grid point so the oracle sees exactly feasible rows
        Vec feas(2);
        feas << std::round(rng.uniform(-1.0, 1.0) * 500.0) / 500.0, std::round(rng.uniform(-1.0, 1.0) * 500.0) / 500.0;
        const Vec b = a * feas;
        Vec c(2);
        c << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
        c /= std::max(1e-6, c.norm());
        const bool maximize = (trial % 3) != 0;

        const LpResult res = lp_solve(c, maximize, a, b, make_vec({-1.0, -1.0}), make_vec({1.0, 1.0}));
        REQUIRE(res.status == LpStatus::optimal);
        const double oracle = grid_oracle(c, maximize, a, b);
        CHECK(std::abs(res.objective - oracle) <= 2e-3);
    }
}

TEST_CASE("dual reoptimization matches cold solves after bound changes")
{
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial)
    {
        const Eigen::Index n = 4 + static_cast<Eigen::Index>(rng.next() % 5);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next() % 3);
        Mat a(m, n);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                a(i, j) = rng.uniform(-2.0, 2.0);
        Vec feas(n);
        for (Eigen::Index j = 0; j < n; ++j)
            feas(j) = rng.uniform(-1.0, 1.0);
        const Vec b = a * feas;
        Vec c(n);
        for (Eigen::Index j = 0; j < n; ++j)
            c(j) = rng.uniform(-1.0, 1.0);

        Vec lo = Vec::Constant(n, -1.0);
        Vec hi = Vec::Constant(n, 1.0);
        SimplexSolver solver(a, b, lo, hi);
        solver.set_objective(c);
        const LpResult first = solver.solve();
        REQUIRE(first.status == LpStatus::optimal);

        for (int change = 0; change < 6; ++change)
        {
            const Eigen::Index j = static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(n));
            if (rng.sign() > 0.0)
            {
                const double v = rng.sign();
                lo(j) = v;
                hi(j) = v;
            }
            else
            {
                lo(j) = -1.0;
                hi(j) = 1.0;
            }
            solver.set_all_bounds(lo, hi);
            const LpResult warm = solver.reoptimize();

            SimplexSolver fresh(a, b, lo, hi);
            fresh.set_objective(c);
            const LpResult cold = fresh.solve();

            REQUIRE(warm.status == cold.status);
            if (cold.status == LpStatus::optimal)
                CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-7));
        }
    }
}
