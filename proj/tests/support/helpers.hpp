#pragma once

#include <cmath>
#include <vector>

#include "hzreach/lp.hpp"
#include "hzreach/query.hpp"
#include "hzreach/rng.hpp"
#include "hzreach/sus.hpp"

namespace hzreach::testing
{

inline Vec make_vec(std::initializer_list<double> xs)
{
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs)
        v(i++) = x;
    return v;
}

inline Mat make_mat(std::initializer_list<std::initializer_list<double>> rows)
{
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = static_cast<Eigen::Index>(rows.begin()->size());
    Mat m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows)
    {
        Eigen::Index j = 0;
        for (double x : row)
            m(i, j++) = x;
        ++i;
    }
    return m;
}

inline Vec random_direction(Rng& rng, Eigen::Index n)
{
    Vec d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = rng.uniform(-1.0, 1.0);
    const double norm = d.norm();
    return norm > 1e-12 ? Vec(d / norm) : Vec(Vec::Unit(n, 0));
}

/// Two-sided support agreement on seeded random directions.
inline bool supports_agree(const HybZono& a, const HybZono& b, int ndirs, double tol, std::uint64_t seed = 7)
{
    Rng rng(seed);
    for (int k = 0; k < ndirs; ++k)
    {
        const Vec d = random_direction(rng, a.n());
        const SupportResult sa = support(a, d);
        const SupportResult sb = support(b, d);
        if (sa.resolved != Tribool::yes || sb.resolved != Tribool::yes)
            return false;
        if (std::abs(sa.value - sb.value) > tol)
            return false;
    }
    return true;
}

/// Random hybrid zonotope; when `feasible`, b is chosen so a random factor
/// assignment satisfies the constraints.
inline HybZono random_hybzono(Rng& rng, Eigen::Index n, Eigen::Index ng, Eigen::Index nb, Eigen::Index nc,
                              bool feasible = true)
{
    const auto fill = [&rng](Mat& m)
    {
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                m(i, j) = rng.uniform(-2.0, 2.0);
    };
    Mat gc(n, ng), gb(n, nb), ac(nc, ng), ab(nc, nb);
    fill(gc);
    fill(gb);
    fill(ac);
    fill(ab);
    Vec c(n);
    for (Eigen::Index i = 0; i < n; ++i)
        c(i) = rng.uniform(-1.0, 1.0);
    Vec b(nc);
    if (feasible && nc > 0)
    {
        Vec xi(ng + nb);
        for (Eigen::Index j = 0; j < ng; ++j)
            xi(j) = rng.uniform(-1.0, 1.0);
        for (Eigen::Index j = 0; j < nb; ++j)
            xi(ng + j) = rng.sign();
        b = ac * xi.head(ng) + ab * xi.tail(nb);
    }
    else
    {
        for (Eigen::Index i = 0; i < nc; ++i)
            b(i) = rng.uniform(-4.0, 4.0);
    }
    return HybZono(std::move(gc), std::move(gb), std::move(c), std::move(ac), std::move(ab), std::move(b));
}

/// Exhaustive optimum over all binary assignments; each leaf solved as a
/// plain LP. Independent of the branch-and-bound path.
struct LeafOptimum
{
    bool feasible = false;
    double value = 0.0;
};

inline LeafOptimum exhaustive_leaf_optimum(const HybZono& z, const Vec& objective, bool maximize)
{
    LeafOptimum out;
    const Eigen::Index nb = z.nb();
    for (long mask = 0; mask < (1L << nb); ++mask)
    {
        Vec xb(nb);
        for (Eigen::Index j = 0; j < nb; ++j)
            xb(j) = (mask >> j) & 1 ? 1.0 : -1.0;
        const Vec bb = z.b - z.Ab * xb;
        const Vec obj_c = objective.head(z.ng());
        const LpResult res = lp_solve(obj_c, maximize, z.Ac, bb, Vec::Constant(z.ng(), -1.0),
                                      Vec::Constant(z.ng(), 1.0));
        if (res.status != LpStatus::optimal)
            continue;
        const double value = res.objective + objective.tail(nb).dot(xb);
        if (!out.feasible || (maximize ? value > out.value : value < out.value))
        {
            out.feasible = true;
            out.value = value;
        }
    }
    return out;
}

/// Pendulum-with-saturated-feedback setup used across the suite.
struct Pendulum
{
    SystemModel system;
    Controller controller;
    HybZono x0;
    StateUpdateSet psi;
    StateInputMap theta;
    StateUpdateSet phi;
};

inline Pendulum make_pendulum(int sin_segments = 20)
{
    Pendulum p;
    p.system.amat = make_mat({{1.0, 0.1}, {0.0, 1.0}});
    p.system.bmat = make_mat({{0.0}, {0.1}});
    p.system.state_domain = Interval(make_vec({-4.0, -8.0}), make_vec({4.0, 8.0}));
    p.system.input_domain = Interval(-20.0, 20.0);
    NonlinearTerm sin_term;
    sin_term.gain = make_vec({0.0, 1.0});
    sin_term.arg = make_vec({1.0, 0.0, 0.0});
    sin_term.func = enclose_sin(Interval(-4.0, 4.0), sin_segments);
    p.system.terms.push_back(std::move(sin_term));

    p.controller.gain = make_vec({-17.60, -5.61});
    const double reach_s = 17.60 * 4.0 + 5.61 * 8.0;
    p.controller.pwl = enclose_sat(Interval(-reach_s, reach_s), -20.0, 20.0);

    p.x0 = HybZono(make_mat({{M_PI, 0.0}, {0.0, 0.1}}), make_vec({0.0, 0.0}));

    p.psi = build_open_loop_sus(p.system);
    p.theta = build_state_input_map(p.controller, p.system.state_domain);
    p.phi = close_loop(p.psi, p.theta);
    return p;
}

} // namespace hzreach::testing
