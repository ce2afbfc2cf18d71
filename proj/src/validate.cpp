#include "hzreach/validate.hpp"

#include "hzreach/errors.hpp"
#include "hzreach/rng.hpp"

namespace hzreach
{

namespace
{

/// Uniform factor sample of a set; retries when constraints reject it
/// (initial sets are typically unconstrained zonotopes, where every sample
/// is feasible).
Vec sample_factors(const HybZono& z, Rng& rng)
{
    for (int attempt = 0; attempt < 200; ++attempt)
    {
        Vec xi(z.num_factors());
        for (Eigen::Index j = 0; j < z.ng(); ++j)
            xi(j) = rng.uniform(-1.0, 1.0);
        for (Eigen::Index j = 0; j < z.nb(); ++j)
            xi(z.ng() + j) = rng.sign();
        if (z.nc() == 0 || z.constraint_residual(xi).lpNorm<Eigen::Infinity>() <= 1e-9)
            return xi;
    }
    throw NumericalFailure("could not sample a feasible initial factor assignment");
}

/// Witness for R_{k+1} from a witness for R_k and one for the state-update
/// set: the successor identity concatenates factor blocks as (phi, r).
Vec compose_witness(const HybZono& phi, const Vec& phi_xi, const HybZono& rk, const Vec& rk_xi)
{
    Vec out(phi.num_factors() + rk.num_factors());
    out.head(phi.ng()) = phi_xi.head(phi.ng());
    out.segment(phi.ng(), rk.ng()) = rk_xi.head(rk.ng());
    out.segment(phi.ng() + rk.ng(), phi.nb()) = phi_xi.tail(phi.nb());
    out.tail(rk.nb()) = rk_xi.tail(rk.nb());
    return out;
}

bool witness_certifies(const HybZono& z, const Vec& xi, const Vec& point, double value_tol, double residual_tol)
{
    if (xi.size() != z.num_factors())
        return false;
    if (xi.head(z.ng()).lpNorm<Eigen::Infinity>() > 1.0 + 1e-9)
        return false;
    for (Eigen::Index j = 0; j < z.nb(); ++j)
        if (std::abs(std::abs(xi(z.ng() + j)) - 1.0) > 1e-9)
            return false;
    if (z.nc() > 0 && z.constraint_residual(xi).lpNorm<Eigen::Infinity>() > residual_tol)
        return false;
    return (z.point(xi) - point).lpNorm<Eigen::Infinity>() <= value_tol;
}

} // namespace

std::vector<Vec> simulate_closed_loop(const SystemModel& sys, const Controller& ctrl, const Vec& x0, int steps)
{
    std::vector<Vec> traj;
    traj.reserve(static_cast<size_t>(steps) + 1);
    traj.push_back(x0);
    for (int k = 0; k < steps; ++k)
    {
        Vec u(1);
        u(0) = ctrl.input(traj.back());
        traj.push_back(sys.simulate(traj.back(), u));
    }
    return traj;
}

ValidationReport validate_trajectories(const SystemModel& sys, const Controller& ctrl, const StateUpdateSet& phi,
                                       const std::vector<ReachRecord>& records, long samples, std::uint64_t seed,
                                       double tol, const MilpSettings& milp)
{
    if (records.empty())
        throw DimensionMismatch("validation needs at least the initial reach record");

    ValidationReport report;
    report.samples = samples;
    report.steps = static_cast<int>(records.size()) - 1;

    const double witness_tol = 1e-9;
    const double residual_tol = 1e-7;
    Rng rng(seed);

    for (long s = 0; s < samples; ++s)
    {
        Vec rk_xi = sample_factors(records[0].set, rng);
        Vec x = records[0].set.point(rk_xi);
        const std::vector<Vec> traj = simulate_closed_loop(sys, ctrl, x, report.steps);

        for (int k = 1; k <= report.steps; ++k)
        {
            const HybZono& rk = records[static_cast<size_t>(k)].set;
            const Vec target = traj[static_cast<size_t>(k)];
            const Vec pair = vcat(traj[static_cast<size_t>(k - 1)], target);

            bool certified = false;
            if (rk_xi.size() == records[static_cast<size_t>(k - 1)].set.num_factors())
            {
                const ContainsWitness phi_w = contains_point_witness(phi.set, pair, witness_tol, milp);
                if (phi_w.answer == Tribool::yes)
                {
                    Vec candidate =
                        compose_witness(phi.set, phi_w.factors, records[static_cast<size_t>(k - 1)].set, rk_xi);
                    if (witness_certifies(rk, candidate, target, tol, residual_tol))
                    {
                        rk_xi = std::move(candidate);
                        certified = true;
                    }
                }
            }
            if (!certified)
            {
                // slow path: full containment query on the reach set itself
                ++report.fallback_checks;
                const ContainsWitness direct = contains_point_witness(rk, target, tol, milp);
                if (direct.answer == Tribool::yes)
                {
                    rk_xi = direct.factors;
                    certified = true;
                }
                else if (direct.answer == Tribool::indeterminate)
                {
                    ++report.indeterminate_checks;
                    rk_xi = Vec(); // witness chain broken; later steps fall back too
                    continue;
                }
            }
            if (!certified)
            {
                report.violations.push_back({s, k, target});
                rk_xi = Vec();
            }
        }
    }
    return report;
}

} // namespace hzreach
