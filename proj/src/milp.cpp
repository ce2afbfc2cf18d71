#include "hzreach/milp.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "hzreach/errors.hpp"

namespace hzreach
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node
{
    int parent = -1;
    Eigen::Index var = -1;
    double fix = 0.0; // -1 or +1
    double bound = -kInf;
};

struct QueueEntry
{
    double bound;
    int depth;
    long id;
};

struct EntryOrder
{
    // min bound first; ties: deepest, then newest (dive behavior)
    bool operator()(const QueueEntry& a, const QueueEntry& b) const
    {
        if (a.bound != b.bound)
            return a.bound > b.bound;
        if (a.depth != b.depth)
            return a.depth < b.depth;
        return a.id < b.id;
    }
};

} // namespace

Propagator::Propagator(const Mat& a, Vec b, std::vector<Eigen::Index> binaries)
    : b_(std::move(b)), binaries_(std::move(binaries))
{
    rows_.resize(static_cast<size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0)
                rows_[static_cast<size_t>(i)].emplace_back(j, a(i, j));
}

bool Propagator::run(Vec& lo, Vec& hi, int max_rounds) const
{
    const double feas = 1e-9;
    const double slack = 1e-9;
    for (int round = 0; round < max_rounds; ++round)
    {
        bool changed = false;
        for (size_t i = 0; i < rows_.size(); ++i)
        {
            const auto& row = rows_[i];
            double minact = 0.0;
            double maxact = 0.0;
            for (const auto& [j, aij] : row)
            {
                if (aij > 0.0)
                {
                    minact += aij * lo(j);
                    maxact += aij * hi(j);
                }
                else
                {
                    minact += aij * hi(j);
                    maxact += aij * lo(j);
                }
            }
            const double bi = b_(static_cast<Eigen::Index>(i));
            const double scale = 1.0 + std::abs(bi);
            if (minact > bi + feas * scale || maxact < bi - feas * scale)
                return false;
            for (const auto& [j, aij] : row)
            {
                const double cmin = aij > 0.0 ? aij * lo(j) : aij * hi(j);
                const double cmax = aij > 0.0 ? aij * hi(j) : aij * lo(j);
                const double rest_min = minact - cmin;
                const double rest_max = maxact - cmax;
                // aij * x_j must land in [bi - rest_max, bi - rest_min]
                double implied_lo;
                double implied_hi;
                if (aij > 0.0)
                {
                    implied_lo = (bi - rest_max) / aij;
                    implied_hi = (bi - rest_min) / aij;
                }
                else
                {
                    implied_lo = (bi - rest_min) / aij;
                    implied_hi = (bi - rest_max) / aij;
                }
                const double guard = slack * (1.0 + std::abs(implied_lo) + std::abs(implied_hi)) + 1e-12;
                implied_lo -= guard;
                implied_hi += guard;
                if (implied_lo > lo(j) + 1e-9)
                {
                    lo(j) = implied_lo;
                    changed = true;
                }
                if (implied_hi < hi(j) - 1e-9)
                {
                    hi(j) = implied_hi;
                    changed = true;
                }
                if (lo(j) > hi(j) + feas)
                    return false;
            }
        }
        // binaries: collapse to a single sign when the other is excluded
        for (const Eigen::Index j : binaries_)
        {
            const bool can_minus = lo(j) <= -1.0 + 1e-7;
            const bool can_plus = hi(j) >= 1.0 - 1e-7;
            if (!can_minus && !can_plus)
                return false;
            if (!can_minus && lo(j) < 1.0)
            {
                lo(j) = 1.0;
                hi(j) = 1.0;
                changed = true;
            }
            else if (!can_plus && hi(j) > -1.0)
            {
                lo(j) = -1.0;
                hi(j) = -1.0;
                changed = true;
            }
        }
        if (!changed)
            return true;
    }
    return true;
}

FactorLp factor_lp(const HybZono& z)
{
    FactorLp p;
    p.a = hcat(z.Ac, z.Ab);
    p.b = z.b;
    p.lo = Vec::Constant(z.num_factors(), -1.0);
    p.hi = Vec::Constant(z.num_factors(), 1.0);
    p.c = Vec::Zero(z.num_factors());
    for (Eigen::Index j = 0; j < z.nb(); ++j)
        p.binaries.push_back(z.ng() + j);
    return p;
}

MilpResult solve_mixed_binary(const FactorLp& problem, const MilpSettings& settings)
{
    const Eigen::Index nvars = problem.a.cols();
    if (problem.b.size() != problem.a.rows() || problem.lo.size() != nvars || problem.hi.size() != nvars ||
        problem.c.size() != nvars)
        throw DimensionMismatch("mixed-binary lp blocks");

    // internal sense is always minimization
    const Vec cost = problem.maximize ? Vec(-problem.c) : problem.c;
    const Propagator propagator(problem.a, problem.b, problem.binaries);

    SimplexSolver solver(problem.a, problem.b, problem.lo, problem.hi, settings.lp);
    solver.set_objective(cost);

    std::vector<Node> nodes;
    nodes.push_back({});
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryOrder> open;
    open.push({-kInf, 0, 0});

    MilpResult result;
    double incumbent = kInf;
    Vec incumbent_x;
    long explored = 0;
    bool hit_limit = false;

    Vec lo(nvars), hi(nvars);
    const auto rebuild_bounds = [&](int node_id)
    {
        lo = problem.lo;
        hi = problem.hi;
        for (int cur = node_id; cur > 0; cur = nodes[static_cast<size_t>(cur)].parent)
        {
            const Node& nd = nodes[static_cast<size_t>(cur)];
            lo(nd.var) = nd.fix;
            hi(nd.var) = nd.fix;
        }
    };

    const auto outstanding_bound = [&]() -> double
    { return open.empty() ? kInf : open.top().bound; };

    while (!open.empty())
    {
        // optimality proven: nothing outstanding can beat the incumbent
        if (incumbent < kInf && outstanding_bound() >= incumbent - settings.prune_tol)
            break;

        if (explored >= settings.node_limit)
        {
            hit_limit = true;
            break;
        }

        const QueueEntry entry = open.top();
        open.pop();
        const int node_id = static_cast<int>(entry.id);
        const Node node = nodes[static_cast<size_t>(node_id)];
        ++explored;

        if (incumbent < kInf && node.bound >= incumbent - settings.prune_tol)
            continue;

        rebuild_bounds(node_id);
        if (!propagator.run(lo, hi, settings.propagate_rounds))
            continue;

        solver.set_all_bounds(lo, hi);
        LpResult lp = solver.has_basis() ? solver.reoptimize() : solver.solve();
        if (lp.status == LpStatus::iteration_limit)
        {
            lp = solver.solve();
            if (lp.status == LpStatus::iteration_limit)
                throw NumericalFailure("lp did not converge inside branch and bound");
        }
        if (lp.status == LpStatus::infeasible)
            continue;

        const double node_bound = std::max(node.bound, lp.objective);
        if (incumbent < kInf && node_bound >= incumbent - settings.prune_tol)
            continue;

        // most fractional unfixed binary: value closest to 0
        Eigen::Index branch_var = -1;
        double most_frac = settings.int_tol;
        for (const Eigen::Index j : problem.binaries)
        {
            if (lo(j) == hi(j))
                continue;
            const double dist = 1.0 - std::min(1.0, std::abs(lp.x(j)));
            if (dist > most_frac)
            {
                most_frac = dist;
                branch_var = j;
            }
        }

        if (branch_var < 0)
        {
            // integral relaxation: certify a clean witness with binaries pinned
            Vec leaf_lo = lo;
            Vec leaf_hi = hi;
            bool any_snap = false;
            for (const Eigen::Index j : problem.binaries)
            {
                if (leaf_lo(j) == leaf_hi(j))
                    continue;
                const double fix = lp.x(j) >= 0.0 ? 1.0 : -1.0;
                leaf_lo(j) = fix;
                leaf_hi(j) = fix;
                any_snap = true;
            }
            LpResult leaf = lp;
            if (any_snap)
            {
                solver.set_all_bounds(leaf_lo, leaf_hi);
                leaf = solver.reoptimize();
            }
            if (leaf.status == LpStatus::optimal)
            {
                if (leaf.objective < incumbent - settings.prune_tol)
                {
                    incumbent = leaf.objective;
                    incumbent_x = leaf.x;
                }
                continue;
            }
            // snap failed at tolerance; branch on the least settled binary instead
            most_frac = -1.0;
            for (const Eigen::Index j : problem.binaries)
            {
                if (lo(j) == hi(j))
                    continue;
                const double dist = 1.0 - std::min(1.0, std::abs(lp.x(j)));
                if (dist > most_frac)
                {
                    most_frac = dist;
                    branch_var = j;
                }
            }
            if (branch_var < 0)
                continue;
        }

        const double preferred = lp.x(branch_var) >= 0.0 ? 1.0 : -1.0;
        nodes.push_back({node_id, branch_var, -preferred, node_bound});
        open.push({node_bound, entry.depth + 1, static_cast<long>(nodes.size()) - 1});
        nodes.push_back({node_id, branch_var, preferred, node_bound});
        open.push({node_bound, entry.depth + 1, static_cast<long>(nodes.size()) - 1});
    }

    result.nodes_explored = explored;
    const double sense = problem.maximize ? -1.0 : 1.0;
    if (!hit_limit)
    {
        if (incumbent < kInf)
        {
            result.status = MilpStatus::optimal;
            result.value = sense * incumbent;
            result.witness = incumbent_x;
            result.has_incumbent = true;
            result.gap = 0.0;
            result.best_bound = result.value;
        }
        else
        {
            result.status = MilpStatus::infeasible;
        }
        return result;
    }

    // node limit: report the incumbent and the unresolved gap
    result.status = MilpStatus::node_limit;
    const double outstanding = outstanding_bound();
    const double proven = std::min(incumbent, outstanding);
    result.best_bound = sense * proven;
    if (incumbent < kInf)
    {
        result.value = sense * incumbent;
        result.witness = incumbent_x;
        result.has_incumbent = true;
        result.gap = std::max(0.0, incumbent - outstanding);
    }
    else
    {
        result.gap = kInf;
    }
    return result;
}

MilpResult milp_solve(const MilpProblem& problem, const MilpSettings& settings)
{
    validate(problem.set);
    if (problem.objective.size() != problem.set.num_factors())
        throw DimensionMismatch("milp objective length " + std::to_string(problem.objective.size()) +
                                " vs factor count " + std::to_string(problem.set.num_factors()));
    FactorLp lp = factor_lp(problem.set);
    lp.c = problem.objective;
    lp.maximize = problem.maximize;
    return solve_mixed_binary(lp, settings);
}

} // namespace hzreach
