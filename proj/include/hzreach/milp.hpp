#pragma once

#include <vector>

#include "hzreach/hybzono.hpp"
#include "hzreach/lp.hpp"

namespace hzreach
{

enum class MilpStatus
{
    optimal,
    infeasible,
    node_limit
};

struct MilpSettings
{
    long node_limit = 1'000'000;
    double int_tol = 1e-6;
    double prune_tol = 1e-9;
    int propagate_rounds = 10;
    LpSettings lp;
};

struct MilpResult
{
    MilpStatus status = MilpStatus::node_limit;
    double value = 0.0;
    Vec witness;             ///< full variable vector of the incumbent (empty if none)
    long nodes_explored = 0;
    double gap = 0.0;        ///< |incumbent - best outstanding bound| on node_limit
    double best_bound = 0.0; ///< proven bound in the problem's own sense
    bool has_incumbent = false;
};

/// Mixed-binary LP over explicit data; variables listed in `binaries` range
/// over {-1, 1}, everything else over [lo, hi].
struct FactorLp
{
    Mat a;
    Vec b;
    Vec lo;
    Vec hi;
    Vec c;
    bool maximize = false;
    std::vector<Eigen::Index> binaries;
};

/// Factor-space feasibility system of a hybrid zonotope: variables (xi_c, xi_b),
/// rows [Ac Ab] xi = b, boxes [-1,1], binaries marked. Objective left at zero.
FactorLp factor_lp(const HybZono& z);

/**
 * @brief Best-bound branch-and-bound over the binary variables.
 *
 * Binaries relax to [-1,1]; branching picks the most fractional binary
 * (lowest index on ties). Interval propagation over the equality rows runs
 * before each node LP and may fix whole binary blocks cheaply. Node LPs warm
 * start from the previous basis via the dual simplex. Deterministic.
 */
MilpResult solve_mixed_binary(const FactorLp& problem, const MilpSettings& settings = {});

/// min/max of a linear objective over the factor space of a hybrid zonotope.
struct MilpProblem
{
    Vec objective; ///< length ng + nb
    bool maximize = false;
    HybZono set;
};

MilpResult milp_solve(const MilpProblem& problem, const MilpSettings& settings = {});

/**
 * @brief Interval bound tightening over equality rows a x = b.
 *
 * run() shrinks [lo, hi] without excluding any feasible point (a small
 * relative slack guards against roundoff). Binary variables are snapped to a
 * single sign when the other is excluded. Returns false when some row is
 * proven unsatisfiable over the boxes.
 */
class Propagator
{
public:
    Propagator(const Mat& a, Vec b, std::vector<Eigen::Index> binaries);

    bool run(Vec& lo, Vec& hi, int max_rounds) const;

private:
    std::vector<std::vector<std::pair<Eigen::Index, double>>> rows_;
    Vec b_;
    std::vector<Eigen::Index> binaries_;
};

} // namespace hzreach
