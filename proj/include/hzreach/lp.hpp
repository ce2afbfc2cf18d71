#pragma once

#include <vector>

#include "hzreach/linalg.hpp"

namespace hzreach
{

enum class LpStatus
{
    optimal,
    infeasible,
    iteration_limit
};

struct LpResult
{
    LpStatus status = LpStatus::iteration_limit;
    double objective = 0.0;
    Vec x; ///< structural variables only
    int iterations = 0;
};

struct LpSettings
{
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    double pivot_tol = 1e-8;
    int max_iterations = 200000;
    int bland_threshold = 5000; ///< degenerate pivots before switching to Bland's rule
    int refactor_interval = 64;
};

/**
 * @brief Dense bounded-variable simplex for min c'x s.t. Ax = b, lo <= x <= hi.
 *
 * solve() runs the two-phase primal method from a fresh basis. After any
 * solve, bounds may be changed and reoptimize() restores optimality with the
 * dual simplex from the current basis (the reduced costs do not depend on the
 * bounds, so the basis stays dual feasible). The objective must not change
 * between a solve and its reoptimizations. All tie-breaking is by lowest
 * index, so runs are deterministic.
 */
class SimplexSolver
{
public:
    SimplexSolver(const Mat& a, Vec b, Vec lo, Vec hi, LpSettings settings = {});

    void set_objective(const Vec& c); ///< invalidates warm-start state
    void set_var_bounds(Eigen::Index j, double lo, double hi);
    void set_all_bounds(const Vec& lo, const Vec& hi);
    const Vec& lower_bounds() const { return lo_; }
    const Vec& upper_bounds() const { return hi_; }

    LpResult solve();
    LpResult reoptimize();

    bool has_basis() const { return basis_valid_; }
    Eigen::Index num_vars() const { return n_; }
    Eigen::Index num_rows() const { return m_; }

private:
    enum class VarState : unsigned char
    {
        basic,
        at_lower,
        at_upper
    };

    Eigen::Index m_ = 0;    // rows
    Eigen::Index n_ = 0;    // structural columns
    Eigen::Index ntot_ = 0; // n_ + m_ artificials
    Eigen::MatrixXd a_;     // m x ntot, artificial block rewritten per cold solve
    Vec b_;
    Vec c_;  // structural objective
    Vec lo_; // length ntot
    Vec hi_;
    LpSettings cfg_;

    std::vector<Eigen::Index> basis_; // length m: variable basic in each row
    std::vector<VarState> state_;     // length ntot
    Vec x_;                           // length ntot
    bool basis_valid_ = false;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    struct Eta
    {
        Eigen::Index pos;
        Vec w;
    };
    std::vector<Eta> etas_;
    bool factor_ok_ = false;

    void factorize();
    Vec ftran(Vec v) const; // B^-1 v
    Vec btran(Vec v) const; // B^-T v
    void recompute_basics();
    void snap_nonbasics();
    double objective_value(const Vec& cost) const;
    Vec reduced_costs(const Vec& cost) const;

    // Returns LpStatus::optimal when no entering variable remains.
    LpStatus primal_loop(const Vec& cost, int& iters, int& degenerate);
    LpStatus dual_loop(int& iters);
    bool pivot_in_row(Eigen::Index entering, Eigen::Index row, const Vec& w);

    LpResult finish(LpStatus status, int iters);
};

/// min/max of objective'x over {x : a x = b, lo <= x <= hi}.
LpResult lp_solve(const Vec& objective, bool maximize, const Mat& a, const Vec& b, const Vec& lo, const Vec& hi,
                  const LpSettings& settings = {});

} // namespace hzreach
