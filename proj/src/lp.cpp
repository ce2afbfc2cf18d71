#include "hzreach/lp.hpp"

#include <cmath>
#include <limits>

#include "hzreach/errors.hpp"

namespace hzreach
{

namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SimplexSolver::SimplexSolver(const Mat& a, Vec b, Vec lo, Vec hi, LpSettings settings)
    : m_(a.rows()), n_(a.cols()), ntot_(a.cols() + a.rows()), b_(std::move(b)), cfg_(settings)
{
    if (b_.size() != m_)
        throw DimensionMismatch("lp rhs length " + std::to_string(b_.size()) + " vs rows " + std::to_string(m_));
    if (lo.size() != n_ || hi.size() != n_)
        throw DimensionMismatch("lp bound lengths vs columns");
    if (!a.allFinite() || !b_.allFinite() || !lo.allFinite() || !hi.allFinite())
        throw NonFiniteEntry("lp data");

    a_.resize(m_, ntot_);
    a_.leftCols(n_) = a;
    a_.rightCols(m_).setZero();

    c_ = Vec::Zero(n_);
    lo_ = Vec::Zero(ntot_);
    hi_ = Vec::Zero(ntot_);
    lo_.head(n_) = lo;
    hi_.head(n_) = hi;
    x_ = Vec::Zero(ntot_);
    basis_.assign(static_cast<size_t>(m_), 0);
    state_.assign(static_cast<size_t>(ntot_), VarState::at_lower);
}

void SimplexSolver::set_objective(const Vec& c)
{
    if (c.size() != n_)
        throw DimensionMismatch("lp objective length");
    c_ = c;
    basis_valid_ = false; // reduced costs stale; next query must cold solve
}

void SimplexSolver::set_var_bounds(Eigen::Index j, double lo, double hi)
{
    lo_(j) = lo;
    hi_(j) = hi;
}

void SimplexSolver::set_all_bounds(const Vec& lo, const Vec& hi)
{
    lo_.head(n_) = lo;
    hi_.head(n_) = hi;
}

void SimplexSolver::factorize()
{
    Eigen::MatrixXd basis_mat(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i)
        basis_mat.col(i) = a_.col(basis_[static_cast<size_t>(i)]);
    lu_.compute(basis_mat);
    etas_.clear();
    factor_ok_ = true;
}

Vec SimplexSolver::ftran(Vec v) const
{
    if (m_ == 0)
        return v;
    Vec y = lu_.solve(v);
    for (const Eta& e : etas_)
    {
        const double yp = y(e.pos) / e.w(e.pos);
        y -= yp * e.w;
        y(e.pos) = yp;
    }
    return y;
}

Vec SimplexSolver::btran(Vec v) const
{
    if (m_ == 0)
        return v;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it)
    {
        const double num = v(it->pos) - (it->w.dot(v) - it->w(it->pos) * v(it->pos));
        v(it->pos) = num / it->w(it->pos);
    }
    return lu_.transpose().solve(v);
}

void SimplexSolver::recompute_basics()
{
    for (Eigen::Index i = 0; i < m_; ++i)
        x_(basis_[static_cast<size_t>(i)]) = 0.0;
    Vec r = b_ - a_ * x_;
    Vec xb = ftran(std::move(r));
    for (Eigen::Index i = 0; i < m_; ++i)
        x_(basis_[static_cast<size_t>(i)]) = xb(i);
}

void SimplexSolver::snap_nonbasics()
{
    for (Eigen::Index j = 0; j < ntot_; ++j)
    {
        if (state_[static_cast<size_t>(j)] == VarState::basic)
            continue;
        if (state_[static_cast<size_t>(j)] == VarState::at_upper && std::isfinite(hi_(j)))
            x_(j) = hi_(j);
        else
        {
            state_[static_cast<size_t>(j)] = VarState::at_lower;
            x_(j) = lo_(j);
        }
    }
}

double SimplexSolver::objective_value(const Vec& cost) const
{
    return cost.dot(x_);
}

Vec SimplexSolver::reduced_costs(const Vec& cost) const
{
    Vec cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i)
        cb(i) = cost(basis_[static_cast<size_t>(i)]);
    Vec y = btran(std::move(cb));
    return cost - a_.transpose() * y;
}

LpStatus SimplexSolver::primal_loop(const Vec& cost, int& iters, int& degenerate)
{
    int residual_retries = 0;
    while (true)
    {
        if (iters >= cfg_.max_iterations)
            return LpStatus::iteration_limit;

        const Vec d = reduced_costs(cost);
        const bool bland = degenerate > cfg_.bland_threshold;

        Eigen::Index entering = -1;
        double best = cfg_.opt_tol;
        for (Eigen::Index j = 0; j < ntot_; ++j)
        {
            const VarState s = state_[static_cast<size_t>(j)];
            if (s == VarState::basic || lo_(j) == hi_(j))
                continue;
            double viol = 0.0;
            if (s == VarState::at_lower && d(j) < -cfg_.opt_tol)
                viol = -d(j);
            else if (s == VarState::at_upper && d(j) > cfg_.opt_tol)
                viol = d(j);
            else
                continue;
            if (bland)
            {
                entering = j;
                break;
            }
            if (viol > best)
            {
                best = viol;
                entering = j;
            }
        }

        if (entering < 0)
        {
            // optimal; re-check the factorization before trusting it
            if (m_ > 0 && residual_retries == 0)
            {
                Vec resid = b_ - a_ * x_;
                if (resid.lpNorm<Eigen::Infinity>() > 1e-7 * (1.0 + b_.lpNorm<Eigen::Infinity>()))
                {
                    ++residual_retries;
                    factorize();
                    recompute_basics();
                    continue;
                }
            }
            return LpStatus::optimal;
        }

        ++iters;
        const Eigen::Index q = entering;
        const double sigma = state_[static_cast<size_t>(q)] == VarState::at_lower ? 1.0 : -1.0;
        const Vec w = ftran(a_.col(q));

        // ratio test: t is the movement of x_q away from its current bound
        double t_best = std::isfinite(hi_(q)) && std::isfinite(lo_(q)) ? hi_(q) - lo_(q) : kInf;
        Eigen::Index leave_row = -1; // -1 means bound flip
        double leave_pivot = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            const double rate = -sigma * w(i);
            if (std::abs(rate) <= cfg_.pivot_tol)
                continue;
            const Eigen::Index k = basis_[static_cast<size_t>(i)];
            double room;
            if (rate > 0.0)
            {
                if (!std::isfinite(hi_(k)))
                    continue;
                room = hi_(k) - x_(k);
            }
            else
            {
                room = x_(k) - lo_(k);
            }
            const double t_i = std::max(room, 0.0) / std::abs(rate);
            if (t_i < t_best - 1e-12 ||
                (t_i < t_best + 1e-12 && leave_row >= 0 && std::abs(w(i)) > std::abs(leave_pivot)))
            {
                t_best = t_i;
                leave_row = i;
                leave_pivot = w(i);
            }
        }

        if (!std::isfinite(t_best))
            return LpStatus::iteration_limit; // unbounded: impossible with finite boxes, so numerical

        if (t_best <= 1e-11)
            ++degenerate;

        // apply the step
        if (leave_row < 0)
        {
            // bound flip
            x_(q) += sigma * t_best;
            for (Eigen::Index i = 0; i < m_; ++i)
                x_(basis_[static_cast<size_t>(i)]) -= sigma * t_best * w(i);
            state_[static_cast<size_t>(q)] =
                state_[static_cast<size_t>(q)] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
            continue;
        }

        const Eigen::Index k_leave = basis_[static_cast<size_t>(leave_row)];
        const double rate_leave = -sigma * w(leave_row);
        x_(q) += sigma * t_best;
        for (Eigen::Index i = 0; i < m_; ++i)
            x_(basis_[static_cast<size_t>(i)]) -= sigma * t_best * w(i);
        basis_[static_cast<size_t>(leave_row)] = q;
        state_[static_cast<size_t>(q)] = VarState::basic;
        if (rate_leave > 0.0)
        {
            state_[static_cast<size_t>(k_leave)] = VarState::at_upper;
            x_(k_leave) = hi_(k_leave);
        }
        else
        {
            state_[static_cast<size_t>(k_leave)] = VarState::at_lower;
            x_(k_leave) = lo_(k_leave);
        }
        // artificial that leaves the basis is locked out for good
        if (k_leave >= n_)
        {
            lo_(k_leave) = 0.0;
            hi_(k_leave) = 0.0;
            x_(k_leave) = 0.0;
            state_[static_cast<size_t>(k_leave)] = VarState::at_lower;
        }

        etas_.push_back({leave_row, w});
        if (static_cast<int>(etas_.size()) >= cfg_.refactor_interval)
        {
            factorize();
            recompute_basics();
        }
    }
}

LpStatus SimplexSolver::dual_loop(int& iters)
{
    const Vec cost = vcat(c_, Vec::Zero(m_));
    // Every step is dual-degenerate when the objective is flat, so nothing
    // rules out livelock; a budget keeps the warm path cheaper than the cold
    // solve it falls back to.
    const int budget = static_cast<int>(std::max<Eigen::Index>(200, m_));
    int local = 0;
    int stalls = 0;
    while (true)
    {
        if (iters >= cfg_.max_iterations || local >= budget || stalls > cfg_.bland_threshold)
            return LpStatus::iteration_limit;
        const bool bland = stalls > 50;

        // most-infeasible basic variable leaves (lowest row once stalling)
        Eigen::Index leave_row = -1;
        double worst = cfg_.feas_tol;
        bool below = true;
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            const Eigen::Index k = basis_[static_cast<size_t>(i)];
            const double under = lo_(k) - x_(k);
            const double over = std::isfinite(hi_(k)) ? x_(k) - hi_(k) : -kInf;
            if (under > worst)
            {
                worst = under;
                leave_row = i;
                below = true;
            }
            if (over > worst)
            {
                worst = over;
                leave_row = i;
                below = false;
            }
            if (bland && leave_row >= 0)
                break;
        }
        if (leave_row < 0)
            return LpStatus::optimal;

        ++iters;
        ++local;
        const Eigen::Index k_leave = basis_[static_cast<size_t>(leave_row)];
        const double target = below ? lo_(k_leave) : hi_(k_leave);

        const Vec d = reduced_costs(cost);
        Vec unit = Vec::Zero(m_);
        unit(leave_row) = 1.0;
        const Vec rho = btran(std::move(unit));
        const Vec alpha = a_.transpose() * rho;

        // entering variable by the bounded dual ratio test
        Eigen::Index q = -1;
        double theta_best = 0.0;
        double alpha_best = 0.0;
        for (Eigen::Index j = 0; j < ntot_; ++j)
        {
            const VarState s = state_[static_cast<size_t>(j)];
            if (s == VarState::basic || lo_(j) == hi_(j))
                continue;
            const double aj = alpha(j);
            bool eligible;
            if (below)
                eligible = (s == VarState::at_lower && aj < -cfg_.pivot_tol) ||
                           (s == VarState::at_upper && aj > cfg_.pivot_tol);
            else
                eligible = (s == VarState::at_lower && aj > cfg_.pivot_tol) ||
                           (s == VarState::at_upper && aj < -cfg_.pivot_tol);
            if (!eligible)
                continue;
            if (bland)
            {
                q = j;
                theta_best = d(j) / aj;
                alpha_best = aj;
                break;
            }
            const double theta = d(j) / aj; // <= 0 when leaving below, >= 0 when above
            const bool better =
                q < 0 || (below ? theta > theta_best + 1e-12 : theta < theta_best - 1e-12) ||
                (std::abs(theta - theta_best) <= 1e-12 && std::abs(aj) > std::abs(alpha_best));
            if (better)
            {
                q = j;
                theta_best = theta;
                alpha_best = aj;
            }
        }

        if (q < 0)
            return LpStatus::infeasible;

        const Vec w = ftran(a_.col(q));
        if (std::abs(w(leave_row)) <= cfg_.pivot_tol)
        {
            // numerically stale pivot; refresh once, otherwise give up
            factorize();
            recompute_basics();
            ++stalls;
            continue;
        }

        const double dq = (x_(k_leave) - target) / w(leave_row);
        if (std::abs(dq) <= 1e-12)
            ++stalls;
        const double xq_new = x_(q) + dq;
        for (Eigen::Index i = 0; i < m_; ++i)
            x_(basis_[static_cast<size_t>(i)]) -= dq * w(i);
        basis_[static_cast<size_t>(leave_row)] = q;
        state_[static_cast<size_t>(q)] = VarState::basic;
        x_(q) = xq_new;
        state_[static_cast<size_t>(k_leave)] = below ? VarState::at_lower : VarState::at_upper;
        x_(k_leave) = target;

        etas_.push_back({leave_row, w});
        if (static_cast<int>(etas_.size()) >= cfg_.refactor_interval)
        {
            factorize();
            recompute_basics();
        }
    }
}

LpResult SimplexSolver::finish(LpStatus status, int iters)
{
    LpResult res;
    res.status = status;
    res.iterations = iters;
    res.x = x_.head(n_);
    res.objective = c_.dot(res.x);
    return res;
}

LpResult SimplexSolver::solve()
{
    basis_valid_ = false;
    etas_.clear();

    // fresh artificial block
    a_.rightCols(m_).setZero();

    // structural variables rest at the bound of smaller magnitude
    for (Eigen::Index j = 0; j < n_; ++j)
    {
        const bool use_upper = std::isfinite(hi_(j)) && std::abs(hi_(j)) < std::abs(lo_(j));
        state_[static_cast<size_t>(j)] = use_upper ? VarState::at_upper : VarState::at_lower;
        x_(j) = use_upper ? hi_(j) : lo_(j);
    }

    Vec r = b_ - a_.leftCols(n_) * x_.head(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
    {
        const Eigen::Index col = n_ + i;
        a_(i, col) = r(i) >= 0.0 ? 1.0 : -1.0;
        lo_(col) = 0.0;
        hi_(col) = kInf;
        x_(col) = std::abs(r(i));
        basis_[static_cast<size_t>(i)] = col;
        state_[static_cast<size_t>(col)] = VarState::basic;
    }
    factorize();

    int iters = 0;
    int degenerate = 0;

    if (m_ > 0)
    {
        Vec phase1_cost = Vec::Zero(ntot_);
        phase1_cost.tail(m_).setOnes();
        const LpStatus s1 = primal_loop(phase1_cost, iters, degenerate);
        if (s1 != LpStatus::optimal)
            return finish(LpStatus::iteration_limit, iters);
        const double infeas = objective_value(phase1_cost);
        if (infeas > cfg_.feas_tol * (1.0 + b_.lpNorm<Eigen::Infinity>()))
            return finish(LpStatus::infeasible, iters);
        // artificials may stay basic at zero on redundant rows; lock them
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            const Eigen::Index col = n_ + i;
            lo_(col) = 0.0;
            hi_(col) = 0.0;
            if (state_[static_cast<size_t>(col)] != VarState::basic)
                x_(col) = 0.0;
        }
    }

    const Vec cost = vcat(c_, Vec::Zero(m_));
    const LpStatus s2 = primal_loop(cost, iters, degenerate);
    basis_valid_ = (s2 == LpStatus::optimal);
    return finish(s2, iters);
}

LpResult SimplexSolver::reoptimize()
{
    if (!basis_valid_ || !factor_ok_)
        return solve();

    // Bound changes can leave a nonbasic variable on the dual-infeasible side
    // of its box (the reduced costs themselves do not depend on the bounds);
    // with finite boxes a bound flip always repairs that.
    const Vec cost = vcat(c_, Vec::Zero(m_));
    const Vec d = reduced_costs(cost);
    for (Eigen::Index j = 0; j < ntot_; ++j)
    {
        VarState& s = state_[static_cast<size_t>(j)];
        if (s == VarState::basic || lo_(j) == hi_(j))
            continue;
        if (s == VarState::at_lower && d(j) < -cfg_.opt_tol)
        {
            if (!std::isfinite(hi_(j)))
                return solve();
            s = VarState::at_upper;
        }
        else if (s == VarState::at_upper && d(j) > cfg_.opt_tol)
        {
            if (!std::isfinite(lo_(j)))
                return solve();
            s = VarState::at_lower;
        }
    }
    snap_nonbasics();
    recompute_basics();

    int iters = 0;
    LpStatus status = dual_loop(iters);
    if (status == LpStatus::iteration_limit)
        return solve();
    if (status == LpStatus::infeasible)
    {
        basis_valid_ = true; // basis is still dual feasible and reusable
        return finish(status, iters);
    }
    // the dual loop ends primal feasible; a primal pass guards the optimality
    // claim against tolerance drift
    int degenerate = 0;
    status = primal_loop(cost, iters, degenerate);
    if (status != LpStatus::optimal)
        return solve();
    basis_valid_ = true;
    return finish(status, iters);
}

LpResult lp_solve(const Vec& objective, bool maximize, const Mat& a, const Vec& b, const Vec& lo, const Vec& hi,
                  const LpSettings& settings)
{
    SimplexSolver solver(a, b, lo, hi, settings);
    solver.set_objective(maximize ? Vec(-objective) : objective);
    LpResult res = solver.solve();
    if (maximize)
        res.objective = -res.objective;
    return res;
}

} // namespace hzreach
