#pragma once

#include <vector>

#include "hzreach/query.hpp"
#include "hzreach/sos.hpp"

namespace hzreach
{

/// One scalar nonlinear term gain * f(arg'(x,u)) in the dynamics.
struct NonlinearTerm
{
    Vec gain;             ///< column added to x_{k+1}, length n
    Vec arg;              ///< row selecting the scalar argument, length n + nu
    EnclosedFunction func;
};

/**
 * @brief Structured discrete-time dynamics x+ = A x + B u + sum_j gain_j f_j(w_j),
 * with w_j = arg_j'(x, u), over box domains X and U.
 */
struct SystemModel
{
    Mat amat;
    Mat bmat;
    std::vector<NonlinearTerm> terms;
    Interval state_domain; ///< X
    Interval input_domain; ///< U

    Eigen::Index n() const { return amat.rows(); }
    Eigen::Index nu() const { return bmat.cols(); }

    /// Exact next state using each term's truth function.
    Vec simulate(const Vec& x, const Vec& u) const;
};

/// Shape checks plus the domain-coverage condition: each term's argument
/// range over X x U must lie inside its enclosure's domain.
void validate(const SystemModel& m);

enum class SusKind
{
    open_loop,  ///< set over R^{2n+nu} of (x, u, x+) triples
    closed_loop ///< set over R^{2n} of (x, x+) pairs
};

struct StateUpdateSet
{
    HybZono set;
    SusKind kind = SusKind::open_loop;
    Interval domain_bounds; ///< hull of D(.): R^{n+nu} when open, R^n when closed
    Eigen::Index n = 0;
    Eigen::Index nu = 0;
};

/// Graph of a state-feedback law over a state domain, as a set of (x, u).
struct StateInputMap
{
    HybZono set;            ///< over R^{n+1}
    Interval domain_bounds; ///< x-domain
    Eigen::Index n = 0;
};

/// Scalar piecewise-linear feedback u = pwl(K x).
struct Controller
{
    Vec gain; ///< K row, length n
    EnclosedFunction pwl;

    double input(const Vec& x) const { return pwl.truth(gain.dot(x)); }
};

/**
 * @brief Over-approximated open-loop state-update set over X x U.
 *
 * Lift-intersect-map: the box X x U is lifted with one extra coordinate per
 * nonlinear term, each slack coordinate gets a basis interval covering the
 * term's output range, each term's graph enclosure is intersected onto its
 * (argument, slack) coordinate pair, and the final map writes
 * A x + B u + sum gain_j slack_j into the last n coordinates.
 */
StateUpdateSet build_open_loop_sus(const SystemModel& m);

/// Theta = {(x, pwl(Kx)) | x in x_domain}; exact whenever pwl has delta = 0.
StateInputMap build_state_input_map(const Vec& gain, const EnclosedFunction& pwl, const Interval& x_domain);

StateInputMap build_state_input_map(const Controller& ctrl, const Interval& x_domain);

/// Closed-loop state-update set from the open-loop set and a state-input map.
StateUpdateSet close_loop(const StateUpdateSet& psi, const StateInputMap& theta);

/// How the R_k-in-domain precondition of the successor identities is checked.
enum class DomainCheck
{
    none,
    fast, ///< propagated interval hull; certifies violations only for nc = 0 sets
    exact ///< interval hull by MILP support queries
};

/**
 * @brief Hull of the argument set against a domain box.
 *
 * yes: hull provably inside. no: provably outside (a DomainViolation).
 * indeterminate: the cheap hull is an over-approximation that pokes out, or
 * MILP bounds hit the node limit.
 */
Tribool domain_condition(const HybZono& set, const Interval& domain, DomainCheck check,
                         const MilpSettings& settings = {});

/// Theorem-1 successor [0 I](Psi cap (R_k x U_k)); throws DomainViolation
/// when the domain condition is certified violated.
HybZono successor_open(const StateUpdateSet& psi, const HybZono& rk, const HybZono& uk,
                       DomainCheck check = DomainCheck::fast, Tribool* domain_ok = nullptr, int step = 0,
                       const MilpSettings& settings = {});

/// Theorem-3 successor [0 I](Phi cap R_k).
HybZono successor_closed(const StateUpdateSet& phi, const HybZono& rk, DomainCheck check = DomainCheck::fast,
                         Tribool* domain_ok = nullptr, int step = 0, const MilpSettings& settings = {});

struct ReachRecord
{
    int k = 0;
    HybZono set;
    Complexity complexity;
    double wall_seconds = 0.0;
    Tribool domain_verified = Tribool::indeterminate;
};

struct ReachOptions
{
    DomainCheck domain_check = DomainCheck::fast;
    bool reduce = false; ///< apply reduce_trivial to every successor
    MilpSettings milp;
};

/// Iterated closed-loop reachability R_0 .. R_steps with per-step complexity
/// and domain flags. Throws DomainViolation at the failing step index.
std::vector<ReachRecord> reach(const StateUpdateSet& phi, const HybZono& r0, int steps,
                               const ReachOptions& options = {});

} // namespace hzreach
