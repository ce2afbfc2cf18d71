#pragma once

#include "hzreach/sus.hpp"

namespace hzreach
{

struct ValidationViolation
{
    long sample = 0;
    int step = 0;
    Vec point;
};

struct ValidationReport
{
    long samples = 0;
    int steps = 0;
    std::vector<ValidationViolation> violations;
    long indeterminate_checks = 0; ///< containment neither proven nor refuted
    long fallback_checks = 0;      ///< checks that needed a full MILP on R_k
};

/**
 * @brief Exact-trajectory containment check against reach records.
 *
 * Samples initial states from R_0's factor space (seeded), iterates the exact
 * dynamics under the controller, and checks every trajectory point against
 * the corresponding reach set. Containment proofs are built incrementally:
 * a factor witness for (x_k, x_{k+1}) in the closed-loop state-update set is
 * found by a small MILP and concatenated onto the running witness for R_k,
 * which the successor identity makes a valid witness for R_{k+1}; the
 * composed factors are then verified arithmetically. Checks that fail the
 * fast path fall back to a full containment MILP on R_{k+1} before anything
 * is reported as a violation.
 */
ValidationReport validate_trajectories(const SystemModel& sys, const Controller& ctrl, const StateUpdateSet& phi,
                                       const std::vector<ReachRecord>& records, long samples, std::uint64_t seed,
                                       double tol, const MilpSettings& milp = {});

/// Exact closed-loop trajectory x_0 .. x_steps.
std::vector<Vec> simulate_closed_loop(const SystemModel& sys, const Controller& ctrl, const Vec& x0, int steps);

} // namespace hzreach
