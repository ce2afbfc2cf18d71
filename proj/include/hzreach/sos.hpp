#pragma once

#include <functional>
#include <optional>

#include "hzreach/hybzono.hpp"

namespace hzreach
{

/**
 * @brief Piecewise-linear graph approximation over simplexes.
 *
 * vmat holds one vertex per column, (x_i, f(x_i)); incidence column i selects
 * the n+1 vertices of simplex i with 0/1 entries.
 */
struct SosApproximation
{
    Mat vmat;      ///< (n+1) x nv
    Mat incidence; ///< nv x N

    Eigen::Index domain_dim() const { return vmat.rows() - 1; }
    Eigen::Index num_vertices() const { return vmat.cols(); }
    Eigen::Index num_simplexes() const { return incidence.cols(); }
};

/// Checks shape, the n+1-ones-per-column rule and vertex coverage.
void validate(const SosApproximation& s);

/// 1-D grid approximation: vertices (x_i, y_i), banded incidence with ones at
/// (i, i) and (i+1, i). Breakpoints must be strictly increasing, at least two.
SosApproximation build_sos_1d(const Vec& breakpoints, const Vec& values);

/**
 * @brief Exact hybrid zonotope of an SOS approximation.
 *
 * Builds the simplex-selector set Q (one binary per simplex, convex weights
 * as scaled continuous factors, the two coupling sums as constraints),
 * imposes the nonpositive orthant on lambda - M delta through nv half-space
 * intersections, and maps through [V 0]. The result has ng = 2 nv, nb = N,
 * nc = nv + 2, and exactly N nonempty binary leaves.
 */
HybZono sos_to_hybzono(const SosApproximation& s);

/// Piecewise-linear interpolation of a 1-D vertex matrix at x (clamped to the
/// breakpoint range).
double interp_1d(const SosApproximation& s, double x);

/**
 * @brief Guarded sampled bound on |f - interp| over the grid (1-D only).
 *
 * Dense samples per segment, then a 1.05 safety factor. The bound is exact
 * for functions that are piecewise linear on the same breakpoints.
 */
double sos_error_bound(const std::function<double(double)>& f, const SosApproximation& s,
                       int samples_per_segment = 10'000);

/// Minkowski-bloats the graph set by +/- delta in its last coordinate.
/// delta = 0 returns the set unchanged.
HybZono envelope(const HybZono& zsos, double delta);

/// Guaranteed enclosure of a scalar function's graph over a domain.
struct EnclosedFunction
{
    HybZono graph_set;   ///< over R^{n+1}, bloated by error_bound
    Interval domain;     ///< approximation domain in R^n
    double error_bound = 0.0;

    /// truth function for exact trajectory simulation; the interpolant when
    /// the enclosure came from a bare table
    std::function<double(double)> truth;
};

/// Enclosure from an explicit 1-D table. With no delta given the table is
/// taken as the function itself (delta = 0).
EnclosedFunction enclose_table(const Vec& breakpoints, const Vec& values, std::optional<double> delta = {});

/// sin over [domain.lo, domain.hi] on a uniform grid; delta from sampling.
EnclosedFunction enclose_sin(const Interval& domain, int segments);

/// Saturated identity clamp(gain*s, lo_limit, hi_limit) over the s-domain;
/// breakpoints at the saturation crossings, delta = 0 (exact).
EnclosedFunction enclose_sat(const Interval& domain, double lo_limit, double hi_limit, double gain = 1.0);

} // namespace hzreach
