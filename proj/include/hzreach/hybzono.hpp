#pragma once

#include <array>

#include "hzreach/interval.hpp"

namespace hzreach
{

/// Representation complexity of a hybrid zonotope: continuous generators,
/// binary generators, constraint rows.
struct Complexity
{
    Eigen::Index ng = 0;
    Eigen::Index nb = 0;
    Eigen::Index nc = 0;

    bool operator==(const Complexity&) const = default;
};

/**
 * @brief Hybrid zonotope in constrained generator representation.
 *
 * Z = { Gc xi_c + Gb xi_b + c | Ac xi_c + Ab xi_b = b,
 *       xi_c in [-1,1]^ng, xi_b in {-1,1}^nb }.
 *
 * A constrained zonotope is the case nb = 0; a zonotope additionally has
 * nc = 0. Values are immutable in practice: every operation returns a new
 * set, so concurrent readers need no synchronization.
 */
struct HybZono
{
    Mat Gc; ///< n x ng continuous generators
    Mat Gb; ///< n x nb binary generators
    Vec c;  ///< center, length n
    Mat Ac; ///< nc x ng
    Mat Ab; ///< nc x nb
    Vec b;  ///< length nc

    HybZono() = default;
    HybZono(Mat gc, Mat gb, Vec center, Mat ac, Mat ab, Vec bvec);

    /// Zonotope constructor <G, c>: no binaries, no constraints.
    HybZono(Mat g, Vec center);

    Eigen::Index n() const { return c.size(); }
    Eigen::Index ng() const { return Gc.cols(); }
    Eigen::Index nb() const { return Gb.cols(); }
    Eigen::Index nc() const { return b.size(); }
    Eigen::Index num_factors() const { return ng() + nb(); }

    Complexity complexity() const { return {ng(), nb(), nc()}; }

    /// Value map applied to a full factor vector (xi_c, xi_b).
    Vec point(const Vec& xi) const;

    /// Constraint residual A xi - b for a full factor vector.
    Vec constraint_residual(const Vec& xi) const;

    /// Canonical infeasible set in R^n (one unsatisfiable constraint 0 = 1).
    static HybZono canonical_empty(Eigen::Index n);

    /// True for the canonical_empty shape (cheap syntactic check only).
    bool trivially_empty() const;
};

/// Throws DimensionMismatch / NonFiniteEntry unless all block shapes agree
/// and every entry is finite.
void validate(const HybZono& z);

/// Box [lo, hi] as a zonotope <diag((hi-lo)/2), (hi+lo)/2>.
HybZono interval_to_zonotope(const Interval& iv);

/// R Z = {R z | z in Z}; constraint blocks are untouched.
HybZono linear_map(const Mat& r, const HybZono& z);

/// Z + W; generators concatenate, constraints go block-diagonal.
HybZono minkowski_sum(const HybZono& z, const HybZono& w);

/**
 * @brief Generalized intersection Z cap_R Y = {z in Z | R z in Y}.
 *
 * Y's generators enter the value map with zero rows; a coupling block of
 * rows(R) constraints ties R applied to Z's value map to Y's value map.
 */
HybZono generalized_intersection(const HybZono& z, const HybZono& y, const Mat& r);

/**
 * @brief Z cap_R {x : a'x <= beta}, realized with one slack generator and
 * one constraint row.
 *
 * The slack half-width is the interval bound of beta - a'R z over the
 * generator box, clamped at zero so an intersection that misses the whole
 * box comes out empty instead of unsound.
 */
HybZono halfspace_intersection(const HybZono& z, const Mat& r, const HalfSpace& h);

/// Z x Y by block-diagonal stacking of all six blocks.
HybZono cartesian_product(const HybZono& z, const HybZono& y);

/**
 * @brief Interval-arithmetic hull: c +/- sum |G| columns over the factor box.
 *
 * Constraints are ignored, so the result over-approximates the true hull;
 * it is exact when nc = 0 (binaries reach any sign pattern independently).
 */
Interval ia_hull(const HybZono& z);

/// JSON object with keys gc, gb, c, ac, ab, b (matrices row-major).
void to_json(nlohmann::json& j, const HybZono& z);
void from_json(const nlohmann::json& j, HybZono& z);

} // namespace hzreach
