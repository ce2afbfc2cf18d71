#pragma once

#include "hzreach/errors.hpp"
#include "hzreach/linalg.hpp"

namespace hzreach
{

/// Axis-aligned box [lo, hi], elementwise lo <= hi, all entries finite.
struct Interval
{
    Vec lo;
    Vec hi;

    Interval() = default;

    Interval(Vec lower, Vec upper) : lo(std::move(lower)), hi(std::move(upper))
    {
        if (lo.size() != hi.size())
            throw DimensionMismatch("interval lo/hi lengths differ");
        if (!lo.allFinite() || !hi.allFinite())
            throw NonFiniteEntry("interval bounds");
        for (Eigen::Index i = 0; i < lo.size(); ++i)
            if (lo(i) > hi(i))
                throw DimensionMismatch("interval has lo > hi at index " + std::to_string(i));
    }

    Interval(double lower, double upper) : Interval(Vec::Constant(1, lower), Vec::Constant(1, upper)) {}

    static Interval unit_box(Eigen::Index n) { return Interval(Vec::Constant(n, -1.0), Vec::Constant(n, 1.0)); }

    Eigen::Index dim() const { return lo.size(); }

    Vec center() const { return 0.5 * (lo + hi); }
    Vec radius() const { return 0.5 * (hi - lo); }

    bool contains(const Vec& x, double tol = 0.0) const
    {
        if (x.size() != lo.size())
            return false;
        return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
    }

    bool contains(const Interval& other, double tol = 0.0) const
    {
        if (other.dim() != dim())
            return false;
        return (other.lo.array() >= lo.array() - tol).all() && (other.hi.array() <= hi.array() + tol).all();
    }

    /// First n coordinates.
    Interval head(Eigen::Index n) const { return Interval(lo.head(n), hi.head(n)); }

    Interval intersect(const Interval& other) const
    {
        Vec l = lo.cwiseMax(other.lo);
        Vec h = hi.cwiseMin(other.hi);
        return Interval(std::move(l), std::move(h));
    }

    static Interval concat(const Interval& a, const Interval& b)
    {
        return Interval(vcat(a.lo, b.lo), vcat(a.hi, b.hi));
    }
};

/// Half-space {x : normal'x <= offset}; normal must be nonzero.
struct HalfSpace
{
    Vec normal;
    double offset = 0.0;

    HalfSpace(Vec a, double beta) : normal(std::move(a)), offset(beta)
    {
        if (normal.size() == 0 || normal.lpNorm<Eigen::Infinity>() == 0.0)
            throw DimensionMismatch("half-space normal is zero");
        if (!normal.allFinite() || !std::isfinite(offset))
            throw NonFiniteEntry("half-space data");
    }
};

} // namespace hzreach
