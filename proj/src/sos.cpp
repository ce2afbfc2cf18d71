#include "hzreach/sos.hpp"

#include <algorithm>
#include <cmath>

#include "hzreach/errors.hpp"

namespace hzreach
{

void validate(const SosApproximation& s)
{
    if (s.vmat.rows() < 2)
        throw DimensionMismatch("vertex matrix needs at least two rows (x and f(x))");
    if (s.incidence.rows() != s.vmat.cols())
        throw DimensionMismatch("incidence has " + std::to_string(s.incidence.rows()) + " rows, vertex matrix has " +
                                std::to_string(s.vmat.cols()) + " columns");
    if (!s.vmat.allFinite())
        throw NonFiniteEntry("vertex matrix");

    const Eigen::Index per_simplex = s.domain_dim() + 1;
    Eigen::VectorXi used = Eigen::VectorXi::Zero(s.num_vertices());
    for (Eigen::Index i = 0; i < s.incidence.cols(); ++i)
    {
        Eigen::Index ones = 0;
        for (Eigen::Index j = 0; j < s.incidence.rows(); ++j)
        {
            const double m = s.incidence(j, i);
            if (m != 0.0 && m != 1.0)
                throw DimensionMismatch("incidence entries must be 0 or 1");
            if (m == 1.0)
            {
                ++ones;
                used(j) = 1;
            }
        }
        if (ones != per_simplex)
            throw DimensionMismatch("simplex " + std::to_string(i) + " selects " + std::to_string(ones) +
                                    " vertices, expected " + std::to_string(per_simplex));
    }
    if (s.num_simplexes() > 0 && used.minCoeff() == 0)
        throw DimensionMismatch("some vertex belongs to no simplex");
}

SosApproximation build_sos_1d(const Vec& breakpoints, const Vec& values)
{
    const Eigen::Index nv = breakpoints.size();
    if (nv < 2)
        throw TooFewVertices("need at least 2 breakpoints, got " + std::to_string(nv));
    if (values.size() != nv)
        throw DimensionMismatch("values length " + std::to_string(values.size()) + " vs breakpoints " +
                                std::to_string(nv));
    for (Eigen::Index i = 0; i + 1 < nv; ++i)
        if (!(breakpoints(i) < breakpoints(i + 1)))
            throw UnsortedBreakpoints("breakpoints must be strictly increasing at index " + std::to_string(i));

    SosApproximation s;
    s.vmat = Mat(2, nv);
    s.vmat.row(0) = breakpoints.transpose();
    s.vmat.row(1) = values.transpose();
    s.incidence = Mat::Zero(nv, nv - 1);
    for (Eigen::Index i = 0; i + 1 < nv; ++i)
    {
        s.incidence(i, i) = 1.0;
        s.incidence(i + 1, i) = 1.0;
    }
    validate(s);
    return s;
}

HybZono sos_to_hybzono(const SosApproximation& s)
{
    validate(s);
    const Eigen::Index nv = s.num_vertices();
    const Eigen::Index nsim = s.num_simplexes();
    const Eigen::Index dim = nv + nsim;

    // simplex-selector set: lambda = (xi_c + 1)/2 is a convex combination,
    // delta = (xi_b + 1)/2 picks exactly one simplex
    Mat gc = Mat::Zero(dim, nv);
    gc.topRows(nv) = 0.5 * Mat::Identity(nv, nv);
    Mat gb = Mat::Zero(dim, nsim);
    gb.bottomRows(nsim) = 0.5 * Mat::Identity(nsim, nsim);
    Vec center = Vec::Constant(dim, 0.5);
    Mat ac = Mat::Zero(2, nv);
    ac.row(0).setOnes();
    Mat ab = Mat::Zero(2, nsim);
    ab.row(1).setOnes();
    Vec b(2);
    b << 2.0 - static_cast<double>(nv), 2.0 - static_cast<double>(nsim);
    HybZono d(std::move(gc), std::move(gb), std::move(center), std::move(ac), std::move(ab), std::move(b));

    // impose lambda <= M delta one coordinate at a time
    Mat coupling(nv, dim);
    coupling.leftCols(nv) = Mat::Identity(nv, nv);
    coupling.rightCols(nsim) = -s.incidence;
    for (Eigen::Index i = 0; i < nv; ++i)
    {
        Vec a = Vec::Zero(nv);
        a(i) = 1.0;
        d = halfspace_intersection(d, coupling, HalfSpace(std::move(a), 0.0));
    }

    Mat value_map = Mat::Zero(s.vmat.rows(), dim);
    value_map.leftCols(nv) = s.vmat;
    return linear_map(value_map, d);
}

double interp_1d(const SosApproximation& s, double x)
{
    if (s.domain_dim() != 1)
        throw DimensionMismatch("interpolation requires a 1-D approximation");
    const Eigen::Index nv = s.num_vertices();
    const auto bp = s.vmat.row(0);
    const auto val = s.vmat.row(1);
    if (x <= bp(0))
        return val(0);
    if (x >= bp(nv - 1))
        return val(nv - 1);
    Eigen::Index seg = 0;
    for (Eigen::Index i = 0; i + 1 < nv; ++i)
    {
        if (x <= bp(i + 1))
        {
            seg = i;
            break;
        }
    }
    const double t = (x - bp(seg)) / (bp(seg + 1) - bp(seg));
    return val(seg) + t * (val(seg + 1) - val(seg));
}

double sos_error_bound(const std::function<double(double)>& f, const SosApproximation& s, int samples_per_segment)
{
    if (s.domain_dim() != 1)
        throw DimensionMismatch("error bound sampling requires a 1-D approximation");
    if (samples_per_segment < 1)
        throw DimensionMismatch("samples_per_segment must be positive");

    const auto bp = s.vmat.row(0);
    double worst = 0.0;
    for (Eigen::Index seg = 0; seg + 1 < s.num_vertices(); ++seg)
    {
        const double a = bp(seg);
        const double width = bp(seg + 1) - a;
        for (int k = 0; k <= samples_per_segment; ++k)
        {
            const double x = a + width * (static_cast<double>(k) / samples_per_segment);
            const double fx = f(x);
            if (!std::isfinite(fx))
                throw EvaluationFailure("function returned a non-finite value at x = " + std::to_string(x));
            worst = std::max(worst, std::abs(fx - interp_1d(s, x)));
        }
    }
    return 1.05 * worst;
}

HybZono envelope(const HybZono& zsos, double delta)
{
    if (delta < 0.0)
        throw NegativeDelta("envelope half-width " + std::to_string(delta));
    if (delta == 0.0)
        return zsos;
    Mat g = Mat::Zero(zsos.n(), 1);
    g(zsos.n() - 1, 0) = delta;
    return minkowski_sum(zsos, HybZono(std::move(g), Vec::Zero(zsos.n())));
}

EnclosedFunction enclose_table(const Vec& breakpoints, const Vec& values, std::optional<double> delta)
{
    const SosApproximation s = build_sos_1d(breakpoints, values);
    EnclosedFunction out;
    out.error_bound = delta.value_or(0.0);
    if (out.error_bound < 0.0)
        throw NegativeDelta("table delta");
    out.graph_set = envelope(sos_to_hybzono(s), out.error_bound);
    out.domain = Interval(breakpoints(0), breakpoints(breakpoints.size() - 1));
    out.truth = [s](double x) { return interp_1d(s, x); };
    return out;
}

EnclosedFunction enclose_sin(const Interval& domain, int segments)
{
    if (domain.dim() != 1)
        throw DimensionMismatch("sin enclosure needs a scalar domain");
    if (segments < 1)
        throw TooFewVertices("sin enclosure needs at least one segment");
    Vec bp(segments + 1), val(segments + 1);
    for (int i = 0; i <= segments; ++i)
    {
        bp(i) = domain.lo(0) + (domain.hi(0) - domain.lo(0)) * static_cast<double>(i) / segments;
        val(i) = std::sin(bp(i));
    }
    const SosApproximation s = build_sos_1d(bp, val);
    EnclosedFunction out;
    out.error_bound = sos_error_bound([](double x) { return std::sin(x); }, s);
    out.graph_set = envelope(sos_to_hybzono(s), out.error_bound);
    out.domain = domain;
    out.truth = [](double x) { return std::sin(x); };
    return out;
}

EnclosedFunction enclose_sat(const Interval& domain, double lo_limit, double hi_limit, double gain)
{
    if (domain.dim() != 1)
        throw DimensionMismatch("sat enclosure needs a scalar domain");
    if (!(lo_limit < hi_limit))
        throw DimensionMismatch("sat limits must satisfy lo < hi");
    if (gain == 0.0)
        throw DimensionMismatch("sat gain must be nonzero");

    const auto sat = [=](double x)
    { return std::clamp(gain * x, lo_limit, hi_limit); };

    std::vector<double> bps = {domain.lo(0), domain.hi(0)};
    for (const double crossing : {lo_limit / gain, hi_limit / gain})
        if (crossing > domain.lo(0) + 1e-12 && crossing < domain.hi(0) - 1e-12)
            bps.push_back(crossing);
    std::sort(bps.begin(), bps.end());

    Vec bp(static_cast<Eigen::Index>(bps.size())), val(static_cast<Eigen::Index>(bps.size()));
    for (size_t i = 0; i < bps.size(); ++i)
    {
        bp(static_cast<Eigen::Index>(i)) = bps[i];
        val(static_cast<Eigen::Index>(i)) = sat(bps[i]);
    }
    const SosApproximation s = build_sos_1d(bp, val);
    EnclosedFunction out;
    out.error_bound = 0.0; // kinks are breakpoints, the interpolant is exact
    out.graph_set = sos_to_hybzono(s);
    out.domain = domain;
    out.truth = sat;
    return out;
}

} // namespace hzreach
