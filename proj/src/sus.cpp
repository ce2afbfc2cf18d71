#include "hzreach/sus.hpp"

#include <chrono>
#include <cmath>

#include "hzreach/errors.hpp"

namespace hzreach
{

namespace
{

/// Interval range of row'(x) over a box.
Interval linear_range(const Vec& row, const Interval& box)
{
    double lo = 0.0, hi = 0.0;
    for (Eigen::Index i = 0; i < row.size(); ++i)
    {
        const double a = row(i) * box.lo(i);
        const double b = row(i) * box.hi(i);
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return Interval(Vec::Constant(1, lo), Vec::Constant(1, hi));
}

/// Output-coordinate range of a graph enclosure, by interval arithmetic over
/// its generator box (a superset of the true range, which is all the slack
/// basis needs).
Interval graph_output_range(const HybZono& graph)
{
    const Interval hull = ia_hull(graph);
    const Eigen::Index last = graph.n() - 1;
    return Interval(hull.lo.segment(last, 1), hull.hi.segment(last, 1));
}

/// Hull after interval propagation over the constraints; nullopt when the
/// factor system is proven empty.
std::optional<Interval> propagated_hull(const HybZono& z, int rounds = 30)
{
    Vec lo = Vec::Constant(z.num_factors(), -1.0);
    Vec hi = Vec::Constant(z.num_factors(), 1.0);
    std::vector<Eigen::Index> binaries;
    for (Eigen::Index j = 0; j < z.nb(); ++j)
        binaries.push_back(z.ng() + j);
    if (z.nc() > 0)
    {
        Propagator prop(hcat(z.Ac, z.Ab), z.b, binaries);
        if (!prop.run(lo, hi, rounds))
            return std::nullopt;
    }
    Vec out_lo = z.c;
    Vec out_hi = z.c;
    const Mat g = hcat(z.Gc, z.Gb);
    for (Eigen::Index i = 0; i < z.n(); ++i)
    {
        for (Eigen::Index j = 0; j < g.cols(); ++j)
        {
            const double a = g(i, j) * lo(j);
            const double b = g(i, j) * hi(j);
            out_lo(i) += std::min(a, b);
            out_hi(i) += std::max(a, b);
        }
    }
    return Interval(std::move(out_lo), std::move(out_hi));
}

} // namespace

Vec SystemModel::simulate(const Vec& x, const Vec& u) const
{
    Vec next = amat * x + bmat * u;
    Vec xu = vcat(x, u);
    for (const NonlinearTerm& t : terms)
        next += t.gain * t.func.truth(t.arg.dot(xu));
    return next;
}

void validate(const SystemModel& m)
{
    const Eigen::Index n = m.amat.rows();
    if (m.amat.cols() != n)
        throw DimensionMismatch("A must be square");
    if (m.bmat.rows() != n)
        throw DimensionMismatch("B has " + std::to_string(m.bmat.rows()) + " rows, A has " + std::to_string(n));
    if (m.state_domain.dim() != n)
        throw DimensionMismatch("X dimension vs A");
    if (m.input_domain.dim() != m.bmat.cols())
        throw DimensionMismatch("U dimension vs B columns");
    if (!m.amat.allFinite() || !m.bmat.allFinite())
        throw NonFiniteEntry("system matrices");

    const Interval xu = Interval::concat(m.state_domain, m.input_domain);
    for (size_t j = 0; j < m.terms.size(); ++j)
    {
        const NonlinearTerm& t = m.terms[j];
        if (t.gain.size() != n)
            throw DimensionMismatch("term " + std::to_string(j) + " gain length");
        if (t.arg.size() != n + m.nu())
            throw DimensionMismatch("term " + std::to_string(j) + " arg length");
        if (t.func.domain.dim() != 1)
            throw NonScalarArgument("term " + std::to_string(j) + " enclosure is not scalar");
        const Interval range = linear_range(t.arg, xu);
        if (!t.func.domain.contains(range, 1e-9))
            throw DomainNotCovered("term " + std::to_string(j) + " argument range [" + std::to_string(range.lo(0)) +
                                   ", " + std::to_string(range.hi(0)) + "] exceeds enclosure domain [" +
                                   std::to_string(t.func.domain.lo(0)) + ", " + std::to_string(t.func.domain.hi(0)) +
                                   "]");
    }
}

StateUpdateSet build_open_loop_sus(const SystemModel& m)
{
    validate(m);
    const Eigen::Index n = m.n();
    const Eigen::Index nu = m.nu();
    const Eigen::Index nt = static_cast<Eigen::Index>(m.terms.size());

    const Interval xu = Interval::concat(m.state_domain, m.input_domain);

    // lift the domain box, one spare coordinate per nonlinear term
    Mat lift = Mat::Zero(n + nu + nt, n + nu);
    lift.topRows(n + nu).setIdentity();
    HybZono p = linear_map(lift, interval_to_zonotope(xu));

    // slack basis intervals covering each term's output range
    for (Eigen::Index j = 0; j < nt; ++j)
    {
        const Interval range = graph_output_range(m.terms[static_cast<size_t>(j)].func.graph_set);
        Mat g = Mat::Zero(p.n(), 1);
        g(n + nu + j, 0) = range.radius()(0);
        Vec shift = Vec::Zero(p.n());
        shift(n + nu + j) = range.center()(0);
        p = minkowski_sum(p, HybZono(std::move(g), std::move(shift)));
    }

    // couple each (argument, slack) pair to the term's graph enclosure
    for (Eigen::Index j = 0; j < nt; ++j)
    {
        const NonlinearTerm& t = m.terms[static_cast<size_t>(j)];
        Mat r = Mat::Zero(2, p.n());
        r.block(0, 0, 1, n + nu) = t.arg.transpose();
        r(1, n + nu + j) = 1.0;
        p = generalized_intersection(p, t.func.graph_set, r);
    }

    // write x+ = A x + B u + sum gain_j slack_j into the last n coordinates
    Mat final_map = Mat::Zero(2 * n + nu, n + nu + nt);
    final_map.topRows(n + nu).setIdentity();
    final_map.block(n + nu, 0, n, n) = m.amat;
    final_map.block(n + nu, n, n, nu) = m.bmat;
    for (Eigen::Index j = 0; j < nt; ++j)
        final_map.block(n + nu, n + nu + j, n, 1) = m.terms[static_cast<size_t>(j)].gain;

    StateUpdateSet out;
    out.set = linear_map(final_map, p);
    out.kind = SusKind::open_loop;
    out.domain_bounds = xu;
    out.n = n;
    out.nu = nu;
    return out;
}

StateInputMap build_state_input_map(const Vec& gain, const EnclosedFunction& pwl, const Interval& x_domain)
{
    const Eigen::Index n = x_domain.dim();
    if (gain.size() != n)
        throw DimensionMismatch("controller gain length " + std::to_string(gain.size()) + " vs state dimension " +
                                std::to_string(n));
    if (pwl.domain.dim() != 1)
        throw NonScalarArgument("state-input map needs a scalar piecewise-linear law");
    const Interval srange = linear_range(gain, x_domain);
    if (!pwl.domain.contains(srange, 1e-9))
        throw DomainNotCovered("K x range [" + std::to_string(srange.lo(0)) + ", " + std::to_string(srange.hi(0)) +
                               "] exceeds the law's domain");

    // lift x to (x, Kx, u) and give u a basis interval over the output range
    Mat lift = Mat::Zero(n + 2, n);
    lift.topRows(n).setIdentity();
    lift.row(n) = gain.transpose();
    HybZono p = linear_map(lift, interval_to_zonotope(x_domain));

    const Interval range = graph_output_range(pwl.graph_set);
    Mat g = Mat::Zero(n + 2, 1);
    g(n + 1, 0) = range.radius()(0);
    Vec shift = Vec::Zero(n + 2);
    shift(n + 1) = range.center()(0);
    p = minkowski_sum(p, HybZono(std::move(g), std::move(shift)));

    Mat r = Mat::Zero(2, n + 2);
    r(0, n) = 1.0;
    r(1, n + 1) = 1.0;
    p = generalized_intersection(p, pwl.graph_set, r);

    // drop the Kx coordinate
    Mat proj = Mat::Zero(n + 1, n + 2);
    proj.topLeftCorner(n, n).setIdentity();
    proj(n, n + 1) = 1.0;

    StateInputMap out;
    out.set = linear_map(proj, p);
    out.domain_bounds = x_domain;
    out.n = n;
    return out;
}

StateInputMap build_state_input_map(const Controller& ctrl, const Interval& x_domain)
{
    return build_state_input_map(ctrl.gain, ctrl.pwl, x_domain);
}

StateUpdateSet close_loop(const StateUpdateSet& psi, const StateInputMap& theta)
{
    if (psi.kind != SusKind::open_loop)
        throw DimensionMismatch("close_loop expects an open-loop state-update set");
    const Eigen::Index n = psi.n;
    const Eigen::Index nu = psi.nu;
    if (theta.set.n() != n + nu)
        throw DimensionMismatch("state-input map dimension " + std::to_string(theta.set.n()) + " vs n + nu = " +
                                std::to_string(n + nu));

    Mat r = Mat::Zero(n + nu, 2 * n + nu);
    r.topLeftCorner(n + nu, n + nu).setIdentity();
    const HybZono coupled = generalized_intersection(psi.set, theta.set, r);

    Mat proj = Mat::Zero(2 * n, 2 * n + nu);
    proj.topLeftCorner(n, n).setIdentity();
    proj.bottomRightCorner(n, n).setIdentity();

    StateUpdateSet out;
    out.set = linear_map(proj, coupled);
    out.kind = SusKind::closed_loop;
    out.domain_bounds = psi.domain_bounds.head(n).intersect(theta.domain_bounds);
    out.n = n;
    out.nu = nu;
    return out;
}

Tribool domain_condition(const HybZono& set, const Interval& domain, DomainCheck check, const MilpSettings& settings)
{
    if (set.n() != domain.dim())
        throw DimensionMismatch("domain box dimension vs set dimension");
    if (check == DomainCheck::none)
        return Tribool::indeterminate;

    const auto cheap = propagated_hull(set);
    if (!cheap.has_value())
        return Tribool::yes; // empty set is inside everything
    if (domain.contains(*cheap, 1e-9))
        return Tribool::yes;
    if (set.nc() == 0)
        return Tribool::no; // the cheap hull is exact for unconstrained sets

    if (check == DomainCheck::fast)
        return Tribool::indeterminate;

    const HullResult hull = interval_hull(set, settings);
    if (hull.empty)
        return Tribool::yes;
    if (domain.contains(hull.hull, 1e-9))
        return Tribool::yes;
    return hull.exact ? Tribool::no : Tribool::indeterminate;
}

namespace
{

Tribool check_or_throw(const HybZono& set, const Interval& domain, DomainCheck check, int step,
                       const MilpSettings& settings)
{
    const Tribool ok = domain_condition(set, domain, check, settings);
    if (ok == Tribool::no)
        throw DomainViolation(step, "argument set escapes the state-update set domain");
    return ok;
}

} // namespace

HybZono successor_open(const StateUpdateSet& psi, const HybZono& rk, const HybZono& uk, DomainCheck check,
                       Tribool* domain_ok, int step, const MilpSettings& settings)
{
    if (psi.kind != SusKind::open_loop)
        throw DimensionMismatch("successor_open expects an open-loop state-update set");
    const Eigen::Index n = psi.n;
    const Eigen::Index nu = psi.nu;
    if (rk.n() != n || uk.n() != nu)
        throw DimensionMismatch("argument set dimensions vs state-update set");

    const HybZono ru = cartesian_product(rk, uk);
    const Tribool ok = check_or_throw(ru, psi.domain_bounds, check, step, settings);
    if (domain_ok)
        *domain_ok = ok;

    Mat r = Mat::Zero(n + nu, 2 * n + nu);
    r.topLeftCorner(n + nu, n + nu).setIdentity();
    const HybZono coupled = generalized_intersection(psi.set, ru, r);

    Mat proj = Mat::Zero(n, 2 * n + nu);
    proj.rightCols(n).setIdentity();
    return linear_map(proj, coupled);
}

HybZono successor_closed(const StateUpdateSet& phi, const HybZono& rk, DomainCheck check, Tribool* domain_ok,
                         int step, const MilpSettings& settings)
{
    if (phi.kind != SusKind::closed_loop)
        throw DimensionMismatch("successor_closed expects a closed-loop state-update set");
    const Eigen::Index n = phi.n;
    if (rk.n() != n)
        throw DimensionMismatch("argument set dimension vs state-update set");

    const Tribool ok = check_or_throw(rk, phi.domain_bounds, check, step, settings);
    if (domain_ok)
        *domain_ok = ok;

    Mat r = Mat::Zero(n, 2 * n);
    r.leftCols(n).setIdentity();
    const HybZono coupled = generalized_intersection(phi.set, rk, r);

    Mat proj = Mat::Zero(n, 2 * n);
    proj.rightCols(n).setIdentity();
    return linear_map(proj, coupled);
}

std::vector<ReachRecord> reach(const StateUpdateSet& phi, const HybZono& r0, int steps, const ReachOptions& options)
{
    if (steps < 0)
        throw DimensionMismatch("steps must be nonnegative");
    validate(r0);

    std::vector<ReachRecord> records;
    records.reserve(static_cast<size_t>(steps) + 1);

    ReachRecord first;
    first.k = 0;
    first.set = options.reduce ? reduce_trivial(r0) : r0;
    first.complexity = first.set.complexity();
    first.domain_verified = domain_condition(first.set, phi.domain_bounds, options.domain_check, options.milp);
    records.push_back(std::move(first));

    for (int k = 1; k <= steps; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const ReachRecord& prev = records.back();
        if (prev.domain_verified == Tribool::no)
            throw DomainViolation(k - 1, "argument set escapes the state-update set domain");

        ReachRecord rec;
        rec.k = k;
        rec.set = successor_closed(phi, prev.set, DomainCheck::none, nullptr, k - 1, options.milp);
        if (options.reduce)
            rec.set = reduce_trivial(rec.set);
        rec.complexity = rec.set.complexity();
        rec.domain_verified = domain_condition(rec.set, phi.domain_bounds, options.domain_check, options.milp);
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace hzreach
