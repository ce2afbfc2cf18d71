#include "hzreach/query.hpp"

#include <cmath>

#include "hzreach/errors.hpp"
#include "hzreach/format.hpp"

namespace hzreach
{

namespace
{

Tribool feasibility_answer(const MilpResult& res)
{
    switch (res.status)
    {
    case MilpStatus::optimal: return Tribool::yes;
    case MilpStatus::infeasible: return Tribool::no;
    default: return Tribool::indeterminate;
    }
}

/// Factor system extended with the value-map rows G xi + s = x - c,
/// slack s in [-tol, tol]^n.
FactorLp containment_lp(const HybZono& z, const Vec& x, double tol)
{
    const Eigen::Index nf = z.num_factors();
    FactorLp p;
    p.a = Mat::Zero(z.nc() + z.n(), nf + z.n());
    p.a.topLeftCorner(z.nc(), z.ng()) = z.Ac;
    p.a.block(0, z.ng(), z.nc(), z.nb()) = z.Ab;
    p.a.block(z.nc(), 0, z.n(), z.ng()) = z.Gc;
    p.a.block(z.nc(), z.ng(), z.n(), z.nb()) = z.Gb;
    p.a.bottomRightCorner(z.n(), z.n()).setIdentity();
    p.b = vcat(z.b, Vec(x - z.c));
    p.lo = Vec::Constant(nf + z.n(), -1.0);
    p.hi = Vec::Constant(nf + z.n(), 1.0);
    p.lo.tail(z.n()).setConstant(-tol);
    p.hi.tail(z.n()).setConstant(tol);
    p.c = Vec::Zero(nf + z.n());
    for (Eigen::Index j = 0; j < z.nb(); ++j)
        p.binaries.push_back(z.ng() + j);
    return p;
}

} // namespace

Tribool is_empty(const HybZono& z, const MilpSettings& settings)
{
    if (z.trivially_empty())
        return Tribool::yes;
    if (z.nc() == 0)
        return Tribool::no; // generator boxes are never empty
    switch (solve_mixed_binary(factor_lp(z), settings).status)
    {
    case MilpStatus::optimal: return Tribool::no;
    case MilpStatus::infeasible: return Tribool::yes;
    default: return Tribool::indeterminate;
    }
}

Tribool contains_point(const HybZono& z, const Vec& x, double tol, const MilpSettings& settings)
{
    return contains_point_witness(z, x, tol, settings).answer;
}

ContainsWitness contains_point_witness(const HybZono& z, const Vec& x, double tol, const MilpSettings& settings)
{
    if (x.size() != z.n())
        throw DimensionMismatch("point has length " + std::to_string(x.size()) + ", set dimension is " +
                                std::to_string(z.n()));
    if (tol < 0.0)
        throw NegativeDelta("containment tolerance must be nonnegative");

    ContainsWitness out;
    if (z.trivially_empty())
    {
        out.answer = Tribool::no;
        return out;
    }
    const MilpResult res = solve_mixed_binary(containment_lp(z, x, tol), settings);
    out.nodes = res.nodes_explored;
    out.answer = feasibility_answer(res);
    if (out.answer == Tribool::yes)
        out.factors = res.witness.head(z.num_factors());
    return out;
}

SupportResult support(const HybZono& z, const Vec& d, const MilpSettings& settings)
{
    if (d.size() != z.n())
        throw DimensionMismatch("direction length vs set dimension");
    SupportResult out;
    if (z.trivially_empty())
    {
        out.empty = true;
        return out;
    }

    FactorLp p = factor_lp(z);
    p.c = vcat(Vec(z.Gc.transpose() * d), Vec(z.Gb.transpose() * d));
    p.maximize = true;
    const MilpResult res = solve_mixed_binary(p, settings);
    out.nodes = res.nodes_explored;
    const double shift = d.dot(z.c);
    switch (res.status)
    {
    case MilpStatus::optimal:
        out.resolved = Tribool::yes;
        out.value = res.value + shift;
        out.upper_bound = out.value;
        break;
    case MilpStatus::infeasible:
        out.empty = true;
        out.resolved = Tribool::yes;
        break;
    default:
        out.resolved = Tribool::indeterminate;
        out.value = res.has_incumbent ? res.value + shift : -std::numeric_limits<double>::infinity();
        out.upper_bound = res.best_bound + shift;
        break;
    }
    return out;
}

HullResult interval_hull(const HybZono& z, const MilpSettings& settings)
{
    HullResult out;
    Vec lo(z.n()), hi(z.n());
    out.exact = true;
    for (Eigen::Index i = 0; i < z.n(); ++i)
    {
        Vec d = Vec::Zero(z.n());
        d(i) = 1.0;
        const SupportResult up = support(z, d, settings);
        d(i) = -1.0;
        const SupportResult dn = support(z, d, settings);
        out.nodes += up.nodes + dn.nodes;
        if (up.empty || dn.empty)
        {
            out.empty = true;
            out.exact = up.resolved == Tribool::yes && dn.resolved == Tribool::yes;
            return out;
        }
        // indeterminate queries still give a sound outer bound
        hi(i) = up.resolved == Tribool::yes ? up.value : up.upper_bound;
        lo(i) = dn.resolved == Tribool::yes ? -dn.value : -dn.upper_bound;
        if (up.resolved != Tribool::yes || dn.resolved != Tribool::yes)
            out.exact = false;
    }
    out.hull = Interval(std::move(lo), std::move(hi));
    return out;
}

namespace
{

class LeafEngine
{
public:
    LeafEngine(const HybZono& z, long cap, bool collect, const MilpSettings& settings)
        : z_(z), cap_(cap), collect_(collect), cfg_(settings), base_(factor_lp(z)),
          propagator_(base_.a, base_.b, base_.binaries),
          solver_(base_.a, base_.b, base_.lo, base_.hi, settings.lp)
    {
        solver_.set_objective(base_.c);
    }

    void run()
    {
        Vec lo = base_.lo;
        Vec hi = base_.hi;
        visit(lo, hi, Vec(), 0);
    }

    long count() const { return count_; }
    bool capped() const { return capped_; }
    std::vector<Leaf>& leaves() { return leaves_; }

private:
    const HybZono& z_;
    long cap_;
    bool collect_;
    MilpSettings cfg_;
    FactorLp base_;
    Propagator propagator_;
    SimplexSolver solver_;
    long count_ = 0;
    bool capped_ = false;
    std::vector<Leaf> leaves_;

    bool point_in_bounds(const Vec& x, const Vec& lo, const Vec& hi) const
    {
        if (x.size() != lo.size())
            return false;
        return (x.array() >= lo.array() - 1e-9).all() && (x.array() <= hi.array() + 1e-9).all();
    }

    void record_leaf(const Vec& lo)
    {
        ++count_;
        if (count_ > cap_)
        {
            capped_ = true;
            return;
        }
        if (!collect_)
            return;
        Leaf leaf;
        leaf.assignment = Vec(z_.nb());
        for (Eigen::Index j = 0; j < z_.nb(); ++j)
            leaf.assignment(j) = lo(z_.ng() + j) >= 0.0 ? 1.0 : -1.0;
        leaf.set = HybZono(z_.Gc, Mat(z_.n(), 0), z_.c + z_.Gb * leaf.assignment, z_.Ac, Mat(z_.nc(), 0),
                           z_.b - z_.Ab * leaf.assignment);
        leaves_.push_back(std::move(leaf));
    }

    void visit(Vec lo, Vec hi, Vec inherited, int next_binary)
    {
        if (capped_)
            return;
        if (!propagator_.run(lo, hi, cfg_.propagate_rounds))
            return;

        Vec x = std::move(inherited);
        if (!point_in_bounds(x, lo, hi))
        {
            solver_.set_all_bounds(lo, hi);
            const LpResult lp = solver_.has_basis() ? solver_.reoptimize() : solver_.solve();
            if (lp.status == LpStatus::infeasible)
                return;
            if (lp.status == LpStatus::iteration_limit)
                throw NumericalFailure("lp did not converge during leaf enumeration");
            x = lp.x;
        }

        // next unfixed binary in index order
        Eigen::Index branch = -1;
        for (Eigen::Index j = next_binary; j < z_.nb(); ++j)
        {
            const Eigen::Index v = z_.ng() + j;
            if (lo(v) < hi(v))
            {
                branch = j;
                break;
            }
        }
        if (branch < 0)
        {
            record_leaf(lo);
            return;
        }

        const Eigen::Index v = z_.ng() + branch;
        Vec lo_minus = lo, hi_minus = hi;
        lo_minus(v) = -1.0;
        hi_minus(v) = -1.0;
        visit(std::move(lo_minus), std::move(hi_minus), x, static_cast<int>(branch) + 1);
        lo(v) = 1.0;
        hi(v) = 1.0;
        visit(std::move(lo), std::move(hi), std::move(x), static_cast<int>(branch) + 1);
    }
};

} // namespace

std::vector<Leaf> leaf_enumerate(const HybZono& z, long cap, const MilpSettings& settings)
{
    validate(z);
    LeafEngine engine(z, cap, true, settings);
    engine.run();
    if (engine.capped())
        throw CapExceeded(cap, "more than " + std::to_string(cap) + " nonempty leaves");
    return std::move(engine.leaves());
}

LeafCount count_nonempty_leaves(const HybZono& z, long cap, const MilpSettings& settings)
{
    validate(z);
    LeafEngine engine(z, cap, false, settings);
    engine.run();
    LeafCount out;
    out.capped = engine.capped();
    out.count = engine.capped() ? cap : engine.count();
    return out;
}

HybZono reduce_trivial(const HybZono& z)
{
    validate(z);

    // independent constraint rows, kept in original order; the working basis
    // is kept in reduced form (each row zero at every other pivot column)
    Mat full = hcat(z.Ac, z.Ab);
    std::vector<Eigen::Index> keep_rows;
    std::vector<Vec> basis;
    std::vector<double> basis_rhs;
    std::vector<Eigen::Index> pivots;
    for (Eigen::Index i = 0; i < z.nc(); ++i)
    {
        Vec v = full.rows() > 0 && full.cols() > 0 ? Vec(full.row(i).transpose()) : Vec(Vec::Zero(0));
        double rhs = z.b(i);
        const double scale = std::max(1.0, (v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0) + std::abs(rhs));
        for (size_t k = 0; k < basis.size(); ++k)
        {
            const double factor = v(pivots[k]) / basis[k](pivots[k]);
            if (factor != 0.0)
            {
                v -= factor * basis[k];
                rhs -= factor * basis_rhs[k];
            }
        }
        if (v.size() > 0 && v.lpNorm<Eigen::Infinity>() > 1e-9 * scale)
        {
            Eigen::Index piv;
            v.cwiseAbs().maxCoeff(&piv);
            // keep pivots exclusive across the basis
            for (size_t k = 0; k < basis.size(); ++k)
            {
                const double factor = basis[k](piv) / v(piv);
                if (factor != 0.0)
                {
                    basis[k] -= factor * v;
                    basis_rhs[k] -= factor * rhs;
                }
            }
            keep_rows.push_back(i);
            basis.push_back(std::move(v));
            pivots.push_back(piv);
            basis_rhs.push_back(rhs);
        }
        else if (std::abs(rhs) > 1e-9 * scale)
        {
            return HybZono::canonical_empty(z.n());
        }
    }

    Mat ac(static_cast<Eigen::Index>(keep_rows.size()), z.ng());
    Mat ab(static_cast<Eigen::Index>(keep_rows.size()), z.nb());
    Vec bb(static_cast<Eigen::Index>(keep_rows.size()));
    for (size_t r = 0; r < keep_rows.size(); ++r)
    {
        ac.row(static_cast<Eigen::Index>(r)) = z.Ac.row(keep_rows[r]);
        ab.row(static_cast<Eigen::Index>(r)) = z.Ab.row(keep_rows[r]);
        bb(static_cast<Eigen::Index>(r)) = z.b(keep_rows[r]);
    }

    // continuous generators that are zero everywhere contribute nothing;
    // binary columns stay so leaf structure is preserved
    std::vector<Eigen::Index> keep_cols;
    for (Eigen::Index j = 0; j < z.ng(); ++j)
    {
        const bool zero = z.Gc.col(j).isZero(0.0) && ac.col(j).isZero(0.0);
        if (!zero)
            keep_cols.push_back(j);
    }
    Mat gc(z.n(), static_cast<Eigen::Index>(keep_cols.size()));
    Mat ac2(ac.rows(), static_cast<Eigen::Index>(keep_cols.size()));
    for (size_t j = 0; j < keep_cols.size(); ++j)
    {
        gc.col(static_cast<Eigen::Index>(j)) = z.Gc.col(keep_cols[j]);
        ac2.col(static_cast<Eigen::Index>(j)) = ac.col(keep_cols[j]);
    }

    return HybZono(std::move(gc), z.Gb, z.c, std::move(ac2), std::move(ab), std::move(bb));
}

std::vector<GridCell> grid_membership(const HybZono& z, std::pair<Eigen::Index, Eigen::Index> dims,
                                      const Interval& window, double resolution, const QuerySettings& settings)
{
    if (dims.first < 0 || dims.first >= z.n() || dims.second < 0 || dims.second >= z.n())
        throw DimensionMismatch("projection axes out of range");
    if (window.dim() != 2)
        throw DimensionMismatch("grid window must be two-dimensional");
    if (!(resolution > 0.0))
        throw DimensionMismatch("grid resolution must be positive");

    Mat proj = Mat::Zero(2, z.n());
    proj(0, dims.first) = 1.0;
    proj(1, dims.second) = 1.0;
    const HybZono z2 = linear_map(proj, z);

    const auto cells_along = [resolution](double lo, double hi)
    { return static_cast<long>(std::floor((hi - lo) / resolution + 1e-9)); };
    const long nx = cells_along(window.lo(0), window.hi(0));
    const long ny = cells_along(window.lo(1), window.hi(1));

    std::vector<GridCell> cells;
    cells.reserve(static_cast<size_t>(std::max<long>(nx * ny, 0)));
    for (long ix = 0; ix < nx; ++ix)
    {
        for (long iy = 0; iy < ny; ++iy)
        {
            GridCell cell;
            cell.x = window.lo(0) + (static_cast<double>(ix) + 0.5) * resolution;
            cell.y = window.lo(1) + (static_cast<double>(iy) + 0.5) * resolution;
            Vec p(2);
            p << cell.x, cell.y;
            switch (contains_point(z2, p, settings.contains_tol, settings.milp))
            {
            case Tribool::yes: cell.status = CellStatus::in; break;
            case Tribool::no: cell.status = CellStatus::out; break;
            default: cell.status = CellStatus::indeterminate; break;
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

std::string grid_to_csv(const std::vector<GridCell>& cells)
{
    std::string out = "x,y,status\n";
    for (const GridCell& cell : cells)
    {
        out += fmt17(cell.x);
        out += ',';
        out += fmt17(cell.y);
        out += ',';
        switch (cell.status)
        {
        case CellStatus::in: out += "in"; break;
        case CellStatus::out: out += "out"; break;
        default: out += "indeterminate"; break;
        }
        out += '\n';
    }
    return out;
}

} // namespace hzreach
