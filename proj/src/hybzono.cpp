#include "hzreach/hybzono.hpp"

namespace hzreach
{

HybZono::HybZono(Mat gc, Mat gb, Vec center, Mat ac, Mat ab, Vec bvec)
    : Gc(std::move(gc)), Gb(std::move(gb)), c(std::move(center)), Ac(std::move(ac)), Ab(std::move(ab)),
      b(std::move(bvec))
{
    // Tolerate 0x0 placeholders for empty blocks.
    if (Gc.size() == 0 && Gc.rows() != c.size())
        Gc = Mat::Zero(c.size(), Gc.cols());
    if (Gb.size() == 0 && Gb.rows() != c.size())
        Gb = Mat::Zero(c.size(), Gb.cols());
    if (Ac.size() == 0 && (Ac.rows() != b.size() || Ac.cols() != Gc.cols()))
        Ac = Mat::Zero(b.size(), Gc.cols());
    if (Ab.size() == 0 && (Ab.rows() != b.size() || Ab.cols() != Gb.cols()))
        Ab = Mat::Zero(b.size(), Gb.cols());
    validate(*this);
}

HybZono::HybZono(Mat g, Vec center)
    : HybZono(std::move(g), Mat(center.size(), 0), center, Mat(0, 0), Mat(0, 0), Vec(0))
{
}

Vec HybZono::point(const Vec& xi) const
{
    if (xi.size() != num_factors())
        throw DimensionMismatch("factor vector length " + std::to_string(xi.size()) + " vs " +
                                std::to_string(num_factors()));
    return Gc * xi.head(ng()) + Gb * xi.tail(nb()) + c;
}

Vec HybZono::constraint_residual(const Vec& xi) const
{
    if (xi.size() != num_factors())
        throw DimensionMismatch("factor vector length");
    return Ac * xi.head(ng()) + Ab * xi.tail(nb()) - b;
}

HybZono HybZono::canonical_empty(Eigen::Index n)
{
    HybZono z;
    z.Gc.resize(n, 0);
    z.Gb.resize(n, 0);
    z.c = Vec::Zero(n);
    z.Ac.resize(1, 0);
    z.Ab.resize(1, 0);
    z.b = Vec::Constant(1, 1.0);
    return z;
}

bool HybZono::trivially_empty() const
{
    return ng() == 0 && nb() == 0 && nc() >= 1 && b.lpNorm<Eigen::Infinity>() > 0.0;
}

void validate(const HybZono& z)
{
    const auto n = z.c.size();
    if (z.Gc.rows() != n)
        throw DimensionMismatch("gc has " + std::to_string(z.Gc.rows()) + " rows, center has " + std::to_string(n));
    if (z.Gb.rows() != n)
        throw DimensionMismatch("gb has " + std::to_string(z.Gb.rows()) + " rows, center has " + std::to_string(n));
    if (z.Ac.rows() != z.b.size())
        throw DimensionMismatch("ac has " + std::to_string(z.Ac.rows()) + " rows, b has " + std::to_string(z.b.size()));
    if (z.Ab.rows() != z.b.size())
        throw DimensionMismatch("ab has " + std::to_string(z.Ab.rows()) + " rows, b has " + std::to_string(z.b.size()));
    if (z.Ac.cols() != z.Gc.cols())
        throw DimensionMismatch("ac has " + std::to_string(z.Ac.cols()) + " cols, gc has " +
                                std::to_string(z.Gc.cols()));
    if (z.Ab.cols() != z.Gb.cols())
        throw DimensionMismatch("ab has " + std::to_string(z.Ab.cols()) + " cols, gb has " +
                                std::to_string(z.Gb.cols()));
    if (!z.Gc.allFinite())
        throw NonFiniteEntry("gc");
    if (!z.Gb.allFinite())
        throw NonFiniteEntry("gb");
    if (!z.c.allFinite())
        throw NonFiniteEntry("c");
    if (!z.Ac.allFinite())
        throw NonFiniteEntry("ac");
    if (!z.Ab.allFinite())
        throw NonFiniteEntry("ab");
    if (!z.b.allFinite())
        throw NonFiniteEntry("b");
}

HybZono interval_to_zonotope(const Interval& iv)
{
    Mat g = Mat::Zero(iv.dim(), iv.dim());
    g.diagonal() = iv.radius();
    return HybZono(std::move(g), iv.center());
}

HybZono linear_map(const Mat& r, const HybZono& z)
{
    if (r.cols() != z.n())
        throw DimensionMismatch("map has " + std::to_string(r.cols()) + " cols, set dimension is " +
                                std::to_string(z.n()));
    return HybZono(r * z.Gc, r * z.Gb, r * z.c, z.Ac, z.Ab, z.b);
}

HybZono minkowski_sum(const HybZono& z, const HybZono& w)
{
    if (z.n() != w.n())
        throw DimensionMismatch("minkowski sum of dimensions " + std::to_string(z.n()) + " and " +
                                std::to_string(w.n()));
    return HybZono(hcat(z.Gc, w.Gc), hcat(z.Gb, w.Gb), z.c + w.c, blkdiag(z.Ac, w.Ac), blkdiag(z.Ab, w.Ab),
                   vcat(z.b, w.b));
}

HybZono generalized_intersection(const HybZono& z, const HybZono& y, const Mat& r)
{
    if (r.cols() != z.n())
        throw DimensionMismatch("intersection map has " + std::to_string(r.cols()) + " cols, z has dimension " +
                                std::to_string(z.n()));
    if (r.rows() != y.n())
        throw DimensionMismatch("intersection map has " + std::to_string(r.rows()) + " rows, y has dimension " +
                                std::to_string(y.n()));

    const auto m = r.rows();
    Mat gc = hcat(z.Gc, Mat::Zero(z.n(), y.ng()));
    Mat gb = hcat(z.Gb, Mat::Zero(z.n(), y.nb()));

    // [ Ac_z  0 ; 0  Ac_y ; R Gc_z  -Gc_y ] and the binary analogue; the
    // coupling rows enforce R(value of z) = value of y.
    Mat ac(z.nc() + y.nc() + m, z.ng() + y.ng());
    ac.setZero();
    ac.topLeftCorner(z.nc(), z.ng()) = z.Ac;
    ac.block(z.nc(), z.ng(), y.nc(), y.ng()) = y.Ac;
    ac.block(z.nc() + y.nc(), 0, m, z.ng()) = r * z.Gc;
    ac.block(z.nc() + y.nc(), z.ng(), m, y.ng()) = -y.Gc;

    Mat ab(z.nc() + y.nc() + m, z.nb() + y.nb());
    ab.setZero();
    ab.topLeftCorner(z.nc(), z.nb()) = z.Ab;
    ab.block(z.nc(), z.nb(), y.nc(), y.nb()) = y.Ab;
    ab.block(z.nc() + y.nc(), 0, m, z.nb()) = r * z.Gb;
    ab.block(z.nc() + y.nc(), z.nb(), m, y.nb()) = -y.Gb;

    Vec bb(z.nc() + y.nc() + m);
    bb.head(z.nc()) = z.b;
    bb.segment(z.nc(), y.nc()) = y.b;
    bb.tail(m) = y.c - r * z.c;

    return HybZono(std::move(gc), std::move(gb), z.c, std::move(ac), std::move(ab), std::move(bb));
}

HybZono halfspace_intersection(const HybZono& z, const Mat& r, const HalfSpace& h)
{
    if (r.cols() != z.n())
        throw DimensionMismatch("half-space map has " + std::to_string(r.cols()) + " cols, set dimension is " +
                                std::to_string(z.n()));
    if (h.normal.size() != r.rows())
        throw DimensionMismatch("half-space normal length " + std::to_string(h.normal.size()) + " vs map rows " +
                                std::to_string(r.rows()));

    const Vec g = r.transpose() * h.normal; // a'R as a column
    const Vec phi_c = z.Gc.transpose() * g;
    const Vec phi_b = z.Gb.transpose() * g;
    const double phi_0 = g.dot(z.c);

    const double span = phi_c.lpNorm<1>() + phi_b.lpNorm<1>();
    const double dm = std::max(h.offset - phi_0 + span, 0.0);

    Mat gc = hcat(z.Gc, Mat::Zero(z.n(), 1));

    Mat ac(z.nc() + 1, z.ng() + 1);
    ac.setZero();
    ac.topLeftCorner(z.nc(), z.ng()) = z.Ac;
    ac.bottomLeftCorner(1, z.ng()) = phi_c.transpose();
    ac(z.nc(), z.ng()) = 0.5 * dm;

    Mat ab(z.nc() + 1, z.nb());
    ab.topRows(z.nc()) = z.Ab;
    ab.bottomRows(1) = phi_b.transpose();

    Vec bb(z.nc() + 1);
    bb.head(z.nc()) = z.b;
    bb(z.nc()) = h.offset - phi_0 - 0.5 * dm;

    return HybZono(std::move(gc), z.Gb, z.c, std::move(ac), std::move(ab), std::move(bb));
}

HybZono cartesian_product(const HybZono& z, const HybZono& y)
{
    return HybZono(blkdiag(z.Gc, y.Gc), blkdiag(z.Gb, y.Gb), vcat(z.c, y.c), blkdiag(z.Ac, y.Ac),
                   blkdiag(z.Ab, y.Ab), vcat(z.b, y.b));
}

Interval ia_hull(const HybZono& z)
{
    Vec spread = z.Gc.cwiseAbs().rowwise().sum() + z.Gb.cwiseAbs().rowwise().sum();
    return Interval(z.c - spread, z.c + spread);
}

void to_json(nlohmann::json& j, const HybZono& z)
{
    j = nlohmann::json{{"gc", mat_to_json(z.Gc)}, {"gb", mat_to_json(z.Gb)}, {"c", vec_to_json(z.c)},
                       {"ac", mat_to_json(z.Ac)}, {"ab", mat_to_json(z.Ab)}, {"b", vec_to_json(z.b)}};
}

void from_json(const nlohmann::json& j, HybZono& z)
{
    Vec c = vec_from_json(j.at("c"));
    Vec b = vec_from_json(j.at("b"));
    Mat gc = mat_from_json(j.at("gc"));
    Mat gb = mat_from_json(j.at("gb"));
    Mat ac = mat_from_json(j.at("ac"));
    Mat ab = mat_from_json(j.at("ab"));
    // Conform empty blocks to the logical row counts.
    if (gc.size() == 0)
        gc = Mat::Zero(c.size(), gc.cols());
    if (gb.size() == 0)
        gb = Mat::Zero(c.size(), gb.cols());
    if (ac.size() == 0)
        ac = Mat::Zero(b.size(), gc.cols());
    if (ab.size() == 0)
        ab = Mat::Zero(b.size(), gb.cols());
    z = HybZono(std::move(gc), std::move(gb), std::move(c), std::move(ac), std::move(ab), std::move(b));
}

} // namespace hzreach
