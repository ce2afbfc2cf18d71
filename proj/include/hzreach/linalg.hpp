#pragma once

#include <Eigen/Dense>

#include "json.hpp"

namespace hzreach
{

// Dense row-major storage throughout; sets at desk scale stay in the hundreds
// of generators, so sparsity buys nothing here.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

inline Mat hcat(const Mat& a, const Mat& b)
{
    if (a.size() == 0 && a.rows() != b.rows())
        return b;
    if (b.size() == 0 && b.rows() != a.rows())
        return a;
    Mat out(a.rows(), a.cols() + b.cols());
    out.leftCols(a.cols()) = a;
    out.rightCols(b.cols()) = b;
    return out;
}

inline Mat vcat(const Mat& a, const Mat& b)
{
    if (a.size() == 0 && a.cols() != b.cols())
        return b;
    if (b.size() == 0 && b.cols() != a.cols())
        return a;
    Mat out(a.rows() + b.rows(), a.cols());
    out.topRows(a.rows()) = a;
    out.bottomRows(b.rows()) = b;
    return out;
}

inline Vec vcat(const Vec& a, const Vec& b)
{
    Vec out(a.size() + b.size());
    out.head(a.size()) = a;
    out.tail(b.size()) = b;
    return out;
}

inline Mat blkdiag(const Mat& a, const Mat& b)
{
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

inline nlohmann::json mat_to_json(const Mat& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json vec_to_json(const Vec& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

/// Parses a row-major array-of-arrays. An empty array yields a 0x0 matrix;
/// use conform_cols() afterwards if the logical row count is known.
inline Mat mat_from_json(const nlohmann::json& j)
{
    if (!j.is_array())
        throw nlohmann::json::type_error::create(302, "matrix must be an array of arrays", &j);
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0)
        return Mat(0, 0);
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Mat out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const auto& row = j.at(static_cast<size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw nlohmann::json::type_error::create(302, "ragged matrix rows", &j);
        for (Eigen::Index k = 0; k < cols; ++k)
            out(i, k) = row.at(static_cast<size_t>(k)).get<double>();
    }
    return out;
}

inline Vec vec_from_json(const nlohmann::json& j)
{
    Vec out(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out(i) = j.at(static_cast<size_t>(i)).get<double>();
    return out;
}

} // namespace hzreach
