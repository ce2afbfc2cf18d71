#pragma once

#include <string>
#include <vector>

#include "hzreach/milp.hpp"

namespace hzreach
{

/// Three-valued query answer; indeterminate means the node limit was hit
/// before a proof either way, never a silently wrong bool.
enum class Tribool
{
    yes,
    no,
    indeterminate
};

inline const char* to_string(Tribool t)
{
    switch (t)
    {
    case Tribool::yes: return "yes";
    case Tribool::no: return "no";
    default: return "indeterminate";
    }
}

struct QuerySettings
{
    MilpSettings milp;
    double contains_tol = 1e-6;
};

Tribool is_empty(const HybZono& z, const MilpSettings& settings = {});

/// Membership of x up to an elementwise tolerance on the value map.
Tribool contains_point(const HybZono& z, const Vec& x, double tol, const MilpSettings& settings = {});

/// Like contains_point but surfaces the feasible factor assignment on yes.
struct ContainsWitness
{
    Tribool answer = Tribool::indeterminate;
    Vec factors; ///< (xi_c, xi_b), empty unless answer == yes
    long nodes = 0;
};
ContainsWitness contains_point_witness(const HybZono& z, const Vec& x, double tol,
                                       const MilpSettings& settings = {});

struct SupportResult
{
    Tribool resolved = Tribool::indeterminate; ///< yes when the optimum is proven
    double value = 0.0;                        ///< optimum, or best incumbent on node_limit
    double upper_bound = 0.0;                  ///< proven bound from the relaxation side
    long nodes = 0;
    bool empty = false; ///< the set itself is empty
};

/// max over Z of d'z.
SupportResult support(const HybZono& z, const Vec& d, const MilpSettings& settings = {});

struct HullResult
{
    Interval hull;
    bool exact = false; ///< all 2n support queries resolved
    bool empty = false;
    long nodes = 0;
};

/// Smallest axis-aligned box containing Z via 2n support queries.
HullResult interval_hull(const HybZono& z, const MilpSettings& settings = {});

/// One binary assignment together with the constrained zonotope it induces.
struct Leaf
{
    Vec assignment; ///< xi_b in {-1,1}^nb
    HybZono set;    ///< binaries substituted, nb = 0
};

/// All LP-feasible binary assignments, by branch and prune. Throws CapExceeded
/// (carrying the partial count) once more than `cap` leaves are found.
std::vector<Leaf> leaf_enumerate(const HybZono& z, long cap, const MilpSettings& settings = {});

struct LeafCount
{
    long count = 0;
    bool capped = false;
};
LeafCount count_nonempty_leaves(const HybZono& z, long cap, const MilpSettings& settings = {});

/**
 * @brief Cheap representation cleanup: membership is unchanged.
 *
 * Drops continuous generator columns that are zero in both the value map and
 * the constraints, and constraint rows that are linear combinations of the
 * rows kept before them. A dependent row with an inconsistent right-hand side
 * proves the set empty; the canonical empty set is returned in that case.
 */
HybZono reduce_trivial(const HybZono& z);

enum class CellStatus
{
    in,
    out,
    indeterminate
};

struct GridCell
{
    double x = 0.0;
    double y = 0.0;
    CellStatus status = CellStatus::out;
};

/// Membership of every cell center of a 2-D window after projecting Z onto
/// the two axes in `dims`.
std::vector<GridCell> grid_membership(const HybZono& z, std::pair<Eigen::Index, Eigen::Index> dims,
                                      const Interval& window, double resolution,
                                      const QuerySettings& settings = {});

/// CSV rows "x,y,status" for grid_membership output.
std::string grid_to_csv(const std::vector<GridCell>& cells);

} // namespace hzreach
