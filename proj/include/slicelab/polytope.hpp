#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "slicelab/lp.hpp"
#include "slicelab/seqspace.hpp"
#include "slicelab/tree.hpp"

namespace slicelab::poly {

/// Convex hull of an explicit vertex list. Duplicate vertices are dropped.
struct VertexPolytope {
    std::vector<seq::SeqElem> vertices;

    VertexPolytope() = default;
    explicit VertexPolytope(std::vector<seq::SeqElem> verts);
};

/// The set { s_outer * u + s_inner * w } where u ranges over the truncated
/// c-ball of radius box_outer (deviations supported on `coords`, free limit)
/// and w over the truncated c0-ball of radius box_inner (limit pinned to 0).
/// Coordinatewise this is a box: halfwidth s_outer*box_outer+s_inner*box_inner
/// on each listed coordinate and s_outer*box_outer on the limit.
struct MinkowskiPart {
    Rational scale_outer = 1;
    Rational box_outer = 1;
    Rational scale_inner = 0;
    Rational box_inner = 0;
    std::vector<int> coords;  // sorted, distinct

    Rational coord_halfwidth() const {
        return scale_outer * box_outer + scale_inner * box_inner;
    }
    Rational limit_halfwidth() const { return scale_outer * box_outer; }
    bool has_coord(int i) const;
};

using HullPart = std::variant<VertexPolytope, MinkowskiPart>;

enum class ConstraintSense { GE, LE };

struct LinConstraint {
    seq::Functional f;
    Rational bound;
    ConstraintSense sense;
};

/// conv(union of hull parts) intersected with the linear constraints.
struct Region {
    std::vector<HullPart> hull_parts;
    std::vector<LinConstraint> constraints;

    /// Set when the vertex parts are exactly the symmetric tree family
    /// {x_a} u {-x_a} over this encoding; membership tests then project
    /// mixing weights onto a small downward-closed node set.
    std::shared_ptr<const tree::Encoding> tree_family;

    /// Coordinates where some hull element can deviate, ascending.
    std::vector<int> tracked_coords() const;
};

/// In coordinate-range maps, key 0 denotes the limit pseudo-coordinate.
constexpr int kLimitCoord = 0;

struct DiameterReport {
    bool empty_region = false;
    Rational diameter = 0;
    std::pair<seq::SeqElem, seq::SeqElem> witness;
    int achieving_coord = kLimitCoord;
    std::map<int, std::pair<Rational, Rational>> coordinate_ranges;
};

struct LpResult {
    bool feasible = true;
    Rational value = 0;
    seq::SeqElem point;
};

/// Reusable LP over one region: builds the column/row system once and
/// re-optimizes a stream of objectives from the previous optimal basis.
///
/// Box variables exist only for the constraint-support coordinates plus any
/// extras requested at construction; a single-coordinate objective outside
/// that set folds the box freedom into the part-weight column (the box
/// contributes exactly +-halfwidth*mu there), which keeps the column system
/// fixed across a whole diameter scan.
class RegionLp {
  public:
    enum class Mode { Plain, NormVar };

    RegionLp(const Region& region, const std::vector<int>& extra_coords,
             Mode mode = Mode::Plain);

    bool feasible();
    /// max or min of f over the region.
    LpResult optimize_functional(const seq::Functional& f, bool maximize,
                                 bool want_point = true);
    /// max (sign=+1) or min (sign=-1) of coordinate t (kLimitCoord = limit).
    LpResult optimize_coord(int t, int sign, bool want_point = true);
    /// min of the sup norm (requires Mode::NormVar).
    LpResult minimize_norm();

  private:
    struct PartCols {
        bool is_vertex = false;
        int first_vertex = 0;
        int vertex_count = 0;
        int mu = -1;
        int lim_plus = -1;
        int lim_minus = -1;
        std::map<int, std::pair<int, int>> coord_vars;  // coord -> (m+, m-)
    };

    void add_functional_terms(const seq::Functional& f, std::vector<lp::Term>& terms) const;
    void add_coord_terms(int t, int sign, std::vector<lp::Term>& terms) const;
    std::vector<Rational> coord_objective(int t, int sign) const;
    seq::SeqElem reconstruct(const std::vector<Rational>& x, int fold_coord,
                             int fold_sign) const;
    LpResult run(const std::vector<Rational>& obj, bool negate_value, int fold_coord,
                 int fold_sign, bool want_point);

    const Region& region_;
    std::vector<int> explicit_coords_;
    std::vector<PartCols> parts_;
    int num_cols_ = 0;
    int norm_var_ = -1;
    std::optional<lp::Solver> solver_;
};

/// Exact optimum of `f` over the region with a witness point.
LpResult solve_lp(const seq::Functional& objective, bool maximize, const Region& r);

/// The closed slice { x in r : f(x) >= sup_r(f) - lambda }.
/// Requires lambda > 0 and a nonzero functional; throws on an empty region.
Region slice(const Region& r, const seq::Functional& f, const Rational& lambda);

/// Exact sup-norm diameter via per-coordinate range LPs: the sup-norm
/// diameter of a convex set equals the largest coordinate range (the two
/// maxima commute), with the limit treated as an explicit pseudo-coordinate.
DiameterReport diameter_sup(const Region& r);

/// Exact feasibility: is x a convex combination of hull elements satisfying
/// all constraints?
bool membership(const seq::SeqElem& x, const Region& r);

/// Max pairwise distance among candidate points, all of which must lie in
/// the region; a lower bound for diameter_sup.
Rational diameter_pairs_oracle(const Region& r,
                               const std::vector<seq::SeqElem>& candidates);

/// Exact min of the sup norm over the region (an LP: minimize t subject to
/// -t <= x(tau) <= t over all tracked coordinates and the limit).
LpResult min_sup_norm(const Region& r);

}  // namespace slicelab::poly
