#include "slicelab/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace slicelab::poly {

using seq::Functional;
using seq::SeqElem;

namespace {

std::string elem_key(const SeqElem& e) {
    std::ostringstream os;
    os << e.limit().get_str();
    for (const auto& [i, v] : e.deviations()) os << '|' << i << ':' << v.get_str();
    return os.str();
}

}  // namespace

VertexPolytope::VertexPolytope(std::vector<SeqElem> verts) {
    if (verts.empty()) throw std::invalid_argument("vertex polytope needs vertices");
    std::set<std::string> seen;
    vertices.reserve(verts.size());
    for (auto& v : verts)
        if (seen.insert(elem_key(v)).second) vertices.push_back(std::move(v));
}

bool MinkowskiPart::has_coord(int i) const {
    return std::binary_search(coords.begin(), coords.end(), i);
}

std::vector<int> Region::tracked_coords() const {
    std::set<int> out;
    for (const HullPart& part : hull_parts) {
        if (const auto* vp = std::get_if<VertexPolytope>(&part)) {
            for (const SeqElem& v : vp->vertices)
                for (const auto& [i, val] : v.deviations()) {
                    (void)val;
                    out.insert(i);
                }
        } else {
            const auto& mp = std::get<MinkowskiPart>(part);
            out.insert(mp.coords.begin(), mp.coords.end());
        }
    }
    return {out.begin(), out.end()};
}

RegionLp::RegionLp(const Region& region, const std::vector<int>& extra_coords,
                   Mode mode)
    : region_(region) {
    if (region.hull_parts.empty())
        throw std::invalid_argument("region has no hull parts");

    std::set<int> expl(extra_coords.begin(), extra_coords.end());
    for (const LinConstraint& c : region.constraints)
        for (const auto& [i, v] : c.f.coeffs()) {
            (void)v;
            expl.insert(i);
        }
    std::vector<int> norm_scan;
    if (mode == Mode::NormVar) {
        norm_scan = region.tracked_coords();
        expl.insert(norm_scan.begin(), norm_scan.end());
    }
    expl.erase(kLimitCoord);
    explicit_coords_.assign(expl.begin(), expl.end());

    // column layout
    num_cols_ = 0;
    for (const HullPart& part : region.hull_parts) {
        PartCols pc;
        if (const auto* vp = std::get_if<VertexPolytope>(&part)) {
            pc.is_vertex = true;
            pc.first_vertex = num_cols_;
            pc.vertex_count = static_cast<int>(vp->vertices.size());
            num_cols_ += pc.vertex_count;
        } else {
            const auto& mp = std::get<MinkowskiPart>(part);
            pc.mu = num_cols_++;
            for (int i : explicit_coords_)
                if (mp.has_coord(i)) {
                    pc.coord_vars[i] = {num_cols_, num_cols_ + 1};
                    num_cols_ += 2;
                }
            pc.lim_plus = num_cols_++;
            pc.lim_minus = num_cols_++;
        }
        parts_.push_back(std::move(pc));
    }
    if (mode == Mode::NormVar) norm_var_ = num_cols_++;

    lp::Problem problem;
    problem.num_vars = num_cols_;

    // convexity: all part weights sum to 1
    lp::Row convexity;
    convexity.sense = lp::Sense::EQ;
    convexity.rhs = 1;
    for (const PartCols& pc : parts_) {
        if (pc.is_vertex) {
            for (int j = 0; j < pc.vertex_count; ++j)
                convexity.terms.push_back({pc.first_vertex + j, Rational(1)});
        } else {
            convexity.terms.push_back({pc.mu, Rational(1)});
        }
    }
    problem.rows.push_back(std::move(convexity));

    for (const LinConstraint& c : region.constraints) {
        lp::Row row;
        row.sense = c.sense == ConstraintSense::GE ? lp::Sense::GE : lp::Sense::LE;
        row.rhs = c.bound;
        add_functional_terms(c.f, row.terms);
        problem.rows.push_back(std::move(row));
    }

    // box rows: m+ + m- <= halfwidth * mu, per explicit coordinate and limit
    for (size_t p = 0; p < parts_.size(); ++p) {
        const PartCols& pc = parts_[p];
        if (pc.is_vertex) continue;
        const auto& mp = std::get<MinkowskiPart>(region.hull_parts[p]);
        for (const auto& [i, vars] : pc.coord_vars) {
            (void)i;
            lp::Row row;
            row.sense = lp::Sense::LE;
            row.rhs = 0;
            row.terms.push_back({vars.first, Rational(1)});
            row.terms.push_back({vars.second, Rational(1)});
            row.terms.push_back({pc.mu, -mp.coord_halfwidth()});
            problem.rows.push_back(std::move(row));
        }
        lp::Row lim_row;
        lim_row.sense = lp::Sense::LE;
        lim_row.rhs = 0;
        lim_row.terms.push_back({pc.lim_plus, Rational(1)});
        lim_row.terms.push_back({pc.lim_minus, Rational(1)});
        lim_row.terms.push_back({pc.mu, -mp.limit_halfwidth()});
        problem.rows.push_back(std::move(lim_row));
    }

    if (mode == Mode::NormVar) {
        // -t <= x(tau) <= t for every tracked coordinate and the limit
        std::vector<int> taus;
        taus.push_back(kLimitCoord);
        taus.insert(taus.end(), norm_scan.begin(), norm_scan.end());
        for (int tau : taus) {
            for (int sign : {+1, -1}) {
                lp::Row row;
                row.sense = lp::Sense::LE;
                row.rhs = 0;
                add_coord_terms(tau, sign, row.terms);
                row.terms.push_back({norm_var_, Rational(-1)});
                problem.rows.push_back(std::move(row));
            }
        }
    }

    solver_.emplace(std::move(problem));
}

void RegionLp::add_functional_terms(const Functional& f,
                                    std::vector<lp::Term>& terms) const {
    for (size_t p = 0; p < parts_.size(); ++p) {
        const PartCols& pc = parts_[p];
        if (pc.is_vertex) {
            const auto& vp = std::get<VertexPolytope>(region_.hull_parts[p]);
            for (int j = 0; j < pc.vertex_count; ++j) {
                Rational val = f.eval(vp.vertices[static_cast<size_t>(j)]);
                if (val != 0) terms.push_back({pc.first_vertex + j, std::move(val)});
            }
        } else {
            const auto& mp = std::get<MinkowskiPart>(region_.hull_parts[p]);
            Rational lim_coeff = f.limit_coeff();
            for (const auto& [i, ci] : f.coeffs()) {
                if (mp.has_coord(i)) {
                    auto it = pc.coord_vars.find(i);
                    if (it == pc.coord_vars.end())
                        throw std::logic_error(
                            "functional support outside explicit coordinate set");
                    terms.push_back({it->second.first, ci});
                    terms.push_back({it->second.second, -ci});
                } else {
                    // beyond the part's coordinate set the element equals
                    // its limit value
                    lim_coeff += ci;
                }
            }
            if (lim_coeff != 0) {
                terms.push_back({pc.lim_plus, lim_coeff});
                terms.push_back({pc.lim_minus, -lim_coeff});
            }
        }
    }
}

void RegionLp::add_coord_terms(int t, int sign, std::vector<lp::Term>& terms) const {
    const Rational s(sign);
    for (size_t p = 0; p < parts_.size(); ++p) {
        const PartCols& pc = parts_[p];
        if (pc.is_vertex) {
            const auto& vp = std::get<VertexPolytope>(region_.hull_parts[p]);
            for (int j = 0; j < pc.vertex_count; ++j) {
                const SeqElem& v = vp.vertices[static_cast<size_t>(j)];
                const Rational& val = t == kLimitCoord ? v.limit() : v.coord(t);
                if (val != 0) terms.push_back({pc.first_vertex + j, s * val});
            }
            continue;
        }
        if (t == kLimitCoord) {
            terms.push_back({pc.lim_plus, s});
            terms.push_back({pc.lim_minus, -s});
        } else if (auto it = pc.coord_vars.find(t); it != pc.coord_vars.end()) {
            terms.push_back({it->second.first, s});
            terms.push_back({it->second.second, -s});
        } else if (std::get<MinkowskiPart>(region_.hull_parts[p]).has_coord(t)) {
            throw std::logic_error("coordinate term outside explicit set");
        } else {
            terms.push_back({pc.lim_plus, s});
            terms.push_back({pc.lim_minus, -s});
        }
    }
}

std::vector<Rational> RegionLp::coord_objective(int t, int sign) const {
    std::vector<Rational> obj(static_cast<size_t>(num_cols_), Rational(0));
    const Rational s(sign);
    for (size_t p = 0; p < parts_.size(); ++p) {
        const PartCols& pc = parts_[p];
        if (pc.is_vertex) {
            const auto& vp = std::get<VertexPolytope>(region_.hull_parts[p]);
            for (int j = 0; j < pc.vertex_count; ++j) {
                const SeqElem& v = vp.vertices[static_cast<size_t>(j)];
                const Rational& val = t == kLimitCoord ? v.limit() : v.coord(t);
                if (val != 0)
                    obj[static_cast<size_t>(pc.first_vertex + j)] = s * val;
            }
            continue;
        }
        const auto& mp = std::get<MinkowskiPart>(region_.hull_parts[p]);
        if (t == kLimitCoord) {
            obj[static_cast<size_t>(pc.lim_plus)] += s;
            obj[static_cast<size_t>(pc.lim_minus)] -= s;
        } else if (auto it = pc.coord_vars.find(t); it != pc.coord_vars.end()) {
            obj[static_cast<size_t>(it->second.first)] += s;
            obj[static_cast<size_t>(it->second.second)] -= s;
        } else if (mp.has_coord(t)) {
            // fold the box freedom at t into the part weight: the box can
            // always contribute +-halfwidth*mu toward the objective
            obj[static_cast<size_t>(pc.mu)] += mp.coord_halfwidth();
        } else {
            obj[static_cast<size_t>(pc.lim_plus)] += s;
            obj[static_cast<size_t>(pc.lim_minus)] -= s;
        }
    }
    return obj;
}

seq::SeqElem RegionLp::reconstruct(const std::vector<Rational>& x, int fold_coord,
                                   int fold_sign) const {
    SeqElem acc = SeqElem::zero();
    for (size_t p = 0; p < parts_.size(); ++p) {
        const PartCols& pc = parts_[p];
        if (pc.is_vertex) {
            const auto& vp = std::get<VertexPolytope>(region_.hull_parts[p]);
            for (int j = 0; j < pc.vertex_count; ++j) {
                const Rational& w = x[static_cast<size_t>(pc.first_vertex + j)];
                if (w != 0)
                    acc = acc.add(vp.vertices[static_cast<size_t>(j)].scale(w));
            }
            continue;
        }
        const auto& mp = std::get<MinkowskiPart>(region_.hull_parts[p]);
        Rational limit = x[static_cast<size_t>(pc.lim_plus)] -
                         x[static_cast<size_t>(pc.lim_minus)];
        std::map<int, Rational> dev;
        for (const auto& [i, vars] : pc.coord_vars) {
            dev[i] = x[static_cast<size_t>(vars.first)] -
                     x[static_cast<size_t>(vars.second)];
        }
        if (fold_coord > 0 && mp.has_coord(fold_coord) &&
            !pc.coord_vars.count(fold_coord)) {
            dev[fold_coord] = Rational(fold_sign) * mp.coord_halfwidth() *
                              x[static_cast<size_t>(pc.mu)];
        }
        acc = acc.add(SeqElem(std::move(limit), std::move(dev)));
    }
    return acc;
}

bool RegionLp::feasible() { return solver_->feasible(); }

LpResult RegionLp::run(const std::vector<Rational>& obj, bool negate_value,
                       int fold_coord, int fold_sign, bool want_point) {
    LpResult res;
    lp::Solution sol = solver_->maximize(obj);
    if (sol.status == lp::Status::Infeasible) {
        res.feasible = false;
        return res;
    }
    if (sol.status == lp::Status::Unbounded)
        throw std::logic_error("lp unbounded over a compact region");
    res.value = negate_value ? Rational(-sol.objective) : sol.objective;
    if (want_point) {
        std::vector<Rational> x;
        solver_->primal_values(x);
        res.point = reconstruct(x, fold_coord, fold_sign);
    }
    return res;
}

LpResult RegionLp::optimize_functional(const Functional& f, bool maximize,
                                       bool want_point) {
    std::vector<lp::Term> terms;
    add_functional_terms(f, terms);
    std::vector<Rational> obj(static_cast<size_t>(num_cols_), Rational(0));
    for (const lp::Term& t : terms) {
        if (maximize)
            obj[static_cast<size_t>(t.var)] += t.coeff;
        else
            obj[static_cast<size_t>(t.var)] -= t.coeff;
    }
    return run(obj, /*negate_value=*/!maximize, -1, 0, want_point);
}

LpResult RegionLp::optimize_coord(int t, int sign, bool want_point) {
    return run(coord_objective(t, sign), /*negate_value=*/sign < 0, t, sign,
               want_point);
}

LpResult RegionLp::minimize_norm() {
    if (norm_var_ < 0) throw std::logic_error("solver not built with a norm variable");
    std::vector<Rational> obj(static_cast<size_t>(num_cols_), Rational(0));
    obj[static_cast<size_t>(norm_var_)] = -1;
    return run(obj, /*negate_value=*/true, -1, 0, /*want_point=*/true);
}

LpResult solve_lp(const Functional& objective, bool maximize, const Region& r) {
    std::vector<int> extra;
    for (const auto& [i, v] : objective.coeffs()) {
        (void)v;
        extra.push_back(i);
    }
    RegionLp ctx(r, extra);
    return ctx.optimize_functional(objective, maximize);
}

Region slice(const Region& r, const Functional& f, const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("slice: lambda must be > 0");
    if (f.is_zero()) throw std::invalid_argument("slice: zero functional");
    LpResult sup = solve_lp(f, /*maximize=*/true, r);
    if (!sup.feasible) throw std::invalid_argument("slice: empty region");
    Region out = r;
    out.constraints.push_back({f, sup.value - lambda, ConstraintSense::GE});
    return out;
}

DiameterReport diameter_sup(const Region& r) {
    DiameterReport report;
    RegionLp ctx(r, {});
    if (!ctx.feasible()) {
        report.empty_region = true;
        return report;
    }
    std::vector<int> scan;
    scan.push_back(kLimitCoord);
    for (int t : r.tracked_coords()) scan.push_back(t);

    bool have_best = false;
    int best_coord = kLimitCoord;
    for (int t : scan) {
        LpResult hi = ctx.optimize_coord(t, +1, /*want_point=*/false);
        LpResult lo = ctx.optimize_coord(t, -1, /*want_point=*/false);
        Rational range = hi.value - lo.value;
        report.coordinate_ranges[t] = {lo.value, hi.value};
        if (!have_best || range > report.diameter) {
            have_best = true;
            report.diameter = range;
            best_coord = t;
        }
    }
    report.achieving_coord = best_coord;
    // re-solve the achieving coordinate for the witness pair (warm, cheap)
    LpResult hi = ctx.optimize_coord(best_coord, +1);
    LpResult lo = ctx.optimize_coord(best_coord, -1);
    report.witness = {hi.point, lo.point};
    return report;
}

namespace {

/// Downward-closed node set covering the deviation support of x, mapped
/// through the encoding. Returns false if x deviates outside the universe.
bool closure_nodes(const SeqElem& x, const tree::Encoding& enc,
                   std::set<tree::TreeNode>& out) {
    out.insert(tree::TreeNode{});
    for (const auto& [i, v] : x.deviations()) {
        (void)v;
        if (i < 1 || i > enc.size()) return false;
        tree::TreeNode node = enc.node_of(i);
        while (!node.is_root()) {
            out.insert(node);
            node = node.parent();
        }
    }
    return true;
}

}  // namespace

bool membership(const SeqElem& x, const Region& r) {
    for (const LinConstraint& c : r.constraints) {
        Rational val = c.f.eval(x);
        if (c.sense == ConstraintSense::GE ? val < c.bound : val > c.bound)
            return false;
    }

    Region hull;
    if (r.tree_family) {
        // The vertex family is ancestor-closed, so mixing weights project
        // onto any downward-closed node set covering the target's support:
        // each vertex agrees with its deepest surviving ancestor on every
        // covered coordinate, and box elements can be taken constant beyond
        // it (coordinate halfwidth >= limit halfwidth).
        std::set<tree::TreeNode> nodes;
        if (!closure_nodes(x, *r.tree_family, nodes)) return false;
        std::vector<int> kept;
        std::vector<SeqElem> verts;
        verts.reserve(2 * nodes.size());
        for (const tree::TreeNode& n : nodes) {
            kept.push_back(r.tree_family->index_of(n));
            verts.push_back(seq::make_x_alpha(n, *r.tree_family));
        }
        for (const tree::TreeNode& n : nodes)
            verts.push_back(seq::make_x_alpha(n, *r.tree_family).negate());
        std::sort(kept.begin(), kept.end());
        hull.hull_parts.emplace_back(VertexPolytope(std::move(verts)));
        for (const HullPart& part : r.hull_parts)
            if (const auto* mp = std::get_if<MinkowskiPart>(&part)) {
                MinkowskiPart reduced = *mp;
                std::vector<int> inter;
                std::set_intersection(reduced.coords.begin(), reduced.coords.end(),
                                      kept.begin(), kept.end(),
                                      std::back_inserter(inter));
                reduced.coords = std::move(inter);
                hull.hull_parts.emplace_back(std::move(reduced));
            }
    } else {
        hull.hull_parts = r.hull_parts;
    }

    std::set<int> pins;
    for (int t : hull.tracked_coords()) pins.insert(t);
    for (const auto& [i, v] : x.deviations()) {
        (void)v;
        pins.insert(i);
    }

    // pin every covered coordinate and the limit to the target's values
    Region pinned = std::move(hull);
    for (int t : pins) {
        pinned.constraints.push_back(
            {Functional::coordinate(t), x.coord(t), ConstraintSense::GE});
        pinned.constraints.push_back(
            {Functional::coordinate(t), x.coord(t), ConstraintSense::LE});
    }
    pinned.constraints.push_back({Functional::limit(), x.limit(), ConstraintSense::GE});
    pinned.constraints.push_back({Functional::limit(), x.limit(), ConstraintSense::LE});

    RegionLp probe(pinned, {});
    return probe.feasible();
}

Rational diameter_pairs_oracle(const Region& r,
                               const std::vector<SeqElem>& candidates) {
    for (size_t k = 0; k < candidates.size(); ++k)
        if (!membership(candidates[k], r))
            throw std::invalid_argument("candidate " + std::to_string(k) +
                                        " is not in the region");
    Rational best = 0;
    for (size_t a = 0; a < candidates.size(); ++a)
        for (size_t b = a + 1; b < candidates.size(); ++b)
            best = rat_max(best, seq::distance(candidates[a], candidates[b]));
    return best;
}

LpResult min_sup_norm(const Region& r) {
    RegionLp ctx(r, {}, RegionLp::Mode::NormVar);
    if (!ctx.feasible()) return {.feasible = false, .value = 0, .point = {}};
    return ctx.minimize_norm();
}

}  // namespace slicelab::poly
