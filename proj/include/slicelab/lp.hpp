#pragma once

#include <utility>
#include <vector>

#include "slicelab/rational.hpp"

namespace slicelab::lp {

enum class Sense { LE, GE, EQ };

enum class Status { Optimal, Infeasible, Unbounded };

struct Term {
    int var;
    Rational coeff;
};

struct Row {
    std::vector<Term> terms;
    Sense sense = Sense::LE;
    Rational rhs = 0;
};

/// maximize c.x  subject to  rows, x >= 0.
/// Callers model free variables as differences of nonnegative pairs.
struct Problem {
    int num_vars = 0;
    std::vector<Row> rows;
};

struct Solution {
    Status status = Status::Infeasible;
    Rational objective = 0;
};

/// Exact revised simplex over rationals.
///
/// Pivoting uses Bland's rule: the entering column is the lowest-index one
/// with positive reduced cost and the leaving row breaks ratio ties by the
/// lowest basic variable index. Deterministic and cycle-free, and the
/// first-index entering rule lets pricing stop at the first hit.
///
/// The basis persists across maximize() calls, so a sequence of objectives
/// over one feasible region re-optimizes from the previous optimum.
class Solver {
  public:
    explicit Solver(Problem problem);

    /// Runs phase 1 on first use. `c` has one entry per structural variable.
    Solution maximize(const std::vector<Rational>& c);

    /// Phase-1 feasibility only.
    bool feasible();

    /// Structural variable values of the current basis (call after a
    /// successful maximize to read the witness).
    void primal_values(std::vector<Rational>& out) const;

    int num_rows() const { return m_; }
    int num_structural() const { return n_; }

  private:
    struct ColEntry {
        int row;
        Rational val;
    };

    void standardize(const Problem& problem);
    bool run_phase1();
    Status run_simplex(const std::vector<Rational>* cost, bool phase1);
    const Rational& cost_at(const std::vector<Rational>* cost, bool phase1, int j) const;
    void compute_y(const std::vector<Rational>* cost, bool phase1);
    void pivot(int leave_row, int enter_col);

    int n_ = 0;        // structural variables
    int m_ = 0;        // rows
    int total_cols_ = 0;
    std::vector<std::vector<ColEntry>> cols_;  // sparse columns, integer entries
    std::vector<Rational> rhs_;
    std::vector<bool> is_artificial_;
    std::vector<bool> in_basis_;
    std::vector<int> basis_;                   // basic column per row
    std::vector<std::vector<Rational>> binv_;  // basis inverse, m x m
    std::vector<Rational> xb_;                 // basic values
    std::vector<Rational> y_;                  // simplex multipliers (scratch)
    Rational zero_ = 0;
    Rational minus_one_ = -1;
    bool phase1_done_ = false;
    bool feasible_ = false;
};

}  // namespace slicelab::lp
