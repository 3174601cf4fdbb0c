#include "slicelab/lp.hpp"

#include <stdexcept>

namespace slicelab::lp {

Solver::Solver(Problem problem) { standardize(problem); }

void Solver::standardize(const Problem& problem) {
    n_ = problem.num_vars;
    m_ = static_cast<int>(problem.rows.size());
    if (m_ == 0) throw std::invalid_argument("lp: need at least one row");
    if (n_ <= 0) throw std::invalid_argument("lp: need at least one variable");

    struct NormRow {
        std::vector<Term> terms;
        Sense sense;
        Rational rhs;
    };
    std::vector<NormRow> rows;
    rows.reserve(static_cast<size_t>(m_));
    for (const Row& r : problem.rows) {
        NormRow nr{r.terms, r.sense, r.rhs};
        // scale to integer coefficients
        BigInt lcm = nr.rhs.get_den();
        for (const Term& t : nr.terms)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
        if (lcm != 1) {
            Rational f(lcm);
            for (Term& t : nr.terms) t.coeff *= f;
            nr.rhs *= f;
        }
        if (nr.rhs < 0) {
            for (Term& t : nr.terms) t.coeff = -t.coeff;
            nr.rhs = -nr.rhs;
            if (nr.sense == Sense::LE)
                nr.sense = Sense::GE;
            else if (nr.sense == Sense::GE)
                nr.sense = Sense::LE;
        }
        rows.push_back(std::move(nr));
    }

    // columns: structural | one aux per LE/GE row | artificials for GE/EQ
    int aux_count = 0;
    int art_count = 0;
    for (const NormRow& r : rows) {
        if (r.sense != Sense::EQ) ++aux_count;
        if (r.sense != Sense::LE) ++art_count;
    }

    total_cols_ = n_ + aux_count + art_count;
    cols_.assign(static_cast<size_t>(total_cols_), {});
    is_artificial_.assign(static_cast<size_t>(total_cols_), false);
    rhs_.resize(static_cast<size_t>(m_));
    basis_.assign(static_cast<size_t>(m_), -1);

    for (int i = 0; i < m_; ++i) {
        for (const Term& t : rows[static_cast<size_t>(i)].terms) {
            if (t.var < 0 || t.var >= n_)
                throw std::invalid_argument("lp: term variable out of range");
            if (t.coeff != 0)
                cols_[static_cast<size_t>(t.var)].push_back({i, t.coeff});
        }
        rhs_[static_cast<size_t>(i)] = rows[static_cast<size_t>(i)].rhs;
    }

    int next = n_;
    for (int i = 0; i < m_; ++i) {
        Sense s = rows[static_cast<size_t>(i)].sense;
        if (s == Sense::LE) {
            cols_[static_cast<size_t>(next)].push_back({i, Rational(1)});
            basis_[static_cast<size_t>(i)] = next;
            ++next;
        } else if (s == Sense::GE) {
            cols_[static_cast<size_t>(next)].push_back({i, Rational(-1)});
            ++next;
        }
    }
    for (int i = 0; i < m_; ++i) {
        if (rows[static_cast<size_t>(i)].sense == Sense::LE) continue;
        cols_[static_cast<size_t>(next)].push_back({i, Rational(1)});
        is_artificial_[static_cast<size_t>(next)] = true;
        basis_[static_cast<size_t>(i)] = next;
        ++next;
    }

    in_basis_.assign(static_cast<size_t>(total_cols_), false);
    for (int b : basis_) in_basis_[static_cast<size_t>(b)] = true;

    binv_.assign(static_cast<size_t>(m_),
                 std::vector<Rational>(static_cast<size_t>(m_), Rational(0)));
    for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    xb_ = rhs_;
    y_.assign(static_cast<size_t>(m_), Rational(0));
}

const Rational& Solver::cost_at(const std::vector<Rational>* cost, bool phase1,
                                int j) const {
    if (phase1)
        return is_artificial_[static_cast<size_t>(j)] ? minus_one_ : zero_;
    return j < n_ ? (*cost)[static_cast<size_t>(j)] : zero_;
}

void Solver::compute_y(const std::vector<Rational>* cost, bool phase1) {
    Rational tmp;
    for (int k = 0; k < m_; ++k) {
        Rational acc(0);
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = cost_at(cost, phase1, basis_[static_cast<size_t>(i)]);
            if (cb == 0) continue;
            const Rational& b = binv_[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (b == 0) continue;
            tmp = cb;
            tmp *= b;
            acc += tmp;
        }
        y_[static_cast<size_t>(k)] = std::move(acc);
    }
}

void Solver::pivot(int leave_row, int enter_col) {
    std::vector<Rational> d(static_cast<size_t>(m_), Rational(0));
    Rational tmp;
    for (int i = 0; i < m_; ++i) {
        Rational acc(0);
        for (const ColEntry& e : cols_[static_cast<size_t>(enter_col)]) {
            const Rational& b = binv_[static_cast<size_t>(i)][static_cast<size_t>(e.row)];
            if (b == 0) continue;
            tmp = b;
            tmp *= e.val;
            acc += tmp;
        }
        d[static_cast<size_t>(i)] = std::move(acc);
    }
    const size_t r = static_cast<size_t>(leave_row);
    const Rational piv = d[r];
    for (auto& v : binv_[r])
        if (v != 0) v /= piv;
    xb_[r] /= piv;
    for (int i = 0; i < m_; ++i) {
        if (i == leave_row) continue;
        const Rational& f = d[static_cast<size_t>(i)];
        if (f == 0) continue;
        auto& row_i = binv_[static_cast<size_t>(i)];
        for (int k = 0; k < m_; ++k) {
            const Rational& base = binv_[r][static_cast<size_t>(k)];
            if (base == 0) continue;
            tmp = f;
            tmp *= base;
            row_i[static_cast<size_t>(k)] -= tmp;
        }
        if (xb_[r] != 0) {
            tmp = f;
            tmp *= xb_[r];
            xb_[static_cast<size_t>(i)] -= tmp;
        }
    }
    in_basis_[static_cast<size_t>(basis_[r])] = false;
    basis_[r] = enter_col;
    in_basis_[static_cast<size_t>(enter_col)] = true;
}

Status Solver::run_simplex(const std::vector<Rational>* cost, bool phase1) {
    Rational rc, tmp;
    for (;;) {
        compute_y(cost, phase1);
        int enter = -1;
        for (int j = 0; j < total_cols_; ++j) {
            if (in_basis_[static_cast<size_t>(j)]) continue;
            // Artificials never enter: phase 1 starts them basic, and once
            // driven out they stay out.
            if (is_artificial_[static_cast<size_t>(j)]) continue;
            rc = cost_at(cost, phase1, j);
            for (const ColEntry& e : cols_[static_cast<size_t>(j)]) {
                const Rational& yv = y_[static_cast<size_t>(e.row)];
                if (yv == 0) continue;
                tmp = yv;
                tmp *= e.val;
                rc -= tmp;
            }
            if (rc > 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return Status::Optimal;

        // ratio test on d = binv * A_enter
        int leave = -1;
        Rational best_ratio;
        for (int i = 0; i < m_; ++i) {
            Rational di(0);
            for (const ColEntry& e : cols_[static_cast<size_t>(enter)]) {
                const Rational& b = binv_[static_cast<size_t>(i)][static_cast<size_t>(e.row)];
                if (b == 0) continue;
                tmp = b;
                tmp *= e.val;
                di += tmp;
            }
            if (di <= 0) continue;
            Rational ratio = xb_[static_cast<size_t>(i)] / di;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio &&
                 basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
                leave = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leave < 0) return Status::Unbounded;
        pivot(leave, enter);
    }
}

bool Solver::run_phase1() {
    bool any_artificial = false;
    for (int i = 0; i < m_; ++i)
        if (is_artificial_[static_cast<size_t>(basis_[static_cast<size_t>(i)])]) {
            any_artificial = true;
            break;
        }
    phase1_done_ = true;
    if (!any_artificial) {
        feasible_ = true;
        return true;
    }
    Status st = run_simplex(nullptr, /*phase1=*/true);
    if (st == Status::Unbounded) throw std::logic_error("lp: phase 1 unbounded");
    Rational obj(0);
    for (int i = 0; i < m_; ++i)
        if (is_artificial_[static_cast<size_t>(basis_[static_cast<size_t>(i)])])
            obj += xb_[static_cast<size_t>(i)];
    feasible_ = (obj == 0);
    if (!feasible_) return false;

    // Drive basic artificials (all at value zero now) out where a pivot
    // exists; a row with no eligible pivot is dependent and keeps its
    // artificial basic at zero.
    for (int i = 0; i < m_; ++i) {
        int b = basis_[static_cast<size_t>(i)];
        if (!is_artificial_[static_cast<size_t>(b)]) continue;
        Rational tmp;
        for (int j = 0; j < total_cols_; ++j) {
            if (in_basis_[static_cast<size_t>(j)] || is_artificial_[static_cast<size_t>(j)])
                continue;
            Rational dij(0);
            for (const ColEntry& e : cols_[static_cast<size_t>(j)]) {
                const Rational& bb = binv_[static_cast<size_t>(i)][static_cast<size_t>(e.row)];
                if (bb == 0) continue;
                tmp = bb;
                tmp *= e.val;
                dij += tmp;
            }
            if (dij != 0) {
                pivot(i, j);
                break;
            }
        }
    }
    return true;
}

bool Solver::feasible() {
    if (!phase1_done_) run_phase1();
    return feasible_;
}

Solution Solver::maximize(const std::vector<Rational>& c) {
    if (static_cast<int>(c.size()) != n_)
        throw std::invalid_argument("lp: objective size mismatch");
    Solution sol;
    if (!feasible()) {
        sol.status = Status::Infeasible;
        return sol;
    }
    Status st = run_simplex(&c, /*phase1=*/false);
    if (st == Status::Unbounded) {
        sol.status = Status::Unbounded;
        return sol;
    }
    sol.status = Status::Optimal;
    Rational obj(0);
    Rational tmp;
    for (int i = 0; i < m_; ++i) {
        int b = basis_[static_cast<size_t>(i)];
        if (is_artificial_[static_cast<size_t>(b)] && xb_[static_cast<size_t>(i)] != 0)
            throw std::logic_error("lp: artificial variable drifted nonzero");
        if (b < n_ && c[static_cast<size_t>(b)] != 0 && xb_[static_cast<size_t>(i)] != 0) {
            tmp = c[static_cast<size_t>(b)];
            tmp *= xb_[static_cast<size_t>(i)];
            obj += tmp;
        }
    }
    sol.objective = std::move(obj);
    return sol;
}

void Solver::primal_values(std::vector<Rational>& out) const {
    out.assign(static_cast<size_t>(n_), Rational(0));
    for (int i = 0; i < m_; ++i) {
        int b = basis_[static_cast<size_t>(i)];
        if (b < n_) out[static_cast<size_t>(b)] = xb_[static_cast<size_t>(i)];
    }
}

}  // namespace slicelab::lp
