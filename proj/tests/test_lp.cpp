#include <doctest.h>

#include "slicelab/lp.hpp"

using namespace slicelab;
using lp::Problem;
using lp::Row;
using lp::Sense;
using lp::Solver;
using lp::Status;

TEST_CASE("basic maximization") {
    // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    Problem p;
    p.num_vars = 2;
    p.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(2)}}, Sense::LE, Rational(4)});
    p.rows.push_back(Row{{{0, Rational(3)}, {1, Rational(1)}}, Sense::LE, Rational(6)});
    Solver s(p);
    auto sol = s.maximize({Rational(1), Rational(1)});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == make_rat(14, 5));
    std::vector<Rational> x;
    s.primal_values(x);
    CHECK(x[0] == make_rat(8, 5));
    CHECK(x[1] == make_rat(6, 5));
}

TEST_CASE("equality and GE rows") {
    // max y  s.t.  x + y = 1, y >= 1/4, x >= 0, y >= 0
    Problem p;
    p.num_vars = 2;
    p.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(1)}}, Sense::EQ, Rational(1)});
    p.rows.push_back(Row{{{1, Rational(1)}}, Sense::GE, make_rat(1, 4)});
    Solver s(p);
    auto sol = s.maximize({Rational(0), Rational(1)});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 1);
    auto sol2 = s.maximize({Rational(0), Rational(-1)});
    CHECK(sol2.objective == make_rat(-1, 4));
}

TEST_CASE("infeasible detection") {
    Problem p;
    p.num_vars = 1;
    p.rows.push_back(Row{{{0, Rational(1)}}, Sense::GE, Rational(2)});
    p.rows.push_back(Row{{{0, Rational(1)}}, Sense::LE, Rational(1)});
    Solver s(p);
    CHECK_FALSE(s.feasible());
    CHECK(s.maximize({Rational(1)}).status == Status::Infeasible);
}

TEST_CASE("unbounded detection") {
    Problem p;
    p.num_vars = 1;
    p.rows.push_back(Row{{{0, Rational(1)}}, Sense::GE, Rational(0)});
    Solver s(p);
    CHECK(s.maximize({Rational(1)}).status == Status::Unbounded);
}

TEST_CASE("degenerate ties terminate (Bland)") {
    // multiple identical rows force degenerate pivots
    Problem p;
    p.num_vars = 2;
    for (int k = 0; k < 4; ++k)
        p.rows.push_back(
            Row{{{0, Rational(1)}, {1, Rational(1)}}, Sense::LE, Rational(1)});
    p.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(-1)}}, Sense::EQ, Rational(0)});
    Solver s(p);
    auto sol = s.maximize({Rational(1), Rational(1)});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 1);
}

TEST_CASE("dependent equality rows are tolerated") {
    // x + y = 1 stated twice plus its double
    Problem p;
    p.num_vars = 2;
    p.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(1)}}, Sense::EQ, Rational(1)});
    p.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(1)}}, Sense::EQ, Rational(1)});
    p.rows.push_back(Row{{{0, Rational(2)}, {1, Rational(2)}}, Sense::EQ, Rational(2)});
    Solver s(p);
    auto sol = s.maximize({Rational(1), Rational(0)});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 1);
}

TEST_CASE("warm restarts reproduce exact optima") {
    Problem p;
    p.num_vars = 3;
    p.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}},
                         Sense::EQ, Rational(1)});
    p.rows.push_back(Row{{{0, make_rat(1, 3)}, {1, make_rat(-2, 7)}}, Sense::LE,
                         make_rat(1, 5)});
    Solver s(p);
    std::vector<std::vector<Rational>> objectives = {
        {Rational(1), Rational(0), Rational(0)},
        {Rational(0), Rational(1), Rational(0)},
        {Rational(-1), Rational(2), make_rat(1, 2)},
        {Rational(1), Rational(0), Rational(0)},
    };
    std::vector<Rational> first;
    for (int round = 0; round < 2; ++round) {
        Solver fresh(p);
        for (size_t i = 0; i < objectives.size(); ++i) {
            auto a = s.maximize(objectives[i]);
            auto b = fresh.maximize(objectives[i]);
            CHECK(a.objective == b.objective);
        }
    }
}
