#include <doctest.h>

#include "slicelab/experiments.hpp"
#include "slicelab/report.hpp"

using namespace slicelab;
using report::json;

TEST_CASE("rational serialization") {
    CHECK(rat_str(make_rat(-3, 4)) == "-3/4");
    CHECK(rat_str(Rational(7)) == "7");
    CHECK(parse_rat("-3/4") == make_rat(-3, 4));
    CHECK(parse_rat("12") == Rational(12));
    CHECK_THROWS(parse_rat("1.5"));
    CHECK_THROWS(parse_rat(""));
    CHECK_THROWS(parse_rat("1/0"));
    // approximations are flagged with exact partners
    json r = report::rat_json(make_rat(1, 3));
    CHECK(r["exact"] == "1/3");
    CHECK(r["approx"].get<std::string>().substr(0, 6) == "3.3333");
}

TEST_CASE("element serialization") {
    seq::SeqElem x(make_rat(-1, 2), {{3, Rational(2)}});
    json j = report::elem_json(x);
    CHECK(j["limit"] == "-1/2");
    CHECK(j["deviations"]["3"] == "2");
}

TEST_CASE("empty report renders in all formats") {
    report::Report r;
    r.experiment = "demo";
    r.config = json::object();
    CHECK(r.all_pass());
    json j = report::to_json(r);
    CHECK(j["total_cases"] == 0);
    std::string csv = report::render(r, report::Format::Csv);
    CHECK(csv == "case,pass,detail\n");
    CHECK_NOTHROW(report::render(r, report::Format::Text));
}

TEST_CASE("json round trip is byte identical") {
    experiments::SelfcheckConfig cfg;
    cfg.polytopes = 5;
    cfg.enc_depth = 2;
    cfg.enc_branch = 2;
    report::Report r = experiments::run_selfcheck(cfg, 1);
    std::string once = report::to_json(r).dump(2);
    std::string twice = json::parse(once).dump(2);
    CHECK(once == twice);

    std::string csv = report::render(r, report::Format::Csv);
    size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == r.cases.size() + 1);
}

TEST_CASE("campaigns are deterministic apart from the clock") {
    experiments::SelfcheckConfig cfg;
    cfg.polytopes = 8;
    cfg.enc_depth = 2;
    cfg.enc_branch = 2;
    report::Report a = experiments::run_selfcheck(cfg, 1);
    report::Report b = experiments::run_selfcheck(cfg, 2);  // different jobs
    json ja = report::to_json(a);
    json jb = report::to_json(b);
    ja.erase("wall_clock_ms");
    jb.erase("wall_clock_ms");
    CHECK(ja.dump() == jb.dump());
}
