#include "slicelab/report.hpp"

#include <sstream>
#include <stdexcept>

namespace slicelab::report {

json rat_json(const Rational& r) {
    return json{{"exact", rat_str(r)}, {"approx", rat_approx(r)}};
}

json elem_json(const seq::SeqElem& x) {
    json dev = json::object();
    for (const auto& [i, v] : x.deviations()) dev[std::to_string(i)] = rat_str(v);
    return json{{"limit", rat_str(x.limit())}, {"deviations", std::move(dev)}};
}

json functional_json(const seq::Functional& f) {
    json coeffs = json::object();
    for (const auto& [i, v] : f.coeffs()) coeffs[std::to_string(i)] = rat_str(v);
    return json{{"limit_coeff", rat_str(f.limit_coeff())},
                {"coeffs", std::move(coeffs)}};
}

json diameter_json(const poly::DiameterReport& d, bool include_ranges) {
    if (d.empty_region) return json{{"empty_region", true}};
    json out{{"diameter", rat_json(d.diameter)},
             {"achieving_coord", d.achieving_coord == poly::kLimitCoord
                                     ? json("lim")
                                     : json(d.achieving_coord)},
             {"witness", json::array({elem_json(d.witness.first),
                                      elem_json(d.witness.second)})}};
    if (include_ranges) {
        json ranges = json::object();
        for (const auto& [t, mm] : d.coordinate_ranges) {
            std::string key = t == poly::kLimitCoord ? "lim" : std::to_string(t);
            ranges[key] = json::array({rat_str(mm.first), rat_str(mm.second)});
        }
        out["coordinate_ranges"] = std::move(ranges);
    }
    return out;
}

json sum_elem_json(const sum::SumElem& x) {
    json blocks = json::array();
    for (const seq::SeqElem& b : x.blocks) blocks.push_back(elem_json(b));
    return json{{"blocks", std::move(blocks)}};
}

bool Report::all_pass() const {
    for (const json& c : cases)
        if (!c.value("pass", false)) return false;
    return true;
}

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "text") return Format::Text;
    throw std::invalid_argument("unknown format: " + name);
}

json to_json(const Report& r) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["experiment"] = r.experiment;
    out["config"] = r.config;
    out["cases"] = r.cases;
    if (!r.summary.is_null() && !r.summary.empty()) out["summary"] = r.summary;
    out["total_cases"] = r.cases.size();
    long passed = 0;
    for (const json& c : r.cases)
        if (c.value("pass", false)) ++passed;
    out["passed"] = passed;
    out["all_pass"] = r.all_pass();
    out["wall_clock_ms"] = r.wall_ms;
    return out;
}

namespace {

std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string render(const Report& r, Format format) {
    switch (format) {
        case Format::Json:
            return to_json(r).dump(2) + "\n";
        case Format::Csv: {
            std::ostringstream os;
            os << "case,pass,detail\n";
            for (size_t i = 0; i < r.cases.size(); ++i) {
                json detail = r.cases[i];
                detail.erase("pass");
                os << i << ',' << (r.cases[i].value("pass", false) ? "true" : "false")
                   << ',' << csv_escape(detail.dump()) << '\n';
            }
            return os.str();
        }
        case Format::Text: {
            std::ostringstream os;
            os << "experiment: " << r.experiment << "\n";
            long passed = 0;
            for (size_t i = 0; i < r.cases.size(); ++i) {
                bool p = r.cases[i].value("pass", false);
                passed += p;
                os << "  case " << i << ": " << (p ? "pass" : "FAIL") << "\n";
            }
            os << "result: " << passed << "/" << r.cases.size() << " passed, "
               << (r.all_pass() ? "PASS" : "FAIL") << " (" << r.wall_ms << " ms)\n";
            return os.str();
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace slicelab::report
