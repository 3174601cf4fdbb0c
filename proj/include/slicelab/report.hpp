#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slicelab/polytope.hpp"
#include "slicelab/rational.hpp"
#include "slicelab/seqspace.hpp"
#include "slicelab/sumspace.hpp"

namespace slicelab::report {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Exact rational plus a flagged decimal approximation.
json rat_json(const Rational& r);
json elem_json(const seq::SeqElem& x);
json functional_json(const seq::Functional& f);
json diameter_json(const poly::DiameterReport& d, bool include_ranges = true);
json sum_elem_json(const sum::SumElem& x);

struct Report {
    std::string experiment;
    json config;
    std::vector<json> cases;  // each case carries a boolean "pass"
    json summary;             // experiment-level extras (may be empty)
    long wall_ms = 0;

    bool all_pass() const;
};

enum class Format { Json, Csv, Text };

Format parse_format(const std::string& name);

json to_json(const Report& r);
std::string render(const Report& r, Format format);

}  // namespace slicelab::report
