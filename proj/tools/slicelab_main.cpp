#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicelab/experiments.hpp"

namespace {

using slicelab::Rational;
using slicelab::parse_rat;
using json = nlohmann::json;
namespace ex = slicelab::experiments;
namespace rp = slicelab::report;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json cfg;
    in >> cfg;
    return cfg;
}

Rational get_rat(const json& cfg, const std::string& key, const Rational& fallback) {
    if (!cfg.contains(key)) return fallback;
    return parse_rat(cfg.at(key).get<std::string>());
}

std::vector<Rational> get_rats(const json& cfg, const std::string& key,
                               std::vector<Rational> fallback) {
    if (!cfg.contains(key)) return fallback;
    std::vector<Rational> out;
    for (const auto& s : cfg.at(key)) out.push_back(parse_rat(s.get<std::string>()));
    return out;
}

rp::Report dispatch(const std::string& experiment, const json& cfg, int jobs) {
    if (experiment == "k-slices") {
        ex::KSlicesConfig c;
        c.depth = cfg.value("depth", c.depth);
        c.branch = cfg.value("branch", c.branch);
        c.seeds = cfg.value("seeds", c.seeds);
        c.support = cfg.value("support", c.support);
        c.seed = cfg.value("seed", c.seed);
        c.lambdas = get_rats(cfg, "lambdas", c.lambdas);
        return ex::run_kslices(c, jobs);
    }
    if (experiment == "wn-diameter") {
        ex::WnDiameterConfig c;
        c.n = cfg.value("n", c.n);
        c.rho = get_rat(cfg, "rho", Rational(0));
        c.branch = cfg.value("branch", 0);
        if (cfg.contains("depths")) c.depths = cfg.at("depths").get<std::vector<int>>();
        return ex::run_wn_diameter(c, jobs);
    }
    if (experiment == "renorm-slices") {
        ex::RenormSlicesConfig c;
        c.depth = cfg.value("depth", c.depth);
        c.branch = cfg.value("branch", c.branch);
        c.epsilon = get_rat(cfg, "epsilon", c.epsilon);
        c.betas = get_rats(cfg, "betas", c.betas);
        c.seeds = cfg.value("seeds", c.seeds);
        c.support = cfg.value("support", c.support);
        c.seed = cfg.value("seed", c.seed);
        return ex::run_renorm_slices(c, jobs);
    }
    if (experiment == "renorm-weakopen") {
        ex::RenormWeakopenConfig c;
        c.epsilon = get_rat(cfg, "epsilon", c.epsilon);
        if (!cfg.contains("cases"))
            throw std::runtime_error("renorm-weakopen config needs a cases list");
        for (const auto& jc : cfg.at("cases")) {
            ex::RenormWeakopenConfig::Case cc;
            cc.gamma = parse_rat(jc.at("gamma").get<std::string>());
            cc.n = jc.at("n").get<int>();
            cc.depth = jc.value("depth", 1);
            cc.rho = jc.contains("rho") ? parse_rat(jc.at("rho").get<std::string>())
                                        : Rational(0);
            c.cases.push_back(std::move(cc));
        }
        return ex::run_renorm_weakopen(c, jobs);
    }
    if (experiment == "l2sum") {
        ex::L2SumConfig c;
        c.epsilons = get_rats(cfg, "epsilons",
                              {slicelab::make_rat(1, 2), slicelab::make_rat(1, 4),
                               slicelab::make_rat(1, 8), slicelab::make_rat(1, 16),
                               slicelab::make_rat(1, 32), slicelab::make_rat(1, 64)});
        c.u_branch = cfg.contains("u_branch")
                         ? cfg.at("u_branch").get<std::vector<int>>()
                         : std::vector<int>{5, 6, 9, 12, 12, 12};
        if (cfg.contains("other_dims"))
            c.other_dims = cfg.at("other_dims").get<std::vector<int>>();
        c.samples = cfg.value("samples", c.samples);
        c.seed = cfg.value("seed", c.seed);
        return ex::run_l2sum(c, jobs);
    }
    if (experiment == "ccs-bound") {
        ex::CcsConfig c;
        if (cfg.contains("dims")) c.dims = cfg.at("dims").get<std::vector<int>>();
        c.cases = cfg.value("cases", c.cases);
        c.block_support = cfg.value("block_support", c.block_support);
        c.lambda_pool = get_rats(cfg, "lambda_pool", c.lambda_pool);
        c.weight_pool = get_rats(cfg, "weight_pool", c.weight_pool);
        c.seed = cfg.value("seed", c.seed);
        return ex::run_ccs(c, jobs);
    }
    if (experiment == "selfcheck") {
        ex::SelfcheckConfig c;
        c.polytopes = cfg.value("polytopes", c.polytopes);
        c.max_vertices = cfg.value("max_vertices", c.max_vertices);
        c.max_coords = cfg.value("max_coords", c.max_coords);
        c.enc_depth = cfg.value("enc_depth", c.enc_depth);
        c.enc_branch = cfg.value("enc_branch", c.enc_branch);
        c.seed = cfg.value("seed", c.seed);
        return ex::run_selfcheck(c, jobs);
    }
    throw std::runtime_error("unknown experiment: " + experiment);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slicelab: exact finite-truncation checks for slice and "
                 "weak-open diameters in sequence spaces"};
    std::string experiment;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    int jobs = 2;
    app.add_option("experiment", experiment,
                   "k-slices | wn-diameter | renorm-slices | renorm-weakopen | "
                   "l2sum | ccs-bound | selfcheck")
        ->required();
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "json | csv | text")->capture_default_str();
    app.add_option("--jobs", jobs, "concurrent cases")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        rp::Report report = dispatch(experiment, load_config(config_path), jobs);
        std::string rendered = rp::render(report, rp::parse_format(format));
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot open output file: " + out_path);
            out << rendered;
        }
        std::cerr << (report.all_pass() ? "PASS" : "FAIL") << " " << experiment << " ("
                  << report.cases.size() << " cases, " << report.wall_ms << " ms)\n";
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
