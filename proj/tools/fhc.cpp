#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhc/boundary.hpp"
#include "fhc/closedform.hpp"
#include "fhc/errata.hpp"
#include "fhc/extremality.hpp"
#include "fhc/finitevol.hpp"
#include "fhc/model.hpp"
#include "fhc/scan.hpp"

using json = nlohmann::json;

namespace {

// optional key=value defaults, path taken from FHC_CONFIG
std::map<std::string, std::string> load_config() {
    std::map<std::string, std::string> cfg;
    const char* path = std::getenv("FHC_CONFIG");
    if (!path) return cfg;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
        cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return cfg;
}

struct GraphChoice {
    std::string preset = "loop";
    std::string adjacency;  // row-major 9 digits, comma separated

    fhc::GraphSpec resolve() const {
        if (!adjacency.empty()) {
            std::array<int, 9> a{};
            std::stringstream ss(adjacency);
            std::string tok;
            int i = 0;
            while (std::getline(ss, tok, ',') && i < 9) a[i++] = std::stoi(tok);
            if (i != 9)
                throw fhc::InvalidParameter("--adjacency needs 9 entries");
            return fhc::GraphSpec::custom(a);
        }
        return fhc::GraphSpec::preset(preset);
    }
};

json fixed_point_json(const fhc::BoundaryFixedPoint& fp) {
    return {{"z1", fp.z1},
            {"z2", fp.z2},
            {"residual", fp.residual},
            {"symmetric", fp.symmetric()}};
}

json report_json(const fhc::ExtremalityReport& rep) {
    return {{"lambda", rep.fixed_point.params.lambda()},
            {"z", rep.fixed_point.z1},
            {"s1", rep.spectrum.s1},
            {"s2", rep.spectrum.s2},
            {"s3", rep.spectrum.s3},
            {"s0", rep.spectrum.s0},
            {"kappa", rep.kappa},
            {"gamma", rep.gamma},
            {"ks", rep.ks_value},
            {"msw", rep.msw_value},
            {"verdict", fhc::to_string(rep.verdict)}};
}

void print_kv(const json& j) {
    for (auto& [key, value] : j.items())
        std::cout << key << " = " << value.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    auto cfg = load_config();

    CLI::App app{"Boundary laws, closed-form roots, and extremality "
                 "classification for three-state hard-core models on Cayley "
                 "trees"};
    app.require_subcommand(1);

    GraphChoice graph;
    int k = cfg.count("k") ? std::stoi(cfg["k"]) : 3;
    double lambda = cfg.count("lambda") ? std::stod(cfg["lambda"]) : 1.0;
    bool as_json = false;
    std::string csv_path;
    if (cfg.count("graph")) graph.preset = cfg["graph"];

    app.add_option("--graph", graph.preset, "graph preset: loop|rod");
    app.add_option("--adjacency", graph.adjacency,
                   "custom symmetric 0/1 adjacency, row-major a00,a01,...,a22");
    app.add_option("--k", k, "branching order of the tree");
    app.add_flag("--json", as_json, "emit a JSON report");
    app.add_option("--csv", csv_path, "write CSV output to this path");

    auto* solve = app.add_subcommand("solve", "solve the tree recursion");
    double solve_lambda = lambda;
    bool solve_all = false;
    solve->add_option("--lambda", solve_lambda, "activity")->required();
    solve->add_flag("--all", solve_all, "report every fixed point");

    auto* roots = app.add_subcommand("roots", "quartic roots and branches");
    double roots_lambda = lambda;
    roots->add_option("--lambda", roots_lambda, "activity")->required();

    auto* classify = app.add_subcommand("classify", "extremality verdict");
    double classify_lambda = lambda;
    classify->add_option("--lambda", classify_lambda, "activity")->required();

    auto* thresholds = app.add_subcommand("thresholds",
                                          "Kesten-Stigum sign changes");

    auto* scan = app.add_subcommand("scan", "phase scan over an activity grid");
    double lmin = 0.1, lmax = 10.0;
    int steps = 100;
    bool log_spacing = false;
    scan->add_option("--lambda-min", lmin, "grid start");
    scan->add_option("--lambda-max", lmax, "grid end");
    scan->add_option("--steps", steps, "grid size");
    scan->add_flag("--log", log_spacing, "logarithmic spacing");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo broadcast");
    double sim_lambda = lambda;
    int depth = 10;
    std::uint64_t samples = 100000, seed = 1;
    simulate->add_option("--lambda", sim_lambda, "activity")->required();
    simulate->add_option("--depth", depth, "tree depth");
    simulate->add_option("--samples", samples, "sample count");
    simulate->add_option("--seed", seed, "64-bit RNG seed");

    auto* errata = app.add_subcommand("errata",
                                      "computed-versus-published cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        fhc::GraphSpec g = graph.resolve();

        if (*solve) {
            fhc::ModelParams params(g, k, solve_lambda);
            json out;
            if (solve_all) {
                auto set = fhc::solve_all_ti(params);
                out["lambda"] = solve_lambda;
                out["count"] = set.count();
                json arr = json::array();
                for (auto& fp : set.solutions) arr.push_back(fixed_point_json(fp));
                out["fixed_points"] = arr;
            } else {
                auto fp = fhc::solve_symmetric(params);
                out = fixed_point_json(fp);
                out["lambda"] = solve_lambda;
            }
            if (as_json)
                std::cout << out.dump(2) << "\n";
            else
                print_kv(out);
            if (!csv_path.empty()) {
                std::ofstream os(csv_path);
                os << "lambda,z1,z2,residual\n";
                auto emit = [&](const fhc::BoundaryFixedPoint& fp) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                                  solve_lambda, fp.z1, fp.z2, fp.residual);
                    os << buf;
                };
                if (solve_all)
                    for (auto& fp : fhc::solve_all_ti(params).solutions) emit(fp);
                else
                    emit(fhc::solve_symmetric(params));
            }
        } else if (*roots) {
            auto preset = fhc::preset_of(g);
            double a = std::cbrt(roots_lambda);
            auto quartic = fhc::quartic_for(preset, a);
            auto rr = fhc::resolvent_t0(preset, a);
            auto pr = fhc::positive_root(preset, a);
            json out = {
                {"lambda", roots_lambda},
                {"a", a},
                {"quartic", {{"b", quartic.b}, {"c", quartic.c},
                             {"d", quartic.d}, {"e", quartic.e}}},
                {"t0", rr.t0},
                {"t0_residual", rr.residual},
                {"t0_printed", rr.printed_value},
                {"real_roots", fhc::ferrari_real_roots(quartic)},
                {"positive_root", pr.x},
                {"z", pr.x * pr.x * pr.x},
                {"quartic_residual", pr.quartic_residual},
                {"branch_outer_sign", pr.outer_sign},
                {"branch_inner_sign", pr.inner_sign},
                {"bisection_fallback", pr.from_bisection_fallback}};
            if (as_json)
                std::cout << out.dump(2) << "\n";
            else
                print_kv(out);
        } else if (*classify) {
            auto rep = fhc::classify(fhc::ModelParams(g, k, classify_lambda));
            json out = report_json(rep);
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                print_kv(out);
            }
        } else if (*thresholds) {
            auto found = fhc::thresholds(g, k);
            json arr = json::array();
            for (auto& t : found)
                arr.push_back({{"lambda", t.lambda}, {"condition", t.condition}});
            json out = {{"graph", g.name}, {"k", k}, {"thresholds", arr}};
            try {
                out["closed_form"] = fhc::thresholds_closed_form(g, k);
            } catch (const fhc::InvalidParameter&) {
                // custom graph: numeric route only
            }
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                for (auto& t : found) {
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "lambda = %.10f  (%s)\n",
                                  t.lambda, t.condition.c_str());
                    std::cout << buf;
                }
            }
        } else if (*scan) {
            auto result = fhc::run_scan(g, k, lmin, lmax, steps, log_spacing);
            if (!csv_path.empty()) {
                std::ofstream os(csv_path);
                fhc::write_scan_csv(os, result.records);
            } else {
                fhc::write_scan_csv(std::cout, result.records);
            }
            if (result.any_error) return 2;
        } else if (*simulate) {
            fhc::ModelParams params(g, k, sim_lambda);
            auto fp = fhc::solve_symmetric(params);
            auto kern = fhc::transition_kernel(g, fp.z1, fp.z2);
            auto pi = fhc::root_marginal(g, k, sim_lambda, fp.z1, fp.z2);
            auto stats = fhc::broadcast_sample(kern, pi, k, depth, samples, seed);
            json levels = json::array();
            for (std::size_t m = 0; m < stats.level_marginals.size(); ++m)
                levels.push_back({{"level", m},
                                  {"marginal", stats.level_marginals[m]},
                                  {"correlation", stats.level_correlation[m]}});
            json out = {{"lambda", sim_lambda},
                        {"z", fp.z1},
                        {"pi", pi},
                        {"samples", stats.samples},
                        {"seed", seed},
                        {"violations", stats.admissibility_violations},
                        {"correlation_ratio", stats.correlation_ratio},
                        {"levels", levels}};
            if (as_json)
                std::cout << out.dump(2) << "\n";
            else
                print_kv(out);
            if (!csv_path.empty()) {
                std::ofstream os(csv_path);
                os << "level,pi0,pi1,pi2,correlation\n";
                for (std::size_t m = 0; m < stats.level_marginals.size(); ++m) {
                    char buf[200];
                    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n",
                                  m, stats.level_marginals[m][0],
                                  stats.level_marginals[m][1],
                                  stats.level_marginals[m][2],
                                  stats.level_correlation[m]);
                    os << buf;
                }
            }
        } else if (*errata) {
            auto entries = fhc::run_errata();
            if (as_json) {
                json arr = json::array();
                for (auto& e : entries)
                    arr.push_back({{"id", e.id},
                                   {"location", e.location},
                                   {"computed", e.computed},
                                   {"printed", e.printed},
                                   {"pass", e.pass},
                                   {"evidence", e.evidence}});
                std::cout << json{{"errata", arr}}.dump(2) << "\n";
            } else {
                for (auto& e : entries) {
                    std::cout << (e.pass ? "[pass] " : "[FAIL] ") << e.id << " ("
                              << e.location << ")\n        computed "
                              << e.computed << ", published " << e.printed
                              << "\n        " << e.evidence << "\n";
                }
            }
        }
    } catch (const fhc::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
