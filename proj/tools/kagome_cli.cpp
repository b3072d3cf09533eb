// kagome_cli.cpp
// Command-line front end.  Every subcommand reads its input files, assembles
// a JSON request, and hands it to the shared library through the C API; the
// CLI itself contains no pipeline logic.  Progress goes to stderr, results to
// stdout or the requested output file, and the process exit code mirrors the
// API status (0 ok, 1 usage/IO, 2 validation, 3 infeasible, 4 budget).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kagome/capi.h"

namespace {

using json = nlohmann::json;

constexpr int kUsage = 1;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

struct Api {
    kg_session* session = nullptr;
    Api() : session(kg_session_new()) {}
    ~Api() { kg_session_free(session); }

    // Runs op; returns the status and parses the response (always JSON).
    int run(const std::string& op, const json& request, json& response) const {
        char* raw = nullptr;
        const int status = kg_run(session, op.c_str(), request.dump().c_str(), &raw);
        response = raw ? json::parse(raw, nullptr, false) : json{};
        kg_string_free(raw);
        if (response.is_discarded()) throw std::runtime_error("API returned malformed JSON");
        return status;
    }
};

// Runs op and applies the default reporting: on success write the response
// (or a projection of it) to out_path/stdout, on failure print the error to
// stderr.  Returns the process exit code.
int run_and_report(const Api& api, const std::string& op, const json& request,
                   const std::string& out_path,
                   const std::string& project_field = std::string()) {
    json response;
    const int status = api.run(op, request, response);
    if (status != 0) {
        std::cerr << "error: " << response.value("error", std::string("unknown")) << "\n";
        return status;
    }
    if (!project_field.empty())
        write_output(out_path, response.at(project_field).get<std::string>());
    else
        write_output(out_path, response.dump());
    return 0;
}

json parse_file(const std::string& path, const char* what) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw std::runtime_error(std::string(what) + ": not valid JSON: " + path);
    return j;
}

std::string csv_series(const json& response) {
    std::ostringstream out;
    out << "step,tv,ci_lo,ci_hi\n";
    char buf[128];
    for (const json& row : response.at("series")) {
        std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(row.at("t").get<std::uint64_t>()),
                      row.at("tv").get<double>(), row.at("lo").get<double>(),
                      row.at("hi").get<double>());
        out << buf;
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact colouring counts, decay certificates, and chain dynamics "
                 "on the kagome lattice (q = 5)."};
    app.require_subcommand(1);
    Api api;

    // --- count ---------------------------------------------------------
    auto* count = app.add_subcommand("count", "Count proper colourings of a region");
    std::string count_region, count_boundary, count_out;
    std::vector<int> count_vertex;
    count->add_option("--region", count_region, "region JSON file")->required();
    count->add_option("--boundary", count_boundary, "vertex-boundary JSON file or 'zero'");
    count->add_option("--vertex", count_vertex, "split counts by this vertex's colour (x y)")
        ->expected(2);
    count->add_option("-o,--out", count_out, "output file (default stdout)");

    // --- shells --------------------------------------------------------
    auto* shells = app.add_subcommand("shells", "Shell and ball sizes around a vertex");
    std::vector<int> shells_vertex{1, 1};
    int shells_dmax = 10;
    std::string shells_out;
    shells->add_option("--vertex", shells_vertex, "centre vertex (x y)")->expected(2);
    shells->add_option("--d-max", shells_dmax, "largest distance");
    shells->add_option("-o,--out", shells_out, "output file (default stdout)");

    // --- gamma ---------------------------------------------------------
    auto* gamma = app.add_subcommand("gamma", "Depth-d discrepancy of a boundary pair");
    std::string gamma_pair, gamma_out;
    int gamma_d = 1, gamma_max_region = 16, gamma_max_depth = 12;
    bool gamma_desc = false;
    gamma->add_option("--pair", gamma_pair, "boundary-pair JSON file")->required();
    gamma->add_option("--d", gamma_d, "recursion depth (>= 1)")->required();
    gamma->add_option("--max-region", gamma_max_region, "region-size budget");
    gamma->add_option("--max-depth", gamma_max_depth, "depth budget");
    gamma->add_flag("--descending-match", gamma_desc, "descending coupling tie-break");
    gamma->add_option("-o,--out", gamma_out, "output file (default stdout)");

    // --- mu-table ------------------------------------------------------
    auto* mu = app.add_subcommand("mu-table", "Family constants for a template catalogue");
    std::string mu_catalogue, mu_out;
    bool mu_no_split = false;
    mu->add_option("--catalogue", mu_catalogue, "template-catalogue JSON file")->required();
    mu->add_flag("--no-split", mu_no_split, "disable split acceleration");
    mu->add_option("-o,--out", mu_out, "output file (default stdout)");

    // --- afset-build ----------------------------------------------------
    auto* ab = app.add_subcommand("afset-build", "Build the coverage set from catalogues");
    std::string ab_a, ab_f, ab_mu, ab_out;
    ab->add_option("--a-catalogue", ab_a, "partition-catalogue JSON file")->required();
    ab->add_option("--f-catalogue", ab_f, "template-catalogue JSON file")->required();
    ab->add_option("--mu", ab_mu, "mu-table JSON file")->required();
    ab->add_option("-o,--out", ab_out, "output file (default stdout)");

    // --- cert-solve ----------------------------------------------------
    auto* solve = app.add_subcommand("cert-solve", "Solve for a decay certificate");
    std::string solve_afset, solve_mu, solve_eps, solve_cap = "1000000", solve_out;
    std::string solve_lo, solve_hi;
    int solve_iters = 20;
    solve->add_option("--afset", solve_afset, "coverage-set JSONL file")->required();
    solve->add_option("--mu", solve_mu, "mu-table JSON file")->required();
    solve->add_option("--epsilon", solve_eps, "decay rate (exact rational, e.g. 1/1000)");
    solve->add_option("--bisect-lo", solve_lo, "bisection lower epsilon");
    solve->add_option("--bisect-hi", solve_hi, "bisection upper epsilon");
    solve->add_option("--bisect-iters", solve_iters, "bisection iterations");
    solve->add_option("--cap", solve_cap, "divergence cap for the solver");
    solve->add_option("-o,--out", solve_out, "certificate output file (default stdout)");

    // --- cert-verify -----------------------------------------------------
    auto* verify = app.add_subcommand("cert-verify", "Re-verify a certificate");
    std::string verify_cert, verify_afset, verify_mu;
    verify->add_option("certificate", verify_cert, "certificate JSON file")->required();
    verify->add_option("afset", verify_afset, "coverage-set JSONL file")->required();
    verify->add_option("mu", verify_mu, "mu-table JSON file")->required();

    // --- lemma9 ----------------------------------------------------------
    auto* lemma9 = app.add_subcommand(
        "lemma9", "Check that every proper colouring has a vertex with two equal neighbours");
    std::string lemma9_region;
    std::size_t lemma9_max = 30;
    lemma9->add_option("--region", lemma9_region, "region JSON file")->required();
    lemma9->add_option("--max-verts", lemma9_max, "region-size budget");

    // --- dynamics --------------------------------------------------------
    auto* dyn = app.add_subcommand("dynamics", "Simulate a chain and estimate TV to uniform");
    std::string dyn_region, dyn_boundary = "zero", dyn_variant = "glauber", dyn_out;
    int dyn_ball_d = 1, dyn_points = 8;
    std::uint64_t dyn_seed = 0, dyn_steps = 1000, dyn_trials = 200;
    dyn->add_option("--region", dyn_region, "region JSON file")->required();
    dyn->add_option("--boundary", dyn_boundary, "vertex-boundary JSON file or 'zero'");
    dyn->add_option("--variant", dyn_variant, "glauber | edge | ball");
    dyn->add_option("--ball-d", dyn_ball_d, "ball radius (variant=ball)");
    dyn->add_option("--seed", dyn_seed, "RNG seed");
    dyn->add_option("--steps", dyn_steps, "chain length");
    dyn->add_option("--trials", dyn_trials, "independent trials per time point");
    dyn->add_option("--points", dyn_points, "time points in the series");
    dyn->add_option("-o,--out", dyn_out, "CSV output file (default stdout)");

    // --- path ------------------------------------------------------------
    auto* path = app.add_subcommand("path", "Single-vertex-update path between two colourings");
    std::string path_region, path_from, path_to, path_out;
    path->add_option("--region", path_region, "region JSON file")->required();
    path->add_option("--from", path_from, "start colouring JSON file")->required();
    path->add_option("--to", path_to, "destination colouring JSON file")->required();
    path->add_option("-o,--out", path_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*count) {
            json req{{"region", parse_file(count_region, "region")}};
            if (!count_boundary.empty() && count_boundary != "zero")
                req["boundary"] = parse_file(count_boundary, "boundary");
            if (!count_vertex.empty()) req["vertex"] = json::array({count_vertex[0], count_vertex[1]});
            return run_and_report(api, "count", req, count_out);
        }
        if (*shells) {
            const json req{{"v", json::array({shells_vertex[0], shells_vertex[1]})},
                           {"d_max", shells_dmax}};
            return run_and_report(api, "shells", req, shells_out);
        }
        if (*gamma) {
            const json req{{"pair", parse_file(gamma_pair, "pair")},
                           {"d", gamma_d},
                           {"budget", json{{"max_region", gamma_max_region},
                                           {"max_depth", gamma_max_depth},
                                           {"descending_match", gamma_desc}}}};
            return run_and_report(api, "gamma", req, gamma_out);
        }
        if (*mu) {
            const json req{{"catalogue", parse_file(mu_catalogue, "catalogue")},
                           {"allow_split", !mu_no_split}};
            return run_and_report(api, "mu-table", req, mu_out);
        }
        if (*ab) {
            const json req{{"a_catalogue", parse_file(ab_a, "a-catalogue")},
                           {"f_catalogue", parse_file(ab_f, "f-catalogue")},
                           {"mu_table", parse_file(ab_mu, "mu table")}};
            return run_and_report(api, "afset-build", req, ab_out, "jsonl");
        }
        if (*solve) {
            json req{{"afset_jsonl", read_file(solve_afset)},
                     {"mu_table", parse_file(solve_mu, "mu table")},
                     {"cap", solve_cap}};
            if (!solve_eps.empty()) {
                req["epsilon"] = solve_eps;
            } else if (!solve_lo.empty() && !solve_hi.empty()) {
                req["bisect"] = json{{"lo", solve_lo}, {"hi", solve_hi}, {"iters", solve_iters}};
            } else {
                std::cerr << "error: give --epsilon or both --bisect-lo and --bisect-hi\n";
                return kUsage;
            }
            json response;
            const int status = api.run("cert-solve", req, response);
            if (status != 0) {
                std::cerr << "error: " << response.value("error", std::string("unknown")) << "\n";
                if (response.contains("witness"))
                    for (const json& line : response["witness"])
                        std::cerr << "  " << line.get<std::string>() << "\n";
                return status;
            }
            write_output(solve_out, response.at("certificate").dump());
            std::cout << "FEASIBLE at epsilon=" << response.at("epsilon").get<std::string>()
                      << "\n";
            return 0;
        }
        if (*verify) {
            const json req{{"certificate", parse_file(verify_cert, "certificate")},
                           {"afset_jsonl", read_file(verify_afset)},
                           {"mu_table", parse_file(verify_mu, "mu table")}};
            json response;
            const int status = api.run("cert-verify", req, response);
            if (status != 0) {
                std::cout << "BAD: " << response.value("error", std::string("unknown")) << "\n";
                return status;
            }
            std::cout << "GOOD w.r.t. ε=" << response.at("epsilon").get<std::string>()
                      << " (alpha_max=" << response.at("alpha_max").get<std::string>() << ")\n";
            return 0;
        }
        if (*lemma9) {
            const json req{{"region", parse_file(lemma9_region, "region")},
                           {"max_verts", lemma9_max}};
            json response;
            const int status = api.run("lemma9", req, response);
            if (status != 0) {
                std::cerr << "error: " << response.value("error", std::string("unknown")) << "\n";
                return status;
            }
            if (response.at("holds").get<bool>())
                std::cout << "holds (" << response.at("checked").get<std::string>()
                          << " colourings checked)\n";
            else
                std::cout << "counterexample (" << response.at("counterexamples").get<std::string>()
                          << " of " << response.at("checked").get<std::string>()
                          << " colourings): " << response.at("witness").dump() << "\n";
            return 0;
        }
        if (*dyn) {
            json req{{"region", parse_file(dyn_region, "region")},
                     {"variant", dyn_variant == "edge_heatbath" ? "edge" : dyn_variant},
                     {"ball_d", dyn_ball_d},
                     {"seed", dyn_seed},
                     {"steps", dyn_steps},
                     {"trials", dyn_trials},
                     {"points", dyn_points}};
            if (!dyn_boundary.empty() && dyn_boundary != "zero")
                req["boundary"] = parse_file(dyn_boundary, "boundary");
            json response;
            const int status = api.run("dynamics", req, response);
            if (status != 0) {
                std::cerr << "error: " << response.value("error", std::string("unknown")) << "\n";
                return status;
            }
            write_output(dyn_out, csv_series(response));
            return 0;
        }
        if (*path) {
            const json req{{"region", parse_file(path_region, "region")},
                           {"sigma1", parse_file(path_from, "start colouring")},
                           {"sigma2", parse_file(path_to, "destination colouring")}};
            return run_and_report(api, "path", req, path_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
