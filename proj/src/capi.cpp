// capi.cpp
// The C entry point: parses the request, dispatches to the module that owns
// the operation, and serializes the result.  Exceptions become status codes;
// nothing library-internal crosses the boundary.  Progress for long builds
// goes to stderr so responses stay machine-parseable.

#include "kagome/capi.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>

#include <json.hpp>

#include "kagome/afset.hpp"
#include "kagome/certificate.hpp"
#include "kagome/dynamics.hpp"
#include "kagome/errors.hpp"
#include "kagome/gamma.hpp"
#include "kagome/io.hpp"
#include "kagome/mu.hpp"

namespace {

using json = nlohmann::json;
using namespace kagome;

constexpr int kOk = 0, kUsage = 1, kInvalid = 2, kInfeasible = 3, kBudget = 4;

const json& field(const json& req, const char* key) {
    auto it = req.find(key);
    if (it == req.end())
        throw ValidationError(std::string("request: missing field \"") + key + "\"");
    return *it;
}

Region region_arg(const json& req, const char* key = "region") {
    return region_from_json(field(req, key).dump());
}

VertexColoring coloring_arg(const json& req, const char* key) {
    return vertex_coloring_from_json(field(req, key).dump());
}

Vtx vtx_arg(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("request: expected a vertex as [x,y]");
    return Vtx{j[0].get<int>(), j[1].get<int>()};
}

json vtx_json(Vtx v) { return json::array({v.x, v.y}); }

// The lexicographically first enumerated state, used as the deterministic
// chain start.
VertexColoring first_state(const Region& r, const VertexColoring& bnd) {
    ColorCounter cc(r);
    cc.apply_vertex_boundary(bnd);
    struct Found {
        std::vector<int> cols;
    };
    try {
        cc.for_each([](const std::vector<int>& cols) { throw Found{cols}; });
    } catch (const Found& f) {
        VertexColoring s;
        for (std::size_t i = 0; i < r.verts.size(); ++i) s[r.verts[i]] = f.cols[i];
        return s;
    }
    throw ValidationError("dynamics: the region admits no agreeing proper coloring");
}

// --- handlers --------------------------------------------------------------

// count: {"region":{...}, "boundary":{...}?, "vertex":[x,y]?}
//   -> {"count":"N"} plus "by_color":["n1",...] when "vertex" is given.
json op_count(const json& req) {
    const Region r = region_arg(req);
    ColorCounter cc(r);
    if (req.contains("boundary")) cc.apply_vertex_boundary(coloring_arg(req, "boundary"));
    json out{{"count", std::to_string(cc.count())}};
    if (req.contains("vertex")) {
        const CountVector n = cc.count_by_color(vtx_arg(req["vertex"]));
        json by = json::array();
        for (int c = 1; c <= Q; ++c) by.push_back(std::to_string(n[c]));
        out["by_color"] = by;
    }
    return out;
}

// shells: {"v":[x,y], "d_max":n} -> {"shells":[{"d":0,"shell":1,"ball":1},...]}
json op_shells(const json& req) {
    const Vtx v = vtx_arg(field(req, "v"));
    const int d_max = field(req, "d_max").get<int>();
    if (d_max < 0 || d_max > 1000) throw ValidationError("shells: d_max must lie in 0..1000");
    json rows = json::array();
    std::size_t cum = 0;
    for (int d = 0; d <= d_max; ++d) {
        const std::size_t sc = shell_count(v, d);
        cum += sc;
        rows.push_back(json{{"d", d}, {"shell", sc}, {"ball", cum}});
    }
    return json{{"shells", rows}};
}

// gamma: {"pair":{...}, "d":3, "budget":{"max_region":..,"max_depth":..,
//          "max_memo":..,"descending_match":..}?}
//   -> {"nu":"p/q","gamma":"p/q","nodes":N,"memo_hits":N}
json op_gamma(const json& req) {
    const EdgeBoundaryPair x = pair_from_json(field(req, "pair").dump());
    const ValidationReport rep = validate(x);
    if (!rep.ok) throw ValidationError("gamma: " + rep.message);
    const int d = field(req, "d").get<int>();
    GammaBudget budget;
    if (req.contains("budget")) {
        const json& b = req["budget"];
        if (b.contains("max_region")) budget.max_region = b["max_region"].get<std::size_t>();
        if (b.contains("max_depth")) budget.max_depth = b["max_depth"].get<int>();
        if (b.contains("max_memo")) budget.max_memo = b["max_memo"].get<std::size_t>();
        if (b.contains("descending_match"))
            budget.descending_match = b["descending_match"].get<bool>();
    }
    GammaStats stats;
    const Rat g = gamma_d(x, d, budget, &stats);
    return json{{"nu", rat_str(nu(x))},
                {"gamma", rat_str(g)},
                {"nodes", stats.nodes},
                {"memo_hits", stats.memo_hits}};
}

// mu-table: {"catalogue":{...}, "allow_split":true?} -> the mu-table artifact.
json op_mu_table(const json& req) {
    const Catalogue fcat = catalogue_from_json(field(req, "catalogue").dump());
    const bool allow_split = req.value("allow_split", true);
    MuTable t = build_mu_table(fcat, allow_split,
                               [](const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); });
    t.catalogue_hash = catalogue_hash(fcat);
    return json::parse(mu_table_to_json(t));
}

// afset-build: {"a_catalogue":{...}, "f_catalogue":{...}, "mu_table":{...}}
//   -> {"jsonl":"<coverage-set artifact>"}
json op_afset_build(const json& req) {
    const Catalogue acat = catalogue_from_json(field(req, "a_catalogue").dump());
    const Catalogue fcat = catalogue_from_json(field(req, "f_catalogue").dump());
    const MuTable mu = mu_table_from_json(field(req, "mu_table").dump());
    if (!mu.catalogue_hash.empty() && mu.catalogue_hash != catalogue_hash(fcat))
        throw ValidationError("afset-build: mu table was built from a different template catalogue");
    AFSet s = build(big_labelings(), acat, fcat, mu);
    s.a_hash = catalogue_hash(acat);
    s.f_hash = catalogue_hash(fcat);
    s.mu_hash = mu_table_hash(mu);
    return json{{"jsonl", afset_to_jsonl(s)}};
}

// cert-solve: {"afset_jsonl":"...", "mu_table":{...}, "cap":"1000000"?,
//              "epsilon":"1/1000"} or {"bisect":{"lo":"...","hi":"...","iters":24}}
//   -> feasible:   {"feasible":true,"epsilon":"...","certificate":{...}}
//   -> infeasible: {"feasible":false,"error":"...","witness":[...]} (status 3)
int op_cert_solve(const json& req, json& out) {
    const AFSet s = afset_from_jsonl(field(req, "afset_jsonl").get<std::string>());
    const MuTable mu = mu_table_from_json(field(req, "mu_table").dump());
    if (!s.mu_hash.empty() && s.mu_hash != mu_table_hash(mu))
        throw ValidationError("cert-solve: coverage set was built from a different mu table");
    const Rat cap = rat_parse(req.value("cap", std::string("1000000")));
    if (req.contains("epsilon")) {
        const Rat eps = rat_parse(req["epsilon"].get<std::string>());
        const SolveResult res = solve(s, mu, eps, cap);
        if (!res.feasible) {
            out = json{{"feasible", false},
                       {"error", "no decay vector exists below the cap at epsilon = " + rat_str(eps)},
                       {"witness", res.witness}};
            return kInfeasible;
        }
        out = json{{"feasible", true},
                   {"epsilon", rat_str(eps)},
                   {"certificate", json::parse(certificate_to_json(res.cert))}};
        return kOk;
    }
    const json& b = field(req, "bisect");
    const EpsilonSearch found =
        bisect_epsilon(s, mu, rat_parse(field(b, "lo").get<std::string>()),
                       rat_parse(field(b, "hi").get<std::string>()), b.value("iters", 20), cap);
    if (!found.any) {
        out = json{{"feasible", false},
                   {"error", "no feasible epsilon in the bisection range"}};
        return kInfeasible;
    }
    out = json{{"feasible", true},
               {"epsilon", rat_str(found.eps)},
               {"certificate", json::parse(certificate_to_json(found.cert))}};
    return kOk;
}

// cert-verify: {"certificate":{...}, "afset_jsonl":"...", "mu_table":{...}}
//   -> ok: {"ok":true,"epsilon":"...","alpha_max":"..."}; else status 2.
int op_cert_verify(const json& req, json& out) {
    const DecayCertificate cert = certificate_from_json(field(req, "certificate").dump());
    const AFSet s = afset_from_jsonl(field(req, "afset_jsonl").get<std::string>());
    const MuTable mu = mu_table_from_json(field(req, "mu_table").dump());
    const VerifyResult res = verify(cert, s, mu);
    if (!res.ok) {
        out = json{{"ok", false}, {"error", res.message}};
        return kInvalid;
    }
    out = json{{"ok", true},
               {"epsilon", rat_str(cert.epsilon)},
               {"alpha_max", rat_str(cert.alpha_max)},
               {"tuples", s.tuples.size()}};
    return kOk;
}

// lemma9: {"region":{...}, "max_verts":30?}
//   -> {"holds":bool,"checked":"N","counterexamples":"K","witness":{...}?}
json op_lemma9(const json& req) {
    const Region r = region_arg(req);
    const TwoEqualReport rep =
        check_two_equal_neighbours(r, req.value("max_verts", std::size_t{30}));
    json out{{"holds", rep.holds},
             {"checked", std::to_string(ColorCounter(r).count())},
             {"counterexamples", std::to_string(rep.counterexamples)}};
    if (rep.witness) out["witness"] = json::parse(vertex_coloring_to_json(*rep.witness));
    return out;
}

ChainConfig chain_arg(const json& req) {
    ChainConfig cfg;
    cfg.region = region_arg(req);
    if (req.contains("boundary")) cfg.boundary = coloring_arg(req, "boundary");
    const std::string variant = req.value("variant", std::string("glauber"));
    if (variant == "glauber")
        cfg.variant = Variant::glauber;
    else if (variant == "edge")
        cfg.variant = Variant::edge_heatbath;
    else if (variant == "ball")
        cfg.variant = Variant::ball;
    else
        throw ValidationError("dynamics: variant must be glauber, edge, or ball");
    cfg.ball_d = req.value("ball_d", 1);
    cfg.seed = req.value("seed", std::uint64_t{0});
    return cfg;
}

// dynamics: {"region":{...}, "boundary":{...}?, "variant":"glauber|edge|ball",
//            "ball_d":1?, "seed":0?, "steps":N, "points":P?, "trials":T,
//            "omega_budget":50000?}
//   -> {"omega":"N","series":[{"t":0,"tv":..,"lo":..,"hi":..},...]}
json op_dynamics(const json& req) {
    const ChainConfig cfg = chain_arg(req);
    const std::uint64_t steps = field(req, "steps").get<std::uint64_t>();
    const std::uint64_t trials = field(req, "trials").get<std::uint64_t>();
    const int points = req.value("points", 8);
    if (points < 1 || steps > 10'000'000 || trials > 10'000'000)
        throw ValidationError("dynamics: points must be >= 1 and steps/trials <= 1e7");
    const std::size_t omega_budget = req.value("omega_budget", std::size_t{50000});
    const VertexColoring sigma0 = first_state(cfg.region, cfg.boundary);
    json series = json::array();
    std::uint64_t omega = 0;
    std::uint64_t prev_t = UINT64_MAX;
    for (int i = 0; i <= points; ++i) {
        const std::uint64_t t = steps * i / points;
        if (t == prev_t) continue;
        prev_t = t;
        const TvEstimate est = tv_to_uniform(cfg, sigma0, t, trials, omega_budget);
        omega = est.omega;
        series.push_back(json{{"t", t}, {"tv", est.tv}, {"lo", est.lo}, {"hi", est.hi}});
    }
    return json{{"omega", omega}, {"series", series}};
}

// path: {"region":{...}, "sigma1":{...}, "sigma2":{...}}
//   -> {"moves":[[[x,y],c],...],"length":N,"hamming":H}
json op_path(const json& req) {
    const Region r = region_arg(req);
    const VertexColoring s1 = coloring_arg(req, "sigma1");
    const VertexColoring s2 = coloring_arg(req, "sigma2");
    const std::vector<Move> moves = recolouring_path(r, s1, s2);
    json ms = json::array();
    for (const Move& m : moves) ms.push_back(json::array({vtx_json(m.v), m.c}));
    std::size_t hamming = 0;
    for (const auto& [v, c] : s1) hamming += (s2.at(v) != c);
    return json{{"moves", ms}, {"length", moves.size()}, {"hamming", hamming}};
}

int dispatch(const std::string& op, const json& req, json& out) {
    if (op == "count") out = op_count(req);
    else if (op == "shells") out = op_shells(req);
    else if (op == "gamma") out = op_gamma(req);
    else if (op == "mu-table") out = op_mu_table(req);
    else if (op == "afset-build") out = op_afset_build(req);
    else if (op == "cert-solve") return op_cert_solve(req, out);
    else if (op == "cert-verify") return op_cert_verify(req, out);
    else if (op == "lemma9") out = op_lemma9(req);
    else if (op == "dynamics") out = op_dynamics(req);
    else if (op == "path") out = op_path(req);
    else {
        out = json{{"error", "unknown operation: " + op}};
        return kUsage;
    }
    return kOk;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

struct kg_session {};

kg_session* kg_session_new(void) { return new kg_session; }

void kg_session_free(kg_session* s) { delete s; }

int kg_run(kg_session* s, const char* op, const char* request_json, char** response_json) {
    if (response_json) *response_json = nullptr;
    if (!s || !op || !request_json || !response_json) return kUsage;
    int status = kUsage;
    json out;
    try {
        const json req = json::parse(request_json, nullptr, false);
        if (req.is_discarded()) {
            out = json{{"error", "request is not valid JSON"}};
        } else {
            status = dispatch(op, req, out);
        }
    } catch (const ValidationError& e) {
        status = kInvalid;
        out = json{{"error", e.what()}};
    } catch (const BudgetExceeded& e) {
        status = kBudget;
        out = json{{"error", e.what()}};
    } catch (const std::invalid_argument& e) {
        status = kInvalid;
        out = json{{"error", e.what()}};
    } catch (const std::logic_error& e) {
        status = kInvalid;
        out = json{{"error", std::string("internal: ") + e.what()}};
    } catch (const std::exception& e) {
        status = kUsage;
        out = json{{"error", e.what()}};
    }
    *response_json = dup_string(out.dump());
    if (!*response_json) return kUsage;
    return status;
}

void kg_string_free(char* s) { std::free(s); }

const char* kg_version(void) { return "0.1.0"; }

}  // extern "C"
