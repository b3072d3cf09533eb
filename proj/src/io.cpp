// io.cpp
// Artifact (de)serialization.  Dumps are canonical — object keys sorted (the
// JSON library stores objects as ordered maps), entries in container order,
// no incidental whitespace — so equal artifacts produce equal bytes and
// content hashes are meaningful.

#include "kagome/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kagome/errors.hpp"
#include "kagome/sha256.hpp"

namespace kagome {
namespace {

using json = nlohmann::json;

json vtx_json(Vtx v) { return json::array({v.x, v.y}); }

Vtx vtx_parse(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ValidationError("expected a vertex as [x,y]: " + j.dump());
    return Vtx{j[0].get<int>(), j[1].get<int>()};
}

json edge_coloring_json(const EdgeColoring& b) {
    json out = json::array();
    for (const auto& [e, c] : b) out.push_back(json::array({vtx_json(e.a), vtx_json(e.b), c}));
    return out;
}

EdgeColoring edge_coloring_parse(const json& j) {
    if (!j.is_array()) throw ValidationError("expected an edge coloring as [[[ax,ay],[bx,by],c],...]");
    EdgeColoring b;
    for (const json& item : j) {
        if (!item.is_array() || item.size() != 3)
            throw ValidationError("expected an edge color as [[ax,ay],[bx,by],c]: " + item.dump());
        b[make_edge(vtx_parse(item[0]), vtx_parse(item[1]))] = item[2].get<int>();
    }
    return b;
}

json parse_root(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError(std::string(what) + ": not valid JSON");
    return j;
}

const json& field(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Catalogues.

std::string catalogue_to_json(const Catalogue& cat) {
    json entries = json::array();
    for (const ExtendedRegion& t : cat.entries) {
        json in = json::array(), out = json::array();
        for (Vtx u : t.in_list()) in.push_back(vtx_json(u));
        for (Vtx u : t.out_list()) out.push_back(vtx_json(u));
        json e{{"w", vtx_json(t.w)}, {"v", vtx_json(t.v)}, {"in", in}, {"out", out}};
        if (t.cut) e["cut"] = vtx_json(*t.cut);
        entries.push_back(std::move(e));
    }
    return json{{"family", std::string(1, cat.family)}, {"entries", entries}}.dump();
}

Catalogue catalogue_from_json(const std::string& text) {
    const json j = parse_root(text, "catalogue");
    Catalogue cat;
    const std::string fam = field(j, "family", "catalogue").get<std::string>();
    if (fam != "A" && fam != "F") throw ValidationError("catalogue: family must be \"A\" or \"F\"");
    cat.family = fam[0];
    for (const json& e : field(j, "entries", "catalogue")) {
        std::vector<Vtx> in, out;
        for (const json& u : field(e, "in", "catalogue entry")) in.push_back(vtx_parse(u));
        for (const json& u : field(e, "out", "catalogue entry")) out.push_back(vtx_parse(u));
        std::optional<Vtx> cut;
        if (e.contains("cut")) cut = vtx_parse(e["cut"]);
        cat.entries.emplace_back(vtx_parse(field(e, "w", "catalogue entry")),
                                 vtx_parse(field(e, "v", "catalogue entry")), in, out, cut);
    }
    const ValidationReport rep = validate_catalogue(cat);
    if (!rep.ok) throw ValidationError("catalogue: " + rep.message);
    return cat;
}

std::string catalogue_hash(const Catalogue& cat) { return sha256_hex(catalogue_to_json(cat)); }

// ---------------------------------------------------------------------------
// Mu tables.

std::string mu_table_to_json(const MuTable& t) {
    json entries = json::array();
    for (const auto& [fm, fc] : t.entries) {
        json e{{"f", fm.first},
               {"m", fm.second},
               {"value", rat_str(fc.value)},
               {"empty", fc.empty},
               {"witness", edge_coloring_json(fc.witness)}};
        entries.push_back(std::move(e));
    }
    return json{{"catalogue_hash", t.catalogue_hash}, {"entries", entries}}.dump();
}

MuTable mu_table_from_json(const std::string& text) {
    const json j = parse_root(text, "mu table");
    MuTable t;
    t.catalogue_hash = field(j, "catalogue_hash", "mu table").get<std::string>();
    for (const json& e : field(j, "entries", "mu table")) {
        FamilyConstant fc;
        fc.value = rat_parse(field(e, "value", "mu entry").get<std::string>());
        fc.empty = field(e, "empty", "mu entry").get<bool>();
        fc.witness = edge_coloring_parse(field(e, "witness", "mu entry"));
        const auto key = std::make_pair(field(e, "f", "mu entry").get<int>(),
                                        field(e, "m", "mu entry").get<int>());
        if (!t.entries.emplace(key, std::move(fc)).second)
            throw ValidationError("mu table: duplicate (f,m) entry");
    }
    return t;
}

std::string mu_table_hash(const MuTable& t) { return sha256_hex(mu_table_to_json(t)); }

// ---------------------------------------------------------------------------
// Coverage sets (JSON lines).

std::string afset_to_jsonl(const AFSet& s) {
    std::ostringstream out;
    out << json{{"a_hash", s.a_hash},
                {"f_hash", s.f_hash},
                {"mu_hash", s.mu_hash},
                {"generator", s.generator}}
               .dump()
        << "\n";
    for (const FiveTuple& t : s.tuples) {
        out << json{{"a", t.a},
                    {"m", t.m},
                    {"f", t.f},
                    {"child_a", json::array({t.child_a[0], t.child_a[1], t.child_a[2]})},
                    {"child_m", json::array({t.child_m[0], t.child_m[1], t.child_m[2]})}}
                   .dump()
            << "\n";
    }
    return out.str();
}

AFSet afset_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    AFSet s;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = parse_root(line, "coverage set line");
        if (header) {
            s.a_hash = field(j, "a_hash", "coverage set header").get<std::string>();
            s.f_hash = field(j, "f_hash", "coverage set header").get<std::string>();
            s.mu_hash = field(j, "mu_hash", "coverage set header").get<std::string>();
            s.generator = field(j, "generator", "coverage set header").get<std::string>();
            header = false;
            continue;
        }
        FiveTuple t;
        t.a = field(j, "a", "coverage tuple").get<int>();
        t.m = field(j, "m", "coverage tuple").get<int>();
        t.f = field(j, "f", "coverage tuple").get<int>();
        const json& ca = field(j, "child_a", "coverage tuple");
        const json& cm = field(j, "child_m", "coverage tuple");
        if (!ca.is_array() || ca.size() != 3 || !cm.is_array() || cm.size() != 3)
            throw ValidationError("coverage tuple: child arrays must have length 3");
        for (int i = 0; i < 3; ++i) {
            t.child_a[i] = ca[i].get<int>();
            t.child_m[i] = cm[i].get<int>();
        }
        s.tuples.push_back(t);
    }
    if (header) throw ValidationError("coverage set: missing header line");
    return s;
}

// ---------------------------------------------------------------------------
// Certificates.

std::string certificate_to_json(const DecayCertificate& c) {
    json alphas = json::array();
    for (const auto& [id, a] : c.alphas)
        alphas.push_back(json{{"a", id.first}, {"m", id.second}, {"alpha", rat_str(a)}});
    return json{{"epsilon", rat_str(c.epsilon)},
                {"alpha_max", rat_str(c.alpha_max)},
                {"accelerated", c.accelerated},
                {"hashes", json{{"a", c.a_hash}, {"f", c.f_hash}, {"mu", c.mu_hash}}},
                {"alphas", alphas}}
        .dump();
}

DecayCertificate certificate_from_json(const std::string& text) {
    const json j = parse_root(text, "certificate");
    DecayCertificate c;
    c.epsilon = rat_parse(field(j, "epsilon", "certificate").get<std::string>());
    c.alpha_max = rat_parse(field(j, "alpha_max", "certificate").get<std::string>());
    c.accelerated = field(j, "accelerated", "certificate").get<bool>();
    const json& hashes = field(j, "hashes", "certificate");
    c.a_hash = field(hashes, "a", "certificate hashes").get<std::string>();
    c.f_hash = field(hashes, "f", "certificate hashes").get<std::string>();
    c.mu_hash = field(hashes, "mu", "certificate hashes").get<std::string>();
    for (const json& e : field(j, "alphas", "certificate")) {
        const AsetId id{field(e, "a", "certificate alpha").get<int>(),
                        field(e, "m", "certificate alpha").get<int>()};
        const Rat a = rat_parse(field(e, "alpha", "certificate alpha").get<std::string>());
        if (!c.alphas.emplace(id, a).second)
            throw ValidationError("certificate: duplicate (a,m) alpha");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Fixtures.

std::string region_to_json(const Region& r) {
    json verts = json::array();
    for (Vtx v : r.verts) verts.push_back(vtx_json(v));
    return json{{"verts", verts}}.dump();
}

Region region_from_json(const std::string& text) {
    const json j = parse_root(text, "region");
    std::vector<Vtx> vs;
    for (const json& u : field(j, "verts", "region")) vs.push_back(vtx_parse(u));
    return Region(std::move(vs));
}

std::string vertex_coloring_to_json(const VertexColoring& b) {
    json colors = json::array();
    for (const auto& [v, c] : b) colors.push_back(json::array({vtx_json(v), c}));
    return json{{"colors", colors}}.dump();
}

VertexColoring vertex_coloring_from_json(const std::string& text) {
    const json j = parse_root(text, "vertex coloring");
    VertexColoring b;
    for (const json& item : field(j, "colors", "vertex coloring")) {
        if (!item.is_array() || item.size() != 2)
            throw ValidationError("vertex coloring: expected [[x,y],c] items");
        b[vtx_parse(item[0])] = item[1].get<int>();
    }
    return b;
}

std::string pair_to_json(const EdgeBoundaryPair& x) {
    json verts = json::array();
    for (Vtx v : x.region.verts) verts.push_back(vtx_json(v));
    return json{{"region", verts},
                {"w", vtx_json(x.w)},
                {"v", vtx_json(x.v)},
                {"c1", x.c1},
                {"c2", x.c2},
                {"shared", edge_coloring_json(x.shared)}}
        .dump();
}

EdgeBoundaryPair pair_from_json(const std::string& text) {
    const json j = parse_root(text, "boundary pair");
    EdgeBoundaryPair x;
    std::vector<Vtx> vs;
    for (const json& u : field(j, "region", "boundary pair")) vs.push_back(vtx_parse(u));
    x.region = Region(std::move(vs));
    x.w = vtx_parse(field(j, "w", "boundary pair"));
    x.v = vtx_parse(field(j, "v", "boundary pair"));
    x.c1 = field(j, "c1", "boundary pair").get<int>();
    x.c2 = field(j, "c2", "boundary pair").get<int>();
    x.shared = edge_coloring_parse(field(j, "shared", "boundary pair"));
    return x;
}

}  // namespace kagome
