#include "kagome/region.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

Region::Region(std::vector<Vtx> vs) : verts(std::move(vs)) {
    for (Vtx v : verts) {
        if (!is_vertex(v)) throw std::invalid_argument("Region: not a lattice vertex");
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
}

bool Region::contains(Vtx v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
}

int Region::index_of(Vtx v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || *it != v) return -1;
    return static_cast<int>(it - verts.begin());
}

Region Region::without(Vtx v) const {
    Region s;
    s.verts.reserve(verts.size());
    for (Vtx u : verts)
        if (u != v) s.verts.push_back(u);
    return s;
}

std::vector<Vtx> boundary_vertices(const Region& r) {
    std::set<Vtx> out;
    for (Vtx v : r.verts)
        for (Vtx u : neighbours(v))
            if (!r.contains(u)) out.insert(u);
    return {out.begin(), out.end()};
}

std::vector<Edge> region_edges(const Region& r) {
    std::set<Edge> es;
    for (Vtx v : r.verts)
        for (Vtx u : neighbours(v)) es.insert(make_edge(v, u));
    return {es.begin(), es.end()};
}

std::vector<Edge> interior_edges(const Region& r) {
    std::vector<Edge> es;
    for (const Edge& e : region_edges(r))
        if (r.contains(e.a) && r.contains(e.b)) es.push_back(e);
    return es;
}

std::vector<Edge> boundary_edges(const Region& r) {
    std::vector<Edge> es;
    for (const Edge& e : region_edges(r))
        if (r.contains(e.a) != r.contains(e.b)) es.push_back(e);
    return es;
}

int distance_to_region(Vtx w, const Region& r) {
    if (r.empty()) return -1;
    if (r.contains(w)) return 0;
    // BFS outward from w until we hit r.  The region is finite so some shell
    // of w contains it; bound the search by the coordinate spread for safety.
    int lim = 0;
    for (Vtx v : r.verts) lim = std::max({lim, std::abs(v.x - w.x), std::abs(v.y - w.y)});
    lim += 2;
    std::set<Vtx> seen{w};
    std::deque<std::pair<Vtx, int>> q{{w, 0}};
    while (!q.empty()) {
        auto [v, d] = q.front();
        q.pop_front();
        for (Vtx u : neighbours(v)) {
            if (r.contains(u)) return d + 1;
            if (std::abs(u.x - w.x) > lim || std::abs(u.y - w.y) > lim) continue;
            if (seen.insert(u).second) q.emplace_back(u, d + 1);
        }
    }
    throw std::logic_error("distance_to_region: search exhausted");  // unreachable
}

bool is_connected(const Region& r) {
    if (r.size() <= 1) return true;
    std::set<Vtx> seen{r.verts[0]};
    std::deque<Vtx> q{r.verts[0]};
    while (!q.empty()) {
        Vtx v = q.front();
        q.pop_front();
        for (Vtx u : neighbours(v))
            if (r.contains(u) && seen.insert(u).second) q.push_back(u);
    }
    return seen.size() == r.size();
}

// ---------------------------------------------------------------------------
// Anchored templates.

namespace {

std::string vtx_str(Vtx v) {
    std::ostringstream os;
    os << "(" << v.x << "," << v.y << ")";
    return os.str();
}

}  // namespace

ExtendedRegion::ExtendedRegion(Vtx w_, Vtx v_, const std::vector<Vtx>& in,
                               const std::vector<Vtx>& out, std::optional<Vtx> cut_)
    : w(w_), v(v_), cut(cut_) {
    if (!is_vertex(w) || !is_vertex(v) || !adjacent(w, v))
        throw ValidationError("ExtendedRegion: designated edge is not a lattice edge");
    labels[v] = true;
    labels[w] = false;
    for (Vtx u : in) {
        if (!is_vertex(u)) throw ValidationError("ExtendedRegion: label on non-vertex " + vtx_str(u));
        auto [it, fresh] = labels.emplace(u, true);
        if (!fresh && !it->second)
            throw ValidationError("ExtendedRegion: vertex labelled both in and out: " + vtx_str(u));
    }
    for (Vtx u : out) {
        if (!is_vertex(u)) throw ValidationError("ExtendedRegion: label on non-vertex " + vtx_str(u));
        auto [it, fresh] = labels.emplace(u, false);
        if (!fresh && it->second)
            throw ValidationError("ExtendedRegion: vertex labelled both in and out: " + vtx_str(u));
    }
    if (cut) {
        if (!labels_in(*cut) || *cut == v)
            throw ValidationError("ExtendedRegion: cut partner must be an in-vertex other than v");
    }
}

bool ExtendedRegion::labels_in(Vtx u) const {
    auto it = labels.find(u);
    return it != labels.end() && it->second;
}

Region ExtendedRegion::in_region() const { return Region(in_list()); }

std::vector<Vtx> ExtendedRegion::in_list() const {
    std::vector<Vtx> out;
    for (auto& [u, in] : labels)
        if (in) out.push_back(u);
    return out;
}

std::vector<Vtx> ExtendedRegion::out_list() const {
    std::vector<Vtx> out;
    for (auto& [u, in] : labels)
        if (!in) out.push_back(u);
    return out;
}

bool matches(const Region& r, Edge e, const ExtendedRegion& t) {
    bool a_in = r.contains(e.a), b_in = r.contains(e.b);
    if (!a_in && !b_in) throw ValidationError("matches: edge not in E(R)");
    if (a_in && b_in) return false;  // interior edge: no boundary orientation
    Vtx wx = a_in ? e.b : e.a;       // out endpoint
    Vtx vx = a_in ? e.a : e.b;       // in endpoint
    Aff g = placement(t.w, t.v, wx, vx);
    for (auto& [u, in] : t.labels)
        if (r.contains(g(u)) != in) return false;
    return true;
}

bool is_extended_subregion(const ExtendedRegion& tp, const ExtendedRegion& t) {
    if (tp.w != t.w || tp.v != t.v) return false;
    for (auto& [u, in] : tp.labels) {
        auto it = t.labels.find(u);
        if (it == t.labels.end() || it->second != in) return false;
    }
    return true;
}

ValidationReport validate_catalogue(const Catalogue& cat) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.message = msg;
        return rep;
    };
    if (cat.family != 'A' && cat.family != 'F') return fail("catalogue family must be 'A' or 'F'");
    if (cat.entries.empty()) return fail("catalogue has no entries");

    if (cat.family == 'F') {
        bool singleton = false;
        for (const ExtendedRegion& t : cat.entries) {
            if (t.in_list().size() == 1) {
                auto outs = t.out_list();
                if (outs.size() == 1 && outs[0] == t.w) singleton = true;
            }
        }
        if (!singleton)
            return fail("F catalogue is missing the single-vertex template (in = {v}, no out-labels beyond w)");
        return rep;
    }

    // Family 'A': exclusivity and exhaustiveness.  Bring every entry into the
    // frame of entry 0, collect the union support, and enumerate all in/out
    // labelings of it; each must be consistent with exactly one entry.
    Vtx w0 = cat.entries[0].w, v0 = cat.entries[0].v;
    std::vector<std::map<Vtx, bool>> canon;  // per entry, labels in entry-0 frame
    std::set<Vtx> support;
    for (const ExtendedRegion& t : cat.entries) {
        Aff g = placement(t.w, t.v, w0, v0);
        std::map<Vtx, bool> labels;
        for (auto& [u, in] : t.labels) labels[g(u)] = in;
        canon.push_back(labels);
        for (auto& [u, in] : labels)
            if (u != w0 && u != v0) support.insert(u);
    }
    std::vector<Vtx> supp(support.begin(), support.end());
    if (supp.size() > 20)
        throw BudgetExceeded("validate_catalogue: union support exceeds 20 free vertices");

    const std::size_t n = supp.size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        auto label_of = [&](Vtx u) -> std::optional<bool> {
            if (u == v0) return true;
            if (u == w0) return false;
            for (std::size_t k = 0; k < n; ++k)
                if (supp[k] == u) return (bits >> k) & 1;
            return std::nullopt;  // outside the support: unconstrained
        };
        std::vector<std::size_t> hits;
        for (std::size_t idx = 0; idx < canon.size(); ++idx) {
            bool ok = true;
            for (auto& [u, in] : canon[idx]) {
                auto lab = label_of(u);
                if (!lab || *lab != in) {
                    ok = false;
                    break;
                }
            }
            if (ok) hits.push_back(idx);
        }
        if (hits.size() != 1) {
            std::ostringstream os;
            os << (hits.empty() ? "no entry matches" : "multiple entries match") << " the labelling {";
            for (std::size_t k = 0; k < n; ++k)
                os << (k ? ", " : "") << vtx_str(supp[k]) << (((bits >> k) & 1) ? ":in" : ":out");
            os << "}";
            if (!hits.empty()) {
                os << "; entries";
                for (std::size_t idx : hits) os << " " << idx;
            }
            return fail(os.str());
        }
    }
    return rep;
}

int match_index(const Catalogue& cat, const Region& r, Edge e) {
    int found = -1;
    for (std::size_t idx = 0; idx < cat.entries.size(); ++idx) {
        if (matches(r, e, cat.entries[idx])) {
            if (found >= 0)
                throw ValidationError("match_index: two catalogue entries match the same edge");
            found = static_cast<int>(idx);
        }
    }
    return found;
}

}  // namespace kagome
