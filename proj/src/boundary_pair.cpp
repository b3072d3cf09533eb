#include "kagome/boundary_pair.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

namespace {

std::string edge_str(const Edge& e) {
    std::ostringstream os;
    os << "((" << e.a.x << "," << e.a.y << "),(" << e.b.x << "," << e.b.y << "))";
    return os.str();
}

}  // namespace

EdgeColoring EdgeBoundaryPair::edges_with_pivot(int c) const {
    EdgeColoring b = shared;
    b[pivot()] = c;
    return b;
}

std::vector<std::pair<Edge, Edge>> adjacent_boundary_pairs(const Region& r) {
    std::vector<std::pair<Edge, Edge>> out;
    for (Vtx u : boundary_vertices(r)) {
        auto nb = neighbours(u);  // clockwise order
        std::array<bool, 4> inr{};
        for (int k = 0; k < 4; ++k) inr[k] = r.contains(nb[k]);
        for (int k = 0; k < 4; ++k) {
            int k2 = (k + 1) % 4;
            if (inr[k] && inr[k2]) out.emplace_back(make_edge(u, nb[k]), make_edge(u, nb[k2]));
        }
    }
    return out;
}

ValidationReport validate(const EdgeBoundaryPair& x) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.message = msg;
        return rep;
    };
    if (x.region.empty()) return fail("region is empty");
    if (!is_vertex(x.w) || !is_vertex(x.v) || !adjacent(x.w, x.v))
        return fail("pivot is not a lattice edge");
    if (!x.region.contains(x.v)) return fail("pivot in-endpoint lies outside the region");
    if (x.region.contains(x.w)) return fail("pivot out-endpoint lies inside the region");
    if (x.c1 < 1 || x.c1 > Q || x.c2 < 1 || x.c2 > Q || x.c1 == x.c2)
        return fail("pivot colors must be two distinct colors in 1..Q");

    auto bes = boundary_edges(x.region);
    std::set<Edge> want(bes.begin(), bes.end());
    want.erase(x.pivot());
    for (const Edge& e : want) {
        auto it = x.shared.find(e);
        if (it == x.shared.end()) return fail("missing shared color for boundary edge " + edge_str(e));
        if (it->second < 0 || it->second > Q) return fail("edge color out of range 0..Q");
    }
    if (x.shared.size() != want.size())
        return fail("shared coloring assigns edges outside the boundary (or the pivot)");

    EdgeColoring b1 = x.edges_with_pivot(x.c1);
    EdgeColoring b2 = x.edges_with_pivot(x.c2);
    for (const auto& [e, f] : adjacent_boundary_pairs(x.region)) {
        if (b1.at(e) != b1.at(f) && b2.at(e) != b2.at(f))
            return fail("adjacent boundary edges " + edge_str(e) + " and " + edge_str(f) +
                        " disagree in both colorings");
    }
    return rep;
}

std::set<int> classify(const EdgeBoundaryPair& x) {
    Vtx y = common_neighbour(x.w, x.v);
    if (x.region.contains(y)) {
        CountVector n = count_at_vertex(x.region, x.edges_with_pivot(0), x.v);
        int be = x.shared.at(make_edge(x.w, y));
        bool c1_large = n[x.c1] >= n[x.c2];
        bool c2_large = n[x.c2] >= n[x.c1];
        bool first = (c1_large && be == x.c1) || (c2_large && be == x.c2);
        return first ? std::set<int>{1} : std::set<int>{2};
    }
    int bep = x.shared.at(make_edge(y, x.v));
    std::set<int> s{4};
    if (bep == x.c1 || bep == x.c2) s.insert(3);
    return s;
}

std::optional<EdgeBoundaryPair> child(const EdgeBoundaryPair& x, int i, int c, int cp) {
    if (i < 1 || i > 3) throw ValidationError("child: branch index must be 1..3");
    if (c < 1 || c > Q || cp < 1 || cp > Q || c == cp)
        throw ValidationError("child: colors must be distinct colors in 1..Q");
    auto kids = neighbours_cw_after(x.v, x.w);
    Vtx ui = kids[i - 1];
    if (!x.region.contains(ui)) return std::nullopt;

    EdgeBoundaryPair out;
    out.region = x.region.without(x.v);
    out.w = x.v;
    out.v = ui;
    out.c1 = cp;
    out.c2 = c;
    Edge piv = make_edge(x.v, ui);
    for (const Edge& e : boundary_edges(out.region)) {
        if (e == piv) continue;
        if (e.a == x.v || e.b == x.v) {
            Vtx other = (e.a == x.v) ? e.b : e.a;
            int j = 0;
            for (int t = 0; t < 3; ++t)
                if (kids[t] == other) j = t + 1;
            if (j == 0) throw std::logic_error("child: unexpected boundary edge at removed vertex");
            out.shared[e] = (j < i) ? cp : c;
        } else {
            out.shared[e] = x.shared.at(e);
        }
    }
    return out;
}

ValidationReport validate(const VertexBoundaryPair& y) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.message = msg;
        return rep;
    };
    if (y.region.empty()) return fail("region is empty");
    auto bverts = boundary_vertices(y.region);
    if (!std::binary_search(bverts.begin(), bverts.end(), y.w))
        return fail("w is not a boundary vertex of the region");
    for (const auto* b : {&y.bnd1, &y.bnd2}) {
        if (b->size() != bverts.size()) return fail("vertex-boundary domain mismatch");
        for (Vtx z : bverts) {
            auto it = b->find(z);
            if (it == b->end()) return fail("vertex-boundary domain mismatch");
            if (it->second < 0 || it->second > Q) return fail("vertex color out of range 0..Q");
        }
    }
    for (Vtx z : bverts) {
        if (z == y.w) continue;
        if (y.bnd1.at(z) != y.bnd2.at(z)) return fail("colorings differ away from w");
    }
    int c = y.bnd1.at(y.w), cp = y.bnd2.at(y.w);
    if (c == 0 || cp == 0) return fail("colorings must give w a non-zero color");
    if (c == cp) return fail("colorings must differ at w");
    return rep;
}

EdgeColoring induced_edge_boundary(const Region& r, const VertexColoring& bnd) {
    EdgeColoring b;
    for (const Edge& e : boundary_edges(r)) {
        Vtx out = r.contains(e.a) ? e.b : e.a;
        auto it = bnd.find(out);
        b[e] = (it == bnd.end()) ? 0 : it->second;
    }
    return b;
}

std::vector<EdgeBoundaryPair> decompose_vertex_pair(const VertexBoundaryPair& y) {
    ValidationReport rep = validate(y);
    if (!rep.ok) throw ValidationError("decompose_vertex_pair: " + rep.message);
    const int c = y.bnd1.at(y.w), cp = y.bnd2.at(y.w);

    bool all_in = true;
    for (Vtx r : neighbours(y.w))
        if (!y.region.contains(r)) all_in = false;

    Region base = y.region;
    Vtx removed{};
    if (all_in) {
        removed = neighbours(y.w)[0];  // first clockwise neighbour; all lie in the region
        base = y.region.without(removed);
    }

    std::vector<Edge> ladder;
    for (const Edge& e : boundary_edges(base)) {
        Vtx out = base.contains(e.a) ? e.b : e.a;
        if (out == y.w || (all_in && out == removed)) ladder.push_back(e);
    }
    std::sort(ladder.begin(), ladder.end());
    const EdgeColoring inherited = induced_edge_boundary(base, y.bnd1);

    const std::size_t k = ladder.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        std::vector<EdgeBoundaryPair> rungs;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            EdgeBoundaryPair x;
            x.region = base;
            Edge piv = ladder[perm[i]];
            bool a_in = base.contains(piv.a);
            x.v = a_in ? piv.a : piv.b;
            x.w = a_in ? piv.b : piv.a;
            x.c1 = c;
            x.c2 = cp;
            x.shared = inherited;
            x.shared.erase(piv);
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                x.shared[ladder[perm[j]]] = (j < i) ? cp : c;
            }
            if (validate(x).ok)
                rungs.push_back(std::move(x));
            else
                ok = false;
        }
        if (ok) return rungs;
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw std::logic_error("decompose_vertex_pair: no valid ladder order exists");
}

}  // namespace kagome
