// Lattice-level invariants checked against independent oracles: membership
// rules recomputed from scratch, clockwise order re-derived from atan2,
// shells/balls re-derived from a plain BFS, and placements cross-checked with
// the brute-force automorphism probe.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "kagome/lattice.hpp"

using namespace kagome;

namespace {

// Oracle for vertex membership, written directly from the coordinate rules.
bool oracle_is_vertex(Vtx v) {
    auto mod = [](int a, int m) { return ((a % m) + m) % m; };
    if (mod(v.x, 2) == 1 && mod(v.y, 2) == 1) return true;
    if (mod(v.x, 2) == 0 && mod(v.y, 2) == 0) return mod(v.x, 4) == mod(v.y, 4);
    return false;
}

// Oracle for adjacency, written directly from the edge rules.
bool oracle_adjacent(Vtx a, Vtx b) {
    if (!oracle_is_vertex(a) || !oracle_is_vertex(b)) return false;
    if (a == b) return false;
    int dx = b.x - a.x, dy = b.y - a.y;
    auto mod = [](int v, int m) { return ((v % m) + m) % m; };
    if (mod(a.x, 2) == 1 && mod(b.x, 2) == 1) return dy == 0 && std::abs(dx) == 2;
    if (mod(a.x, 2) == 0 && mod(b.x, 2) == 1) return std::abs(dx) == 1 && std::abs(dy) == 1;
    if (mod(a.x, 2) == 1 && mod(b.x, 2) == 0) return std::abs(dx) == 1 && std::abs(dy) == 1;
    return false;  // two even vertices are never adjacent
}

std::vector<Vtx> window_vertices(int radius) {
    std::vector<Vtx> out;
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            if (is_vertex(Vtx{x, y})) out.push_back(Vtx{x, y});
    return out;
}

// BFS distances from v, restricted to vertices reachable in <= d steps.
std::map<Vtx, int> bfs_distances(Vtx v, int d) {
    std::map<Vtx, int> dist{{v, 0}};
    std::vector<Vtx> frontier{v};
    for (int step = 1; step <= d; ++step) {
        std::vector<Vtx> next;
        for (Vtx u : frontier)
            for (Vtx z : neighbours(u))
                if (!dist.count(z)) {
                    dist[z] = step;
                    next.push_back(z);
                }
        frontier = std::move(next);
    }
    return dist;
}

}  // namespace

TEST_CASE("vertex membership matches the coordinate rules") {
    for (int x = -12; x <= 12; ++x)
        for (int y = -12; y <= 12; ++y) {
            Vtx v{x, y};
            CHECK(is_vertex(v) == oracle_is_vertex(v));
            if (is_vertex(v)) CHECK(is_odd_vertex(v) != is_even_vertex(v));
        }
    CHECK(is_vertex(Vtx{0, 0}));
    CHECK(is_vertex(Vtx{2, 2}));
    CHECK_FALSE(is_vertex(Vtx{0, 2}));
    CHECK_FALSE(is_vertex(Vtx{2, 0}));
    CHECK_FALSE(is_vertex(Vtx{4, 2}));
    CHECK(is_vertex(Vtx{4, 0}));
    CHECK(is_vertex(Vtx{-2, 2}));
}

TEST_CASE("the graph is 4-regular with symmetric adjacency") {
    for (Vtx v : window_vertices(9)) {
        auto nb = neighbours(v);
        std::set<Vtx> uniq(nb.begin(), nb.end());
        CHECK(uniq.size() == 4);
        CHECK_FALSE(uniq.count(v));
        for (Vtx u : nb) {
            CHECK(is_vertex(u));
            CHECK(adjacent(v, u));
            CHECK(adjacent(u, v));
            CHECK(oracle_adjacent(v, u));
        }
        // no adjacency beyond the listed four
        for (int dx = -3; dx <= 3; ++dx)
            for (int dy = -3; dy <= 3; ++dy) {
                Vtx u{v.x + dx, v.y + dy};
                if (!is_vertex(u) || u == v) continue;
                CHECK(adjacent(v, u) == (uniq.count(u) > 0));
            }
    }
}

TEST_CASE("every edge lies in exactly one triangle") {
    for (Vtx v : window_vertices(8)) {
        for (Vtx u : neighbours(v)) {
            // common neighbours by direct intersection of neighbour lists
            std::vector<Vtx> common;
            for (Vtx a : neighbours(v))
                for (Vtx b : neighbours(u))
                    if (a == b) common.push_back(a);
            REQUIRE(common.size() == 1);
            CHECK(common_neighbour(v, u) == common[0]);
            CHECK(common_neighbour(u, v) == common[0]);
        }
    }
}

TEST_CASE("neighbour order is clockwise") {
    // Clockwise means the polar angles, read cyclically, decrease everywhere
    // except at exactly one wrap-around position.
    for (Vtx v : window_vertices(7)) {
        auto nb = neighbours(v);
        std::array<double, 4> ang{};
        for (int i = 0; i < 4; ++i)
            ang[i] = std::atan2(double(nb[i].y - v.y), double(nb[i].x - v.x));
        int ascents = 0;
        for (int i = 0; i < 4; ++i)
            if (ang[(i + 1) % 4] > ang[i]) ++ascents;
        CHECK(ascents == 1);
    }
}

TEST_CASE("neighbours_cw_after rotates the clockwise cycle") {
    for (Vtx v : window_vertices(6)) {
        auto nb = neighbours(v);
        for (int s = 0; s < 4; ++s) {
            auto rest = neighbours_cw_after(v, nb[s]);
            for (int k = 0; k < 3; ++k) CHECK(rest[k] == nb[(s + 1 + k) % 4]);
        }
    }
    CHECK_THROWS(neighbours_cw_after(Vtx{1, 1}, Vtx{5, 1}));
}

TEST_CASE("anchor edge geometry") {
    CHECK(adjacent(kAnchorW, kAnchorV));
    CHECK(common_neighbour(kAnchorW, kAnchorV) == Vtx{2, 2});
    auto rest = neighbours_cw_after(kAnchorV, kAnchorW);
    CHECK(rest[0] == Vtx{0, 0});
    CHECK(rest[1] == Vtx{-1, 1});
    CHECK(rest[2] == Vtx{2, 2});
}

TEST_CASE("shell and ball match BFS distances") {
    for (Vtx v : {Vtx{1, 1}, Vtx{0, 0}, Vtx{2, 2}, Vtx{-3, 5}}) {
        auto dist = bfs_distances(v, 6);
        for (int d = 0; d <= 6; ++d) {
            std::set<Vtx> want_shell, want_ball;
            for (const auto& [u, du] : dist) {
                if (du == d) want_shell.insert(u);
                if (du <= d) want_ball.insert(u);
            }
            auto s = shell(v, d);
            auto b = ball(v, d);
            CHECK(std::set<Vtx>(s.begin(), s.end()) == want_shell);
            CHECK(std::set<Vtx>(b.begin(), b.end()) == want_ball);
            CHECK(s.size() == want_shell.size());  // no duplicates
            CHECK(b.size() == want_ball.size());
            CHECK(shell_count(v, d) == want_shell.size());
        }
    }
    CHECK(ball(Vtx{1, 1}, 0) == std::vector<Vtx>{Vtx{1, 1}});
    CHECK(shell_count(Vtx{1, 1}, 0) == 1);
    CHECK(ball(Vtx{1, 1}, 2).size() == 13);
}

TEST_CASE("make_edge normalizes endpoint order") {
    Edge e1 = make_edge(Vtx{1, 1}, Vtx{3, 1});
    Edge e2 = make_edge(Vtx{3, 1}, Vtx{1, 1});
    CHECK(e1 == e2);
    CHECK(e1.a < e1.b);
    CHECK_THROWS(make_edge(Vtx{1, 1}, Vtx{1, 3}));  // not an edge
}

TEST_CASE("automorphism probe accepts exactly the valid translations") {
    Aff id{};
    CHECK(is_automorphism(id));
    // doubled translations live in { (a,b) : a,b = 0 mod 4, a = b mod 8 }
    CHECK(is_automorphism(Aff{{2, 0, 0, 2}, 4, 4}));
    CHECK(is_automorphism(Aff{{2, 0, 0, 2}, 4, -4}));
    CHECK(is_automorphism(Aff{{2, 0, 0, 2}, 8, 0}));
    CHECK_FALSE(is_automorphism(Aff{{2, 0, 0, 2}, 4, 0}));
    CHECK_FALSE(is_automorphism(Aff{{2, 0, 0, 2}, 2, 2}));
    // point inversion about the origin fixes the vertex set
    CHECK(is_automorphism(Aff{{-2, 0, 0, -2}, 0, 0}));
}

TEST_CASE("placement maps the requested edge and is an automorphism") {
    std::vector<std::pair<Vtx, Vtx>> edges;
    for (Vtx v : window_vertices(4))
        for (Vtx u : neighbours(v))
            if (std::abs(u.x) <= 4 && std::abs(u.y) <= 4) edges.push_back({v, u});
    REQUIRE(edges.size() >= 20);

    // Sample source/destination pairs (full cross product is large).
    for (std::size_t i = 0; i < edges.size(); i += 7)
        for (std::size_t j = 0; j < edges.size(); j += 5) {
            auto [sw, sv] = edges[i];
            auto [dw, dv] = edges[j];
            Aff f = placement(sw, sv, dw, dv);
            CHECK(f(sw) == dw);
            CHECK(f(sv) == dv);
            CHECK(is_automorphism(f));
        }

    // Identity placement comes back as the identity map on a window.
    Aff f = placement(kAnchorW, kAnchorV, kAnchorW, kAnchorV);
    for (Vtx v : window_vertices(5)) CHECK(f(v) == v);
}

TEST_CASE("placement respects composition with a known automorphism") {
    // Map the anchor edge somewhere, then map the image back; the round trip
    // must fix the anchor edge pointwise.
    std::vector<std::pair<Vtx, Vtx>> targets{
        {Vtx{1, 1}, Vtx{3, 1}},    // reversed anchor
        {Vtx{2, 2}, Vtx{1, 1}},    // even-to-odd edge
        {Vtx{0, 0}, Vtx{1, -1}},   // triangle below
        {Vtx{-3, 1}, Vtx{-1, 1}},  // shifted row
    };
    for (auto [dw, dv] : targets) {
        Aff f = placement(kAnchorW, kAnchorV, dw, dv);
        Aff g = placement(dw, dv, kAnchorW, kAnchorV);
        CHECK(g(f(kAnchorW)) == kAnchorW);
        CHECK(g(f(kAnchorV)) == kAnchorV);
        CHECK(g(f(Vtx{2, 2})) == Vtx{2, 2});  // common neighbour rides along
    }
}

TEST_CASE("orientation flag distinguishes mirrored placements") {
    // v's three remaining neighbours are in clockwise order; a placement that
    // reverses orientation reverses that cyclic order at the image.
    Aff keep = placement(kAnchorW, kAnchorV, kAnchorW, kAnchorV);
    CHECK_FALSE(keep.orientation_reversing());
    int reversing = 0, preserving = 0;
    for (Vtx v : window_vertices(3))
        for (Vtx u : neighbours(v)) {
            if (std::abs(u.x) > 3 || std::abs(u.y) > 3) continue;
            Aff f = placement(kAnchorW, kAnchorV, u, v);
            auto src = neighbours_cw_after(kAnchorV, kAnchorW);
            auto dst = neighbours_cw_after(v, u);
            if (f.orientation_reversing()) {
                ++reversing;
                CHECK(f(src[0]) == dst[2]);
                CHECK(f(src[1]) == dst[1]);
                CHECK(f(src[2]) == dst[0]);
            } else {
                ++preserving;
                CHECK(f(src[0]) == dst[0]);
                CHECK(f(src[1]) == dst[1]);
                CHECK(f(src[2]) == dst[2]);
            }
        }
    CHECK(reversing > 0);
    CHECK(preserving > 0);
}
