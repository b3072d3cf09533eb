// lattice.cpp -- kagome lattice geometry, shells, and affine symmetries.

#include "kagome/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kagome {

static int mod4(int a) { return ((a % 4) + 4) % 4; }

bool is_odd_vertex(Vtx v) { return (v.x & 1) && (v.y & 1); }

bool is_even_vertex(Vtx v) {
    if ((v.x & 1) || (v.y & 1)) return false;
    int rx = mod4(v.x), ry = mod4(v.y);
    return rx == ry;  // rx in {0,2} automatically for even x
}

bool is_vertex(Vtx v) { return is_odd_vertex(v) || is_even_vertex(v); }

// Clockwise rank of a neighbour offset.  Offsets are among
// (+-2,0) and (+-1,+-1); rank increases counterclockwise from +x.
static int ccw_rank(int dx, int dy) {
    if (dx == 2 && dy == 0) return 0;
    if (dx == 1 && dy == 1) return 1;
    if (dx == -1 && dy == 1) return 2;
    if (dx == -2 && dy == 0) return 3;
    if (dx == -1 && dy == -1) return 4;
    if (dx == 1 && dy == -1) return 5;
    throw std::logic_error("ccw_rank: not a neighbour offset");
}

std::array<Vtx, 4> neighbours(Vtx v) {
    std::array<Vtx, 4> out;
    int n = 0;
    if (is_odd_vertex(v)) {
        out[n++] = {v.x + 2, v.y};
        out[n++] = {v.x - 2, v.y};
        for (int sx : {-1, 1})
            for (int sy : {-1, 1}) {
                Vtx e{v.x + sx, v.y + sy};
                if (is_even_vertex(e)) out[n++] = e;
            }
    } else if (is_even_vertex(v)) {
        for (int sx : {-1, 1})
            for (int sy : {-1, 1}) out[n++] = {v.x + sx, v.y + sy};
    } else {
        throw std::invalid_argument("neighbours: not a lattice vertex");
    }
    if (n != 4) throw std::logic_error("neighbours: degree != 4");
    // order clockwise = decreasing ccw rank
    std::sort(out.begin(), out.end(), [&](Vtx a, Vtx b) {
        return ccw_rank(a.x - v.x, a.y - v.y) > ccw_rank(b.x - v.x, b.y - v.y);
    });
    return out;
}

bool adjacent(Vtx a, Vtx b) {
    if (!is_vertex(a) || !is_vertex(b)) return false;
    int dx = b.x - a.x, dy = b.y - a.y;
    if (is_odd_vertex(a) && is_odd_vertex(b)) return dy == 0 && std::abs(dx) == 2;
    if (std::abs(dx) == 1 && std::abs(dy) == 1) return true;
    return false;
}

Vtx common_neighbour(Vtx a, Vtx b) {
    auto na = neighbours(a);
    auto nb = neighbours(b);
    std::optional<Vtx> found;
    for (Vtx u : na)
        for (Vtx w : nb)
            if (u == w) {
                if (found) throw std::logic_error("common_neighbour: not unique");
                found = u;
            }
    if (!found) throw std::invalid_argument("common_neighbour: vertices not in a triangle");
    return *found;
}

std::array<Vtx, 3> neighbours_cw_after(Vtx v, Vtx from) {
    auto ns = neighbours(v);
    int at = -1;
    for (int i = 0; i < 4; i++)
        if (ns[i] == from) at = i;
    if (at < 0) throw std::invalid_argument("neighbours_cw_after: not a neighbour");
    return {ns[(at + 1) & 3], ns[(at + 2) & 3], ns[(at + 3) & 3]};
}

std::vector<Vtx> ball(Vtx v, int d) {
    std::vector<Vtx> out{v};
    std::unordered_set<Vtx, VtxHash> seen{v};
    std::vector<Vtx> frontier{v};
    for (int k = 0; k < d; k++) {
        std::vector<Vtx> next;
        for (Vtx u : frontier)
            for (Vtx w : neighbours(u))
                if (seen.insert(w).second) next.push_back(w);
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vtx> shell(Vtx v, int d) {
    if (d == 0) return {v};
    std::unordered_set<Vtx, VtxHash> seen{v};
    std::vector<Vtx> frontier{v};
    for (int k = 0; k < d; k++) {
        std::vector<Vtx> next;
        for (Vtx u : frontier)
            for (Vtx w : neighbours(u))
                if (seen.insert(w).second) next.push_back(w);
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

std::size_t shell_count(Vtx v, int d) { return shell(v, d).size(); }

Edge make_edge(Vtx u, Vtx v) {
    if (v < u) std::swap(u, v);
    return Edge{u, v};
}

// ---------------------------------------------------------------------------
// Symmetries
// ---------------------------------------------------------------------------

Vtx Aff::operator()(Vtx p) const {
    long nx = (long)L2[0] * p.x + (long)L2[1] * p.y + tx2;
    long ny = (long)L2[2] * p.x + (long)L2[3] * p.y + ty2;
    if ((nx & 1) || (ny & 1)) throw std::logic_error("Aff: image not integral");
    return Vtx{(int)(nx / 2), (int)(ny / 2)};
}

bool Aff::orientation_reversing() const {
    long det = (long)L2[0] * L2[3] - (long)L2[1] * L2[2];
    return det < 0;
}

// The twelve doubled linear parts: closure of {identity, three-fold rotation
// about a triangle centre, mirror in a vertical lattice line}.
static std::array<int, 4> mul_half(const std::array<int, 4>& A, const std::array<int, 4>& B) {
    // entries are doubled, so (A*B)/2 is again doubled with integer entries
    std::array<int, 4> C{};
    C[0] = (A[0] * B[0] + A[1] * B[2]) / 2;
    C[1] = (A[0] * B[1] + A[1] * B[3]) / 2;
    C[2] = (A[2] * B[0] + A[3] * B[2]) / 2;
    C[3] = (A[2] * B[1] + A[3] * B[3]) / 2;
    return C;
}

struct SymTables {
    std::vector<std::array<int, 4>> linear;  // 12 doubled linear parts
    std::vector<Vtx> base_t;                 // one valid (doubled) translation per part
};

// A brute probe: is (L2, t2) an automorphism on a window large enough to pin
// down the residue behaviour (the membership rules are mod-4 arithmetic).
static bool probe_automorphism(const std::array<int, 4>& L2, int tx2, int ty2) {
    Aff f{L2, tx2, ty2};
    for (int x = -9; x <= 9; x++)
        for (int y = -9; y <= 9; y++) {
            Vtx p{x, y};
            if (!is_vertex(p)) continue;
            long nx = (long)L2[0] * p.x + (long)L2[1] * p.y + tx2;
            long ny = (long)L2[2] * p.x + (long)L2[3] * p.y + ty2;
            if ((nx & 1) || (ny & 1)) return false;
            Vtx q{(int)(nx / 2), (int)(ny / 2)};
            if (!is_vertex(q)) return false;
            for (Vtx u : neighbours(p)) {
                if (std::abs(u.x) > 9 || std::abs(u.y) > 9) continue;
                if (!adjacent(q, f(u))) return false;
            }
        }
    return true;
}

static const SymTables& sym_tables() {
    static SymTables tbl = [] {
        SymTables t;
        std::array<int, 4> I{2, 0, 0, 2};
        std::array<int, 4> R{-1, -3, 1, -1};   // doubled three-fold rotation
        std::array<int, 4> X{-2, 0, 0, 2};     // mirror x -> -x
        std::array<int, 4> N{-2, 0, 0, -2};    // point inversion (vertex site 2-fold)
        std::vector<std::array<int, 4>> gen{I, R, X, N};
        std::vector<std::array<int, 4>> all{I};
        for (std::size_t i = 0; i < all.size(); i++)
            for (const auto& g : gen) {
                auto c = mul_half(all[i], g);
                if (std::find(all.begin(), all.end(), c) == all.end()) all.push_back(c);
            }
        if (all.size() != 12) throw std::logic_error("point group closure != 12");
        t.linear = all;
        // find one valid doubled translation per linear part
        for (const auto& L : t.linear) {
            bool found = false;
            for (int tx = -8; tx <= 8 && !found; tx += 2)
                for (int ty = -8; ty <= 8 && !found; ty += 2)
                    if (probe_automorphism(L, tx, ty)) {
                        t.base_t.push_back(Vtx{tx, ty});
                        found = true;
                    }
            if (!found) throw std::logic_error("no valid translation for linear part");
        }
        return t;
    }();
    return tbl;
}

// Valid doubled translations for a linear part form a coset of the doubled
// translation lattice { (a,b) : a,b = 0 mod 4, a = b mod 8 }  (the lattice
// itself is a,b even with a = b mod 4; doubling scales it).
static bool translation_ok(Vtx t2, Vtx base2) {
    int dx = t2.x - base2.x, dy = t2.y - base2.y;
    if (dx % 4 != 0 || dy % 4 != 0) return false;
    return ((dx - dy) % 8) == 0;
}

bool is_automorphism(const Aff& f) {
    return probe_automorphism(f.L2, f.tx2, f.ty2);
}

Aff placement(Vtx sw, Vtx sv, Vtx dw, Vtx dv) {
    if (!adjacent(sw, sv) || !adjacent(dw, dv))
        throw std::invalid_argument("placement: endpoints must form edges");
    const SymTables& t = sym_tables();
    std::optional<Aff> hit;
    for (std::size_t i = 0; i < t.linear.size(); i++) {
        const auto& L = t.linear[i];
        int tx2 = 2 * dw.x - (L[0] * sw.x + L[1] * sw.y);
        int ty2 = 2 * dw.y - (L[2] * sw.x + L[3] * sw.y);
        if ((tx2 & 1) || (ty2 & 1)) continue;
        if (L[0] * sv.x + L[1] * sv.y + tx2 != 2 * dv.x) continue;
        if (L[2] * sv.x + L[3] * sv.y + ty2 != 2 * dv.y) continue;
        if (!translation_ok(Vtx{tx2, ty2}, t.base_t[i])) continue;
        if (hit) throw std::logic_error("placement: not unique");
        hit = Aff{L, tx2, ty2};
    }
    if (!hit) throw std::logic_error("placement: none found");
    return *hit;
}

}  // namespace kagome
