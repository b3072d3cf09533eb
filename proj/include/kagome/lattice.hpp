// lattice.hpp
// Kagome lattice in integer "pixel" coordinates.
//
// Vertices:
//   odd  vertices: x and y both odd
//   even vertices: x = 4*k1 + r and y = 4*k2 + r with the same r in {0,2}
// Edges:
//   (x,y)-(x+2,y) for odd (x,y)           (horizontal rows of odd vertices)
//   (x,y)-(x+s,y+t), s,t in {-1,+1}, for even (x,y)
//
// The graph is 4-regular and every edge lies in exactly one triangle; the
// third vertex of that triangle is the unique common neighbour of the edge's
// endpoints.  All structural code relies on a fixed global orientation: the
// four neighbours of a vertex are listed in clockwise order (decreasing polar
// angle, y axis pointing up).

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace kagome {

struct Vtx {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Vtx&, const Vtx&) = default;
};

struct VtxHash {
    std::size_t operator()(const Vtx& v) const {
        std::uint64_t k = (std::uint64_t)(std::uint32_t)v.x << 32 | (std::uint32_t)v.y;
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return (std::size_t)k;
    }
};

bool is_odd_vertex(Vtx v);
bool is_even_vertex(Vtx v);
bool is_vertex(Vtx v);

// The four neighbours in clockwise order.  The cycle's starting point is
// deterministic but arbitrary; only the cyclic order matters.
std::array<Vtx, 4> neighbours(Vtx v);

bool adjacent(Vtx a, Vtx b);

// Third vertex of the unique triangle through edge (a,b).
Vtx common_neighbour(Vtx a, Vtx b);

// Clockwise cycle of neighbours starting right after `from` (which must be a
// neighbour of v).  Returns the remaining three in clockwise order.
std::array<Vtx, 3> neighbours_cw_after(Vtx v, Vtx from);

// Vertices at graph distance exactly d / at most d.
std::vector<Vtx> shell(Vtx v, int d);
std::vector<Vtx> ball(Vtx v, int d);
std::size_t shell_count(Vtx v, int d);

// Undirected edge, normalized so that a < b.
struct Edge {
    Vtx a, b;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};
Edge make_edge(Vtx u, Vtx v);

// Canonical anchor edge used wherever a fixed frame is needed (template
// catalogues, memo keys): the directed edge from kAnchorW (out) to kAnchorV
// (in).  Their common neighbour is (2,2); the three clockwise neighbours of
// kAnchorV after kAnchorW are (0,0), (-1,1), (2,2).
inline constexpr Vtx kAnchorW{3, 1};
inline constexpr Vtx kAnchorV{1, 1};

// ---------------------------------------------------------------------------
// Lattice symmetries.
//
// Every automorphism of the lattice is affine in these coordinates; the point
// group has order 12 and the valid translations per linear part form a coset
// of the translation lattice.  For any two directed edges (sw,sv) -> (dw,dv)
// there is exactly one automorphism mapping one onto the other, which is what
// anchored template matching needs.
// ---------------------------------------------------------------------------

struct Aff {
    // Doubled linear part and doubled translation: apply(p) = (L*p + t) / 2.
    std::array<int, 4> L2{2, 0, 0, 2};
    int tx2 = 0, ty2 = 0;
    Vtx operator()(Vtx p) const;
    bool orientation_reversing() const;  // det(L) < 0
};

// Unique automorphism mapping the directed edge (sw,sv) onto (dw,dv).
// Both pairs must be lattice edges.
Aff placement(Vtx sw, Vtx sv, Vtx dw, Vtx dv);

// All twelve automorphisms fixing the origin side of things is internal; for
// testing we expose whether a candidate affine map is an automorphism.
bool is_automorphism(const Aff& f);

}  // namespace kagome
