// boundary_pair.hpp
// Pairs of boundary-edge colorings around a region that differ only at one
// designated boundary edge (the "pivot"), the validity rule they must obey,
// their classification by the local geometry and counts at the pivot, the
// one-step recursion that peels the pivot's in-endpoint off the region, and
// the decomposition of a vertex-boundary discrepancy into a ladder of such
// edge pairs.
//
// Validity rule: the two colorings take distinct non-zero colors on the
// pivot and identical colors elsewhere, and any two boundary edges that are
// cyclically consecutive around a shared OUT-of-region endpoint must agree
// in at least one of the two colorings.  (Color 0 means "unconstrained" and
// agrees only with itself.)

#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "kagome/coloring.hpp"
#include "kagome/region.hpp"

namespace kagome {

struct EdgeBoundaryPair {
    Region region;        // R: non-empty
    Vtx w{}, v{};         // pivot edge (w, v): w outside R, v inside
    EdgeColoring shared;  // colors of the boundary edges of R other than the pivot
    int c1 = 1, c2 = 2;   // pivot color in the first / second coloring

    Edge pivot() const { return make_edge(w, v); }
    // Full boundary coloring with the pivot set to c (use c1, c2, or 0).
    EdgeColoring edges_with_pivot(int c) const;

    friend auto operator<=>(const EdgeBoundaryPair&, const EdgeBoundaryPair&) = default;
};

// All ordered-by-construction pairs of boundary edges of r that are
// cyclically consecutive around a shared out-of-region endpoint.
std::vector<std::pair<Edge, Edge>> adjacent_boundary_pairs(const Region& r);

// Full validity check; reports the first violated clause.
ValidationReport validate(const EdgeBoundaryPair& x);

// Classification of a valid pair.  Writing c for the pivot color with the
// (weakly) larger count at v under the pivot-zeroed boundary, and y for the
// common neighbour of w and v:
//   - y in R:  class {1} if the edge (w, y) carries c (ties allow either
//     pivot color), else class {2};
//   - y not in R:  class {3, 4} if the edge (y, v) carries one of the two
//     pivot colors, else class {4}.
std::set<int> classify(const EdgeBoundaryPair& x);

// Child pair in the recursion for branch i in 1..3 and ordered color pair
// (c, cp), c != cp.  Branch i points at the i-th clockwise neighbour of v
// after w; returns nullopt when that neighbour lies outside the region.
// The child lives on R minus v with pivot (v, u_i) colored (cp, c); the
// other new boundary edges (v, u_j) get cp for j < i and c for j > i, and
// all remaining boundary edges inherit their shared colors.
std::optional<EdgeBoundaryPair> child(const EdgeBoundaryPair& x, int i, int c, int cp);

// A pair of vertex-boundary colorings of the same region differing at
// exactly one boundary vertex w, where both give w a non-zero color.
struct VertexBoundaryPair {
    Region region;
    Vtx w{};
    VertexColoring bnd1, bnd2;  // domain: the full vertex boundary of region
};

ValidationReport validate(const VertexBoundaryPair& y);

// Boundary-edge coloring induced by a vertex coloring of the outside:
// each boundary edge takes the color of its out-endpoint (0 if absent).
EdgeColoring induced_edge_boundary(const Region& r, const VertexColoring& bnd);

// Decomposes the discrepancy at w into a ladder of valid edge-boundary
// pairs, all on a common region, whose colorings interpolate from the
// boundary induced by bnd1 to the one induced by bnd2: consecutive pairs
// chain (the second coloring of one equals the first of the next).
//
// When w has an out-of-region neighbour the ladder lives on the region
// itself and recolors the (at most 3) boundary edges at w one at a time.
// Otherwise one in-region neighbour u of w (the first in clockwise order)
// is removed, and the ladder on R minus u recolors the boundary edges at w
// and at u (at most 6) from bnd1(w) to bnd2(w).  The edge order is the
// lexicographically first one for which every rung is valid.
std::vector<EdgeBoundaryPair> decompose_vertex_pair(const VertexBoundaryPair& y);

}  // namespace kagome
