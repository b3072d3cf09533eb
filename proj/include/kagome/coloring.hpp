// coloring.hpp
// Exact counting and enumeration of proper q-colorings on a region, under
// per-vertex allowed-color masks.  Boundary conditions (fixed colors on
// boundary edges or on outside vertices) reduce to mask restrictions.
//
// Counts fit comfortably in uint64 for the region sizes used here (<= ~20
// vertices); the counter asserts this bound rather than checking overflow.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "kagome/region.hpp"

namespace kagome {

inline constexpr int Q = 5;  // colors are 1..Q
using Mask = unsigned;       // bit (c-1) set <=> color c allowed
inline constexpr Mask kAllColors = (1u << Q) - 1;

using EdgeColoring = std::map<Edge, int>;    // color per boundary edge (0 = free)
using VertexColoring = std::map<Vtx, int>;   // color per vertex (0 = uncolored)

using CountVector = std::array<std::uint64_t, Q + 1>;  // index 0 unused
using PairCountMatrix = std::array<CountVector, Q + 1>;

class ColorCounter {
  public:
    // The walk order is a BFS rooted at `root` (must lie in the region when
    // given; defaults to the lexicographically first vertex), ties broken
    // lexicographically; remaining components follow in lexicographic order.
    explicit ColorCounter(Region r, std::optional<Vtx> root = std::nullopt);

    // Constraint setters; all refer to vertices of the region.
    void forbid(Vtx v, int c);
    void restrict_to(Vtx v, int c);
    void restrict_mask(Vtx v, Mask m);
    Mask allowed(Vtx v) const;

    // Boundary edge (v,u), v inside: forbid color b(e) at v.  Color 0 on an
    // edge means "no constraint" and is skipped.
    void apply_edge_boundary(const EdgeColoring& b);
    // Outside vertex u with fixed color: forbid it at inside neighbours.
    // Color 0 is skipped.
    void apply_vertex_boundary(const VertexColoring& b);

    // Adds a must-differ constraint between two region vertices that need not
    // be adjacent (used e.g. to demand all neighbours of a vertex receive
    // pairwise distinct colors).
    void add_distinct(Vtx a, Vtx b);

    std::uint64_t count() const;

    // n[c] = number of proper colorings with v colored c (n[0] unused).
    CountVector count_by_color(Vtx v) const;

    // n[c][k] = colorings with v colored c and u colored k.  v == u yields the
    // diagonal matrix of count_by_color.
    PairCountMatrix count_by_pair(Vtx v, Vtx u) const;

    // Enumerates every proper coloring; colors are indexed like region().verts.
    void for_each(const std::function<void(const std::vector<int>&)>& fn) const;

    const Region& region() const { return region_; }

  private:
    void rebuild_order(int root_index);

    Region region_;
    std::vector<Mask> allowed_;            // by region index
    std::vector<std::vector<int>> adj_;    // region-index constraint adjacency
    std::vector<int> order_;               // BFS visit order (region indices)
    std::vector<std::vector<int>> later_;  // order pos -> later-order positions of nbrs
};

// Is sigma (defined on exactly the vertices of r, values 0..Q) proper on r:
// no two adjacent in-region vertices share a non-zero color.
bool is_proper(const Region& r, const VertexColoring& sigma);

// Does sigma respect the boundary-edge coloring b: for every boundary edge of
// r colored c != 0 in b, the in-endpoint of the edge avoids c.
bool agrees(const Region& r, const VertexColoring& sigma, const EdgeColoring& b);

// Counts of proper colorings of r under boundary-edge coloring b, split by
// the color at v (respectively at the pair (u, v)).  The underlying walk is
// rooted at the pinned vertex.
CountVector count_at_vertex(const Region& r, const EdgeColoring& b, Vtx v);
PairCountMatrix count_at_pair(const Region& r, const EdgeColoring& b, Vtx u, Vtx v);

}  // namespace kagome
