// region.hpp
// Finite vertex sets of the lattice and their boundary structure, plus
// anchored region templates ("extended regions"): partial in/out labellings
// around a designated boundary edge, matched against concrete regions via the
// unique edge-to-edge lattice symmetry.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kagome/lattice.hpp"

namespace kagome {

// A finite set of lattice vertices, kept sorted and duplicate-free.
struct Region {
    std::vector<Vtx> verts;

    Region() = default;
    explicit Region(std::vector<Vtx> vs);

    bool contains(Vtx v) const;
    std::size_t size() const { return verts.size(); }
    bool empty() const { return verts.empty(); }
    int index_of(Vtx v) const;  // position in verts, -1 if absent

    Region without(Vtx v) const;
    friend auto operator<=>(const Region&, const Region&) = default;
};

// External boundary: vertices outside R adjacent to R.
std::vector<Vtx> boundary_vertices(const Region& r);

// E(R): edges with at least one endpoint in R (includes interior edges).
std::vector<Edge> region_edges(const Region& r);

// Edges with both endpoints in R.
std::vector<Edge> interior_edges(const Region& r);

// Boundary edges: exactly one endpoint in R.
std::vector<Edge> boundary_edges(const Region& r);

// Graph distance from w to the nearest vertex of r (-1 if r empty).
int distance_to_region(Vtx w, const Region& r);

bool is_connected(const Region& r);

// ---------------------------------------------------------------------------
// Anchored templates.

// A template anchored at a designated boundary edge (w outside, v inside).
// `labels` records which nearby vertices are constrained: true = must lie in
// the region, false = must lie outside.  w and v are always labelled (out and
// in respectively).  Vertices absent from `labels` are unconstrained.
// `cut` optionally names a second in-vertex p such that {v, p} is a
// two-vertex cut of the in-set, used to accelerate boundary enumeration.
struct ExtendedRegion {
    Vtx w{}, v{};
    std::map<Vtx, bool> labels;
    std::optional<Vtx> cut;

    ExtendedRegion() = default;
    ExtendedRegion(Vtx w_, Vtx v_, const std::vector<Vtx>& in,
                   const std::vector<Vtx>& out,
                   std::optional<Vtx> cut_ = std::nullopt);

    bool labelled(Vtx u) const { return labels.count(u) != 0; }
    bool labels_in(Vtx u) const;  // true iff labelled and in
    Region in_region() const;     // the in-labelled vertices as a Region
    std::vector<Vtx> in_list() const;
    std::vector<Vtx> out_list() const;

    friend bool operator==(const ExtendedRegion&, const ExtendedRegion&) = default;
};

// Does template t match region r at boundary edge e?  e must belong to E(r).
// The match is attempted in both orientations of e; for each orientation with
// the in-endpoint inside r and the out-endpoint outside, the unique lattice
// symmetry carrying the template's designated edge onto the oriented e is
// applied and every label checked against membership in r.
bool matches(const Region& r, Edge e, const ExtendedRegion& t);

// Is tp an extended subregion of t: same designated edge and every label of
// tp present in t with the same value.
bool is_extended_subregion(const ExtendedRegion& tp, const ExtendedRegion& t);

// A family of templates.  family is 'A' (must partition: every labelling of
// the union support matches exactly one entry) or 'F' (must contain the
// single-vertex template; entries may overlap).
struct Catalogue {
    char family = 'A';
    std::vector<ExtendedRegion> entries;
};

struct ValidationReport {
    bool ok = true;
    std::string message;
};

// Structural validation of a catalogue.  For family 'A' this performs the
// exhaustive exclusivity check over all in/out labelings of the union
// support (after canonicalizing every entry to the frame of entry 0); any
// labelling matched by zero or by two or more entries is reported with a
// witness.  For family 'F' it checks each entry is well-formed and that the
// single-vertex template (in-set {v}, no out-labels beyond w) is present.
ValidationReport validate_catalogue(const Catalogue& cat);

// Index of the unique entry of cat matching r at e, or -1 if none.  Throws
// ValidationError if two entries match (catalogue not exclusive).
int match_index(const Catalogue& cat, const Region& r, Edge e);

}  // namespace kagome
