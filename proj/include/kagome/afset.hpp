// afset.hpp
// Construction of the tuple system that drives the decay certificates.
//
// A "big" labeling is an in/out labeling of a fixed window of vertices
// around the canonical anchor edge; it simultaneously determines
//   - the root A-catalogue entry it matches,
//   - the A entries matched at the three child edges (re-anchored by the
//     unique lattice symmetry carrying the anchor onto each child edge),
//   - the applicable family classes m (1 and 2 when the common neighbour of
//     the anchor lies inside, 3 and 4 when outside),
//   - the F entry minimizing the family constant among entries consistent
//     with the labeling (and with m; see derive_f),
//   - and, per the twelve-case table, the family classes of the children.
// Each labeling then contributes tuples (root A-set, F entry, three child
// A-sets); the mirror image of each tuple (child slots reversed) is emitted
// too, because an anchor-preserving reflection reverses the clockwise order
// of the child edges.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "kagome/mu.hpp"
#include "kagome/region.hpp"

namespace kagome {

struct FiveTuple {
    int a = -1, m = 0;  // root A-set id (a, m)
    int f = -1;         // F entry id; its class is m
    std::array<int, 3> child_a{-1, -1, -1};  // -1 = empty child set
    std::array<int, 3> child_m{0, 0, 0};     // 0 = empty child set
    friend auto operator<=>(const FiveTuple&, const FiveTuple&) = default;
};

struct AFSet {
    std::vector<FiveTuple> tuples;  // sorted, duplicate-free
    std::string a_hash, f_hash, mu_hash;  // provenance of the inputs
    std::string generator;          // description of the labeling family
};

// The twelve-case table: given the root class m and the in/out flags of the
// three child edges of the pivot in clockwise order starting with the edge
// toward the common neighbour of the pivot (the "v-child"), returns the rows
// of child classes (m1, m2, m3) in that same slot order; 0 marks an empty
// child set.  The underlying data table is intentionally small and editable
// (see afset.cpp).  Throws ValidationError for an unknown pattern (m in
// {1,2} requires the v-child flag set; m in {3,4} requires it clear).
std::vector<std::array<int, 3>> twelve_cases(int m, const std::array<bool, 3>& child_in);

// All in/out labelings of the canonical window: the three child positions of
// the anchor edge plus the child positions of each child edge (9 free
// vertices; the anchor in-vertex is always in, the out-vertex always out).
std::vector<ExtendedRegion> big_labelings();

struct DerivedSets {
    int a = -1;                              // root A entry
    std::array<int, 3> child_a{-1, -1, -1};  // per clockwise child; -1 = out
};

// Root and child A entries matched by the big labeling.  Children are
// indexed in clockwise order after the anchor out-vertex; a child whose
// anchor neighbour is labeled out gets -1.  Throws ValidationError when a
// lookup is not unique (catalogue exclusivity violation) or the catalogue
// labels vertices outside the window.
DerivedSets derive_sets(const ExtendedRegion& big, const Catalogue& a_cat);

// Index of the F entry minimizing the family constant mu(f, m) among entries
// that are extended subregions of the big labeling and consistent with m
// (m in {1,2} requires the entry to contain the common neighbour of the
// anchor; m in {3,4} excludes it).  Ties go to the smallest index.  Throws
// ValidationError when no entry applies.
int derive_f(const ExtendedRegion& big, int m, const Catalogue& f_cat, const MuTable& mu);

// Builds the full tuple set over the given labelings.  Catalogues are
// validated first; hashes are left for the caller to stamp.
AFSet build(const std::vector<ExtendedRegion>& bigs, const Catalogue& a_cat,
            const Catalogue& f_cat, const MuTable& mu);

}  // namespace kagome
