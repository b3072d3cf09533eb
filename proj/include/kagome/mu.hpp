// mu.hpp
// Upper bounds on the influence of the pivot edge: the ratio
//   mu_{i,i'}(X) = n_i / (n_i + sum of n_j over j outside {i, i'})
// computed from exact counts n_j of proper colorings with the pivot freed,
// and its maximum over whole template families ("family constants").  The
// family maximization enumerates boundary colorings by equality classes
// forced by the validity rule, optionally accelerated by splitting the
// region at a two-vertex cut and pruning each half with a Pareto filter
// that is exact for this ratio.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kagome/boundary_pair.hpp"
#include "kagome/rational.hpp"
#include "kagome/region.hpp"

namespace kagome {

struct MuValue {
    std::uint64_t numer = 0, denom = 0;  // n_i and n_i + N_{i,i'}
    Rat value;                           // numer/denom; 0 when denom == 0
    bool zero_denominator = false;
};

// mu_{i,i'}(x): i and i' must be distinct colors in 1..Q.
MuValue mu(const EdgeBoundaryPair& x, int i, int ip);

// max(mu_{c1,c2}, mu_{c2,c1}).
Rat mu_max(const EdgeBoundaryPair& x);

// ---------------------------------------------------------------------------
// Family constants.

struct FamilyConstant {
    Rat value;             // max of mu_{1,2} over the family (0 if empty)
    bool empty = false;    // family has no members for this m
    EdgeColoring witness;  // maximizing boundary coloring (pivot omitted)
};

// Split r at the two-vertex cut {a, b}: the components of r minus {a, b}
// are grouped into two balanced halves, each extended by a and b.  Returns
// nullopt unless the cut separates r into at least two components.
std::optional<std::pair<Region, Region>> split_region(const Region& r, Vtx a, Vtx b);

// Pair counts at (a, b) of proper colorings of `half` under bnd, where only
// edges present in bnd constrain anything (edges of `half` introduced by the
// split are simply absent from bnd and therefore free).
PairCountMatrix half_pair_counts(const Region& half, Vtx a, Vtx b, const EdgeColoring& bnd);

// Pareto filter for the split maximization of mu_{1,2}: returns the indices
// of matrices not dominated by any other.  B dominates A when
//   A[1][j] * B[i][k] <= B[1][j] * A[i][k]  for all j, k in Q, i in Q minus {2}
// and B's support covers A's on rows i != 2 (so a zero denominator on B's
// side can only occur when A's vanishes too).  Replacing A by B then never
// decreases the combined ratio, whatever the other half contributes.
std::vector<std::size_t> dominance_filter(const std::vector<PairCountMatrix>& ms);

// Maximum of mu_{1,2} over all valid pairs on the in-region of template t
// with pivot colors (1, 2) and the edge pin required by class m:
//   m = 1 or 2: the common neighbour y of (w, v) must lie in the template and
//     the edge (w, y) is pinned to m's pivot color;
//   m = 3: y must lie outside and the edge (y, v) is pinned to {1, 2};
//   m = 4: y must lie outside, no pin.
// A template inconsistent with m yields an empty family (value 0).
// Boundary enumeration runs over the equality classes forced by the validity
// rule.  Single-edge classes range over real colors 1..5 only: leaving such
// an edge unconstrained averages the pinned counts uniformly, so it never
// beats the best real color.  Classes with several edges (a shared outside
// vertex) additionally take 0, because an unconstrained shared vertex is not
// a mixture of pinned ones.
// When allow_split is set, the template's recorded cut (or, failing that,
// the cheapest two-vertex cut {v, p}) decomposes the template into
// components whose pair-count matrices are folded cell-wise, each component
// front Pareto-filtered before folding.
FamilyConstant family_constant(const ExtendedRegion& t, int m, bool allow_split = true);

// ---------------------------------------------------------------------------
// Tables of family constants.

struct MuTable {
    std::string catalogue_hash;                       // of the F catalogue used
    std::map<std::pair<int, int>, FamilyConstant> entries;  // (f, m) -> constant
};

// Constant for (f, m); throws ValidationError if absent.
const FamilyConstant& mu_of(const MuTable& table, int f, int m);

// Computes family constants for every entry of fcat and m in 1..4.
MuTable build_mu_table(const Catalogue& fcat, bool allow_split = true,
                       const std::function<void(const std::string&)>& progress = {});

}  // namespace kagome
