// gamma.hpp
// Exact per-edge discrepancy machinery: marginal distributions of the pivot
// in-endpoint's color under the two boundary colorings, the canonical
// TV-optimal coupling of those marginals, the one-step discrepancy nu, and
// the exact depth-d discrepancy recursion
//   gamma_1(X) = nu(X)
//   gamma_d(X) = sum over off-diagonal coupling cells (c, c') of
//                p(c, c') * sum over branches i of gamma_{d-1}(child_i(c, c'))
// with missing children contributing 0.  Sub-pairs are memoized under a
// canonical form (lattice symmetry plus color relabeling fixing the pivot
// pair), so results are independent of evaluation order.

#pragma once

#include <optional>

#include "kagome/boundary_pair.hpp"
#include "kagome/rational.hpp"

namespace kagome {

struct MarginalPair {
    std::array<Rat, Q + 1> d1{}, d2{};   // marginal of v's color under each boundary
    bool empty1 = false, empty2 = false; // no proper colorings under that boundary
};

// Exact marginals at x.v under the full boundaries (pivot included).
MarginalPair marginals(const EdgeBoundaryPair& x);

struct CouplingTable {
    std::array<std::array<Rat, Q + 1>, Q + 1> p{};  // p[c][c']: joint mass
    Rat tv;                                         // off-diagonal mass
};

// Canonical TV-optimal coupling: the diagonal takes min(d1, d2); the surplus
// of d1 is matched to the deficit colors greedily, both sides scanned in
// increasing color order (decreasing when descending_match is set; gamma for
// depth >= 2 may depend on this tie-break, so it is explicit).  Throws
// ValidationError on a flagged-empty marginal pair.
CouplingTable optimal_coupling(const MarginalPair& m, bool descending_match = false);

// One-step discrepancy nu(X) = TV distance of the two marginals; 0 when
// either side has no proper colorings.
Rat nu(const EdgeBoundaryPair& x);

struct GammaBudget {
    std::size_t max_region = 16;   // largest region in the recursion
    int max_depth = 12;            // largest d
    std::size_t max_memo = 1u << 22;
    bool descending_match = false; // coupling tie-break (see optimal_coupling)
};

struct GammaStats {
    std::uint64_t nodes = 0;          // recursion nodes evaluated
    std::uint64_t memo_hits = 0;
    std::uint64_t empty_branches = 0; // sub-pairs with an empty coloring set
};

// Exact gamma_d(X); d >= 1.  Throws BudgetExceeded when the region, depth,
// or memo budget is exceeded.
Rat gamma_d(const EdgeBoundaryPair& x, int d, const GammaBudget& budget = {},
            GammaStats* stats = nullptr);

// Distance from the pivot edge of x to region rp (edges on a shortest path
// from the edge): 1 + min over the pivot endpoints of their distance to rp.
int edge_distance(const EdgeBoundaryPair& x, const Region& rp);

struct CostBound {
    Rat partial;      // exact sum of gamma_d over d in [d_min, d_min + exact_levels)
    Rat tail;         // alpha_max * (1 - eps)^(d_min + exact_levels) / eps
    Rat total;        // partial + tail
    int exact_levels; // number of exactly expanded depths
};

// Upper bound on the total discrepancy sum_{d >= d_min} gamma_d(x): the
// first exact_levels depths are computed exactly and the rest bounded by the
// geometric tail of a decay certificate (alpha_max, eps).  Preconditions:
// rp is a subset of x's region and d_min = edge_distance(x, rp).  Throws
// ValidationError when no certificate is supplied (the tail is unbounded).
CostBound cost_bound(const EdgeBoundaryPair& x, const Region& rp, int d_min,
                     int exact_levels, const std::optional<Rat>& alpha_max,
                     const std::optional<Rat>& eps, const GammaBudget& budget = {});

}  // namespace kagome
