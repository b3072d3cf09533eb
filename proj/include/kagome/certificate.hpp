// certificate.hpp
// Decay certificates: a rational ε and a vector α over the A-set ids
// (a, m) appearing in a tuple system, such that
//   α_id >= 1/(1-ε)                                   for every id, and
//   mu(f, m) * (α_child1 + α_child2 + α_child3) <= α_root * (1-ε)
// for every tuple (empty children contribute 0).  Such a vector certifies
// geometric decay of the coupling cost at rate (1-ε), with constant
// alpha_max.  The solver computes the least such vector by Kleene iteration
// of the monotone best-response operator from the lower-bound vector,
// accelerated on stalls by exact policy iteration (solve the current
// greedy-choice affine system; the solution is adopted only when the
// system's matrix is certified to have spectral radius < 1 by inverse
// nonnegativity, which keeps every iterate below the least fixed point).
// Divergence past the cap yields an infeasibility report with a witness
// chain instead of a certificate.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kagome/afset.hpp"
#include "kagome/mu.hpp"
#include "kagome/rational.hpp"

namespace kagome {

using AsetId = std::pair<int, int>;  // (a, m)

struct DecayCertificate {
    Rat epsilon;
    std::map<AsetId, Rat> alphas;
    Rat alpha_max;
    std::string a_hash, f_hash, mu_hash;  // provenance, copied from the inputs
    bool accelerated = false;             // policy acceleration fired
};

struct SolveResult {
    bool feasible = false;
    DecayCertificate cert;             // meaningful when feasible
    std::vector<std::string> witness;  // divergence chain otherwise
};

// Least-fixed-point solve.  Requires ε in (0,1) and cap > 1/(1-ε); any α
// exceeding cap means infeasible-within-cap and is reported, not thrown.
// Throws BudgetExceeded if the sweep ceiling is hit before convergence or
// divergence is detected.
SolveResult solve(const AFSet& s, const MuTable& mu, const Rat& eps,
                  const Rat& cap = Rat(1000000));

struct VerifyResult {
    bool ok = true;
    std::string message;
    std::optional<FiveTuple> violated;  // first violated tuple, if any
};

// Exact re-check of both certificate invariants against s and mu, plus
// provenance-hash agreement (hashes are compared only when both sides are
// stamped; empty means unstamped).
VerifyResult verify(const DecayCertificate& cert, const AFSet& s, const MuTable& mu);

// alpha_max * (1-ε)^d: the certified bound on the coupling cost at depth d.
Rat decay_bound(const DecayCertificate& cert, long d);

// K = 30/(ε(1-ε)), and K * (1-ε)^d: the per-vertex strong-spatial-mixing
// bound at graph distance d.
Rat ssm_constant(const Rat& eps);
Rat ssm_bound(const DecayCertificate& cert, long d);

struct EpsilonSearch {
    bool any = false;  // false: infeasible even at lo
    Rat eps;           // largest ε found feasible
    DecayCertificate cert;
};

// Bisects the largest feasible ε in [lo, hi] (feasibility is downward closed
// in ε: shrinking ε relaxes every inequality and the lower bound).
EpsilonSearch bisect_epsilon(const AFSet& s, const MuTable& mu, Rat lo, Rat hi,
                             int iters = 20, const Rat& cap = Rat(1000000));

}  // namespace kagome
