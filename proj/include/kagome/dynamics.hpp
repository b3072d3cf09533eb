// dynamics.hpp
// Markov chains on proper colorings of a region under a fixed outside
// boundary: single-vertex heat bath (Glauber), pair heat bath on interior
// edges, and exact ball resampling.  Also: exhaustive state-graph analysis
// (frozen states, connectivity), the checker that every proper coloring of a
// region has a vertex with two equally-colored in-region neighbours, the
// constructor of a linear-length single-vertex update path between two
// colorings of a 0-boundary region, and a Monte-Carlo estimate of the total
// variation distance to the uniform stationary distribution.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kagome/coloring.hpp"
#include "kagome/region.hpp"
#include "kagome/rng.hpp"

namespace kagome {

enum class Variant { glauber, edge_heatbath, ball };

struct ChainConfig {
    Region region;
    VertexColoring boundary;  // colors on outside boundary vertices; 0 = free
    int q = Q;                // only q = 5 is supported
    Variant variant = Variant::glauber;
    int ball_d = 1;           // ball radius, 0..2 (ball variant only)
    std::uint64_t seed = 0;
};

// One transition.  glauber: uniform vertex, uniform allowed color (the set
// is never empty at q = 5 on a 4-regular lattice).  edge_heatbath: uniform
// interior edge, uniform proper recoloring of its endpoints given the rest.
// ball: uniform vertex v of the d-enlargement of the region, exact uniform
// resample of ball(v, d) ∩ R given the rest.  Throws ValidationError when
// sigma is not a proper agreeing coloring of the region.
VertexColoring step(const ChainConfig& cfg, const VertexColoring& sigma, Rng& rng);

// `steps` transitions from sigma with a generator seeded by cfg.seed.
VertexColoring run(const ChainConfig& cfg, VertexColoring sigma, std::uint64_t steps);

struct StateGraph {
    std::vector<VertexColoring> states;     // all proper agreeing colorings, sorted
    std::vector<std::vector<int>> adj;      // possible-transition neighbours
    std::vector<std::vector<int>> components;  // state indices per component
    bool connected() const { return components.size() <= 1; }
};

// Exhaustive transition graph of the chosen variant.  Two states are
// adjacent when one move can carry one to the other (they differ inside a
// single resampling window).  Throws BudgetExceeded past `budget` states.
StateGraph state_graph(const Region& r, const VertexColoring& bnd, Variant variant,
                       int ball_d = 1, std::size_t budget = 50000);

struct TwoEqualReport {
    bool holds = false;                    // every proper coloring has such a vertex
    std::uint64_t counterexamples = 0;     // colorings where all neighbourhoods are rainbow
    std::optional<VertexColoring> witness; // one counterexample when any exist
};

// Does every proper 5-coloring of r (free boundary) contain a vertex with
// two equally-colored in-region neighbours?  Exhaustive and exact.
TwoEqualReport check_two_equal_neighbours(const Region& r, std::size_t max_verts = 30);

struct Move {
    Vtx v;
    int c;
};

// A sequence of proper single-vertex updates carrying s1 to s2 on a region
// with free (0) boundary.  Vertices already agreeing with s2 are only ever
// touched inside the bounded unlocking procedure, which restores them.  The
// length is at most a constant times the number of disagreeing vertices.
// Throws ValidationError if the unlock search exhausts its radius cap.
std::vector<Move> recolouring_path(const Region& r, const VertexColoring& s1,
                                   const VertexColoring& s2);

struct TvEstimate {
    double tv = 0, lo = 0, hi = 0;  // plug-in estimate with ~95% binomial CI
    std::uint64_t omega = 0;        // |Ω|, from exhaustive enumeration
};

// Monte-Carlo estimate of the total variation distance between the law of
// the chain after t steps from sigma0 (one independent chain per trial) and
// the uniform distribution on the agreeing proper colorings.
TvEstimate tv_to_uniform(const ChainConfig& cfg, const VertexColoring& sigma0,
                         std::uint64_t t, std::uint64_t trials,
                         std::size_t omega_budget = 50000);

}  // namespace kagome
