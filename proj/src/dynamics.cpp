// dynamics.cpp
// Chain steps, exhaustive state graphs, the two-equal-neighbours checker,
// the single-vertex update path, and the TV-to-uniform estimator.

#include "kagome/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kagome/boundary_pair.hpp"
#include "kagome/errors.hpp"

namespace kagome {
namespace {

std::string vtx_str(Vtx v) {
    std::ostringstream os;
    os << "(" << v.x << "," << v.y << ")";
    return os.str();
}

constexpr Mask bit_of(int c) { return 1u << (c - 1); }

int lowest_color(Mask m) { return std::countr_zero(m) + 1; }

int nth_color(Mask m, unsigned k) {
    for (int c = 1; c <= Q; ++c)
        if (m & bit_of(c)) {
            if (k == 0) return c;
            --k;
        }
    throw std::logic_error("nth_color: mask too small");
}

// Colors worn by lattice neighbours of v: region coloring first, outside
// boundary second; 0 binds nothing.
Mask palette_at(const Region& r, const VertexColoring& sigma, const VertexColoring& bnd,
                Vtx v) {
    Mask used = 0;
    for (Vtx u : neighbours(v)) {
        int c = 0;
        if (r.contains(u)) {
            auto it = sigma.find(u);
            if (it != sigma.end()) c = it->second;
        } else {
            auto it = bnd.find(u);
            if (it != bnd.end()) c = it->second;
        }
        if (c >= 1 && c <= Q) used |= bit_of(c);
    }
    return used;
}

Mask allowed_at(const Region& r, const VertexColoring& sigma, const VertexColoring& bnd,
                Vtx v) {
    return kAllColors & ~palette_at(r, sigma, bnd, v);
}

void validate_boundary(const Region& r, const VertexColoring& bnd) {
    const std::vector<Vtx> bvs = boundary_vertices(r);
    const std::set<Vtx> bset(bvs.begin(), bvs.end());
    for (const auto& [u, c] : bnd) {
        if (!bset.count(u))
            throw ValidationError("boundary colors a vertex " + vtx_str(u) +
                                  " that is not on the region's boundary");
        if (c < 0 || c > Q) throw ValidationError("boundary color out of range 0..5");
    }
}

void validate_chain(const ChainConfig& cfg) {
    if (cfg.q != Q) throw ValidationError("chain: only q = 5 is supported");
    if (cfg.region.empty()) throw ValidationError("chain: empty region");
    if (cfg.variant == Variant::ball && (cfg.ball_d < 0 || cfg.ball_d > 2))
        throw ValidationError("chain: ball radius must lie in 0..2");
    if (cfg.variant == Variant::edge_heatbath && interior_edges(cfg.region).empty())
        throw ValidationError("chain: region has no interior edge to resample");
    validate_boundary(cfg.region, cfg.boundary);
}

void validate_state(const ChainConfig& cfg, const VertexColoring& sigma) {
    if (sigma.size() != cfg.region.size())
        throw ValidationError("state: coloring domain differs from the region");
    for (const auto& [v, c] : sigma) {
        if (!cfg.region.contains(v))
            throw ValidationError("state: coloring touches " + vtx_str(v) + " outside the region");
        if (c < 1 || c > Q) throw ValidationError("state: color out of range 1..5");
    }
    if (!is_proper(cfg.region, sigma)) throw ValidationError("state: coloring is not proper");
    for (const auto& [u, c] : cfg.boundary) {
        if (c == 0) continue;
        for (Vtx x : neighbours(u))
            if (cfg.region.contains(x) && sigma.at(x) == c)
                throw ValidationError("state: coloring clashes with the boundary at " + vtx_str(x));
    }
}

// Vertices within graph distance d of the region.
std::vector<Vtx> enlargement(const Region& r, int d) {
    std::set<Vtx> all(r.verts.begin(), r.verts.end());
    std::vector<Vtx> frontier = r.verts;
    for (int k = 0; k < d; ++k) {
        std::vector<Vtx> next;
        for (Vtx v : frontier)
            for (Vtx u : neighbours(v))
                if (all.insert(u).second) next.push_back(u);
        frontier = std::move(next);
    }
    return {all.begin(), all.end()};
}

VertexColoring glauber_step(const ChainConfig& cfg, VertexColoring sigma, Rng& rng) {
    const Vtx v = cfg.region.verts[rng.next_below(cfg.region.size())];
    const Mask ok = allowed_at(cfg.region, sigma, cfg.boundary, v);
    const int n = std::popcount(ok);
    if (n == 0) throw std::logic_error("glauber: no allowed color at degree <= 4, q = 5");
    sigma[v] = nth_color(ok, static_cast<unsigned>(rng.next_below(n)));
    return sigma;
}

VertexColoring edge_step(const ChainConfig& cfg, VertexColoring sigma, Rng& rng) {
    const std::vector<Edge> edges = interior_edges(cfg.region);
    const Edge e = edges[rng.next_below(edges.size())];
    VertexColoring blank = sigma;
    blank[e.a] = 0;
    blank[e.b] = 0;
    const Mask ma = allowed_at(cfg.region, blank, cfg.boundary, e.a);
    const Mask mb = allowed_at(cfg.region, blank, cfg.boundary, e.b);
    std::vector<std::pair<int, int>> pairs;
    for (int ca = 1; ca <= Q; ++ca) {
        if (!(ma & bit_of(ca))) continue;
        for (int cb = 1; cb <= Q; ++cb)
            if ((mb & bit_of(cb)) && ca != cb) pairs.emplace_back(ca, cb);
    }
    if (pairs.empty()) throw std::logic_error("edge_heatbath: no proper pair recoloring");
    const auto [ca, cb] = pairs[rng.next_below(pairs.size())];
    sigma[e.a] = ca;
    sigma[e.b] = cb;
    return sigma;
}

// Exact uniform resample of `win` given everything else: walk the window
// vertex by vertex, picking each color bucket by an index drawn over the
// exact conditional counts.
void resample_window(const Region& r, const VertexColoring& bnd, std::vector<Vtx> win,
                     VertexColoring& sigma, Rng& rng) {
    if (win.empty()) return;
    VertexColoring fixed = bnd;
    const std::set<Vtx> wset(win.begin(), win.end());
    for (Vtx x : r.verts)
        if (!wset.count(x)) fixed[x] = sigma.at(x);
    Region rem{std::vector<Vtx>(win.begin(), win.end())};
    CountVector n = count_at_vertex(rem, induced_edge_boundary(rem, fixed), rem.verts[0]);
    std::uint64_t total = 0;
    for (int c = 1; c <= Q; ++c) total += n[c];
    if (total == 0) throw std::logic_error("resample: empty conditional state space");
    std::uint64_t k = rng.next_below(total);
    while (!rem.empty()) {
        const Vtx u = rem.verts[0];
        n = count_at_vertex(rem, induced_edge_boundary(rem, fixed), u);
        for (int c = 1; c <= Q; ++c) {
            if (k < n[c]) {
                sigma[u] = c;
                fixed[u] = c;
                rem = rem.without(u);
                break;
            }
            k -= n[c];
        }
    }
}

VertexColoring ball_step(const ChainConfig& cfg, VertexColoring sigma, Rng& rng) {
    const std::vector<Vtx> enl = enlargement(cfg.region, cfg.ball_d);
    const Vtx v = enl[rng.next_below(enl.size())];
    std::vector<Vtx> win;
    for (Vtx u : ball(v, cfg.ball_d))
        if (cfg.region.contains(u)) win.push_back(u);
    resample_window(cfg.region, cfg.boundary, std::move(win), sigma, rng);
    return sigma;
}

}  // namespace

VertexColoring step(const ChainConfig& cfg, const VertexColoring& sigma, Rng& rng) {
    validate_chain(cfg);
    validate_state(cfg, sigma);
    switch (cfg.variant) {
        case Variant::glauber:
            return glauber_step(cfg, sigma, rng);
        case Variant::edge_heatbath:
            return edge_step(cfg, sigma, rng);
        case Variant::ball:
            return ball_step(cfg, sigma, rng);
    }
    throw std::logic_error("step: unknown variant");
}

VertexColoring run(const ChainConfig& cfg, VertexColoring sigma, std::uint64_t steps) {
    Rng rng(cfg.seed);
    for (std::uint64_t i = 0; i < steps; ++i) sigma = step(cfg, sigma, rng);
    return sigma;
}

namespace {

std::vector<VertexColoring> enumerate_states(const Region& r, const VertexColoring& bnd,
                                             std::size_t budget, const char* who) {
    ColorCounter cc(r);
    cc.apply_vertex_boundary(bnd);
    std::vector<VertexColoring> states;
    cc.for_each([&](const std::vector<int>& cols) {
        if (states.size() >= budget)
            throw BudgetExceeded(std::string(who) + ": state space exceeds budget");
        VertexColoring s;
        for (std::size_t i = 0; i < r.verts.size(); ++i) s[r.verts[i]] = cols[i];
        states.push_back(std::move(s));
    });
    std::sort(states.begin(), states.end());
    return states;
}

int state_index(const std::vector<VertexColoring>& states, const VertexColoring& s) {
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s) return -1;
    return static_cast<int>(it - states.begin());
}

}  // namespace

StateGraph state_graph(const Region& r, const VertexColoring& bnd, Variant variant, int ball_d,
                       std::size_t budget) {
    validate_boundary(r, bnd);
    if (variant == Variant::ball && (ball_d < 0 || ball_d > 2))
        throw ValidationError("state_graph: ball radius must lie in 0..2");
    StateGraph g;
    g.states = enumerate_states(r, bnd, budget, "state_graph");
    g.adj.assign(g.states.size(), {});

    // Resampling windows of the variant; a move fixes everything outside one.
    std::set<std::vector<Vtx>> windows;
    switch (variant) {
        case Variant::glauber:
            for (Vtx v : r.verts) windows.insert({v});
            break;
        case Variant::edge_heatbath:
            for (const Edge& e : interior_edges(r)) windows.insert({e.a, e.b});
            break;
        case Variant::ball:
            for (Vtx v : enlargement(r, ball_d)) {
                std::vector<Vtx> win;
                for (Vtx u : ball(v, ball_d))
                    if (r.contains(u)) win.push_back(u);
                std::sort(win.begin(), win.end());
                if (!win.empty()) windows.insert(std::move(win));
            }
            break;
    }

    for (int i = 0; i < static_cast<int>(g.states.size()); ++i) {
        const VertexColoring& s = g.states[i];
        for (const std::vector<Vtx>& win : windows) {
            VertexColoring fixed = bnd;
            const std::set<Vtx> wset(win.begin(), win.end());
            for (Vtx x : r.verts)
                if (!wset.count(x)) fixed[x] = s.at(x);
            Region rem{std::vector<Vtx>(win.begin(), win.end())};
            ColorCounter cc(rem);
            cc.apply_edge_boundary(induced_edge_boundary(rem, fixed));
            cc.for_each([&](const std::vector<int>& cols) {
                VertexColoring t = s;
                for (std::size_t k = 0; k < rem.verts.size(); ++k) t[rem.verts[k]] = cols[k];
                if (t == s) return;
                const int j = state_index(g.states, t);
                if (j < 0) throw std::logic_error("state_graph: move left the state space");
                g.adj[i].push_back(j);
            });
        }
        std::sort(g.adj[i].begin(), g.adj[i].end());
        g.adj[i].erase(std::unique(g.adj[i].begin(), g.adj[i].end()), g.adj[i].end());
    }

    std::vector<int> comp(g.states.size(), -1);
    for (int i = 0; i < static_cast<int>(g.states.size()); ++i) {
        if (comp[i] != -1) continue;
        const int id = static_cast<int>(g.components.size());
        g.components.push_back({});
        std::vector<int> stack{i};
        comp[i] = id;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            g.components[id].push_back(x);
            for (int y : g.adj[x])
                if (comp[y] == -1) {
                    comp[y] = id;
                    stack.push_back(y);
                }
        }
        std::sort(g.components[id].begin(), g.components[id].end());
    }
    return g;
}

TwoEqualReport check_two_equal_neighbours(const Region& r, std::size_t max_verts) {
    if (r.size() > max_verts)
        throw BudgetExceeded("check_two_equal_neighbours: region exceeds the vertex budget");
    if (r.empty()) throw ValidationError("check_two_equal_neighbours: empty region");
    // A counterexample is a proper coloring in which every vertex sees
    // pairwise distinct colors on its in-region neighbours; adjacent
    // neighbour pairs already differ, the rest become explicit constraints.
    ColorCounter cc(r);
    for (Vtx u : r.verts) {
        std::vector<Vtx> nb;
        for (Vtx x : neighbours(u))
            if (r.contains(x)) nb.push_back(x);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!adjacent(nb[i], nb[j])) cc.add_distinct(nb[i], nb[j]);
    }
    TwoEqualReport rep;
    rep.counterexamples = cc.count();
    rep.holds = rep.counterexamples == 0;
    if (!rep.holds) {
        struct Found {
            std::vector<int> cols;
        };
        try {
            cc.for_each([](const std::vector<int>& cols) { throw Found{cols}; });
        } catch (const Found& f) {
            VertexColoring w;
            for (std::size_t i = 0; i < r.verts.size(); ++i) w[r.verts[i]] = f.cols[i];
            rep.witness = std::move(w);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Single-vertex update paths.

namespace {

// Carries the mutable coloring while moves accumulate.  Every candidate
// unlock ladder is transactional: failed attempts roll the coloring and the
// move list back before the next candidate is tried.
class PathBuilder {
  public:
    PathBuilder(const Region& r, const VertexColoring& s1, const VertexColoring& s2)
        : r_(r), sigma_(s1), target_(s2) {}

    std::vector<Move> build() {
        for (Vtx v : r_.verts)
            if (sigma_.at(v) != target_.at(v)) resolve(v);
        if (sigma_ != target_) throw std::logic_error("path: resolution left disagreements");
        return moves_;
    }

  private:
    Mask allowed(Vtx v) const {
        Mask used = 0;
        for (Vtx u : neighbours(v))
            if (r_.contains(u)) used |= bit_of(sigma_.at(u));
        return kAllColors & ~used;
    }

    bool locked(Vtx v) const { return allowed(v) == bit_of(sigma_.at(v)); }

    bool try_move(Vtx v, int c) {
        if (sigma_.at(v) == c || !(allowed(v) & bit_of(c))) return false;
        undo_.push_back({v, sigma_.at(v)});
        sigma_[v] = c;
        moves_.push_back({v, c});
        return true;
    }

    void move(Vtx v, int c) {
        if (!try_move(v, c)) throw std::logic_error("path: invalid single-vertex move");
    }

    void rollback(std::size_t cp) {
        while (moves_.size() > cp) {
            sigma_[undo_.back().v] = undo_.back().c;
            undo_.pop_back();
            moves_.pop_back();
        }
    }

    void resolve(Vtx v) {
        const int ct = target_.at(v);
        for (int guard = 0; guard < 16; ++guard) {
            if (sigma_.at(v) == ct) return;
            if (allowed(v) & bit_of(ct)) {
                move(v, ct);
                return;
            }
            Vtx w{};
            bool found = false;
            for (Vtx u : neighbours(v))
                if (r_.contains(u) && sigma_.at(u) == ct) {
                    w = u;
                    found = true;
                    break;
                }
            if (!found) throw std::logic_error("path: blocked without a blocker");
            // Free the blocker directly when it has another color available.
            const Mask wok = allowed(w) & ~bit_of(ct);
            if (wok) {
                const int pref = target_.at(w);
                move(w, (wok & bit_of(pref)) ? pref : lowest_color(wok));
                continue;
            }
            // Blocker locked; a sidestep of v vacates a color the blocker
            // can take on the next round.
            const Mask vok = allowed(v) & ~bit_of(sigma_.at(v));
            if (vok) {
                move(v, lowest_color(vok));
                continue;
            }
            // Both locked: cascade along a path of locked vertices.
            ladder(v, w, ct);
            return;
        }
        throw std::logic_error("path: resolve guard exceeded");
    }

    // Paths from a neighbour of v through locked vertices to the first
    // non-locked vertex, breadth-first (so shortest), capped at 8 steps.
    std::vector<Vtx> locked_path(Vtx s, Vtx v, Vtx w, bool reversed) const {
        if (!locked(s)) return {s};
        std::map<Vtx, Vtx> parent;
        parent[s] = s;
        std::vector<Vtx> frontier{s};
        for (int depth = 1; depth <= 8 && !frontier.empty(); ++depth) {
            std::vector<Vtx> next;
            for (Vtx x : frontier) {
                std::array<Vtx, 4> ns = neighbours(x);
                if (reversed) std::reverse(ns.begin(), ns.end());
                for (Vtx y : ns) {
                    if (!r_.contains(y) || y == v || y == w || parent.count(y)) continue;
                    parent[y] = x;
                    if (!locked(y)) {
                        std::vector<Vtx> path{y};
                        while (path.back() != s) path.push_back(parent.at(path.back()));
                        std::reverse(path.begin(), path.end());
                        return path;
                    }
                    next.push_back(y);
                }
            }
            frontier = std::move(next);
        }
        return {};
    }

    // The cascade: the far end u of the path gains a duplicate-free move,
    // each locked vertex then takes the color its successor vacated, v takes
    // the color vacated next to it, the blocker takes v's old color, v takes
    // the target, and the path is restored in forward order.
    bool attempt_ladder(Vtx v, Vtx w, int ct, const std::vector<Vtx>& path) {
        const std::size_t cp = moves_.size();
        const auto fail = [&] {
            rollback(cp);
            return false;
        };
        std::vector<int> olds;
        olds.reserve(path.size());
        for (Vtx q : path) olds.push_back(sigma_.at(q));
        const int old_v = sigma_.at(v);

        const Vtx u = path.back();
        const Mask uok = allowed(u) & ~bit_of(sigma_.at(u));
        if (!uok) return fail();
        const Mask upref = uok & ~bit_of(ct);
        if (!try_move(u, lowest_color(upref ? upref : uok))) return fail();
        for (int i = static_cast<int>(path.size()) - 2; i >= 0; --i)
            if (!try_move(path[i], olds[i + 1])) return fail();
        if (!try_move(v, olds[0])) return fail();
        if (!try_move(w, old_v)) return fail();
        if (!try_move(v, ct)) return fail();
        for (std::size_t i = 0; i < path.size(); ++i)
            if (sigma_.at(path[i]) != olds[i] && !try_move(path[i], olds[i])) return fail();
        return true;
    }

    void ladder(Vtx v, Vtx w, int ct) {
        for (int reversed = 0; reversed < 2; ++reversed)
            for (Vtx s : neighbours(v)) {
                if (!r_.contains(s) || s == w) continue;
                const std::vector<Vtx> path = locked_path(s, v, w, reversed != 0);
                if (path.empty()) continue;
                if (attempt_ladder(v, w, ct, path)) return;
            }
        throw ValidationError("recolouring_path: unlock search failed at " + vtx_str(v) +
                              " (radius cap 8); the region lies outside the guarantee");
    }

    const Region& r_;
    VertexColoring sigma_;
    const VertexColoring& target_;
    std::vector<Move> moves_;
    struct Undo {
        Vtx v;
        int c;
    };
    std::vector<Undo> undo_;
};

void validate_path_coloring(const Region& r, const VertexColoring& s, const char* name) {
    if (s.size() != r.size())
        throw ValidationError(std::string("recolouring_path: ") + name +
                              " domain differs from the region");
    for (const auto& [v, c] : s) {
        if (!r.contains(v))
            throw ValidationError(std::string("recolouring_path: ") + name +
                                  " colors a vertex outside the region");
        if (c < 1 || c > Q)
            throw ValidationError(std::string("recolouring_path: ") + name +
                                  " has a color out of range 1..5");
    }
    if (!is_proper(r, s))
        throw ValidationError(std::string("recolouring_path: ") + name + " is not proper");
}

}  // namespace

std::vector<Move> recolouring_path(const Region& r, const VertexColoring& s1,
                                   const VertexColoring& s2) {
    validate_path_coloring(r, s1, "start");
    validate_path_coloring(r, s2, "destination");
    return PathBuilder(r, s1, s2).build();
}

TvEstimate tv_to_uniform(const ChainConfig& cfg, const VertexColoring& sigma0, std::uint64_t t,
                         std::uint64_t trials, std::size_t omega_budget) {
    validate_chain(cfg);
    validate_state(cfg, sigma0);
    if (trials == 0) throw ValidationError("tv_to_uniform: need at least one trial");
    const std::vector<VertexColoring> omega =
        enumerate_states(cfg.region, cfg.boundary, omega_budget, "tv_to_uniform");
    TvEstimate est;
    est.omega = omega.size();
    std::vector<std::uint64_t> hits(omega.size(), 0);
    const Rng root(cfg.seed);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = root.fork(trial);
        VertexColoring s = sigma0;
        for (std::uint64_t i = 0; i < t; ++i) s = step(cfg, s, rng);
        const int idx = state_index(omega, s);
        if (idx < 0) throw std::logic_error("tv_to_uniform: chain left the state space");
        ++hits[static_cast<std::size_t>(idx)];
    }
    const double pi = 1.0 / static_cast<double>(omega.size());
    double tv = 0, mass_above = 0;
    for (std::uint64_t h : hits) {
        const double ph = static_cast<double>(h) / static_cast<double>(trials);
        if (ph > pi) {
            tv += ph - pi;
            mass_above += ph;
        }
    }
    est.tv = tv;
    const double se = std::sqrt(mass_above * (1 - mass_above) / static_cast<double>(trials));
    est.lo = std::max(0.0, tv - 1.96 * se);
    est.hi = std::min(1.0, tv + 1.96 * se);
    return est;
}

}  // namespace kagome
