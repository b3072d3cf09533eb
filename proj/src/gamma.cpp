#include "kagome/gamma.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "kagome/errors.hpp"

namespace kagome {

MarginalPair marginals(const EdgeBoundaryPair& x) {
    MarginalPair m;
    auto fill = [&x](std::array<Rat, Q + 1>& d, int pivot_color, bool& empty) {
        CountVector n = count_at_vertex(x.region, x.edges_with_pivot(pivot_color), x.v);
        std::uint64_t total = 0;
        for (int c = 1; c <= Q; ++c) total += n[c];
        if (total == 0) {
            empty = true;
            return;
        }
        for (int c = 1; c <= Q; ++c) {
            d[c] = Rat(static_cast<unsigned long>(n[c]), static_cast<unsigned long>(total));
            d[c].canonicalize();
        }
    };
    fill(m.d1, x.c1, m.empty1);
    fill(m.d2, x.c2, m.empty2);
    return m;
}

CouplingTable optimal_coupling(const MarginalPair& m, bool descending_match) {
    if (m.empty1 || m.empty2)
        throw ValidationError("optimal_coupling: marginal pair is flagged empty");
    CouplingTable ct;
    ct.tv = 0;
    std::array<Rat, Q + 1> surplus{}, deficit{};
    for (int c = 1; c <= Q; ++c) {
        Rat lo = std::min(m.d1[c], m.d2[c]);
        ct.p[c][c] = lo;
        if (m.d1[c] > lo) surplus[c] = m.d1[c] - lo;
        if (m.d2[c] > lo) deficit[c] = m.d2[c] - lo;
        ct.tv += m.d1[c] - lo;
    }
    std::array<int, Q> order{1, 2, 3, 4, 5};
    if (descending_match) std::reverse(order.begin(), order.end());
    for (int c : order) {
        for (int cp : order) {
            if (surplus[c] == 0) break;
            if (deficit[cp] == 0) continue;
            Rat amount = std::min(surplus[c], deficit[cp]);
            ct.p[c][cp] += amount;
            surplus[c] -= amount;
            deficit[cp] -= amount;
        }
    }
    return ct;
}

Rat nu(const EdgeBoundaryPair& x) {
    MarginalPair m = marginals(x);
    if (m.empty1 || m.empty2) return 0;
    Rat tv = 0;
    for (int c = 1; c <= Q; ++c) {
        Rat diff = m.d1[c] - m.d2[c];
        if (diff > 0) tv += diff;
    }
    return tv;
}

namespace {

// Canonical memo key: carry the pair into the anchor frame, then relabel
// colors by first appearance (pivot colors first, then the shared colors in
// canonical edge order; 0 is fixed).
std::string canon_key(const EdgeBoundaryPair& x) {
    Aff g = placement(x.w, x.v, kAnchorW, kAnchorV);
    std::vector<Vtx> verts;
    verts.reserve(x.region.size());
    for (Vtx u : x.region.verts) verts.push_back(g(u));
    std::sort(verts.begin(), verts.end());
    std::map<Edge, int> edges;
    for (const auto& [e, c] : x.shared) edges[make_edge(g(e.a), g(e.b))] = c;

    std::array<int, Q + 1> relabel{};
    relabel.fill(-1);
    relabel[0] = 0;
    int next = 1;
    auto touch = [&](int c) {
        if (relabel[c] < 0) relabel[c] = next++;
    };
    touch(x.c1);
    touch(x.c2);
    for (const auto& [e, c] : edges)
        if (c != 0) touch(c);
    for (int c = 1; c <= Q; ++c) touch(c);

    std::ostringstream os;
    for (Vtx u : verts) os << u.x << ',' << u.y << ';';
    os << '|';
    for (const auto& [e, c] : edges)
        os << e.a.x << ',' << e.a.y << ',' << e.b.x << ',' << e.b.y << '=' << relabel[c] << ';';
    os << '|' << relabel[x.c1] << ',' << relabel[x.c2];
    return os.str();
}

struct GammaContext {
    const GammaBudget& budget;
    GammaStats* stats;
    std::map<std::pair<std::string, int>, Rat> memo;

    Rat go(const EdgeBoundaryPair& x, int d) {
        if (x.region.size() > budget.max_region)
            throw BudgetExceeded("gamma_d: region exceeds budget");
        auto key = std::make_pair(canon_key(x), d);
        if (auto it = memo.find(key); it != memo.end()) {
            if (stats) ++stats->memo_hits;
            return it->second;
        }
        if (memo.size() >= budget.max_memo) throw BudgetExceeded("gamma_d: memo exceeds budget");
        if (stats) ++stats->nodes;

        Rat out = 0;
        MarginalPair m = marginals(x);
        if (m.empty1 || m.empty2) {
            if (stats) ++stats->empty_branches;
        } else if (d == 1) {
            for (int c = 1; c <= Q; ++c) {
                Rat diff = m.d1[c] - m.d2[c];
                if (diff > 0) out += diff;
            }
        } else {
            CouplingTable ct = optimal_coupling(m, budget.descending_match);
            for (int c = 1; c <= Q; ++c)
                for (int cp = 1; cp <= Q; ++cp) {
                    if (c == cp || ct.p[c][cp] == 0) continue;
                    Rat inner = 0;
                    for (int i = 1; i <= 3; ++i)
                        if (auto ch = child(x, i, c, cp)) inner += go(*ch, d - 1);
                    out += ct.p[c][cp] * inner;
                }
        }
        memo.emplace(std::move(key), out);
        return out;
    }
};

}  // namespace

Rat gamma_d(const EdgeBoundaryPair& x, int d, const GammaBudget& budget, GammaStats* stats) {
    if (d < 1) throw ValidationError("gamma_d: depth must be >= 1");
    if (d > budget.max_depth) throw BudgetExceeded("gamma_d: depth exceeds budget");
    GammaContext ctx{budget, stats, {}};
    return ctx.go(x, d);
}

int edge_distance(const EdgeBoundaryPair& x, const Region& rp) {
    if (rp.empty()) throw ValidationError("edge_distance: empty target region");
    int dw = rp.contains(x.w) ? 0 : distance_to_region(x.w, rp);
    int dv = rp.contains(x.v) ? 0 : distance_to_region(x.v, rp);
    return 1 + std::min(dw, dv);
}

CostBound cost_bound(const EdgeBoundaryPair& x, const Region& rp, int d_min, int exact_levels,
                     const std::optional<Rat>& alpha_max, const std::optional<Rat>& eps,
                     const GammaBudget& budget) {
    for (Vtx u : rp.verts)
        if (!x.region.contains(u))
            throw ValidationError("cost_bound: target region is not contained in the pair's region");
    if (d_min != edge_distance(x, rp))
        throw ValidationError("cost_bound: d_min does not equal the pivot-edge distance to the target");
    if (!alpha_max || !eps)
        throw ValidationError("cost_bound: a decay certificate (alpha_max, eps) is required for the tail");
    if (exact_levels < 0) throw ValidationError("cost_bound: exact_levels must be >= 0");

    CostBound out;
    out.exact_levels = exact_levels;
    out.partial = 0;
    GammaContext ctx{budget, nullptr, {}};
    for (int d = d_min; d < d_min + exact_levels; ++d) {
        if (d > budget.max_depth) throw BudgetExceeded("cost_bound: depth exceeds budget");
        out.partial += ctx.go(x, d);
    }
    out.tail = *alpha_max * rat_pow(1 - *eps, d_min + exact_levels) / *eps;
    out.total = out.partial + out.tail;
    return out;
}

}  // namespace kagome
