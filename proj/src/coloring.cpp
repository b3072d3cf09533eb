#include "kagome/coloring.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

ColorCounter::ColorCounter(Region r, std::optional<Vtx> root) : region_(std::move(r)) {
    const std::size_t n = region_.size();
    if (n > 24) throw std::invalid_argument("ColorCounter: region too large for exact counting");
    allowed_.assign(n, kAllColors);
    adj_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (Vtx u : neighbours(region_.verts[i])) {
            int j = region_.index_of(u);
            if (j >= 0) adj_[i].push_back(j);
        }
    int root_index = 0;
    if (root) {
        root_index = region_.index_of(*root);
        if (root_index < 0 && n > 0)
            throw std::invalid_argument("ColorCounter: walk root not in region");
    }
    rebuild_order(root_index);
}

void ColorCounter::rebuild_order(int root_index) {
    const std::size_t n = region_.size();
    // Sorted adjacency makes the BFS tie-break lexicographic (region indices
    // are in lexicographic vertex order).
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    // BFS visit order over all components, so each vertex after the first of
    // its component has an already-colored neighbour (keeps pruning tight).
    order_.clear();
    order_.reserve(n);
    std::vector<char> seen(n, 0);
    auto sweep = [&](int start) {
        if (seen[start]) return;
        seen[start] = 1;
        std::deque<int> q{start};
        while (!q.empty()) {
            int i = q.front();
            q.pop_front();
            order_.push_back(i);
            for (int j : adj_[i])
                if (!seen[j]) {
                    seen[j] = 1;
                    q.push_back(j);
                }
        }
    };
    if (n > 0) sweep(root_index);
    for (std::size_t s = 0; s < n; ++s) sweep(static_cast<int>(s));

    std::vector<int> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[order_[k]] = static_cast<int>(k);
    later_.assign(n, {});
    for (std::size_t k = 0; k < n; ++k)
        for (int j : adj_[order_[k]])
            if (pos[j] > static_cast<int>(k)) later_[k].push_back(pos[j]);
}

void ColorCounter::forbid(Vtx v, int c) {
    int i = region_.index_of(v);
    if (i < 0) throw std::invalid_argument("forbid: vertex not in region");
    if (c < 1 || c > Q) throw std::invalid_argument("forbid: color out of range");
    allowed_[i] &= ~(1u << (c - 1));
}

void ColorCounter::restrict_to(Vtx v, int c) {
    int i = region_.index_of(v);
    if (i < 0) throw std::invalid_argument("restrict_to: vertex not in region");
    if (c < 1 || c > Q) throw std::invalid_argument("restrict_to: color out of range");
    allowed_[i] &= (1u << (c - 1));
}

void ColorCounter::restrict_mask(Vtx v, Mask m) {
    int i = region_.index_of(v);
    if (i < 0) throw std::invalid_argument("restrict_mask: vertex not in region");
    allowed_[i] &= m;
}

Mask ColorCounter::allowed(Vtx v) const {
    int i = region_.index_of(v);
    if (i < 0) throw std::invalid_argument("allowed: vertex not in region");
    return allowed_[i];
}

void ColorCounter::apply_edge_boundary(const EdgeColoring& b) {
    for (const auto& [e, c] : b) {
        if (c == 0) continue;  // free edge: no constraint
        bool ain = region_.contains(e.a), bin = region_.contains(e.b);
        if (ain == bin) continue;  // interior or fully-outside edges carry no constraint here
        forbid(ain ? e.a : e.b, c);
    }
}

void ColorCounter::apply_vertex_boundary(const VertexColoring& b) {
    for (const auto& [u, c] : b) {
        if (region_.contains(u)) throw std::invalid_argument("vertex boundary inside region");
        if (c == 0) continue;
        for (Vtx v : neighbours(u))
            if (region_.contains(v)) forbid(v, c);
    }
}

void ColorCounter::add_distinct(Vtx a, Vtx b) {
    int i = region_.index_of(a), j = region_.index_of(b);
    if (i < 0 || j < 0) throw std::invalid_argument("add_distinct: vertex not in region");
    if (i == j) throw std::invalid_argument("add_distinct: identical vertices");
    if (std::find(adj_[i].begin(), adj_[i].end(), j) == adj_[i].end()) {
        adj_[i].push_back(j);
        adj_[j].push_back(i);
        rebuild_order(order_.empty() ? 0 : order_[0]);
    }
}

std::uint64_t ColorCounter::count() const {
    const std::size_t n = region_.size();
    if (n == 0) return 1;
    std::vector<Mask> cur(n);
    for (std::size_t k = 0; k < n; ++k) cur[k] = allowed_[order_[k]];

    // Iterative-friendly recursive walk with precise restore bookkeeping.
    struct Frame {
        const std::vector<std::vector<int>>& later;
        std::vector<Mask>& cur;
        std::uint64_t operator()(std::size_t k) const {
            if (k == cur.size()) return 1;
            Mask m = cur[k];
            if (m == 0) return 0;
            if (later[k].empty()) {
                std::uint64_t sub = (*this)(k + 1);
                return sub ? static_cast<std::uint64_t>(std::popcount(m)) * sub : 0;
            }
            std::uint64_t total = 0;
            for (Mask bits = m; bits;) {
                Mask bit = bits & (0u - bits);
                bits ^= bit;
                unsigned touched = 0;  // bitset over later[k] positions actually cleared
                bool dead = false;
                for (std::size_t t = 0; t < later[k].size(); ++t) {
                    int j = later[k][t];
                    if (cur[j] & bit) {
                        cur[j] &= ~bit;
                        touched |= 1u << t;
                        if (cur[j] == 0) dead = true;
                    }
                }
                if (!dead) total += (*this)(k + 1);
                for (std::size_t t = 0; t < later[k].size(); ++t)
                    if (touched & (1u << t)) cur[later[k][t]] |= bit;
            }
            return total;
        }
    };
    return Frame{later_, cur}(0);
}

CountVector ColorCounter::count_by_color(Vtx v) const {
    CountVector n{};
    for (int c = 1; c <= Q; ++c) {
        ColorCounter cc = *this;
        cc.restrict_to(v, c);
        n[c] = cc.count();
    }
    return n;
}

PairCountMatrix ColorCounter::count_by_pair(Vtx v, Vtx u) const {
    PairCountMatrix n{};
    for (int c = 1; c <= Q; ++c)
        for (int k = 1; k <= Q; ++k) {
            if (v == u && c != k) continue;
            ColorCounter cc = *this;
            cc.restrict_to(v, c);
            cc.restrict_to(u, k);
            n[c][k] = cc.count();
        }
    return n;
}

void ColorCounter::for_each(const std::function<void(const std::vector<int>&)>& fn) const {
    const std::size_t n = region_.size();
    std::vector<int> colors(n, 0);
    if (n == 0) {
        fn(colors);
        return;
    }
    std::vector<Mask> cur(n);
    for (std::size_t k = 0; k < n; ++k) cur[k] = allowed_[order_[k]];

    std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == n) {
            fn(colors);
            return;
        }
        Mask m = cur[k];
        for (int c = 1; c <= Q; ++c) {
            Mask bit = 1u << (c - 1);
            if (!(m & bit)) continue;
            unsigned touched = 0;
            for (std::size_t t = 0; t < later_[k].size(); ++t) {
                int j = later_[k][t];
                if (cur[j] & bit) {
                    cur[j] &= ~bit;
                    touched |= 1u << t;
                }
            }
            colors[order_[k]] = c;
            walk(k + 1);
            colors[order_[k]] = 0;
            for (std::size_t t = 0; t < later_[k].size(); ++t)
                if (touched & (1u << t)) cur[later_[k][t]] |= bit;
        }
    };
    walk(0);
}

// ---------------------------------------------------------------------------
// Free functions.

namespace {

void check_domain(const Region& r, const VertexColoring& sigma) {
    if (sigma.size() != r.size()) throw ValidationError("coloring domain does not equal region");
    for (const auto& [v, c] : sigma) {
        if (!r.contains(v)) throw ValidationError("coloring domain does not equal region");
        if (c < 0 || c > Q) throw ValidationError("color out of range 0..Q");
    }
}

}  // namespace

bool is_proper(const Region& r, const VertexColoring& sigma) {
    check_domain(r, sigma);
    for (const Edge& e : interior_edges(r)) {
        int ca = sigma.at(e.a), cb = sigma.at(e.b);
        if (ca != 0 && ca == cb) return false;
    }
    return true;
}

bool agrees(const Region& r, const VertexColoring& sigma, const EdgeColoring& b) {
    check_domain(r, sigma);
    for (const auto& [e, c] : b) {
        if (c < 0 || c > Q) throw ValidationError("edge color out of range 0..Q");
        if (c == 0) continue;
        bool ain = r.contains(e.a), bin = r.contains(e.b);
        if (ain == bin) continue;
        int cv = sigma.at(ain ? e.a : e.b);
        if (cv != 0 && cv == c) return false;
    }
    return true;
}

CountVector count_at_vertex(const Region& r, const EdgeColoring& b, Vtx v) {
    ColorCounter cc(r, v);
    cc.apply_edge_boundary(b);
    return cc.count_by_color(v);
}

PairCountMatrix count_at_pair(const Region& r, const EdgeColoring& b, Vtx u, Vtx v) {
    ColorCounter cc(r, u);
    cc.apply_edge_boundary(b);
    return cc.count_by_pair(u, v);
}

}  // namespace kagome
