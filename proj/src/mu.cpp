#include "kagome/mu.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "kagome/errors.hpp"

namespace kagome {

namespace {

Rat rat_counts(std::uint64_t n, std::uint64_t d) {
    Rat r(static_cast<unsigned long>(n), static_cast<unsigned long>(d));
    r.canonicalize();
    return r;
}

MuValue mu_from_counts(const CountVector& n, int i, int ip) {
    MuValue out;
    out.numer = n[i];
    out.denom = n[i];
    for (int j = 1; j <= Q; ++j)
        if (j != i && j != ip) out.denom += n[j];
    if (out.denom == 0) {
        out.zero_denominator = true;
        out.value = 0;
    } else {
        out.value = rat_counts(out.numer, out.denom);
    }
    return out;
}

}  // namespace

MuValue mu(const EdgeBoundaryPair& x, int i, int ip) {
    if (i < 1 || i > Q || ip < 1 || ip > Q || i == ip)
        throw ValidationError("mu: colors must be two distinct colors in 1..Q");
    CountVector n = count_at_vertex(x.region, x.edges_with_pivot(0), x.v);
    return mu_from_counts(n, i, ip);
}

Rat mu_max(const EdgeBoundaryPair& x) {
    CountVector n = count_at_vertex(x.region, x.edges_with_pivot(0), x.v);
    return std::max(mu_from_counts(n, x.c1, x.c2).value, mu_from_counts(n, x.c2, x.c1).value);
}

// ---------------------------------------------------------------------------
// Split machinery.

std::optional<std::pair<Region, Region>> split_region(const Region& r, Vtx a, Vtx b) {
    if (a == b || !r.contains(a) || !r.contains(b))
        throw ValidationError("split_region: cut must be two distinct region vertices");
    std::vector<Vtx> rest;
    for (Vtx u : r.verts)
        if (u != a && u != b) rest.push_back(u);
    Region rr(rest);

    std::vector<std::vector<Vtx>> comps;
    std::set<Vtx> seen;
    for (Vtx s : rr.verts) {
        if (seen.count(s)) continue;
        comps.emplace_back();
        seen.insert(s);
        std::deque<Vtx> q{s};
        while (!q.empty()) {
            Vtx u = q.front();
            q.pop_front();
            comps.back().push_back(u);
            for (Vtx z : neighbours(u))
                if (rr.contains(z) && seen.insert(z).second) q.push_back(z);
        }
    }
    if (comps.size() < 2) return std::nullopt;
    std::sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() > y.size() : x < y;
    });
    std::vector<Vtx> left{a, b}, right{a, b};
    std::size_t nl = 0, nr = 0;
    for (const auto& comp : comps) {
        auto& dst = (nl <= nr) ? left : right;
        (nl <= nr ? nl : nr) += comp.size();
        dst.insert(dst.end(), comp.begin(), comp.end());
    }
    return std::make_pair(Region(left), Region(right));
}

PairCountMatrix half_pair_counts(const Region& half, Vtx a, Vtx b, const EdgeColoring& bnd) {
    ColorCounter cc(half, a);
    cc.apply_edge_boundary(bnd);
    return cc.count_by_pair(a, b);
}

namespace {

// B dominates A for the combined ratio (see header).
bool dominates(const PairCountMatrix& b, const PairCountMatrix& a) {
    for (int i = 1; i <= Q; ++i) {
        if (i == 2) continue;
        for (int k = 1; k <= Q; ++k)
            if (a[i][k] > 0 && b[i][k] == 0) return false;
    }
    for (int j = 1; j <= Q; ++j)
        for (int i = 1; i <= Q; ++i) {
            if (i == 2) continue;
            for (int k = 1; k <= Q; ++k) {
                auto lhs = static_cast<unsigned __int128>(a[1][j]) * b[i][k];
                auto rhs = static_cast<unsigned __int128>(b[1][j]) * a[i][k];
                if (lhs > rhs) return false;
            }
        }
    return true;
}

bool zero_numerator(const PairCountMatrix& m) {
    for (int k = 1; k <= Q; ++k)
        if (m[1][k] > 0) return false;
    return true;
}

// Streaming Pareto front with per-member payload (the class values that
// produced the matrix), keep-first under mutual domination.
struct Front {
    std::vector<PairCountMatrix> mats;
    std::vector<std::vector<int>> vals;

    void insert(const PairCountMatrix& m, const std::vector<int>& val) {
        for (const auto& s : mats)
            if (dominates(s, m)) return;
        std::size_t o = 0;
        for (std::size_t i = 0; i < mats.size(); ++i)
            if (!dominates(m, mats[i])) {
                if (o != i) {
                    mats[o] = std::move(mats[i]);
                    vals[o] = std::move(vals[i]);
                }
                ++o;
            }
        mats.resize(o);
        vals.resize(o);
        mats.push_back(m);
        vals.push_back(val);
    }
};

mpz_class cross_sum_row(const PairCountMatrix& l, const PairCountMatrix& r, int i) {
    mpz_class acc = 0;
    for (int k = 1; k <= Q; ++k)
        acc += mpz_class(static_cast<unsigned long>(l[i][k])) * mpz_class(static_cast<unsigned long>(r[i][k]));
    return acc;
}

// Cell-wise product: the pair counts of a union of parts that only share the
// cut pair.  Counts here stay far below 2^64 for the region sizes the budget
// admits; overflow is still checked so a pathological input fails loudly.
PairCountMatrix cell_product(const PairCountMatrix& x, const PairCountMatrix& y) {
    PairCountMatrix out{};
    for (int i = 1; i <= Q; ++i)
        for (int k = 1; k <= Q; ++k)
            if (__builtin_mul_overflow(x[i][k], y[i][k], &out[i][k]))
                throw BudgetExceeded("family_constant: fold count overflow");
    return out;
}

struct EdgeClass {
    std::vector<Edge> edges;
    std::vector<int> domain;  // ascending values
};

constexpr std::size_t kAssignmentBudget = 64'000'000;
// Largest per-component assignment tensor held in memory (288 bytes each).
constexpr std::size_t kCompTensorCap = 500'000;

// Pair-count matrices for every assignment of the given dimension classes,
// mixed-radix indexed (last class fastest, matching odometer order).  Filled
// in one sweep over the component's proper colorings: for a fixed coloring
// the compatible assignments form a product set (per class, the values its
// edges do not conflict with), so each coloring is credited with nested
// digit loops instead of recounting colorings per assignment.
struct CompTensor {
    std::vector<PairCountMatrix> mats;
    std::vector<std::size_t> stride;
};

CompTensor comp_tensor(const Region& comp, Vtx v, Vtx p, const EdgeColoring& fixed,
                       const std::vector<const EdgeClass*>& dims) {
    CompTensor out;
    out.stride.assign(dims.size(), 1);
    std::size_t total = 1;
    for (std::size_t j = dims.size(); j-- > 0;) {
        out.stride[j] = total;
        total *= dims[j]->domain.size();
    }
    if (total > kCompTensorCap)
        throw BudgetExceeded("family_constant: component tensor exceeds budget");
    out.mats.assign(total, PairCountMatrix{});

    ColorCounter cc(comp, v);
    cc.apply_edge_boundary(fixed);
    const int iv = comp.index_of(v), ip = comp.index_of(p);

    // Per class: component indices its edge values conflict with, and per
    // conflict mask (bits 1..Q), the admissible digits.  A class may span
    // several components; only the edges landing in this one are probed here
    // (its other edges are probed where they land, and a value ruled out by
    // any part zeroes the folded product all the same).
    std::vector<std::vector<int>> probes(dims.size());
    std::vector<std::array<std::vector<std::uint8_t>, 64>> digits(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        for (const Edge& e : dims[j]->edges) {
            int idx = comp.contains(e.a) ? comp.index_of(e.a)
                      : comp.contains(e.b) ? comp.index_of(e.b)
                                           : -1;
            if (idx >= 0) probes[j].push_back(idx);
        }
        for (unsigned bad = 0; bad < 64; ++bad)
            for (std::size_t d = 0; d < dims[j]->domain.size(); ++d) {
                int x = dims[j]->domain[d];
                if (x == 0 || !(bad & (1u << x)))
                    digits[j][bad].push_back(static_cast<std::uint8_t>(d));
            }
    }

    std::vector<unsigned> bads(dims.size());
    cc.for_each([&](const std::vector<int>& colors) {
        for (std::size_t j = 0; j < dims.size(); ++j) {
            unsigned bad = 0;
            for (int idx : probes[j]) bad |= 1u << colors[idx];
            bads[j] = bad & 63u;
        }
        const int cv = colors[iv], cp = colors[ip];
        auto rec = [&](auto&& self, std::size_t j, std::size_t base) -> void {
            if (j == dims.size()) {
                ++out.mats[base][cv][cp];
                return;
            }
            for (std::uint8_t d : digits[j][bads[j]]) self(self, j + 1, base + d * out.stride[j]);
        };
        rec(rec, 0, 0);
    });
    return out;
}

// Visits every assignment in lexicographic order; the callback receives the
// values and the digit indices per class.
template <typename Fn>
void odometer(const std::vector<const EdgeClass*>& classes, Fn&& visit) {
    std::vector<std::size_t> at(classes.size(), 0);
    std::vector<int> vals(classes.size());
    while (true) {
        for (std::size_t j = 0; j < classes.size(); ++j) vals[j] = classes[j]->domain[at[j]];
        visit(vals, at);
        std::size_t j = classes.size();
        while (j > 0) {
            --j;
            if (++at[j] < classes[j]->domain.size()) break;
            at[j] = 0;
            if (j == 0) return;
        }
        if (classes.empty()) return;
    }
}

std::size_t assignment_count(const std::vector<const EdgeClass*>& classes) {
    std::size_t n = 1;
    for (const EdgeClass* c : classes) {
        if (n > (std::size_t{1} << 60) / std::max<std::size_t>(1, c->domain.size()))
            return std::size_t{1} << 60;
        n *= c->domain.size();
    }
    return n;
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int x, int y) { p[find(x)] = find(y); }
};

}  // namespace

std::vector<std::size_t> dominance_filter(const std::vector<PairCountMatrix>& ms) {
    std::vector<std::size_t> front;
    for (std::size_t idx = 0; idx < ms.size(); ++idx) {
        bool dead = false;
        for (std::size_t s : front)
            if (dominates(ms[s], ms[idx])) {
                dead = true;
                break;
            }
        if (dead) continue;
        std::vector<std::size_t> keep;
        for (std::size_t s : front)
            if (!dominates(ms[idx], ms[s])) keep.push_back(s);
        keep.push_back(idx);
        front = std::move(keep);
    }
    std::sort(front.begin(), front.end());
    return front;
}

FamilyConstant family_constant(const ExtendedRegion& t, int m, bool allow_split) {
    if (m < 1 || m > 4) throw ValidationError("family_constant: m must be in 1..4");
    const Region r = t.in_region();
    const Vtx w = t.w, v = t.v;
    const Vtx y = common_neighbour(w, v);
    const bool y_in = r.contains(y);

    FamilyConstant out;
    out.value = 0;
    if ((m <= 2 && !y_in) || (m >= 3 && y_in)) {
        out.empty = true;
        return out;
    }

    // Boundary edges other than the pivot, with their forced equalities
    // (classes) and per-edge value pins.
    const Edge piv = make_edge(w, v);
    std::vector<Edge> edges;
    for (const Edge& e : boundary_edges(r))
        if (!(e == piv)) edges.push_back(e);
    std::map<Edge, int> eidx;
    for (std::size_t i = 0; i < edges.size(); ++i) eidx[edges[i]] = static_cast<int>(i);

    std::vector<std::set<int>> allow(edges.size(), std::set<int>{0, 1, 2, 3, 4, 5});
    Dsu dsu(edges.size());
    auto restrict_edge = [&](const Edge& e, std::set<int> vs) {
        std::set<int> next;
        for (int c : allow[eidx.at(e)])
            if (vs.count(c)) next.insert(c);
        allow[eidx.at(e)] = std::move(next);
    };
    for (const auto& [e, f] : adjacent_boundary_pairs(r)) {
        bool ep = (e == piv), fp = (f == piv);
        if (ep)
            restrict_edge(f, {1, 2});
        else if (fp)
            restrict_edge(e, {1, 2});
        else
            dsu.unite(eidx.at(e), eidx.at(f));
    }
    if (m == 1) restrict_edge(make_edge(w, y), {1});
    if (m == 2) restrict_edge(make_edge(w, y), {2});
    if (m == 3) restrict_edge(make_edge(y, v), {1, 2});

    std::map<int, EdgeClass> by_root;
    for (std::size_t i = 0; i < edges.size(); ++i)
        by_root[dsu.find(static_cast<int>(i))].edges.push_back(edges[i]);
    std::vector<EdgeClass> classes;
    for (auto& [root, cls] : by_root) {
        std::set<int> dom{0, 1, 2, 3, 4, 5};
        for (const Edge& e : cls.edges) {
            std::set<int> next;
            for (int c : dom)
                if (allow[eidx.at(e)].count(c)) next.insert(c);
            dom = std::move(next);
        }
        // A single-edge class never needs colour 0: with one pinned endpoint,
        // every agreeing colouring is compatible with exactly four of the five
        // pin colours, so the unconstrained counts are a uniform mixture of
        // the pinned ones and the ratio is dominated by the best real colour.
        // Multi-edge classes keep 0: their compatible-colour count varies per
        // colouring, so an unconstrained shared vertex is not a mixture of
        // pinned ones and must be enumerated as its own case.
        if (cls.edges.size() == 1) dom.erase(0);
        if (dom.empty()) throw std::logic_error("family_constant: inconsistent edge pins");
        cls.domain.assign(dom.begin(), dom.end());
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(),
              [](const EdgeClass& a, const EdgeClass& b) { return a.edges[0] < b.edges[0]; });

    auto coloring_of = [&](const std::vector<const EdgeClass*>& cs, const std::vector<int>& vals,
                           EdgeColoring& bnd) {
        for (std::size_t j = 0; j < cs.size(); ++j)
            for (const Edge& e : cs[j]->edges) bnd[e] = vals[j];
    };

    // --- Split plan -------------------------------------------------------
    // Removing the cut pair {v, p} breaks the template into components; each
    // component plus the cut pair is counted on its own, and the component
    // pair-count matrices multiply cell-wise (the parts share only v and p,
    // and a boundary pin repeated in several parts constrains identically).
    // Classes whose in-endpoints all fall in one component are enumerated in
    // that component's loop; classes touching several components, or only
    // the cut pair, go in the outer loop.  Each component front is Pareto
    // filtered before the fronts are folded together, which is what keeps
    // star-of-branches templates affordable.
    struct SplitPlan {
        Vtx partner{};
        std::vector<Region> comps;                          // each includes {v, partner}
        std::vector<const EdgeClass*> outer;                // classes spanning components
        std::vector<std::vector<const EdgeClass*>> locals;  // classes confined to one component
        std::vector<std::vector<const EdgeClass*>> dims;    // tensor dimensions per component
        bool resident = false;  // every component tensor fits the cap and is built once
        std::size_t cost = 0;
    };

    auto make_plan = [&](Vtx p) -> std::optional<SplitPlan> {
        std::vector<Vtx> rest;
        for (Vtx u : r.verts)
            if (u != v && u != p) rest.push_back(u);
        if (rest.empty()) return std::nullopt;
        Region rr(rest);
        std::vector<std::vector<Vtx>> comp_verts;
        std::set<Vtx> seen;
        for (Vtx s : rr.verts) {
            if (!seen.insert(s).second) continue;
            comp_verts.emplace_back();
            std::deque<Vtx> q{s};
            while (!q.empty()) {
                Vtx u = q.front();
                q.pop_front();
                comp_verts.back().push_back(u);
                for (Vtx z : neighbours(u))
                    if (rr.contains(z) && seen.insert(z).second) q.push_back(z);
            }
        }
        if (comp_verts.size() < 2) return std::nullopt;

        SplitPlan plan;
        plan.partner = p;
        std::map<Vtx, std::size_t> comp_of;
        for (std::size_t i = 0; i < comp_verts.size(); ++i) {
            for (Vtx u : comp_verts[i]) comp_of[u] = i;
            comp_verts[i].push_back(v);
            comp_verts[i].push_back(p);
            plan.comps.emplace_back(comp_verts[i]);
        }
        plan.locals.resize(plan.comps.size());
        plan.dims.resize(plan.comps.size());
        for (const EdgeClass& cls : classes) {
            std::set<std::size_t> touched;
            for (const Edge& e : cls.edges) {
                Vtx in_end = r.contains(e.a) ? e.a : e.b;
                if (auto it = comp_of.find(in_end); it != comp_of.end()) touched.insert(it->second);
            }
            if (touched.size() == 1) {
                plan.locals[*touched.begin()].push_back(&cls);
                plan.dims[*touched.begin()].push_back(&cls);
            } else {
                plan.outer.push_back(&cls);  // several components, or cut pair only
                // A class touching only the cut pair constrains the colorings
                // purely through the pair's colors, which any one tensor sees.
                if (touched.empty()) touched.insert(0);
                for (std::size_t i : touched) plan.dims[i].push_back(&cls);
            }
        }
        plan.resident = true;
        std::size_t fill = 0;
        for (const auto& d : plan.dims) {
            std::size_t n = assignment_count(d);
            if (n > kCompTensorCap) plan.resident = false;
            fill += n;
        }
        std::size_t per = 0;
        bool over_cap = false;
        for (const auto& loc : plan.locals) {
            std::size_t n = assignment_count(loc);
            if (n > kCompTensorCap) over_cap = true;
            per += n;
        }
        std::size_t ops = assignment_count(plan.outer);
        std::size_t walk = (over_cap || ops > (std::size_t{1} << 60) / std::max<std::size_t>(1, per))
                               ? std::size_t{1} << 60
                               : ops * per;
        plan.cost = plan.resident ? std::min(walk, (std::size_t{1} << 60) - fill) + fill : walk;
        return plan;
    };

    std::optional<SplitPlan> plan;
    if (allow_split && r.size() >= 3) {
        if (t.cut) {
            plan = make_plan(*t.cut);
            if (!plan) throw ValidationError("family_constant: recorded cut does not separate the template");
        } else {
            for (Vtx p : r.verts) {
                if (p == v) continue;
                auto cand = make_plan(p);
                if (cand && (!plan ||
                             std::make_pair(!cand->resident, cand->cost) <
                                 std::make_pair(!plan->resident, plan->cost)))
                    plan = std::move(cand);
            }
        }
    }

    bool found = false;
    auto consider = [&](const Rat& val, const EdgeColoring& bnd) {
        if (!found || val > out.value) {
            found = true;
            out.value = val;
            out.witness = bnd;
        }
    };

    if (plan) {
        if (plan->cost > kAssignmentBudget)
            throw BudgetExceeded("family_constant: split enumeration exceeds budget");
        if (std::getenv("KAGOME_MU_DIAG")) {
            std::fprintf(stderr, "[mu] resident=%d cost=%zu outer=%zu comps=%zu dims:",
                         (int)plan->resident, plan->cost, assignment_count(plan->outer),
                         plan->comps.size());
            for (const auto& d : plan->dims)
                std::fprintf(stderr, " %zu(n=%zu)", assignment_count(d), d.size());
            std::fprintf(stderr, " partner=(%d,%d)\n", plan->partner.x, plan->partner.y);
        }
        const Vtx partner = plan->partner;
        const std::size_t k = plan->comps.size();
        std::vector<const EdgeClass*> folded_classes;
        for (std::size_t i = 0; i + 1 < k; ++i)
            folded_classes.insert(folded_classes.end(), plan->locals[i].begin(),
                                  plan->locals[i].end());
        const auto& last_classes = plan->locals[k - 1];

        // Resident plans fill each component tensor once, over all of its
        // dimensions, and the outer loop only slices; otherwise the tensor is
        // rebuilt per outer assignment with the outer values pinned.
        std::vector<CompTensor> tens;
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> outer_mul(k);
        std::vector<std::vector<std::size_t>> loc_stride(k);
        if (plan->resident) {
            for (std::size_t i = 0; i < k; ++i) {
                tens.push_back(comp_tensor(plan->comps[i], v, partner, {}, plan->dims[i]));
                for (std::size_t d = 0; d < plan->dims[i].size(); ++d) {
                    auto it = std::find(plan->outer.begin(), plan->outer.end(), plan->dims[i][d]);
                    if (it != plan->outer.end())
                        outer_mul[i].emplace_back(tens[i].stride[d],
                                                  static_cast<std::size_t>(it - plan->outer.begin()));
                    else
                        loc_stride[i].push_back(tens[i].stride[d]);
                }
            }
        }

        odometer(plan->outer, [&](const std::vector<int>& sv, const std::vector<std::size_t>& sat) {
            EdgeColoring bnd_s;
            coloring_of(plan->outer, sv, bnd_s);
            std::vector<Front> fronts(k);
            for (std::size_t i = 0; i < k; ++i) {
                const auto& loc = plan->locals[i];
                std::vector<int> lv(loc.size());
                if (plan->resident) {
                    std::size_t off = 0;
                    for (const auto& [stride, pos] : outer_mul[i]) off += sat[pos] * stride;
                    std::vector<std::size_t> la(loc.size(), 0);
                    for (bool more = true; more;) {
                        const PairCountMatrix& m = tens[i].mats[off];
                        if (!zero_numerator(m)) {
                            for (std::size_t j = 0; j < loc.size(); ++j)
                                lv[j] = loc[j]->domain[la[j]];
                            fronts[i].insert(m, lv);
                        }
                        more = false;
                        for (std::size_t j = loc.size(); j-- > 0;) {
                            off += loc_stride[i][j];
                            if (++la[j] < loc[j]->domain.size()) {
                                more = true;
                                break;
                            }
                            off -= loc_stride[i][j] * loc[j]->domain.size();
                            la[j] = 0;
                        }
                    }
                    continue;
                }
                CompTensor ten = comp_tensor(plan->comps[i], v, partner, bnd_s, loc);
                for (std::size_t a = 0; a < ten.mats.size(); ++a) {
                    if (zero_numerator(ten.mats[a])) continue;
                    for (std::size_t j = 0; j < loc.size(); ++j)
                        lv[j] = loc[j]->domain[(a / ten.stride[j]) % loc[j]->domain.size()];
                    fronts[i].insert(ten.mats[a], lv);
                }
            }
            Front acc = std::move(fronts[0]);
            for (std::size_t i = 1; i + 1 < k; ++i) {
                Front next;
                for (std::size_t a = 0; a < acc.mats.size(); ++a)
                    for (std::size_t b = 0; b < fronts[i].mats.size(); ++b) {
                        std::vector<int> vals = acc.vals[a];
                        vals.insert(vals.end(), fronts[i].vals[b].begin(), fronts[i].vals[b].end());
                        next.insert(cell_product(acc.mats[a], fronts[i].mats[b]), vals);
                    }
                acc = std::move(next);
            }
            const Front& fin = fronts[k - 1];
            for (std::size_t a = 0; a < acc.mats.size(); ++a)
                for (std::size_t b = 0; b < fin.mats.size(); ++b) {
                    mpz_class numer = cross_sum_row(acc.mats[a], fin.mats[b], 1);
                    mpz_class denom = numer;
                    for (int i = 3; i <= Q; ++i) denom += cross_sum_row(acc.mats[a], fin.mats[b], i);
                    Rat val = 0;
                    if (denom != 0) {
                        val = Rat(numer, denom);
                        val.canonicalize();
                    }
                    EdgeColoring bnd = bnd_s;
                    coloring_of(folded_classes, acc.vals[a], bnd);
                    coloring_of(last_classes, fin.vals[b], bnd);
                    consider(val, bnd);
                }
        });
    } else {
        std::vector<const EdgeClass*> all;
        for (const EdgeClass& cls : classes) all.push_back(&cls);
        if (assignment_count(all) > kAssignmentBudget)
            throw BudgetExceeded("family_constant: direct enumeration exceeds budget");
        odometer(all, [&](const std::vector<int>& vals, const std::vector<std::size_t>&) {
            EdgeColoring bnd;
            coloring_of(all, vals, bnd);
            CountVector n = count_at_vertex(r, bnd, v);
            std::uint64_t denom = n[1];
            for (int j = 3; j <= Q; ++j) denom += n[j];
            Rat val = denom == 0 ? Rat(0) : rat_counts(n[1], denom);
            consider(val, bnd);
        });
    }

    if (!found) {
        // Every branch was filtered to nothing: the maximum is 0; report the
        // lexicographically first assignment as witness.
        std::vector<const EdgeClass*> all;
        for (const EdgeClass& cls : classes) all.push_back(&cls);
        std::vector<int> firsts;
        for (const EdgeClass* c : all) firsts.push_back(c->domain[0]);
        EdgeColoring bnd;
        coloring_of(all, firsts, bnd);
        out.value = 0;
        out.witness = bnd;
    }
    return out;
}

const FamilyConstant& mu_of(const MuTable& table, int f, int m) {
    auto it = table.entries.find({f, m});
    if (it == table.entries.end()) {
        std::ostringstream os;
        os << "mu table has no entry for (f=" << f << ", m=" << m << ")";
        throw ValidationError(os.str());
    }
    return it->second;
}

MuTable build_mu_table(const Catalogue& fcat, bool allow_split,
                       const std::function<void(const std::string&)>& progress) {
    if (fcat.family != 'F') throw ValidationError("build_mu_table: catalogue family must be 'F'");
    MuTable table;
    for (std::size_t f = 0; f < fcat.entries.size(); ++f)
        for (int m = 1; m <= 4; ++m) {
            FamilyConstant fc = family_constant(fcat.entries[f], m, allow_split);
            if (progress) {
                std::ostringstream os;
                os << "f=" << f << " m=" << m << " mu=" << rat_str(fc.value)
                   << (fc.empty ? " (empty)" : "");
                progress(os.str());
            }
            table.entries[{static_cast<int>(f), m}] = std::move(fc);
        }
    return table;
}

}  // namespace kagome
