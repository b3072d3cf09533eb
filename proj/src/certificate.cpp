// certificate.cpp
// Decay-certificate solver, verifier, bounds, and the ε search.
//
// The solver maintains the Kleene invariants  α ≤ T(α)  and  α ≤ lfp(T)
// throughout, where T is the best-response operator
//   T(α)_id = max(1/(1-ε), max over tuples rooted at id of coef · Σ α_child),
//   coef = mu(f, m) / (1-ε).
// Sweeps are Jacobi-style with the result floor-rounded to a bounded number
// of fractional bits and clamped from below by the previous iterate; both
// keep the invariants, so operand sizes stay bounded without risking an
// overshoot.  Convergence is declared only on an exact fixpoint, which
// together with α ≤ lfp(T) pins α = lfp(T): the returned vector is least by
// construction.  On stalls the greedy-policy affine system x = Mx + b is
// solved exactly; the solution is adopted only when (I-M)⁻¹ ≥ 0 entrywise
// (then ρ(M) < 1, so the solution is the policy's least fixed point, which
// cannot exceed lfp(T)).  Any iterate above the cap proves lfp(T) > cap and
// yields the infeasibility report.

#include "kagome/certificate.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {
namespace {

constexpr int kSweepCeiling = 20000;
constexpr int kAccelEvery = 8;
constexpr unsigned long kRoundBits = 256;
constexpr unsigned long kRoundBitsMax = 1ul << 16;

struct Row {
    int root = -1;
    Rat coef;                    // mu(f, m) / (1-ε)
    std::vector<int> children;   // variable indices, empties dropped
    const FiveTuple* src = nullptr;
};

struct System {
    std::vector<AsetId> ids;                // index -> id, sorted
    std::vector<Row> rows;                  // one per tuple
    std::vector<std::vector<int>> rows_of;  // per variable, rows rooted there
};

System index_system(const AFSet& s, const MuTable& mu, const Rat& eps) {
    System sys;
    std::set<AsetId> ids;
    for (const FiveTuple& t : s.tuples) {
        ids.insert({t.a, t.m});
        for (int i = 0; i < 3; ++i)
            if (t.child_a[i] != -1) ids.insert({t.child_a[i], t.child_m[i]});
    }
    sys.ids.assign(ids.begin(), ids.end());
    std::map<AsetId, int> index;
    for (int i = 0; i < static_cast<int>(sys.ids.size()); ++i) index[sys.ids[i]] = i;
    sys.rows_of.resize(sys.ids.size());
    const Rat one_minus = 1 - eps;
    for (const FiveTuple& t : s.tuples) {
        Row r;
        r.root = index.at({t.a, t.m});
        r.coef = mu_of(mu, t.f, t.m).value / one_minus;
        for (int i = 0; i < 3; ++i)
            if (t.child_a[i] != -1) r.children.push_back(index.at({t.child_a[i], t.child_m[i]}));
        r.src = &t;
        sys.rows_of[r.root].push_back(static_cast<int>(sys.rows.size()));
        sys.rows.push_back(std::move(r));
    }
    return sys;
}

// Floor to `bits` fractional bits when the denominator is larger.  Never
// rises above the argument, so the Kleene invariants survive rounding.
Rat floor_round(const Rat& r, unsigned long bits) {
    if (mpz_sizeinbase(r.get_den().get_mpz_t(), 2) <= bits) return r;
    mpz_class scaled = r.get_num() << bits;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), r.get_den().get_mpz_t());
    Rat out(q, mpz_class(1) << bits);
    out.canonicalize();
    return out;
}

struct SweepOut {
    std::vector<Rat> next;
    std::vector<int> arg;  // greedy row per variable, -1 = lower bound
    bool exact_fixpoint = true;
};

SweepOut sweep(const System& sys, const Rat& lb, const std::vector<Rat>& cur,
               unsigned long round_bits) {
    const int n = static_cast<int>(sys.ids.size());
    SweepOut o;
    o.next.resize(n);
    o.arg.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        Rat best = lb;
        for (int ri : sys.rows_of[v]) {
            const Row& r = sys.rows[ri];
            if (r.children.empty()) continue;  // value 0, below the bound
            Rat val = 0;
            for (int c : r.children) val += cur[c];
            val *= r.coef;
            if (val > best) {
                best = val;
                o.arg[v] = ri;
            }
        }
        if (best != cur[v]) o.exact_fixpoint = false;
        o.next[v] = std::max(cur[v], floor_round(best, round_bits));
    }
    return o;
}

// Divergence witness: walk greedy rows from the overshooting variable toward
// the child with the largest α until the chain closes or bottoms out.
std::vector<std::string> chain(const System& sys, const std::vector<Rat>& a,
                               const std::vector<int>& arg, int v) {
    std::vector<std::string> out;
    std::set<int> seen;
    while (true) {
        const AsetId id = sys.ids[v];
        if (!seen.insert(v).second) {
            std::ostringstream os;
            os << "cycle closes at (a=" << id.first << ",m=" << id.second << ")";
            out.push_back(os.str());
            break;
        }
        std::ostringstream os;
        os << "alpha(a=" << id.first << ",m=" << id.second << ") = " << rat_str(a[v]);
        const int ri = arg[v];
        if (ri < 0) {
            os << " at lower bound";
            out.push_back(os.str());
            break;
        }
        const Row& r = sys.rows[ri];
        os << " via tuple f=" << r.src->f << ", children";
        for (int i = 0; i < 3; ++i)
            if (r.src->child_a[i] != -1)
                os << " (a=" << r.src->child_a[i] << ",m=" << r.src->child_m[i] << ")";
        out.push_back(os.str());
        int nxt = -1;
        for (int c : r.children)
            if (nxt == -1 || a[c] > a[nxt]) nxt = c;
        if (nxt == -1) break;
        v = nxt;
    }
    return out;
}

struct Accel {
    enum class Kind { none, accepted, over_cap } kind = Kind::none;
    std::vector<Rat> x;
    std::vector<int> arg;
    int over = -1;
};

Accel try_accelerate(const System& sys, const Rat& lb, const std::vector<Rat>& alpha,
                     const Rat& cap) {
    const int n = static_cast<int>(sys.ids.size());
    Accel out;
    out.arg.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        Rat best = lb;
        for (int ri : sys.rows_of[v]) {
            const Row& r = sys.rows[ri];
            if (r.children.empty()) continue;
            Rat val = 0;
            for (int c : r.children) val += alpha[c];
            val *= r.coef;
            if (val > best) {
                best = val;
                out.arg[v] = ri;
            }
        }
    }
    // Affine greedy-policy system x = Mx + b, eliminated as [I-M | b, I].
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
    std::vector<std::vector<Rat>> R(n, std::vector<Rat>(n + 1, Rat(0)));
    for (int v = 0; v < n; ++v) {
        A[v][v] = 1;
        if (out.arg[v] < 0)
            R[v][0] = lb;
        else
            for (int c : sys.rows[out.arg[v]].children) A[v][c] -= sys.rows[out.arg[v]].coef;
        R[v][1 + v] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (A[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return out;  // singular: no usable policy value
        std::swap(A[piv], A[col]);
        std::swap(R[piv], R[col]);
        const Rat d = A[col][col];
        for (int j = 0; j < n; ++j) A[col][j] /= d;
        for (int j = 0; j <= n; ++j) R[col][j] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            const Rat f = A[r][col];
            for (int j = 0; j < n; ++j) A[r][j] -= f * A[col][j];
            for (int j = 0; j <= n; ++j) R[r][j] -= f * R[col][j];
        }
    }
    // Adopt only a certified least fixed point: (I-M)⁻¹ ≥ 0 means ρ(M) < 1.
    for (int v = 0; v < n; ++v)
        for (int j = 0; j < n; ++j)
            if (R[v][1 + j] < 0) return out;
    out.x.resize(n);
    for (int v = 0; v < n; ++v) {
        out.x[v] = R[v][0];
        if (out.x[v] < alpha[v]) throw std::logic_error("policy acceleration descended");
        if (out.x[v] > cap && (out.over == -1 || out.x[v] > out.x[out.over])) out.over = v;
    }
    out.kind = out.over >= 0 ? Accel::Kind::over_cap : Accel::Kind::accepted;
    return out;
}

}  // namespace

SolveResult solve(const AFSet& s, const MuTable& mu, const Rat& eps, const Rat& cap) {
    if (!(eps > 0 && eps < 1)) throw ValidationError("solve: epsilon must lie in (0,1)");
    const Rat lb = Rat(1) / (1 - eps);
    if (!(cap > lb)) throw ValidationError("solve: cap must exceed 1/(1-epsilon)");

    const System sys = index_system(s, mu, eps);
    const int n = static_cast<int>(sys.ids.size());
    SolveResult res;
    res.cert.epsilon = eps;
    res.cert.a_hash = s.a_hash;
    res.cert.f_hash = s.f_hash;
    res.cert.mu_hash = s.mu_hash;

    std::vector<Rat> alpha(n, lb);
    unsigned long round_bits = kRoundBits;
    for (int sweeps = 1; sweeps <= kSweepCeiling; ++sweeps) {
        SweepOut o = sweep(sys, lb, alpha, round_bits);
        if (o.exact_fixpoint) {
            for (int v = 0; v < n; ++v) res.cert.alphas[sys.ids[v]] = alpha[v];
            res.cert.alpha_max = 0;
            for (int v = 0; v < n; ++v) res.cert.alpha_max = std::max(res.cert.alpha_max, alpha[v]);
            res.feasible = true;
            return res;
        }
        const bool stalled = o.next == alpha;
        alpha = std::move(o.next);
        int over = -1;
        for (int v = 0; v < n; ++v)
            if (alpha[v] > cap && (over == -1 || alpha[v] > alpha[over])) over = v;
        if (over >= 0) {
            res.feasible = false;
            res.witness = chain(sys, alpha, o.arg, over);
            return res;
        }
        if (stalled || sweeps % kAccelEvery == 0) {
            Accel acc = try_accelerate(sys, lb, alpha, cap);
            switch (acc.kind) {
                case Accel::Kind::accepted:
                    alpha = std::move(acc.x);
                    res.cert.accelerated = true;
                    break;
                case Accel::Kind::over_cap:
                    res.feasible = false;
                    res.witness = chain(sys, acc.x, acc.arg, acc.over);
                    return res;
                case Accel::Kind::none:
                    if (stalled) {
                        // More fractional bits so the rounded ascent can move.
                        if (round_bits >= kRoundBitsMax)
                            throw BudgetExceeded("solve: stalled at maximum precision");
                        round_bits *= 2;
                    }
                    break;
            }
        }
    }
    throw BudgetExceeded("solve: sweep ceiling reached");
}

VerifyResult verify(const DecayCertificate& cert, const AFSet& s, const MuTable& mu) {
    VerifyResult out;
    auto fail = [&out](const std::string& msg) {
        out.ok = false;
        out.message = msg;
        return out;
    };
    auto hash_clash = [](const std::string& x, const std::string& y) {
        return !x.empty() && !y.empty() && x != y;
    };
    if (hash_clash(cert.a_hash, s.a_hash) || hash_clash(cert.f_hash, s.f_hash) ||
        hash_clash(cert.mu_hash, s.mu_hash))
        return fail("provenance hash mismatch between certificate and tuple system");
    if (hash_clash(s.f_hash, mu.catalogue_hash))
        return fail("tuple system and constant table disagree on the catalogue hash");
    if (!(cert.epsilon > 0 && cert.epsilon < 1)) return fail("epsilon out of (0,1)");

    const System sys = index_system(s, mu, cert.epsilon);
    const Rat lb = Rat(1) / (1 - cert.epsilon);
    std::vector<Rat> a(sys.ids.size());
    for (std::size_t v = 0; v < sys.ids.size(); ++v) {
        auto it = cert.alphas.find(sys.ids[v]);
        if (it == cert.alphas.end()) {
            std::ostringstream os;
            os << "missing alpha for (a=" << sys.ids[v].first << ",m=" << sys.ids[v].second << ")";
            return fail(os.str());
        }
        if (it->second < lb) {
            std::ostringstream os;
            os << "alpha(a=" << sys.ids[v].first << ",m=" << sys.ids[v].second
               << ") = " << rat_str(it->second) << " below 1/(1-eps) = " << rat_str(lb);
            return fail(os.str());
        }
        a[v] = it->second;
    }
    for (const Row& r : sys.rows) {
        Rat lhs = 0;
        for (int c : r.children) lhs += a[c];
        lhs *= r.coef;  // both sides divided by (1-eps) > 0
        if (lhs > a[r.root]) {
            out.ok = false;
            out.violated = *r.src;
            std::ostringstream os;
            os << "tuple (a=" << r.src->a << ",m=" << r.src->m << ",f=" << r.src->f
               << ") violated: mu * sum(children) = " << rat_str(lhs * (1 - cert.epsilon))
               << " > alpha * (1-eps) = " << rat_str(a[r.root] * (1 - cert.epsilon));
            out.message = os.str();
            return out;
        }
    }
    Rat amax = 0;
    for (const auto& [id, val] : cert.alphas) amax = std::max(amax, val);
    if (amax != cert.alpha_max) return fail("alpha_max does not equal the maximum alpha");
    out.message = "ok";
    return out;
}

Rat decay_bound(const DecayCertificate& cert, long d) {
    if (d < 0) throw ValidationError("decay_bound: depth must be nonnegative");
    return cert.alpha_max * rat_pow(1 - cert.epsilon, d);
}

Rat ssm_constant(const Rat& eps) {
    if (!(eps > 0 && eps < 1)) throw ValidationError("ssm_constant: epsilon must lie in (0,1)");
    return Rat(30) / (eps * (1 - eps));
}

Rat ssm_bound(const DecayCertificate& cert, long d) {
    if (d < 0) throw ValidationError("ssm_bound: distance must be nonnegative");
    return ssm_constant(cert.epsilon) * rat_pow(1 - cert.epsilon, d);
}

EpsilonSearch bisect_epsilon(const AFSet& s, const MuTable& mu, Rat lo, Rat hi, int iters,
                             const Rat& cap) {
    if (!(lo > 0 && lo <= hi && hi < 1))
        throw ValidationError("bisect_epsilon: need 0 < lo <= hi < 1");
    if (iters < 0) throw ValidationError("bisect_epsilon: negative iteration count");
    // A mid whose solve blows the sweep budget is unusable; the search treats
    // it like the infeasible side (the final certificate is still verified).
    auto attempt = [&](const Rat& e) -> std::optional<DecayCertificate> {
        try {
            SolveResult r = solve(s, mu, e, cap);
            if (r.feasible) return r.cert;
        } catch (const BudgetExceeded&) {
        }
        return std::nullopt;
    };
    EpsilonSearch out;
    auto at_lo = attempt(lo);
    if (!at_lo) {
        out.any = false;
        out.eps = lo;
        return out;
    }
    out.any = true;
    out.eps = lo;
    out.cert = *at_lo;
    if (auto at_hi = attempt(hi)) {
        out.eps = hi;
        out.cert = *at_hi;
        return out;
    }
    Rat l = lo, h = hi;
    for (int i = 0; i < iters; ++i) {
        Rat mid = (l + h) / 2;
        if (auto c = attempt(mid)) {
            out.eps = mid;
            out.cert = *c;
            l = mid;
        } else {
            h = mid;
        }
    }
    return out;
}

}  // namespace kagome
