// afset.cpp
// Tuple-system construction: window labelings, A-entry lookups at the root
// and child edges, best-applicable F entries, and the twelve-case table.

#include "kagome/afset.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

// ---------------------------------------------------------------------------
// The twelve-case table.
//
// Slot order is clockwise starting with the edge toward the common neighbour
// of the pivot (the v-child).  Root classes 1 and 2 require the v-child in;
// classes 3 and 4 require it out and share rows.  The far children each
// couple through one of the pivot colors (classes 1/2) when both are in, and
// detach (class 4) when alone; 0 marks an empty child set.  Edit here to
// experiment with alternative child-class assignments.

namespace {

struct CaseRow {
    int m_lo, m_hi;                // applicable root classes, inclusive
    std::array<bool, 3> in;        // child-edge in/out flags, v-child first
    std::array<int, 3> child;      // child classes for this row
};

const CaseRow kTwelveCases[] = {
    // root class 1: v-child class 3
    {1, 1, {true, true, true}, {3, 1, 1}},
    {1, 1, {true, true, true}, {3, 1, 2}},
    {1, 1, {true, true, true}, {3, 2, 1}},
    {1, 1, {true, true, true}, {3, 2, 2}},
    {1, 1, {true, true, false}, {3, 4, 0}},
    {1, 1, {true, false, true}, {3, 0, 4}},
    {1, 1, {true, false, false}, {3, 0, 0}},
    // root class 2: v-child class 4
    {2, 2, {true, true, true}, {4, 1, 1}},
    {2, 2, {true, true, true}, {4, 1, 2}},
    {2, 2, {true, true, true}, {4, 2, 1}},
    {2, 2, {true, true, true}, {4, 2, 2}},
    {2, 2, {true, true, false}, {4, 4, 0}},
    {2, 2, {true, false, true}, {4, 0, 4}},
    {2, 2, {true, false, false}, {4, 0, 0}},
    // root classes 3 and 4: no v-child
    {3, 4, {false, true, true}, {0, 1, 1}},
    {3, 4, {false, true, true}, {0, 1, 2}},
    {3, 4, {false, true, true}, {0, 2, 1}},
    {3, 4, {false, true, true}, {0, 2, 2}},
    {3, 4, {false, true, false}, {0, 4, 0}},
    {3, 4, {false, false, true}, {0, 0, 4}},
    {3, 4, {false, false, false}, {0, 0, 0}},
};

std::string flags_str(const std::array<bool, 3>& in) {
    std::string s = "(";
    for (int i = 0; i < 3; ++i) {
        s += in[i] ? "in" : "out";
        s += i < 2 ? "," : ")";
    }
    return s;
}

}  // namespace

std::vector<std::array<int, 3>> twelve_cases(int m, const std::array<bool, 3>& child_in) {
    if (m < 1 || m > 4) throw ValidationError("twelve_cases: class m must be in 1..4");
    if (child_in[0] != (m <= 2)) {
        std::ostringstream os;
        os << "twelve_cases: unknown pattern, m=" << m << " with v-child flags "
           << flags_str(child_in);
        throw ValidationError(os.str());
    }
    std::vector<std::array<int, 3>> rows;
    for (const CaseRow& r : kTwelveCases)
        if (r.m_lo <= m && m <= r.m_hi && r.in == child_in) rows.push_back(r.child);
    if (rows.empty()) {  // unreachable once the v-child flag is validated
        std::ostringstream os;
        os << "twelve_cases: no row for m=" << m << " flags " << flags_str(child_in);
        throw ValidationError(os.str());
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Window labelings.

namespace {

// Free vertices of the canonical window: the three child positions of the
// anchor edge plus the children of each child edge (the anchor pair itself
// is fixed: v in, w out).
std::vector<Vtx> window_support() {
    std::set<Vtx> s;
    const auto kids = neighbours_cw_after(kAnchorV, kAnchorW);
    for (Vtx u : kids) {
        s.insert(u);
        Aff g = placement(kAnchorW, kAnchorV, kAnchorV, u);
        for (Vtx p : neighbours_cw_after(kAnchorV, kAnchorW)) {
            Vtx q = g(p);
            if (q != kAnchorW && q != kAnchorV) s.insert(q);
        }
    }
    return {s.begin(), s.end()};
}

// In/out of a window position.  Throws when the position is unconstrained,
// which means the catalogue labels vertices the window cannot decide.
bool window_label(const ExtendedRegion& big, Vtx p) {
    auto it = big.labels.find(p);
    if (it == big.labels.end()) {
        std::ostringstream os;
        os << "catalogue labels vertex (" << p.x << "," << p.y
           << ") outside the labeling window";
        throw ValidationError(os.str());
    }
    return it->second;
}

// Index of the unique catalogue entry whose labels, carried onto the
// oriented edge (wx out, vx in), agree with the window labeling.  Positions
// equal to wx read as out and vx as in, so a lookup at a child edge sees the
// pivot's in-vertex as removed.
int unique_entry_at(const ExtendedRegion& big, const Catalogue& cat, Vtx wx, Vtx vx) {
    int found = -1;
    for (int i = 0; i < static_cast<int>(cat.entries.size()); ++i) {
        const ExtendedRegion& t = cat.entries[i];
        Aff g = placement(t.w, t.v, wx, vx);
        bool ok = true;
        for (const auto& [u, lab] : t.labels) {
            Vtx p = g(u);
            bool actual = p == wx ? false : p == vx ? true : window_label(big, p);
            if (actual != lab) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (found != -1) {
            std::ostringstream os;
            os << "entries " << found << " and " << i
               << " both match one labeling (catalogue not exclusive)";
            throw ValidationError(os.str());
        }
        found = i;
    }
    if (found == -1)
        throw ValidationError("no catalogue entry matches the labeling at the given edge");
    return found;
}

}  // namespace

std::vector<ExtendedRegion> big_labelings() {
    const std::vector<Vtx> support = window_support();
    const std::size_t n = support.size();
    std::vector<ExtendedRegion> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Vtx> in{kAnchorV}, outv{kAnchorW};
        for (std::size_t i = 0; i < n; ++i)
            (mask >> i & 1 ? in : outv).push_back(support[i]);
        out.emplace_back(kAnchorW, kAnchorV, in, outv);
    }
    return out;
}

DerivedSets derive_sets(const ExtendedRegion& big, const Catalogue& a_cat) {
    DerivedSets ds;
    ds.a = unique_entry_at(big, a_cat, kAnchorW, kAnchorV);
    const auto kids = neighbours_cw_after(kAnchorV, kAnchorW);
    for (int i = 0; i < 3; ++i)
        if (window_label(big, kids[i]))
            ds.child_a[i] = unique_entry_at(big, a_cat, kAnchorV, kids[i]);
    return ds;
}

int derive_f(const ExtendedRegion& big, int m, const Catalogue& f_cat, const MuTable& mu) {
    if (m < 1 || m > 4) throw ValidationError("derive_f: class m must be in 1..4");
    const Vtx y = common_neighbour(kAnchorW, kAnchorV);
    int best = -1;
    Rat best_val;
    for (int i = 0; i < static_cast<int>(f_cat.entries.size()); ++i) {
        const FamilyConstant& fc = mu_of(mu, i, m);
        if (fc.empty) continue;  // entry inconsistent with class m
        const ExtendedRegion& t = f_cat.entries[i];
        Aff g = placement(t.w, t.v, kAnchorW, kAnchorV);
        // Applicable iff every label, carried into the window, is decided
        // there and agrees.  A label the window cannot decide would not hold
        // on every region matching the labeling, so the entry is skipped.
        bool ok = true;
        bool has_y = false;
        for (const auto& [u, lab] : t.labels) {
            Vtx p = g(u);
            auto it = big.labels.find(p);
            if (it == big.labels.end() || it->second != lab) {
                ok = false;
                break;
            }
            if (p == y && lab) has_y = true;
        }
        if (!ok) continue;
        // Classes 1 and 2 pin the edge from the anchor out-vertex to y, so
        // the bound only covers pairs whose region is known to contain y.
        if (m <= 2 && !has_y) continue;
        if (best == -1 || fc.value < best_val) {
            best = i;
            best_val = fc.value;
        }
    }
    if (best == -1) {
        std::ostringstream os;
        os << "derive_f: no catalogue entry applies to the labeling for class m=" << m;
        throw ValidationError(os.str());
    }
    return best;
}

AFSet build(const std::vector<ExtendedRegion>& bigs, const Catalogue& a_cat,
            const Catalogue& f_cat, const MuTable& mu) {
    if (auto r = validate_catalogue(a_cat); !r.ok)
        throw ValidationError("build: A catalogue invalid: " + r.message);
    if (auto r = validate_catalogue(f_cat); !r.ok)
        throw ValidationError("build: F catalogue invalid: " + r.message);

    const Vtx y = common_neighbour(kAnchorW, kAnchorV);
    const auto kids = neighbours_cw_after(kAnchorV, kAnchorW);
    std::set<FiveTuple> acc;
    for (const ExtendedRegion& big : bigs) {
        const DerivedSets ds = derive_sets(big, a_cat);
        std::array<bool, 3> in{};
        for (int i = 0; i < 3; ++i) in[i] = window_label(big, kids[i]);
        const bool y_in = window_label(big, y);
        const auto ms = y_in ? std::array<int, 2>{1, 2} : std::array<int, 2>{3, 4};
        for (int m : ms) {
            const int f = derive_f(big, m, f_cat, mu);
            // The table's slot order starts with the v-child; clockwise from
            // the anchor the v-child comes last, so flags go in reversed and
            // each row comes back reversed.
            const auto rows = twelve_cases(m, {in[2], in[1], in[0]});
            for (const auto& row : rows) {
                FiveTuple t;
                t.a = ds.a;
                t.m = m;
                t.f = f;
                t.child_a = ds.child_a;
                t.child_m = {row[2], row[1], row[0]};
                for (int i = 0; i < 3; ++i)
                    if ((t.child_m[i] == 0) != (t.child_a[i] == -1))
                        throw std::logic_error("build: child emptiness mismatch");
                FiveTuple mirror = t;
                std::reverse(mirror.child_a.begin(), mirror.child_a.end());
                std::reverse(mirror.child_m.begin(), mirror.child_m.end());
                acc.insert(t);
                acc.insert(mirror);
            }
        }
    }
    AFSet out;
    out.tuples.assign(acc.begin(), acc.end());
    out.generator = "all in/out labelings of the 10-vertex window around the anchor edge";
    return out;
}

}  // namespace kagome
