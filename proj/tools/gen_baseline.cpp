// gen_baseline.cpp
// Generates the committed data/ artifacts: the partition catalogue (every
// in/out labeling of the three recursion children), a curated template
// catalogue around the anchor edge, the mu table for it, the coverage set
// over all window labelings, a decay certificate found by epsilon bisection,
// and the dynamics fixtures (frozen two-vertex region, two-equal-neighbours
// candidate region).
//
// Everything here is deterministic: fixed catalogues, fixed search orders.
// Re-running over an existing data directory reproduces identical bytes.

#include <cstdio>
#include <string>
#include <vector>

#include "kagome/afset.hpp"
#include "kagome/certificate.hpp"
#include "kagome/dynamics.hpp"
#include "kagome/errors.hpp"
#include "kagome/io.hpp"
#include "kagome/mu.hpp"

using namespace kagome;

namespace {

void say(const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); }

// The anchor edge and the ten-vertex labeling window around it.
const Vtx kW = kAnchorW;            // (3,1), out
const Vtx kV = kAnchorV;            // (1,1), in
const Vtx kU1{0, 0}, kU2{-1, 1}, kU3{2, 2};  // clockwise children of v after w
const Vtx kY1{1, 3}, kY2{3, 3};              // second triangle of u3
const Vtx kD1{1, -1}, kD2{-1, -1};           // second triangle of u1
const Vtx kL1{-3, 1}, kL2{-2, 2};            // second triangle of u2

Catalogue partition_catalogue() {
    Catalogue cat;
    cat.family = 'A';
    const std::vector<Vtx> kids{kU1, kU2, kU3};
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<Vtx> in{kV}, out{kW};
        for (int i = 0; i < 3; ++i) (mask >> i & 1 ? in : out).push_back(kids[i]);
        cat.entries.emplace_back(kW, kV, in, out);
    }
    return cat;
}

Catalogue template_catalogue() {
    Catalogue cat;
    cat.family = 'F';
    auto add = [&](const std::vector<Vtx>& in, std::optional<Vtx> cut = std::nullopt) {
        cat.entries.emplace_back(kW, kV, in, std::vector<Vtx>{}, cut);
    };
    // Singleton first (required), then every in-set the window supports that
    // helps the solver: triangles around each child, completed child
    // triangles, and the larger unions with a two-vertex cut at the hinge.
    add({kV});
    add({kV, kU3});
    add({kV, kU1});
    add({kV, kU2});
    add({kV, kU1, kU2});
    add({kV, kU1, kU3});
    add({kV, kU2, kU3});
    add({kV, kU1, kU2, kU3});
    add({kV, kU3, kY1, kY2});
    add({kV, kU1, kD1, kD2});
    add({kV, kU2, kL1, kL2});
    add({kV, kU1, kU2, kU3, kY1, kY2}, kU3);
    add({kV, kU1, kU2, kU3, kD1, kD2}, kU1);
    add({kV, kU1, kU2, kU3, kL1, kL2}, kU2);
    add({kV, kU1, kU2, kU3, kY1, kY2, kD1, kD2}, kU3);
    add({kV, kU1, kU2, kU3, kY1, kY2, kL1, kL2}, kU3);
    add({kV, kU1, kU2, kU3, kD1, kD2, kL1, kL2}, kU1);
    add({kV, kU1, kU2, kU3, kY1, kY2, kD1, kD2, kL1, kL2}, kU3);
    return cat;
}

// Axis-aligned patch of lattice vertices, via balls filtered to the box.
Region box_region(int x0, int y0, int x1, int y1) {
    std::vector<Vtx> verts;
    const Vtx centre{(x0 + x1) / 2 | 1, (y0 + y1) / 2 | 1};
    const int radius = (x1 - x0) + (y1 - y0);
    for (Vtx u : ball(centre, radius))
        if (u.x >= x0 && u.x <= x1 && u.y >= y0 && u.y <= y1) verts.push_back(u);
    return Region(std::move(verts));
}

// Deterministic search for a region on which the two-equal-neighbours
// property holds; preference to small regions (cheap exhaustive counts).
Region find_two_equal_region() {
    std::vector<Region> candidates{Region(ball(Vtx{1, 1}, 2)), Region(ball(Vtx{2, 2}, 2))};
    for (int h = 4; h <= 8; h += 2)
        for (int w = 4; w <= 12; ++w)
            for (int oy = -1; oy <= 0; ++oy)
                for (int ox = -1; ox <= 0; ++ox) {
                    Region r = box_region(ox, oy, ox + w, oy + h);
                    if (r.size() >= 10 && r.size() <= 24) candidates.push_back(std::move(r));
                }
    for (const Region& r : candidates) {
        const TwoEqualReport rep = check_two_equal_neighbours(r, 24);
        say("two-equal candidate |R|=" + std::to_string(r.size()) +
            (rep.holds ? ": holds" : ": " + std::to_string(rep.counterexamples) + " counterexamples"));
        if (rep.holds) return r;
    }
    throw ValidationError("no two-equal-neighbours region found in the search space");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: gen-baseline <out-dir>\n");
        return 1;
    }
    const std::string dir = std::string(argv[1]) + "/";
    try {
        // Catalogues.
        const Catalogue acat = partition_catalogue();
        const Catalogue fcat = template_catalogue();
        for (const Catalogue* c : {&acat, &fcat}) {
            const ValidationReport rep = validate_catalogue(*c);
            if (!rep.ok) throw ValidationError("catalogue invalid: " + rep.message);
        }
        write_file(dir + "a_baseline.json", catalogue_to_json(acat));
        write_file(dir + "f_baseline.json", catalogue_to_json(fcat));
        say("catalogues written (" + std::to_string(acat.entries.size()) + " partition, " +
            std::to_string(fcat.entries.size()) + " template entries)");

        // Family constants.
        MuTable mu = build_mu_table(fcat, /*allow_split=*/true, say);
        mu.catalogue_hash = catalogue_hash(fcat);
        write_file(dir + "mu_baseline.json", mu_table_to_json(mu));
        say("mu table written (" + std::to_string(mu.entries.size()) + " entries)");

        // Coverage set.
        AFSet s = build(big_labelings(), acat, fcat, mu);
        s.a_hash = catalogue_hash(acat);
        s.f_hash = catalogue_hash(fcat);
        s.mu_hash = mu_table_hash(mu);
        write_file(dir + "afset_baseline.jsonl", afset_to_jsonl(s));
        say("coverage set written (" + std::to_string(s.tuples.size()) + " tuples)");

        // Decay certificate by bisection on epsilon.
        const EpsilonSearch found = bisect_epsilon(s, mu, Rat(1, 1000000), Rat(1, 2), 24);
        if (!found.any) {
            say("certificate: no feasible epsilon in [1/1000000, 1/2]; none written");
        } else {
            const VerifyResult chk = verify(found.cert, s, mu);
            if (!chk.ok) throw ValidationError("generated certificate fails verification: " + chk.message);
            write_file(dir + "cert_baseline.json", certificate_to_json(found.cert));
            say("certificate written (epsilon=" + rat_str(found.cert.epsilon) +
                ", alpha_max=" + rat_str(found.cert.alpha_max) + ")");
        }

        // Dynamics fixtures.
        const Region frozen({Vtx{1, 1}, Vtx{3, 1}});
        const VertexColoring frozen_bnd{
            {Vtx{-1, 1}, 3}, {Vtx{0, 0}, 4}, {Vtx{2, 2}, 5}, {Vtx{5, 1}, 3}, {Vtx{4, 0}, 4}};
        write_file(dir + "frozen_region.json", region_to_json(frozen));
        write_file(dir + "frozen_boundary.json", vertex_coloring_to_json(frozen_bnd));

        const Region lemma9 = find_two_equal_region();
        write_file(dir + "lemma9_region.json", region_to_json(lemma9));
        say("two-equal-neighbours fixture written (|R|=" + std::to_string(lemma9.size()) + ")");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gen-baseline failed: %s\n", e.what());
        return 2;
    }
    return 0;
}
