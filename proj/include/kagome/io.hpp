// io.hpp
// (De)serialization of every pipeline artifact — catalogues, mu tables,
// coverage sets, certificates, region/boundary fixtures, boundary pairs —
// plus canonical dumps for content hashing.  All rationals travel as "p/q"
// strings so artifacts stay exact and diffable; decimals appear only in
// human-facing reports, never here.

#pragma once

#include <string>

#include "kagome/afset.hpp"
#include "kagome/boundary_pair.hpp"
#include "kagome/certificate.hpp"
#include "kagome/coloring.hpp"
#include "kagome/mu.hpp"
#include "kagome/region.hpp"

namespace kagome {

// Whole-file helpers.  Throw std::runtime_error on IO failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Catalogues:
//   {"family":"A","entries":[{"w":[3,1],"v":[1,1],"in":[[1,1],...],
//     "out":[[3,1],...],"cut":[2,2]}]}
// ("cut" optional.)  Loading validates the catalogue and throws
// ValidationError when it is malformed or fails the family checks.
std::string catalogue_to_json(const Catalogue& cat);
Catalogue catalogue_from_json(const std::string& text);

// Content hash of the canonical dump (stamped into downstream artifacts).
std::string catalogue_hash(const Catalogue& cat);

// Mu tables:
//   {"catalogue_hash":"...","entries":[{"f":0,"m":1,"value":"2/3",
//     "empty":false,"witness":[[[0,0],[1,1],3],...]}]}
std::string mu_table_to_json(const MuTable& t);
MuTable mu_table_from_json(const std::string& text);
std::string mu_table_hash(const MuTable& t);

// Coverage sets, as JSON lines: a header object
//   {"a_hash":"...","f_hash":"...","mu_hash":"...","generator":"..."}
// followed by one line per tuple:
//   {"a":0,"m":1,"f":2,"child_a":[0,1,-1],"child_m":[1,2,0]}
std::string afset_to_jsonl(const AFSet& s);
AFSet afset_from_jsonl(const std::string& text);

// Certificates:
//   {"epsilon":"1/1000","alpha_max":"p/q","accelerated":false,
//    "hashes":{"a":"...","f":"...","mu":"..."},
//    "alphas":[{"a":0,"m":1,"alpha":"p/q"},...]}
std::string certificate_to_json(const DecayCertificate& c);
DecayCertificate certificate_from_json(const std::string& text);

// Region fixtures: {"verts":[[1,1],[3,1]]}.
std::string region_to_json(const Region& r);
Region region_from_json(const std::string& text);

// Vertex colorings (boundaries, chain states): {"colors":[[[1,1],3],...]}.
std::string vertex_coloring_to_json(const VertexColoring& b);
VertexColoring vertex_coloring_from_json(const std::string& text);

// Edge-boundary pairs:
//   {"region":[[1,1],...],"w":[3,1],"v":[1,1],"c1":1,"c2":2,
//    "shared":[[[0,0],[1,1],3],...]}
std::string pair_to_json(const EdgeBoundaryPair& x);
EdgeBoundaryPair pair_from_json(const std::string& text);

}  // namespace kagome
