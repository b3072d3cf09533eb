// rational.hpp
// Exact rational arithmetic via GMP, plus the "p/q" string form used in all
// JSON artifacts (so files stay exact and diffable).

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kagome {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

inline Rat rat_pow(Rat base, long e) {
    if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
    Rat out = 1;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace kagome
