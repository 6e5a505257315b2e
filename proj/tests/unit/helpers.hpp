#pragma once

#include "p4pha/ring.hpp"

#include <ostream>
#include <random>

namespace p4pha::gen {

inline ParamScalar random_param(std::mt19937& rng, int max_terms = 4)
{
    std::uniform_int_distribution<int> nterms(0, max_terms), deg(0, 2), ds(0, 1), num(-9, 9), den(1, 5);
    ParamScalar out;
    for (int t = nterms(rng); t > 0; --t) out += ParamScalar::monomial(deg(rng), deg(rng), ds(rng), Rational(num(rng), den(rng)));
    return out;
}

inline RingElem random_ring(std::mt19937& rng, int max_terms = 5)
{
    std::uniform_int_distribution<int> nterms(0, max_terms), k(0, 3), i(-2, 4), j(0, 3);
    RingElem out;
    for (int t = nterms(rng); t > 0; --t) out += RingElem::monomial(k(rng), i(rng), j(rng), random_param(rng, 2));
    return out;
}

} // namespace p4pha::gen

namespace p4pha {
inline void PrintTo(const ParamScalar& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const RingElem& e, std::ostream* os) { *os << e.to_string(); }
} // namespace p4pha
