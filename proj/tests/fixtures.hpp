#pragma once

// Shared fixtures: the Pfaffian 3-fold in P(1,1,1,1,2,2,3) and friends.

#include "cox.hpp"
#include "pfaffian.hpp"
#include "poly.hpp"

namespace coxlink::fixtures {

inline VarSet x_ring() { return VarSet{{"x", "x1", "x2", "x3", "y", "y1", "z"}}; }

inline CoxPresentation x_presentation() {
    CoxPresentation c;
    c.rank = 1;
    c.vars = x_ring().names;
    c.degrees = {{Int(1)}, {Int(1)}, {Int(1)}, {Int(1)}, {Int(2)}, {Int(2)}, {Int(3)}};
    c.irrelevant = {c.vars};
    return c;
}

// A, B general cubics and C, D general quadrics in x, x1, x2, x3
inline std::map<std::string, FormBinding<Fp>> x_forms(const Fp& f, std::uint64_t seed) {
    std::vector<std::string> slots{"x", "x1", "x2", "x3"};
    std::vector<IntVector> unit(4, IntVector{Int(1)});
    std::map<std::string, FormBinding<Fp>> out;
    for (auto [name, deg] : {std::pair<const char*, long>{"A", 3},
                             {"B", 3},
                             {"C", 2},
                             {"D", 2}}) {
        GenericFormSpec spec{name, IntVector{Int(deg)}, slots, seed};
        out.emplace(name, FormBinding<Fp>{slots, gen_generic(f, spec, unit)});
    }
    return out;
}

inline PfaffianFamily<Fp> x_family(const Fp& f, std::uint64_t seed) {
    auto forms = x_forms(f, seed);
    auto ring = x_ring();
    auto P = [&](const char* s) { return parse(f, s, ring, forms); };
    PfaffianFamily<Fp> fam;
    fam.m = {P("y"), P("A"), P("y1 + C"), P("-x1"), P("B"),
             P("D"), P("x"), P("z"),      P("-y1"), P("x3")};
    return fam;
}

inline std::vector<Poly<Fp>> x_equations(const Fp& f, std::uint64_t seed) {
    auto fam = x_family(f, seed);
    auto pf = pfaffians5(f, fam);
    return {pf.begin(), pf.end()};
}

}  // namespace coxlink::fixtures
