#pragma once

#include <cstdint>
#include <optional>

#include "cox.hpp"
#include "poly.hpp"

namespace coxlink {

enum class TermOrder { degrevlex, lex };

// Variable precedence: first ring variable highest.
bool exp_greater(TermOrder o, const Exps& a, const Exps& b);

struct PolyIdeal {
    Fp field;
    std::vector<Poly<Fp>> generators;
    CoxPresentation ambient;  // rank <= 1: projective with weights, or affine
};

// Reduced Groebner basis (Buchberger with the coprimality and chain
// criteria), monic, sorted by decreasing leading term.
std::vector<Poly<Fp>> groebner(const Fp& f, std::vector<Poly<Fp>> gens, TermOrder o);

// Full normal form: every term reduced against the basis.
Poly<Fp> normal_form(const Fp& f, const Poly<Fp>& p, const std::vector<Poly<Fp>>& basis,
                     TermOrder o);

// Number of standard monomials of a reduced basis; nullopt when infinite.
std::optional<long> quotient_dimension(const std::vector<Poly<Fp>>& basis,
                                       std::size_t nvars);

// Length of the zero-dimensional projective scheme (points weighted by their
// multiplicity, the degree-theoretic count): a generic dehomogenization over
// the weight-one variables, recursing into the stratum where they all vanish;
// coordinate points covered only by heavier variables contribute by
// membership. No radical is computed; callers guard genericity across seeds.
// Throws on a positive-dimensional locus.
long count_points(const PolyIdeal& ideal);

// Does f vanish at every geometric point of V(ideal)? Membership shortcut
// first, then the count comparison (0-dimensional ideals only).
bool vanishes_on_locus(const PolyIdeal& ideal, const Poly<Fp>& f);

// deterministic splittable rng for solver/sampling work
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x2545f4914f6cdd1dULL) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    unsigned long below(unsigned long n) { return (unsigned long)(next() % n); }
};

// Roots in F_p of a univariate polynomial given by coefficient vector
// (index = degree). Cantor-Zassenhaus splitting, deterministic via rng.
std::vector<unsigned long> univariate_roots(const Fp& f,
                                            std::vector<unsigned long> coeffs,
                                            Rng& rng);

// All F_p points of a zero-dimensional affine system via iterated lex
// elimination. nullopt when the system is not zero-dimensional.
std::optional<std::vector<std::vector<unsigned long>>> solve_zero_dim(
    const Fp& f, const std::vector<Poly<Fp>>& gens, std::size_t nvars, Rng& rng);

}  // namespace coxlink
