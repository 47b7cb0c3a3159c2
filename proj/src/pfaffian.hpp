#pragma once

#include <array>
#include <optional>

#include "poly.hpp"

namespace coxlink {

// Upper triangle of a 5x5 skew matrix of polynomials in one common ring.
// Index order: m12 m13 m14 m15 m23 m24 m25 m34 m35 m45.
template <class F>
struct PfaffianFamily {
    std::array<Poly<F>, 10> m;
    const Poly<F>& at(int i, int j) const {
        static const int idx[6][6] = {{},
                                      {0, 0, 0, 1, 2, 3},
                                      {0, 0, 0, 4, 5, 6},
                                      {0, 0, 0, 0, 7, 8},
                                      {0, 0, 0, 0, 0, 9},
                                      {}};
        return m[idx[i][j]];
    }
};

// The five 4x4 sub-Pfaffians m_ij*m_kl - m_ik*m_jl + m_il*m_jk over the
// complements {i<j<k<l} of 5,4,3,2,1, in that order, with the fixed sign
// table (+,-,+,+,+). The signs orient each equation the way the classical
// codimension-3 format prints them (distinguished quadratic monomial
// positive); the zero set is unaffected.
template <class F>
std::array<Poly<F>, 5> pfaffians5(const F& f, const PfaffianFamily<F>& fam) {
    static const int quad[5][4] = {
        {1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}};
    static const int sign[5] = {+1, -1, +1, +1, +1};
    std::array<Poly<F>, 5> out;
    for (int k = 0; k < 5; ++k) {
        const int* q = quad[k];
        Poly<F> p = mul(f, fam.at(q[0], q[1]), fam.at(q[2], q[3]));
        p = sub(f, p, mul(f, fam.at(q[0], q[2]), fam.at(q[1], q[3])));
        p = add(f, p, mul(f, fam.at(q[0], q[3]), fam.at(q[1], q[2])));
        out[k] = sign[k] > 0 ? p : neg(f, p);
    }
    return out;
}

struct PfaffianWeights {
    std::optional<std::vector<IntVector>> b;  // b1..b5 with deg m_ij = b_i + b_j
    std::string failure;                      // set when inconsistent
};

// Solve deg m_ij = b_i + b_j from the entries' multidegrees. Fails naming the
// first inconsistent (or inhomogeneous) entry.
template <class F>
PfaffianWeights infer_pfaffian_weights(const F& f, const PfaffianFamily<F>& fam,
                                       const std::vector<IntVector>& var_degrees) {
    static const int pairs[10][2] = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3},
                                     {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
    PfaffianWeights out;
    std::size_t rank = var_degrees.empty() ? 0 : var_degrees[0].size();
    std::array<IntVector, 10> d;
    for (int k = 0; k < 10; ++k) {
        auto rep = multidegree_of(fam.m[k], var_degrees);
        if (!rep.degree) {
            out.failure = "entry m" + std::to_string(pairs[k][0]) +
                          std::to_string(pairs[k][1]) + " is inhomogeneous";
            return out;
        }
        d[k] = *rep.degree;
    }
    // 2*b1 = d12 + d13 - d23 etc.; solve per grading component over Q
    std::vector<IntVector> b(5, IntVector(rank, Int(0)));
    for (std::size_t c = 0; c < rank; ++c) {
        Int twice_b1 = d[0][c] + d[1][c] - d[4][c];
        if (twice_b1 % 2 != 0) {
            out.failure = "weights are not integral";
            return out;
        }
        b[0][c] = twice_b1 / 2;
        b[1][c] = d[0][c] - b[0][c];
        b[2][c] = d[1][c] - b[0][c];
        b[3][c] = d[2][c] - b[0][c];
        b[4][c] = d[3][c] - b[0][c];
    }
    for (int k = 0; k < 10; ++k) {
        IntVector expect(rank, Int(0));
        for (std::size_t c = 0; c < rank; ++c)
            expect[c] = b[pairs[k][0] - 1][c] + b[pairs[k][1] - 1][c];
        if (expect != d[k]) {
            out.failure = "entry m" + std::to_string(pairs[k][0]) +
                          std::to_string(pairs[k][1]) +
                          " breaks the weight system";
            return out;
        }
    }
    out.b = b;
    return out;
}

}  // namespace coxlink
