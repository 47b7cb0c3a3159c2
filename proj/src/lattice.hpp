#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace coxlink {

using Int = mpz_class;
using Rat = mpq_class;

using IntVector = std::vector<Int>;

// Dense exact integer matrix. Rows are the outer index.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<IntVector> entries;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r, IntVector(c, Int(0))) {}
    static IntMatrix identity(std::size_t n);

    IntVector& operator[](std::size_t i) { return entries[i]; }
    const IntVector& operator[](std::size_t i) const { return entries[i]; }
    bool operator==(const IntMatrix&) const = default;

    IntVector column(std::size_t j) const;
    IntMatrix without_column(std::size_t j) const;
    std::string str() const;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntVector mat_apply(const IntMatrix& a, const IntVector& v);
Int det(const IntMatrix& m);

struct HnfResult {
    IntMatrix h;  // row Hermite normal form
    IntMatrix u;  // unimodular, u*m == h
};

// Row-style Hermite normal form. Convention: pivots positive, entries in a
// pivot's column above it reduced into [0, pivot); zero rows last. This form
// is canonical for the row lattice, which model comparison relies on.
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
    IntMatrix s;  // diagonal, d1 | d2 | ..., nonnegative
    IntMatrix u;  // unimodular row transform
    IntMatrix v;  // unimodular column transform, u*m*v == s
};

SnfResult snf(const IntMatrix& m);

// Smith invariant factors d1 | d2 | ...; zeros pad rank deficiency.
std::vector<Int> invariant_factors(const IntMatrix& m);

// v / gcd(entries), sign fixed so the first nonzero entry keeps its sign.
// Throws std::invalid_argument on the zero vector.
IntVector primitive(const IntVector& v);

// First reduced-echelon basis vector of the left kernel of (m mod q), lifted
// to {0..q-1}; nullopt when m mod q has full row rank. q must be prime.
std::optional<std::vector<unsigned long>> left_kernel_mod(const IntMatrix& m,
                                                          unsigned long q);

// Canonical (row-HNF) basis of {v in Z^r : sum t_i v_i == 0 mod q}.
IntMatrix kernel_sublattice_basis(const std::vector<unsigned long>& t,
                                  unsigned long q);

// Coordinates c with c*basis == v, for basis = row-HNF square matrix.
// Throws when v is not in the lattice.
IntVector in_basis(const IntMatrix& basis, const IntVector& v);

// Unimodular u with u*d == e_last for a primitive column d.
IntMatrix unimodular_to_last_unit(const IntVector& d);

inline Int dot(const IntVector& a, const IntVector& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string vec_str(const IntVector& v);

}  // namespace coxlink
