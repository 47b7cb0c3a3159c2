#include "lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace coxlink {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = entries[i][j];
    return c;
}

IntMatrix IntMatrix::without_column(std::size_t j) const {
    IntMatrix m(rows, cols - 1);
    for (std::size_t i = 0; i < rows; ++i) {
        std::size_t k = 0;
        for (std::size_t c = 0; c < cols; ++c)
            if (c != j) m[i][k++] = entries[i][c];
    }
    return m;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows; ++i) {
        os << (i ? "; " : "[");
        for (std::size_t j = 0; j < cols; ++j)
            os << (j ? "," : "") << entries[i][j].get_str();
    }
    os << "]";
    return os.str();
}

std::string vec_str(const IntVector& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

IntVector mat_apply(const IntMatrix& a, const IntVector& v) {
    IntVector r(a.rows, Int(0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r[i] += a[i][j] * v[j];
    return r;
}

Int det(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: square matrix required");
    if (m.rows == 0) return 1;
    if (m.rows == 1) return m[0][0];
    // cofactor expansion; matrices here stay tiny
    Int d = 0;
    int sign = 1;
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (m[0][j] != 0) {
            IntMatrix sub(m.rows - 1, m.cols - 1);
            for (std::size_t i = 1; i < m.rows; ++i) {
                std::size_t k = 0;
                for (std::size_t c = 0; c < m.cols; ++c)
                    if (c != j) sub[i - 1][k++] = m[i][c];
            }
            d += sign * m[0][j] * det(sub);
        }
        sign = -sign;
    }
    return d;
}

namespace {

void add_row_multiple(IntMatrix& m, IntMatrix& u, std::size_t dst, std::size_t src,
                      const Int& f) {
    for (std::size_t j = 0; j < m.cols; ++j) m[dst][j] += f * m[src][j];
    for (std::size_t j = 0; j < u.cols; ++j) u[dst][j] += f * u[src][j];
}

void swap_rows(IntMatrix& m, IntMatrix& u, std::size_t a, std::size_t b) {
    std::swap(m.entries[a], m.entries[b]);
    std::swap(u.entries[a], u.entries[b]);
}

void negate_row(IntMatrix& m, IntMatrix& u, std::size_t i) {
    for (auto& x : m[i]) x = -x;
    for (auto& x : u[i]) x = -x;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    std::size_t row = 0;
    for (std::size_t col = 0; col < h.cols && row < h.rows; ++col) {
        // gcd out the column below `row` by repeated division steps
        while (true) {
            std::size_t piv = h.rows;
            for (std::size_t i = row; i < h.rows; ++i)
                if (h[i][col] != 0 &&
                    (piv == h.rows || abs(h[i][col]) < abs(h[piv][col])))
                    piv = i;
            if (piv == h.rows) break;  // column is zero below
            if (piv != row) swap_rows(h, u, row, piv);
            if (h[row][col] < 0) negate_row(h, u, row);
            bool clean = true;
            for (std::size_t i = row + 1; i < h.rows; ++i) {
                if (h[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h[i][col].get_mpz_t(),
                           h[row][col].get_mpz_t());
                add_row_multiple(h, u, i, row, -q);
                if (h[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (h[row][col] == 0) continue;
        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h[i][col].get_mpz_t(), h[row][col].get_mpz_t());
            if (q != 0) add_row_multiple(h, u, i, row, -q);
        }
        ++row;
    }
    return {h, u};
}

SnfResult snf(const IntMatrix& m) {
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.cols);

    auto add_col_multiple = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < s.rows; ++i) s[i][dst] += f * s[i][src];
        for (std::size_t i = 0; i < v.rows; ++i) v[i][dst] += f * v[i][src];
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < s.rows; ++i) std::swap(s[i][a], s[i][b]);
        for (std::size_t i = 0; i < v.rows; ++i) std::swap(v[i][a], v[i][b]);
    };

    std::size_t n = std::min(s.rows, s.cols);
    for (std::size_t k = 0; k < n; ++k) {
        while (true) {
            // find minimal nonzero entry in the remaining block
            std::size_t pi = s.rows, pj = s.cols;
            for (std::size_t i = k; i < s.rows; ++i)
                for (std::size_t j = k; j < s.cols; ++j)
                    if (s[i][j] != 0 &&
                        (pi == s.rows || abs(s[i][j]) < abs(s[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == s.rows) break;
            if (pi != k) swap_rows(s, u, k, pi);
            if (pj != k) swap_cols(k, pj);
            if (s[k][k] < 0) negate_row(s, u, k);
            bool again = false;
            for (std::size_t i = k + 1; i < s.rows; ++i)
                if (s[i][k] != 0) {
                    Int q = s[i][k] / s[k][k];
                    add_row_multiple(s, u, i, k, -q);
                    if (s[i][k] != 0) again = true;
                }
            for (std::size_t j = k + 1; j < s.cols; ++j)
                if (s[k][j] != 0) {
                    Int q = s[k][j] / s[k][k];
                    add_col_multiple(j, k, -q);
                    if (s[k][j] != 0) again = true;
                }
            if (again) continue;
            // enforce divisibility on the rest of the block
            bool fixed = false;
            for (std::size_t i = k + 1; i < s.rows && !fixed; ++i)
                for (std::size_t j = k + 1; j < s.cols && !fixed; ++j)
                    if (s[i][j] % s[k][k] != 0) {
                        add_row_multiple(s, u, k, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
    }
    return {s, u, v};
}

std::vector<Int> invariant_factors(const IntMatrix& m) {
    SnfResult r = snf(m);
    std::size_t n = std::min(m.rows, m.cols);
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = r.s[i][i];
    return d;
}

IntVector primitive(const IntVector& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

std::optional<std::vector<unsigned long>> left_kernel_mod(const IntMatrix& m,
                                                          unsigned long q) {
    std::size_t r = m.rows, c = m.cols;
    // work on the transpose: kernel of rows == nullspace of m^T columns
    std::vector<std::vector<unsigned long>> a(c, std::vector<unsigned long>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Int e = m[i][j] % Int(q);
            if (e < 0) e += q;
            a[j][i] = e.get_ui();
        }
    auto inv_mod = [&](unsigned long x) {
        unsigned long res = 1, b = x, e = q - 2;
        while (e) {
            if (e & 1) res = (unsigned long)((unsigned __int128)res * b % q);
            b = (unsigned long)((unsigned __int128)b * b % q);
            e >>= 1;
        }
        return res;
    };
    std::vector<std::size_t> pivot_of_col(r, SIZE_MAX);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < r && rank < c; ++col) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t i = rank; i < c; ++i)
            if (a[i][col] % q != 0) {
                piv = i;
                break;
            }
        if (piv == SIZE_MAX) continue;
        std::swap(a[rank], a[piv]);
        unsigned long iv = inv_mod(a[rank][col]);
        for (auto& x : a[rank]) x = (unsigned long)((unsigned __int128)x * iv % q);
        for (std::size_t i = 0; i < c; ++i)
            if (i != rank && a[i][col] % q != 0) {
                unsigned long f = a[i][col] % q;
                for (std::size_t j = 0; j < r; ++j) {
                    unsigned long sub = (unsigned long)((unsigned __int128)f * a[rank][j] % q);
                    a[i][j] = (a[i][j] + q - sub) % q;
                }
            }
        pivot_of_col[col] = rank;
        ++rank;
    }
    if (rank == r) return std::nullopt;
    // first free column gives the canonical kernel vector
    for (std::size_t col = 0; col < r; ++col) {
        if (pivot_of_col[col] != SIZE_MAX) continue;
        std::vector<unsigned long> t(r, 0);
        t[col] = 1;
        for (std::size_t c2 = 0; c2 < r; ++c2)
            if (pivot_of_col[c2] != SIZE_MAX) {
                unsigned long val = a[pivot_of_col[c2]][col] % q;
                t[c2] = (q - val) % q;
            }
        return t;
    }
    return std::nullopt;
}

IntMatrix kernel_sublattice_basis(const std::vector<unsigned long>& t,
                                  unsigned long q) {
    std::size_t r = t.size();
    // generators of {v : t.v == 0 mod q}
    IntMatrix gen(2 * r, r);
    std::size_t k = SIZE_MAX;
    for (std::size_t i = 0; i < r; ++i)
        if (t[i] % q != 0) {
            k = i;
            break;
        }
    if (k == SIZE_MAX) throw std::invalid_argument("kernel_sublattice_basis: zero t");
    auto inv_mod = [&](unsigned long x) {
        unsigned long res = 1, b = x % q, e = q - 2;
        while (e) {
            if (e & 1) res = (unsigned long)((unsigned __int128)res * b % q);
            b = (unsigned long)((unsigned __int128)b * b % q);
            e >>= 1;
        }
        return res;
    };
    unsigned long tk_inv = inv_mod(t[k]);
    std::size_t row = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (i == k) {
            gen[row][k] = Int(q);
        } else {
            unsigned long c = (unsigned long)((unsigned __int128)(t[i] % q) * tk_inv % q);
            gen[row][i] = 1;
            gen[row][k] = -Int(c);
        }
        ++row;
    }
    HnfResult h = hnf(gen);
    IntMatrix basis(r, r);
    for (std::size_t i = 0; i < r; ++i) basis[i] = h.h[i];
    return basis;
}

IntVector in_basis(const IntMatrix& basis, const IntVector& v) {
    std::size_t r = basis.rows;
    IntVector c(r, Int(0));
    IntVector rest = v;
    // basis is row-HNF: march along pivot columns
    std::size_t col = 0;
    for (std::size_t i = 0; i < r; ++i) {
        while (col < basis.cols && basis[i][col] == 0) ++col;
        if (col == basis.cols) {
            for (const auto& x : rest)
                if (x != 0) throw std::invalid_argument("in_basis: not in lattice");
            break;
        }
        if (rest[col] % basis[i][col] != 0)
            throw std::invalid_argument("in_basis: not in lattice");
        c[i] = rest[col] / basis[i][col];
        for (std::size_t j = 0; j < basis.cols; ++j) rest[j] -= c[i] * basis[i][j];
    }
    for (const auto& x : rest)
        if (x != 0) throw std::invalid_argument("in_basis: not in lattice");
    return c;
}

IntMatrix unimodular_to_last_unit(const IntVector& d) {
    std::size_t r = d.size();
    // fold every entry into the last one by extended gcd steps
    IntMatrix u0 = IntMatrix::identity(r);
    IntVector w = d;
    for (std::size_t i = 0; i + 1 < r; ++i) {
        if (w[i] == 0) continue;
        Int g, p, qq;
        mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), qq.get_mpz_t(),
                   w[r - 1].get_mpz_t(), w[i].get_mpz_t());
        Int a = w[r - 1] / g, b = w[i] / g;
        IntVector new_last(r), new_i(r);
        for (std::size_t j = 0; j < r; ++j) {
            new_last[j] = p * u0[r - 1][j] + qq * u0[i][j];
            new_i[j] = a * u0[i][j] - b * u0[r - 1][j];
        }
        u0[r - 1] = new_last;
        u0[i] = new_i;
        Int wi = w[i];
        w[i] = a * wi - b * w[r - 1];
        w[r - 1] = g;
    }
    if (w[r - 1] == -1) {
        for (auto& x : u0[r - 1]) x = -x;
        w[r - 1] = 1;
    }
    if (w[r - 1] != 1)
        throw std::invalid_argument("unimodular_to_last_unit: vector not primitive");
    if (r == 1) return u0;
    // canonicalize: the kept rows become the HNF basis of the kernel d^perp,
    // and the last row is size-reduced against it
    IntMatrix kern(r - 1, r);
    for (std::size_t i = 0; i + 1 < r; ++i) kern[i] = u0[i];
    IntMatrix kh = hnf(kern).h;
    IntVector last = u0[r - 1];
    for (std::size_t i = 0; i + 1 < r; ++i) {
        std::size_t piv = 0;
        while (piv < r && kh[i][piv] == 0) ++piv;
        if (piv == r) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), last[piv].get_mpz_t(), kh[i][piv].get_mpz_t());
        for (std::size_t j = 0; j < r; ++j) last[j] -= q * kh[i][j];
    }
    IntMatrix u(r, r);
    for (std::size_t i = 0; i + 1 < r; ++i) u[i] = kh[i];
    u[r - 1] = last;
    return u;
}

}  // namespace coxlink
