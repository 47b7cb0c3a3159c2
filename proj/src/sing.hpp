#pragma once

#include "groebner.hpp"
#include "subvariety.hpp"

namespace coxlink {

struct QuotientSingularity {
    unsigned long r = 1;
    std::vector<unsigned long> weights;  // sorted, unit-normalized mod r
    std::string str() const;
    bool operator==(const QuotientSingularity&) const = default;
};

enum class SingKind { smooth, quotient, cA1, unclassified };

std::string sing_kind_str(SingKind k);

struct SingularityReport {
    std::vector<std::string> point;  // the nonvanishing coordinates
    SingKind kind = SingKind::unclassified;
    std::optional<QuotientSingularity> quotient;
    unsigned quadratic_rank = 0;  // for the cA1 classification
    std::vector<std::string> tangents;
    std::vector<unsigned long> ambient_residues;  // all local variables, chart order
    std::string detail;
    std::string kind_str() const;
};

// Local data of the ambient toric chart at a coordinate point.
struct LocalChart {
    unsigned long group_order = 1;        // r of the cyclic quotient
    std::vector<std::size_t> local_vars;  // ambient indices of the chart coords
    std::vector<unsigned long> residues;  // action weights mod r, aligned
    std::vector<Poly<Fp>> equations;      // restricted to the chart slice
};

// Chart at the point where exactly the variables `point` are nonzero.
// Throws when the defining block is singular or the quotient is non-cyclic.
LocalChart local_chart(const Subvariety& v, const std::vector<std::string>& point);

// Rank of the symmetric matrix of the quadratic part.
template <class F>
unsigned quadratic_rank(const F& f, const Poly<F>& germ) {
    std::size_t n = germ.nvars;
    std::vector<std::vector<typename F::Elem>> m(
        n, std::vector<typename F::Elem>(n, f.zero()));
    auto half = f.inv(f.from_long(2));
    for (const auto& [e, c] : germ.terms) {
        if (total_degree(e) != 2) continue;
        std::size_t i = n, j = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (e[k] == 2) i = j = k;
            if (e[k] == 1) (i == n ? i : j) = k;
        }
        if (i == j) {
            m[i][i] = f.add(m[i][i], c);
        } else {
            auto hc = f.mul(c, half);
            m[i][j] = f.add(m[i][j], hc);
            m[j][i] = f.add(m[j][i], hc);
        }
    }
    // gaussian rank
    unsigned rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = n;
        for (std::size_t i = row; i < n; ++i)
            if (!f.is_zero(m[i][col])) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        std::swap(m[row], m[piv]);
        auto iv = f.inv(m[row][col]);
        for (auto& x : m[row]) x = f.mul(x, iv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || f.is_zero(m[i][col])) continue;
            auto c = m[i][col];
            for (std::size_t k = 0; k < n; ++k)
                m[i][k] = f.sub(m[i][k], f.mul(c, m[row][k]));
        }
        ++rank;
        ++row;
    }
    return rank;
}

// Classify the germ of v at a coordinate point: quotient type when the
// tangent variables eliminate every equation, a cA1 when one rank-4
// hypersurface germ remains in a smooth 4-dimensional chart, otherwise
// unclassified with the gathered data attached. Elimination works on power
// series truncated at total degree `series_order`.
SingularityReport coordinate_point_type(const Subvariety& v,
                                        const std::vector<std::string>& point,
                                        unsigned series_order = 7);

// All coordinate points of the ambient that are stable and lie on v.
std::vector<std::vector<std::string>> coordinate_points_on(const Subvariety& v);

struct QuasiSmoothVerdict {
    bool witness_found = false;
    std::vector<unsigned long> witness;  // affine cone coordinates
    std::string witness_location;        // "stratum" or "sample"
    long points_checked = 0;
    long slices_used = 0;
};

// Monte-Carlo quasi-smoothness: deterministic scan of coordinate strata plus
// random coordinate slices solved exactly; at every cone point found, the
// Jacobian rank must equal the codimension. p < 101 is rejected.
QuasiSmoothVerdict quasi_smooth_check(const Subvariety& v, long trials,
                                      std::uint64_t seed);

}  // namespace coxlink
