#include "cox.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coxlink {

IntMatrix CoxPresentation::weight_matrix() const {
    IntMatrix m(rank, nvars());
    for (std::size_t j = 0; j < nvars(); ++j)
        for (std::size_t i = 0; i < rank; ++i) m[i][j] = degrees[j][i];
    return m;
}

std::vector<std::vector<std::string>> normalize_components(
    const CoxPresentation& c, std::vector<std::vector<std::string>> comps) {
    auto order = [&](const std::string& n) { return *c.index_of(n); };
    for (auto& comp : comps) {
        std::sort(comp.begin(), comp.end(),
                  [&](const auto& a, const auto& b) { return order(a) < order(b); });
        comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
    }
    // keep minimal components only (S superset of S' means V(S) inside V(S'))
    std::vector<std::vector<std::string>> keep;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < comps.size() && !redundant; ++j) {
            if (i == j) continue;
            bool contains = std::includes(comps[i].begin(), comps[i].end(),
                                          comps[j].begin(), comps[j].end(),
                                          [&](const auto& a, const auto& b) {
                                              return order(a) < order(b);
                                          });
            if (contains && comps[i] != comps[j]) redundant = true;
            if (comps[i] == comps[j] && j < i) redundant = true;  // dedupe
        }
        if (!redundant) keep.push_back(comps[i]);
    }
    std::sort(keep.begin(), keep.end(), [&](const auto& a, const auto& b) {
        std::vector<std::size_t> ia, ib;
        for (const auto& n : a) ia.push_back(order(n));
        for (const auto& n : b) ib.push_back(order(n));
        return ia < ib;
    });
    return keep;
}

std::vector<std::string> validate(const CoxPresentation& c) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& n : c.vars)
        if (!seen.insert(n).second) out.push_back("duplicate variable name: " + n);
    for (const auto& d : c.degrees)
        if (d.size() != c.rank) out.push_back("degree length != rank");
    for (const auto& comp : c.irrelevant) {
        if (comp.empty()) out.push_back("empty irrelevant component");
        for (const auto& n : comp)
            if (!c.index_of(n))
                out.push_back("irrelevant component names unknown variable: " + n);
    }
    if (c.rank > 0 && c.nvars() >= c.rank) {
        auto inv = invariant_factors(c.weight_matrix());
        for (const auto& d : inv)
            if (d != 1) {
                out.push_back("grading is not surjective (invariant factors " +
                              [&] {
                                  std::string s;
                                  for (const auto& x : inv)
                                      s += (s.empty() ? "" : ",") + x.get_str();
                                  return s;
                              }() +
                              ")");
                break;
            }
    }
    return out;
}

bool column_deletion_surjective(const IntMatrix& m) {
    for (std::size_t j = 0; j < m.cols; ++j) {
        auto inv = invariant_factors(m.without_column(j));
        for (const auto& d : inv)
            if (d != 1) return false;
    }
    return true;
}

namespace {

std::vector<unsigned long> prime_factors(Int n) {
    std::vector<unsigned long> out;
    if (n < 0) n = -n;
    for (unsigned long p = 2; Int(p) * Int(p) <= n; p += (p == 2 ? 1 : 2))
        if (n % Int(p) == 0) {
            out.push_back(p);
            while (n % Int(p) == 0) n /= Int(p);
        }
    if (n > 1) out.push_back(n.get_ui());
    return out;
}

std::set<unsigned long> candidate_primes(const IntMatrix& m) {
    std::set<unsigned long> qs;
    auto absorb = [&](const IntMatrix& mm) {
        for (const auto& d : invariant_factors(mm))
            if (d != 0 && d != 1)
                for (auto q : prime_factors(d)) qs.insert(q);
    };
    absorb(m);
    for (std::size_t j = 0; j < m.cols; ++j) absorb(m.without_column(j));
    return qs;
}

}  // namespace

WellFormResult well_form(const CoxPresentation& c) {
    WellFormResult res;
    res.pres = c;
    std::map<std::string, unsigned long> expo;
    for (int round = 0; round < 64; ++round) {
        IntMatrix m = res.pres.weight_matrix();
        auto rk = invariant_factors(m);
        bool rank_ok = true;
        for (const auto& d : rk)
            if (d == 0) rank_ok = false;
        if (!rank_ok)
            throw std::invalid_argument("well_form: grading not of full rank");
        bool moved = false;
        for (unsigned long q : candidate_primes(m)) {
            // full-lattice saturation
            if (auto t = left_kernel_mod(m, q)) {
                IntMatrix basis = kernel_sublattice_basis(*t, q);
                for (auto& d : res.pres.degrees) d = in_basis(basis, d);
                moved = true;
                break;
            }
            // quasi-reflection: kernel away from one column only
            for (std::size_t j = 0; j < m.cols && !moved; ++j) {
                auto t = left_kernel_mod(m.without_column(j), q);
                if (!t) continue;
                Int pairing = 0;
                for (std::size_t i = 0; i < m.rows; ++i)
                    pairing += Int((*t)[i]) * m[i][j];
                if (pairing % Int(q) == 0) continue;  // saturation would have found it
                // substitute x_j -> x_j^q, then rewrite in the sublattice basis
                for (auto& d : res.pres.degrees[j]) d *= Int(q);
                IntMatrix basis = kernel_sublattice_basis(*t, q);
                for (auto& d : res.pres.degrees) d = in_basis(basis, d);
                expo[res.pres.vars[j]] =
                    (expo.count(res.pres.vars[j]) ? expo[res.pres.vars[j]] : 1) * q;
                moved = true;
            }
            if (moved) break;
        }
        if (!moved) {
            if (!column_deletion_surjective(res.pres.weight_matrix()))
                throw std::runtime_error(
                    "well_form: no move available but presentation is not well-formed");
            for (const auto& [n, e] : expo) res.exponent_changes.emplace_back(n, e);
            return res;
        }
    }
    throw std::runtime_error("well_form: did not terminate");
}

namespace {

// exact 2d angular machinery
Int cross2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }
Int dot2(const IntVector& a, const IntVector& b) { return a[0] * b[0] + a[1] * b[1]; }

// half-open rotational order from the positive x-axis
int half_of(const IntVector& v) {
    if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
    return 1;
}

bool angle_less(const IntVector& a, const IntVector& b) {
    int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return cross2(a, b) > 0;
}

bool same_ray(const IntVector& a, const IntVector& b) {
    return cross2(a, b) == 0 && dot2(a, b) > 0;
}

// is x in cone(d_i : i in subset)? exact, 2d
bool cone_contains(const std::vector<IntVector>& rays, const std::vector<int>& subset,
                   const IntVector& x) {
    for (int i : subset)
        if (same_ray(rays[i], x)) return true;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const IntVector& u = rays[subset[a]];
            const IntVector& v = rays[subset[b]];
            Int d = cross2(u, v);
            if (d == 0) continue;
            // x = lam*u + mu*v with lam = cross(x,v)/d, mu = cross(u,x)/d
            Int lam = cross2(x, v), mu = cross2(u, x);
            if (d < 0) {
                lam = -lam;
                mu = -mu;
            }
            if (lam >= 0 && mu >= 0) return true;
        }
    return false;
}

}  // namespace

ChamberFan mori_chambers(const CoxPresentation& c) {
    if (c.rank != 2)
        throw std::invalid_argument("mori_chambers: rank-2 presentation required");
    ChamberFan fan;
    std::vector<std::size_t> ray_of_var(c.nvars());
    for (std::size_t v = 0; v < c.nvars(); ++v) {
        bool zero = c.degrees[v][0] == 0 && c.degrees[v][1] == 0;
        if (zero) throw std::invalid_argument("mori_chambers: zero degree column");
        IntVector r = primitive(c.degrees[v]);
        std::size_t k = fan.rays.size();
        for (std::size_t i = 0; i < fan.rays.size(); ++i)
            if (fan.rays[i] == r) k = i;
        if (k == fan.rays.size()) {
            fan.rays.push_back(r);
            fan.groups.emplace_back();
        }
        ray_of_var[v] = k;
        fan.groups[k].push_back(v);
    }
    // rotational (counterclockwise) cyclic order
    std::vector<std::size_t> order(fan.rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return angle_less(fan.rays[a], fan.rays[b]);
    });
    // The effective cone is convex iff some cyclic gap between consecutive rays
    // is >= 180 degrees; the sweep then starts just after that gap. Otherwise
    // the degrees span the whole plane and the fan is cyclic.
    std::size_t n = order.size();
    std::size_t start = 0;
    fan.full_plane = (n > 1);
    for (std::size_t i = 0; i < n; ++i) {
        const IntVector& a = fan.rays[order[i]];
        const IntVector& b = fan.rays[order[(i + 1) % n]];
        Int cr = cross2(a, b), dt = dot2(a, b);
        bool ge_half_turn = (n == 1) || cr < 0 || (cr == 0 && dt < 0);
        if (ge_half_turn && fan.full_plane) {
            fan.full_plane = false;
            start = (i + 1) % n;
        }
    }
    if (fan.full_plane) {
        // start at the first variable's ray per the documented convention
        std::size_t first = ray_of_var[0];
        for (std::size_t i = 0; i < n; ++i)
            if (order[i] == first) start = i;
    }
    std::vector<std::size_t> rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[i] = order[(start + i) % n];
    std::vector<IntVector> rays2;
    std::vector<std::vector<std::size_t>> groups2;
    for (std::size_t i : rotated) {
        rays2.push_back(fan.rays[i]);
        groups2.push_back(fan.groups[i]);
    }
    fan.rays = rays2;
    fan.groups = groups2;
    std::size_t nch = fan.full_plane ? n : (n >= 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < nch; ++i) fan.chambers.emplace_back(i, (i + 1) % n);
    return fan;
}

std::vector<std::vector<std::string>> irrelevant_ideal_of_chamber(
    const CoxPresentation& c, const ChamberFan& fan, std::size_t chamber) {
    if (chamber >= fan.chambers.size())
        throw std::invalid_argument("irrelevant_ideal_of_chamber: no such chamber");
    auto [a, b] = fan.chambers[chamber];
    IntVector chi(2);
    chi[0] = fan.rays[a][0] + fan.rays[b][0];
    chi[1] = fan.rays[a][1] + fan.rays[b][1];
    std::size_t nr = fan.rays.size();
    // maximal ray subsets whose cone misses chi; complements give components
    std::vector<std::vector<int>> maximal;
    for (unsigned mask = 0; mask < (1u << nr); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < nr; ++i)
            if (mask & (1u << i)) sub.push_back((int)i);
        if (cone_contains(fan.rays, sub, chi)) continue;
        bool maximal_one = true;
        for (std::size_t i = 0; i < nr && maximal_one; ++i) {
            if (mask & (1u << i)) continue;
            auto sub2 = sub;
            sub2.push_back((int)i);
            std::sort(sub2.begin(), sub2.end());
            if (!cone_contains(fan.rays, sub2, chi)) maximal_one = false;
        }
        if (maximal_one) maximal.push_back(sub);
    }
    std::vector<std::vector<std::string>> comps;
    for (const auto& sub : maximal) {
        std::set<int> in(sub.begin(), sub.end());
        std::vector<std::string> comp;
        for (std::size_t r = 0; r < nr; ++r)
            if (!in.count((int)r))
                for (std::size_t v : fan.groups[r]) comp.push_back(c.vars[v]);
        comps.push_back(comp);
    }
    return normalize_components(c, comps);
}

std::optional<std::size_t> match_chamber(const CoxPresentation& c,
                                         const ChamberFan& fan) {
    auto mine = normalize_components(c, c.irrelevant);
    for (std::size_t i = 0; i < fan.chambers.size(); ++i)
        if (irrelevant_ideal_of_chamber(c, fan, i) == mine) return i;
    return std::nullopt;
}

CoxPresentation chart(const CoxPresentation& c, const std::string& var) {
    auto vi = c.index_of(var);
    if (!vi) throw std::invalid_argument("chart: unknown variable " + var);
    IntVector d = c.degrees[*vi];
    Int g = 0;
    for (const auto& x : d) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1)
        throw std::invalid_argument("chart: degree of " + var +
                                    " is not primitive (quotient chart rejected)");
    IntMatrix u = unimodular_to_last_unit(d);
    CoxPresentation out;
    out.rank = c.rank - 1;
    for (std::size_t v = 0; v < c.nvars(); ++v) {
        if (v == *vi) continue;
        IntVector nd = mat_apply(u, c.degrees[v]);
        nd.resize(c.rank - 1);  // drop the last coordinate
        out.vars.push_back(c.vars[v]);
        out.degrees.push_back(nd);
    }
    for (const auto& comp : c.irrelevant) {
        if (std::find(comp.begin(), comp.end(), var) != comp.end())
            continue;  // the component's locus misses the chart
        out.irrelevant.push_back(comp);
    }
    out.irrelevant = normalize_components(out, out.irrelevant);
    return out;
}

std::string CanonicalPresentation::str() const {
    std::ostringstream os;
    os << matrix.str() << " / {";
    for (std::size_t i = 0; i < irrelevant.size(); ++i) {
        os << (i ? " " : "") << "(";
        for (std::size_t j = 0; j < irrelevant[i].size(); ++j)
            os << (j ? "," : "") << irrelevant[i][j];
        os << ")";
    }
    os << "}";
    return os.str();
}

CanonicalPresentation canonical_presentation(const CoxPresentation& c) {
    std::size_t n = c.nvars();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    auto comps = normalize_components(c, c.irrelevant);
    auto flatten = [&](const IntMatrix& m) {
        IntVector v;
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) v.push_back(m[i][j]);
        return v;
    };
    std::optional<CanonicalPresentation> best;
    IntVector best_flat;
    do {
        IntMatrix m(c.rank, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < c.rank; ++i) m[i][j] = c.degrees[perm[j]][i];
        auto hr = hnf(m);
        IntMatrix h = hr.h;
        IntVector flat = flatten(h);
        CanonicalPresentation cp;
        cp.matrix = h;
        cp.row_transform = hr.u;
        std::vector<std::size_t> inv(n);
        for (std::size_t j = 0; j < n; ++j) inv[perm[j]] = j;
        for (const auto& comp : comps) {
            std::vector<std::size_t> cc;
            for (const auto& name : comp) cc.push_back(inv[*c.index_of(name)]);
            std::sort(cc.begin(), cc.end());
            cp.irrelevant.push_back(cc);
        }
        std::sort(cp.irrelevant.begin(), cp.irrelevant.end());
        if (!best || flat < best_flat ||
            (flat == best_flat && cp.irrelevant < best->irrelevant)) {
            best = cp;
            best_flat = flat;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

}  // namespace coxlink
