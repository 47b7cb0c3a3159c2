#include "sing.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace coxlink {

std::string QuotientSingularity::str() const {
    std::ostringstream os;
    os << "1/" << r << "(";
    for (std::size_t i = 0; i < weights.size(); ++i)
        os << (i ? "," : "") << weights[i];
    os << ")";
    return os.str();
}

std::string sing_kind_str(SingKind k) {
    switch (k) {
        case SingKind::smooth: return "smooth";
        case SingKind::quotient: return "quotient";
        case SingKind::cA1: return "cA1";
        default: return "unclassified";
    }
}

std::string SingularityReport::kind_str() const {
    if (kind == SingKind::quotient && quotient) return quotient->str();
    return sing_kind_str(kind);
}

namespace {

// canonical residues: minimal sorted tuple over multiplication by units mod r
std::vector<unsigned long> canonical_weights(unsigned long r,
                                             std::vector<unsigned long> w) {
    if (r <= 1) return w;
    std::optional<std::vector<unsigned long>> best;
    for (unsigned long u = 1; u < r; ++u) {
        if (std::gcd(u, r) != 1) continue;
        std::vector<unsigned long> cand;
        for (auto x : w) cand.push_back((unsigned long)((unsigned __int128)x * u % r));
        std::sort(cand.begin(), cand.end());
        if (!best || cand < *best) best = cand;
    }
    return best ? *best : w;
}

}  // namespace

LocalChart local_chart(const Subvariety& v, const std::vector<std::string>& point) {
    const auto& c = v.ambient;
    if (point.size() != c.rank)
        throw std::invalid_argument("local_chart: coordinate point needs " +
                                    std::to_string(c.rank) + " nonzero variables");
    std::vector<std::size_t> s_idx;
    for (const auto& n : point) {
        auto i = c.index_of(n);
        if (!i) throw std::invalid_argument("local_chart: unknown variable " + n);
        s_idx.push_back(*i);
    }
    LocalChart out;
    for (std::size_t j = 0; j < c.nvars(); ++j)
        if (std::find(s_idx.begin(), s_idx.end(), j) == s_idx.end())
            out.local_vars.push_back(j);
    if (c.rank == 0) {
        out.group_order = 1;
        out.residues.assign(out.local_vars.size(), 0);
    } else {
        IntMatrix ds(c.rank, c.rank);
        for (std::size_t k = 0; k < s_idx.size(); ++k)
            for (std::size_t i = 0; i < c.rank; ++i) ds[i][k] = c.degrees[s_idx[k]][i];
        if (det(ds) == 0)
            throw std::invalid_argument("local_chart: point is not a torus fixpoint");
        auto sf = snf(ds);
        for (std::size_t i = 0; i + 1 < c.rank; ++i)
            if (sf.s[i][i] != 1)
                throw std::invalid_argument("local_chart: non-cyclic quotient chart");
        Int r = sf.s[c.rank - 1][c.rank - 1];
        out.group_order = r.get_ui();
        for (auto j : out.local_vars) {
            IntVector img = mat_apply(sf.u, c.degrees[j]);
            Int res = img[c.rank - 1] % r;
            if (res < 0) res += r;
            out.residues.push_back(out.group_order == 1 ? 0 : res.get_ui());
        }
    }
    // restrict equations to the chart slice: point variables set to one
    const Fp& f = v.field;
    std::size_t nl = out.local_vars.size();
    for (const auto& e : v.equations) {
        Poly<Fp> p(nl);
        for (const auto& [ex, co] : e.terms) {
            Exps e2(nl, 0);
            for (std::size_t k = 0; k < nl; ++k) e2[k] = ex[out.local_vars[k]];
            add_term(f, p, e2, co);
        }
        out.equations.push_back(p);
    }
    return out;
}

namespace {

Poly<Fp> mul_trunc(const Fp& f, const Poly<Fp>& a, const Poly<Fp>& b, unsigned cut) {
    Poly<Fp> r(a.nvars);
    for (const auto& [ea, ca] : a.terms) {
        unsigned da = total_degree(ea);
        if (da >= cut) continue;
        for (const auto& [eb, cb] : b.terms) {
            if (da + total_degree(eb) >= cut) continue;
            Exps e(a.nvars);
            for (std::size_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
            add_term(f, r, e, f.mul(ca, cb));
        }
    }
    return r;
}

Poly<Fp> subst_trunc(const Fp& f, const Poly<Fp>& p, const std::vector<Poly<Fp>>& im,
                     unsigned cut) {
    Poly<Fp> r(im.empty() ? 0 : im[0].nvars);
    for (const auto& [e, c] : p.terms) {
        Poly<Fp> t = poly_const(f, r.nvars, c);
        for (std::size_t i = 0; i < p.nvars && !t.is_zero(); ++i)
            for (unsigned k = 0; k < e[i] && !t.is_zero(); ++k)
                t = mul_trunc(f, t, im[i], cut);
        r = add(f, r, t);
    }
    return truncate(r, cut);
}

}  // namespace

SingularityReport coordinate_point_type(const Subvariety& v,
                                        const std::vector<std::string>& point,
                                        unsigned series_order) {
    const Fp& f = v.field;
    SingularityReport rep;
    rep.point = point;
    std::vector<unsigned long> pt(v.ambient.nvars(), 0);
    for (const auto& n : point) pt[*v.ambient.index_of(n)] = 1;
    for (const auto& e : v.equations)
        if (!f.is_zero(evaluate(f, e, pt)))
            throw std::invalid_argument("coordinate_point_type: point not on variety");

    LocalChart ch = local_chart(v, point);
    rep.ambient_residues = ch.residues;
    std::size_t nl = ch.local_vars.size();

    // tangent detection: a local variable is a tangent when some equation has
    // a chart-linear term in it (the monomial point^m * var upstairs)
    std::size_t ne = ch.equations.size();
    std::vector<std::vector<unsigned long>> lin(ne, std::vector<unsigned long>(nl, 0));
    for (std::size_t e = 0; e < ne; ++e)
        for (const auto& [ex, co] : ch.equations[e].terms)
            if (total_degree(ex) == 1)
                for (std::size_t k = 0; k < nl; ++k)
                    if (ex[k] == 1) lin[e][k] = co;
    // variables in ambient order grab the first free witness equation
    std::vector<std::size_t> match_eq, match_var;
    std::vector<bool> eq_used(ne, false);
    for (std::size_t k = 0; k < nl; ++k) {
        for (std::size_t e = 0; e < ne; ++e) {
            if (eq_used[e] || lin[e][k] == 0) continue;
            eq_used[e] = true;
            match_eq.push_back(e);
            match_var.push_back(k);
            rep.tangents.push_back(v.ambient.vars[ch.local_vars[k]]);
            break;
        }
    }

    std::size_t m = match_var.size();
    unsigned cut = series_order;
    std::vector<Poly<Fp>> images(nl);
    for (std::size_t k = 0; k < nl; ++k) images[k] = poly_var(f, nl, k);

    if (m > 0) {
        std::vector<std::vector<unsigned long>> L(m, std::vector<unsigned long>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                L[i][j] = lin[match_eq[i]][match_var[j]];
        std::vector<std::vector<unsigned long>> Linv(m,
                                                     std::vector<unsigned long>(m, 0));
        for (std::size_t i = 0; i < m; ++i) Linv[i][i] = 1;
        {
            auto M = L;
            for (std::size_t col = 0, row = 0; col < m && row < m; ++col, ++row) {
                std::size_t piv = row;
                while (piv < m && M[piv][col] == 0) ++piv;
                if (piv == m) {
                    rep.kind = SingKind::unclassified;
                    rep.detail = "degenerate tangent linear block";
                    return rep;
                }
                std::swap(M[row], M[piv]);
                std::swap(Linv[row], Linv[piv]);
                auto iv = f.inv(M[row][col]);
                for (std::size_t k = 0; k < m; ++k) {
                    M[row][k] = f.mul(M[row][k], iv);
                    Linv[row][k] = f.mul(Linv[row][k], iv);
                }
                for (std::size_t i = 0; i < m; ++i) {
                    if (i == row || M[i][col] == 0) continue;
                    auto cc = M[i][col];
                    for (std::size_t k = 0; k < m; ++k) {
                        M[i][k] = f.sub(M[i][k], f.mul(cc, M[row][k]));
                        Linv[i][k] = f.sub(Linv[i][k], f.mul(cc, Linv[row][k]));
                    }
                }
            }
        }
        // Newton iteration: T <- T - Linv . E(T), truncated at `cut`
        std::vector<Poly<Fp>> T(m, Poly<Fp>(nl));
        bool stable = false;
        for (unsigned round = 0; round < cut + 3 && !stable; ++round) {
            for (std::size_t k = 0; k < m; ++k) images[match_var[k]] = T[k];
            std::vector<Poly<Fp>> resid(m);
            bool all_zero = true;
            for (std::size_t i = 0; i < m; ++i) {
                resid[i] = subst_trunc(f, ch.equations[match_eq[i]], images, cut);
                all_zero &= resid[i].is_zero();
            }
            if (all_zero) {
                stable = true;
                break;
            }
            for (std::size_t k = 0; k < m; ++k) {
                Poly<Fp> delta(nl);
                for (std::size_t i = 0; i < m; ++i)
                    if (Linv[k][i]) delta = add(f, delta, scale(f, resid[i], Linv[k][i]));
                T[k] = truncate(sub(f, T[k], delta), cut);
            }
        }
        if (!stable) {
            rep.kind = SingKind::unclassified;
            rep.detail = "tangent elimination did not stabilize";
            return rep;
        }
        for (std::size_t k = 0; k < m; ++k) images[match_var[k]] = T[k];
    }

    std::vector<Poly<Fp>> residual;
    for (std::size_t e = 0; e < ne; ++e) {
        if (eq_used[e]) continue;
        auto r = subst_trunc(f, ch.equations[e], images, cut);
        if (!r.is_zero()) residual.push_back(r);
    }

    std::vector<std::size_t> remaining;
    for (std::size_t k = 0; k < nl; ++k)
        if (std::find(match_var.begin(), match_var.end(), k) == match_var.end())
            remaining.push_back(k);

    if (residual.empty()) {
        if (ch.group_order == 1) {
            rep.kind = SingKind::smooth;
            return rep;
        }
        QuotientSingularity q;
        q.r = ch.group_order;
        std::vector<unsigned long> w;
        for (auto k : remaining) w.push_back(ch.residues[k]);
        q.weights = canonical_weights(q.r, w);
        rep.kind = SingKind::quotient;
        rep.quotient = q;
        return rep;
    }
    if (residual.size() == 1 && ch.group_order == 1 && remaining.size() == 4) {
        rep.quadratic_rank = quadratic_rank(f, residual[0]);
        if (rep.quadratic_rank == 4) {
            rep.kind = SingKind::cA1;
            return rep;
        }
        rep.kind = SingKind::unclassified;
        rep.detail = "hypersurface germ with quadratic rank " +
                     std::to_string(rep.quadratic_rank);
        return rep;
    }
    rep.kind = SingKind::unclassified;
    rep.detail = std::to_string(residual.size()) + " residual equations in " +
                 std::to_string(remaining.size()) + " variables, group order " +
                 std::to_string(ch.group_order);
    return rep;
}

std::vector<std::vector<std::string>> coordinate_points_on(const Subvariety& v) {
    const auto& c = v.ambient;
    const Fp& f = v.field;
    std::vector<std::vector<std::string>> out;
    std::size_t n = c.nvars();
    std::vector<std::size_t> idx(c.rank);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                            std::size_t from) {
        if (pos == c.rank) {
            for (const auto& comp : c.irrelevant) {
                bool meets = false;
                for (auto i : idx)
                    for (const auto& nme : comp) meets |= (c.vars[i] == nme);
                if (!meets) return;
            }
            if (c.rank > 0) {
                IntMatrix ds(c.rank, c.rank);
                for (std::size_t k = 0; k < c.rank; ++k)
                    for (std::size_t i = 0; i < c.rank; ++i)
                        ds[i][k] = c.degrees[idx[k]][i];
                if (det(ds) == 0) return;
            }
            std::vector<unsigned long> pt(n, 0);
            for (auto i : idx) pt[i] = 1;
            for (const auto& e : v.equations)
                if (!f.is_zero(evaluate(f, e, pt))) return;
            std::vector<std::string> names;
            for (auto i : idx) names.push_back(c.vars[i]);
            out.push_back(names);
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

QuasiSmoothVerdict quasi_smooth_check(const Subvariety& v, long trials,
                                      std::uint64_t seed) {
    const Fp& f = v.field;
    if (f.p < 101)
        throw std::invalid_argument("quasi_smooth_check: prime too small (< 101)");
    QuasiSmoothVerdict out;
    std::size_t n = v.ambient.nvars();
    std::size_t c = v.codim;
    auto jac = jacobian(f, v.equations);

    auto unstable = [&](const std::vector<unsigned long>& pt) {
        bool all_zero = true;
        for (auto x : pt) all_zero &= (x == 0);
        if (all_zero) return true;
        for (const auto& comp : v.ambient.irrelevant) {
            bool vanish = true;
            for (const auto& nme : comp) vanish &= (pt[*v.ambient.index_of(nme)] == 0);
            if (vanish) return true;
        }
        return false;
    };
    auto on_cone = [&](const std::vector<unsigned long>& pt) {
        for (const auto& e : v.equations)
            if (!f.is_zero(evaluate(f, e, pt))) return false;
        return true;
    };
    auto jac_rank = [&](const std::vector<unsigned long>& pt) {
        std::vector<std::vector<unsigned long>> m;
        for (const auto& row : jac) {
            std::vector<unsigned long> r;
            for (const auto& p : row) r.push_back(evaluate(f, p, pt));
            m.push_back(r);
        }
        unsigned rank = 0;
        std::size_t rows = m.size(), row = 0;
        for (std::size_t col = 0; col < n && row < rows; ++col) {
            std::size_t piv = rows;
            for (std::size_t i = row; i < rows; ++i)
                if (m[i][col]) {
                    piv = i;
                    break;
                }
            if (piv == rows) continue;
            std::swap(m[row], m[piv]);
            auto iv = f.inv(m[row][col]);
            for (auto& x : m[row]) x = f.mul(x, iv);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == row || m[i][col] == 0) continue;
                auto cc = m[i][col];
                for (std::size_t k = 0; k < n; ++k)
                    m[i][k] = f.sub(m[i][k], f.mul(cc, m[row][k]));
            }
            ++rank;
            ++row;
        }
        return rank;
    };
    auto consider = [&](const std::vector<unsigned long>& pt, const char* where) {
        if (unstable(pt) || !on_cone(pt)) return false;
        ++out.points_checked;
        if (jac_rank(pt) != c) {
            out.witness_found = true;
            out.witness = pt;
            out.witness_location = where;
            return true;
        }
        return false;
    };

    Rng rng(seed);
    // deterministic thin-strata scan: coordinate points and 2-strata, which
    // random slices essentially never hit
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<unsigned long> pt(n, 0);
        pt[i] = 1;
        if (consider(pt, "stratum")) return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (unsigned long t : {1ul, 2ul, rng.below(f.p - 1) + 1}) {
                std::vector<unsigned long> pt(n, 0);
                pt[i] = 1;
                pt[j] = t;
                if (consider(pt, "stratum")) return out;
            }

    // random coordinate slices: fix n - c coordinates, solve for the rest
    long max_slices = trials * 50;
    while (out.points_checked < trials && out.slices_used < max_slices) {
        ++out.slices_used;
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t i = 0; i < n; ++i) std::swap(all[i], all[rng.below(n)]);
        std::vector<std::size_t> free_vars(all.begin(), all.begin() + (long)c);
        std::sort(free_vars.begin(), free_vars.end());
        std::vector<long> assign(n, -1);
        for (std::size_t i = 0; i < n; ++i)
            if (std::find(free_vars.begin(), free_vars.end(), i) == free_vars.end())
                assign[i] = (long)rng.below(f.p);
        std::vector<Poly<Fp>> sys;
        for (const auto& e : v.equations) {
            Poly<Fp> p(c);
            for (const auto& [ex, co] : e.terms) {
                unsigned long coef = co;
                bool dead = false;
                Exps e2(c, 0);
                for (std::size_t vv = 0, k = 0; vv < n; ++vv) {
                    if (assign[vv] < 0) {
                        e2[k++] = ex[vv];
                    } else if (ex[vv]) {
                        if (assign[vv] == 0) {
                            dead = true;
                            break;
                        }
                        for (unsigned q = 0; q < ex[vv]; ++q)
                            coef = f.mul(coef, (unsigned long)assign[vv]);
                    }
                }
                if (!dead) add_term(f, p, e2, coef);
            }
            if (!p.is_zero()) sys.push_back(p);
        }
        auto sols = solve_zero_dim(f, sys, c, rng);
        if (!sols) continue;  // degenerate slice
        for (const auto& s : *sols) {
            std::vector<unsigned long> pt(n);
            for (std::size_t vv = 0, k = 0; vv < n; ++vv)
                pt[vv] = assign[vv] < 0 ? s[k++] : (unsigned long)assign[vv];
            if (consider(pt, "sample")) return out;
            if (out.points_checked >= trials) break;
        }
    }
    return out;
}

}  // namespace coxlink
