#include "groebner.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace coxlink {

bool exp_greater(TermOrder o, const Exps& a, const Exps& b) {
    if (o == TermOrder::lex) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

namespace {

const Exps& leading_exp(TermOrder o, const Poly<Fp>& p) {
    const Exps* best = nullptr;
    for (const auto& [e, c] : p.terms)
        if (!best || exp_greater(o, e, *best)) best = &e;
    return *best;
}

bool divides(const Exps& a, const Exps& b) {  // a | b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exps lcm_exp(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Poly<Fp> make_monic(const Fp& f, Poly<Fp> p, TermOrder o) {
    if (p.is_zero()) return p;
    auto le = leading_exp(o, p);
    auto inv = f.inv(p.terms.at(le));
    for (auto& [e, c] : p.terms) c = f.mul(c, inv);
    return p;
}

}  // namespace

Poly<Fp> normal_form(const Fp& f, const Poly<Fp>& p, const std::vector<Poly<Fp>>& basis,
                     TermOrder o) {
    Poly<Fp> rem(p.nvars);
    Poly<Fp> work = p;
    std::vector<std::pair<Exps, unsigned long>> lts;
    for (const auto& g : basis) lts.emplace_back(leading_exp(o, g), 0);
    while (!work.is_zero()) {
        const Exps& le = leading_exp(o, work);
        unsigned long lc = work.terms.at(le);
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!divides(lts[i].first, le)) continue;
            const Poly<Fp>& g = basis[i];
            unsigned long glc = g.terms.at(lts[i].first);
            unsigned long factor = f.mul(lc, f.inv(glc));
            Exps shift(le.size());
            for (std::size_t k = 0; k < le.size(); ++k)
                shift[k] = le[k] - lts[i].first[k];
            Poly<Fp> sub_poly(work.nvars);
            for (const auto& [e, c] : g.terms) {
                Exps e2(e.size());
                for (std::size_t k = 0; k < e.size(); ++k) e2[k] = e[k] + shift[k];
                sub_poly.terms.emplace(e2, f.mul(c, factor));
            }
            work = sub(f, work, sub_poly);
            reduced = true;
            break;
        }
        if (!reduced) {
            add_term(f, rem, le, lc);
            work.terms.erase(le);
        }
    }
    return rem;
}

std::vector<Poly<Fp>> groebner(const Fp& f, std::vector<Poly<Fp>> gens, TermOrder o) {
    std::vector<Poly<Fp>> g;
    for (auto& p : gens)
        if (!p.is_zero()) g.push_back(make_monic(f, p, o));
    if (g.empty()) return g;
    std::size_t nv = g[0].nvars;

    struct Pair {
        std::size_t i, j;
        Exps lcm;
        unsigned deg;
    };
    auto make_pair = [&](std::size_t i, std::size_t j) {
        Pair pr;
        pr.i = i;
        pr.j = j;
        pr.lcm = lcm_exp(leading_exp(o, g[i]), leading_exp(o, g[j]));
        pr.deg = total_degree(pr.lcm);
        return pr;
    };
    std::deque<Pair> pairs;
    auto push_pairs_with = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) pairs.push_back(make_pair(i, k));
    };
    for (std::size_t k = 1; k < g.size(); ++k) push_pairs_with(k);

    auto coprime = [&](const Pair& pr) {
        const Exps& a = leading_exp(o, g[pr.i]);
        const Exps& b = leading_exp(o, g[pr.j]);
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] && b[k]) return false;
        return true;
    };
    auto chain_redundant = [&](const Pair& pr) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!divides(leading_exp(o, g[k]), pr.lcm)) continue;
            // both subsidiary pairs already handled if their lcm differs
            Exps lik = lcm_exp(leading_exp(o, g[pr.i]), leading_exp(o, g[k]));
            Exps ljk = lcm_exp(leading_exp(o, g[pr.j]), leading_exp(o, g[k]));
            if (lik != pr.lcm && ljk != pr.lcm) return true;
        }
        return false;
    };

    while (!pairs.empty()) {
        // normal selection: minimal lcm degree, ties by index
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            if (pairs[k].deg < pairs[best].deg ||
                (pairs[k].deg == pairs[best].deg &&
                 std::tie(pairs[k].i, pairs[k].j) < std::tie(pairs[best].i, pairs[best].j)))
                best = k;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + (long)best);
        if (coprime(pr) || chain_redundant(pr)) continue;
        // s-polynomial
        const Exps& la = leading_exp(o, g[pr.i]);
        const Exps& lb = leading_exp(o, g[pr.j]);
        Poly<Fp> sa(nv), sb(nv);
        for (const auto& [e, c] : g[pr.i].terms) {
            Exps e2(nv);
            for (std::size_t k = 0; k < nv; ++k) e2[k] = e[k] + pr.lcm[k] - la[k];
            sa.terms.emplace(e2, c);
        }
        for (const auto& [e, c] : g[pr.j].terms) {
            Exps e2(nv);
            for (std::size_t k = 0; k < nv; ++k) e2[k] = e[k] + pr.lcm[k] - lb[k];
            sb.terms.emplace(e2, c);
        }
        Poly<Fp> s = sub(f, sa, sb);
        Poly<Fp> r = normal_form(f, s, g, o);
        if (!r.is_zero()) {
            g.push_back(make_monic(f, r, o));
            push_pairs_with(g.size() - 1);
        }
    }

    // minimalize: drop elements whose LT is divisible by another LT
    std::vector<Poly<Fp>> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < g.size() && !drop; ++j) {
            if (i == j) continue;
            if (divides(leading_exp(o, g[j]), leading_exp(o, g[i]))) {
                if (leading_exp(o, g[j]) != leading_exp(o, g[i]) || j < i) drop = true;
            }
        }
        if (!drop) minimal.push_back(g[i]);
    }
    // interreduce to the unique reduced basis
    std::vector<Poly<Fp>> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly<Fp>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly<Fp> r = normal_form(f, minimal[i], others, o);
        if (!r.is_zero()) reduced.push_back(make_monic(f, r, o));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
        return exp_greater(o, leading_exp(o, a), leading_exp(o, b));
    });
    return reduced;
}

std::optional<long> quotient_dimension(const std::vector<Poly<Fp>>& basis,
                                       std::size_t nvars) {
    for (const auto& g : basis)
        if (!g.is_zero() && g.terms.size() == 1 &&
            total_degree(g.terms.begin()->first) == 0)
            return 0;  // contains a unit
    std::vector<Exps> lts;
    TermOrder o = TermOrder::degrevlex;
    for (const auto& g : basis)
        if (!g.is_zero()) lts.push_back(leading_exp(o, g));
    // the order does not matter for counting: lts are whatever basis order was
    // used; callers pass a matching reduced basis
    std::vector<unsigned> bound(nvars, 0);
    for (std::size_t v = 0; v < nvars; ++v) {
        bool pure = false;
        for (const auto& e : lts) {
            bool only_v = e[v] > 0;
            for (std::size_t k = 0; k < nvars && only_v; ++k)
                if (k != v && e[k] > 0) only_v = false;
            if (only_v && (!pure || e[v] < bound[v])) {
                pure = true;
                bound[v] = e[v];
            }
        }
        if (!pure) return std::nullopt;
    }
    // count exponent boxes not above any leading exponent
    long count = 0;
    Exps cur(nvars, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == nvars) {
            for (const auto& e : lts)
                if (divides(e, cur)) return;
            ++count;
            return;
        }
        for (unsigned i = 0; i < bound[v]; ++i) {
            cur[v] = i;
            rec(v + 1);
        }
        cur[v] = 0;
    };
    rec(0);
    return count;
}

namespace {

// ideal with given substitutions applied: value >= 0 substitutes, -1 keeps
std::vector<Poly<Fp>> specialize(const Fp& f, const std::vector<Poly<Fp>>& gens,
                                 const std::vector<long>& assign, std::size_t& nkept,
                                 std::vector<std::size_t>& kept_vars) {
    std::size_t nv = gens.empty() ? 0 : gens[0].nvars;
    kept_vars.clear();
    for (std::size_t v = 0; v < nv; ++v)
        if (assign[v] < 0) kept_vars.push_back(v);
    nkept = kept_vars.size();
    std::vector<Poly<Fp>> out;
    for (const auto& g : gens) {
        Poly<Fp> p(nkept);
        for (const auto& [e, c] : g.terms) {
            unsigned long coef = c;
            bool dead = false;
            Exps e2(nkept, 0);
            std::size_t ki = 0;
            for (std::size_t v = 0; v < nv; ++v) {
                if (assign[v] < 0) {
                    e2[ki++] = e[v];
                } else if (e[v] > 0) {
                    if (assign[v] == 0) {
                        dead = true;
                        break;
                    }
                    for (unsigned k = 0; k < e[v]; ++k)
                        coef = f.mul(coef, (unsigned long)assign[v]);
                }
            }
            if (!dead) add_term(f, p, e2, coef);
        }
        if (!p.is_zero()) out.push_back(p);
    }
    return out;
}

long count_points_weighted(const Fp& f, const std::vector<Poly<Fp>>& gens,
                           const std::vector<Int>& weights) {
    std::size_t nv = weights.size();
    if (nv == 0) return 0;
    Int g = 0;
    for (const auto& w : weights) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.get_mpz_t());
    std::vector<Int> w(nv);
    for (std::size_t i = 0; i < nv; ++i) w[i] = weights[i] / g;

    if (nv == 1) {
        // single coordinate point
        std::vector<long> assign(1, 1);
        std::size_t nk;
        std::vector<std::size_t> kept;
        auto sp = specialize(f, gens, assign, nk, kept);
        return sp.empty() ? 1 : 0;
    }

    long total = 0;
    std::vector<std::size_t> unit_vars;
    for (std::size_t v = 0; v < nv; ++v)
        if (w[v] == 1) unit_vars.push_back(v);
    if (unit_vars.empty())
        throw std::runtime_error(
            "count_points: no weight-one chart available on stratum");
    // Dehomogenize along a fixed generic hyperplane in the weight-one
    // variables. The quotient dimension is then the scheme length of the
    // locus away from the heavy stratum, independent of chart order; a second
    // functional guards against the hyperplane meeting the locus.
    auto length_along = [&](unsigned long salt) -> long {
        std::size_t solve = unit_vars[0];
        std::vector<Poly<Fp>> images;
        // solve * c0 = 1 - sum c_i v_i, substituted into every generator
        unsigned long c0 = (salt + 1) % f.p;
        Poly<Fp> expr = poly_const(f, nv, f.inv(c0));
        for (std::size_t j = 1; j < unit_vars.size(); ++j) {
            unsigned long cj =
                (unsigned long)((unsigned __int128)(salt + 1) * (j + 2) % f.p);
            auto vij = scale(f, poly_var(f, nv, unit_vars[j]),
                             f.neg(f.mul(cj, f.inv(c0))));
            expr = add(f, expr, vij);
        }
        for (std::size_t i = 0; i < nv; ++i)
            images.push_back(i == solve ? expr : poly_var(f, nv, i));
        std::vector<Poly<Fp>> sys;
        for (const auto& g : gens) {
            auto s = substitute(f, g, images);
            if (!s.is_zero()) sys.push_back(s);
        }
        // the solved variable no longer occurs; drop its slot
        std::vector<Poly<Fp>> small;
        for (const auto& g : sys) {
            Poly<Fp> p(nv - 1);
            for (const auto& [e, c] : g.terms) {
                if (e[solve]) throw std::logic_error("count_points: leftover");
                Exps e2;
                for (std::size_t i = 0; i < nv; ++i)
                    if (i != solve) e2.push_back(e[i]);
                add_term(f, p, e2, c);
            }
            small.push_back(p);
        }
        auto basis = groebner(f, small, TermOrder::degrevlex);
        auto dim = quotient_dimension(basis, nv - 1);
        if (!dim) throw std::runtime_error("count_points: positive-dimensional locus");
        return *dim;
    };
    long len = length_along(0);
    if (length_along(7) != len)
        throw std::runtime_error("count_points: hyperplane choice is not generic");
    total += len;
    // stratum where all weight-1 variables vanish
    std::vector<std::size_t> heavy;
    for (std::size_t v = 0; v < nv; ++v)
        if (w[v] != 1) heavy.push_back(v);
    if (!heavy.empty()) {
        std::vector<long> assign(nv, -1);
        for (std::size_t v : unit_vars) assign[v] = 0;
        std::size_t nk;
        std::vector<std::size_t> kept;
        auto sp = specialize(f, gens, assign, nk, kept);
        std::vector<Int> hw;
        for (std::size_t v : heavy) hw.push_back(w[v]);
        if (sp.empty() && heavy.size() > 1)
            throw std::runtime_error("count_points: positive-dimensional locus");
        total += count_points_weighted(f, sp, hw);
    }
    return total;
}

}  // namespace

long count_points(const PolyIdeal& ideal) {
    if (ideal.ambient.rank != 1)
        throw std::invalid_argument("count_points: rank-1 projective ambient required");
    std::vector<Int> weights;
    for (const auto& d : ideal.ambient.degrees) weights.push_back(d[0]);
    return count_points_weighted(ideal.field, ideal.generators, weights);
}

bool vanishes_on_locus(const PolyIdeal& ideal, const Poly<Fp>& f) {
    auto basis = groebner(ideal.field, ideal.generators, TermOrder::degrevlex);
    if (normal_form(ideal.field, f, basis, TermOrder::degrevlex).is_zero()) return true;
    long base = count_points(ideal);
    PolyIdeal bigger = ideal;
    bigger.generators.push_back(f);
    return count_points(bigger) == base;
}

namespace {

using UniPoly = std::vector<unsigned long>;  // coefficient by degree

void uni_trim(UniPoly& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

UniPoly uni_monic(const Fp& f, UniPoly a) {
    uni_trim(a);
    if (a.empty()) return a;
    unsigned long il = f.inv(a.back());
    for (auto& x : a) x = f.mul(x, il);
    return a;
}

// a mod b (b nonzero); also yields the quotient when wanted
UniPoly uni_divmod(const Fp& f, UniPoly a, const UniPoly& b, UniPoly* quot = nullptr) {
    UniPoly bm = uni_monic(f, b);
    unsigned long blead_inv = f.inv(b.back());
    if (quot) quot->assign(a.size() > bm.size() ? a.size() - bm.size() + 1 : 1, 0);
    uni_trim(a);
    while (a.size() >= bm.size() && !a.empty()) {
        unsigned long c = a.back();
        std::size_t shift = a.size() - bm.size();
        if (c) {
            if (quot) (*quot)[shift] = f.mul(c, blead_inv);
            for (std::size_t i = 0; i < bm.size(); ++i)
                a[shift + i] = f.sub(a[shift + i], f.mul(c, bm[i]));
        }
        a.pop_back();
        uni_trim(a);
    }
    return a;
}

UniPoly uni_gcd(const Fp& f, UniPoly a, UniPoly b) {
    uni_trim(a);
    uni_trim(b);
    while (!b.empty()) {
        UniPoly r = uni_divmod(f, a, b);
        a = b;
        b = r;
    }
    return uni_monic(f, a);
}

UniPoly uni_mulmod(const Fp& f, const UniPoly& a, const UniPoly& b, const UniPoly& m) {
    UniPoly r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j]) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    return uni_divmod(f, r, m);
}

UniPoly uni_powmod(const Fp& f, UniPoly base, unsigned long e, const UniPoly& m) {
    UniPoly r{1};
    base = uni_divmod(f, base, m);
    while (e) {
        if (e & 1) r = uni_mulmod(f, r, base, m);
        e >>= 1;
        if (e) base = uni_mulmod(f, base, base, m);
    }
    return r;
}

}  // namespace

std::vector<unsigned long> univariate_roots(const Fp& f, UniPoly coeffs, Rng& rng) {
    std::vector<unsigned long> out;
    uni_trim(coeffs);
    if (coeffs.size() <= 1) return out;  // constants (incl. zero handled by callers)
    // gcd with x^p - x isolates the distinct roots in F_p
    UniPoly xp = uni_powmod(f, UniPoly{0, 1}, f.p, coeffs);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = f.sub(xp[1], 1);
    uni_trim(xp);
    UniPoly g = xp.empty() ? uni_monic(f, coeffs) : uni_gcd(f, coeffs, xp);
    std::function<void(UniPoly)> split = [&](UniPoly h) {
        uni_trim(h);
        if (h.size() <= 1) return;
        if (h.size() == 2) {
            out.push_back(f.mul(f.neg(h[0]), f.inv(h[1])));
            return;
        }
        for (int tries = 0; tries < 256; ++tries) {
            unsigned long a = rng.below(f.p);
            UniPoly w = uni_powmod(f, UniPoly{a, 1}, (f.p - 1) / 2, h);
            if (w.empty()) w = UniPoly{0};
            w[0] = f.sub(w[0], 1);
            uni_trim(w);
            if (w.empty()) continue;
            UniPoly d = uni_gcd(f, h, w);
            if (d.size() <= 1 || d.size() == h.size()) continue;
            UniPoly q;
            uni_divmod(f, h, d, &q);
            uni_trim(q);
            split(d);
            split(q);
            return;
        }
        throw std::runtime_error("univariate_roots: splitting failed");
    };
    split(g);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<std::vector<unsigned long>>> solve_zero_dim(
    const Fp& f, const std::vector<Poly<Fp>>& gens, std::size_t nvars, Rng& rng) {
    if (nvars == 0) {
        for (const auto& g : gens)
            if (!g.is_zero()) return std::vector<std::vector<unsigned long>>{};
        return std::vector<std::vector<unsigned long>>{{}};
    }
    auto basis = groebner(f, gens, TermOrder::degrevlex);
    auto dim = quotient_dimension(basis, nvars);
    if (!dim) return std::nullopt;  // not zero-dimensional
    if (*dim == 0) return std::vector<std::vector<unsigned long>>{};
    // standard monomial basis of the quotient
    std::vector<Exps> lts;
    for (const auto& g : basis) {
        const Exps* best = nullptr;
        for (const auto& [e, c] : g.terms)
            if (!best || exp_greater(TermOrder::degrevlex, e, *best)) best = &e;
        lts.push_back(*best);
    }
    auto reduced_by_lts = [&](const Exps& e) {
        for (const auto& l : lts) {
            bool div = true;
            for (std::size_t i = 0; i < nvars; ++i) div &= l[i] <= e[i];
            if (div) return false;
        }
        return true;
    };
    std::vector<Exps> std_basis;
    std::map<Exps, std::size_t> std_index;
    {
        std::vector<unsigned> bound(nvars, 0);
        for (std::size_t v = 0; v < nvars; ++v)
            for (const auto& l : lts) {
                bool pure = l[v] > 0;
                for (std::size_t k = 0; k < nvars && pure; ++k)
                    if (k != v && l[k]) pure = false;
                if (pure && (bound[v] == 0 || l[v] < bound[v])) bound[v] = l[v];
            }
        Exps cur(nvars, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t v) {
            if (v == nvars) {
                if (reduced_by_lts(cur)) {
                    std_index.emplace(cur, std_basis.size());
                    std_basis.push_back(cur);
                }
                return;
            }
            for (unsigned i = 0; i < bound[v]; ++i) {
                cur[v] = i;
                rec(v + 1);
            }
            cur[v] = 0;
        };
        rec(0);
    }
    std::size_t D = std_basis.size();
    // multiplication matrix of the last variable on the quotient
    std::vector<std::vector<unsigned long>> M(D, std::vector<unsigned long>(D, 0));
    for (std::size_t j = 0; j < D; ++j) {
        Exps e = std_basis[j];
        e[nvars - 1] += 1;
        Poly<Fp> mono(nvars);
        mono.terms.emplace(e, 1ul);
        Poly<Fp> nf = normal_form(f, mono, basis, TermOrder::degrevlex);
        for (const auto& [ex, co] : nf.terms) M[std_index.at(ex)][j] = co;
    }
    // characteristic polynomial by Hessenberg reduction
    std::vector<unsigned long> charpoly;
    {
        auto H = M;
        for (std::size_t k = 1; k + 1 < D; ++k) {
            std::size_t piv = k;
            while (piv < D && H[piv][k - 1] == 0) ++piv;
            if (piv == D) continue;
            if (piv != k) {
                std::swap(H[piv], H[k]);
                for (std::size_t i = 0; i < D; ++i) std::swap(H[i][piv], H[i][k]);
            }
            unsigned long inv = f.inv(H[k][k - 1]);
            for (std::size_t i = k + 1; i < D; ++i) {
                if (H[i][k - 1] == 0) continue;
                unsigned long t = f.mul(H[i][k - 1], inv);
                for (std::size_t jj = 0; jj < D; ++jj)
                    H[i][jj] = f.sub(H[i][jj], f.mul(t, H[k][jj]));
                for (std::size_t jj = 0; jj < D; ++jj)
                    H[jj][k] = f.add(H[jj][k], f.mul(t, H[jj][i]));
            }
        }
        // p_k(x) = charpoly of leading k x k block of the Hessenberg form
        std::vector<std::vector<unsigned long>> p(D + 1);
        p[0] = {1};
        for (std::size_t k = 1; k <= D; ++k) {
            // p_k = (x - H[k-1][k-1]) p_{k-1} - sum_m (prod of subdiagonals) H[m][k-1] p_m
            std::vector<unsigned long> t(p[k - 1].size() + 1, 0);
            for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
                t[i + 1] = f.add(t[i + 1], p[k - 1][i]);
                t[i] = f.sub(t[i], f.mul(H[k - 1][k - 1], p[k - 1][i]));
            }
            unsigned long run = 1;
            for (std::size_t m = k - 1; m-- > 0;) {
                run = f.mul(run, H[m + 1][m]);
                if (run == 0) break;
                unsigned long c = f.mul(run, H[m][k - 1]);
                if (c == 0) continue;
                for (std::size_t i = 0; i < p[m].size(); ++i)
                    t[i] = f.sub(t[i], f.mul(c, p[m][i]));
            }
            p[k] = t;
        }
        charpoly = p[D];
    }
    auto roots = univariate_roots(f, charpoly, rng);
    std::vector<std::vector<unsigned long>> out;
    for (unsigned long r : roots) {
        std::vector<Poly<Fp>> sub_gens;
        for (const auto& g : basis) {
            Poly<Fp> p(nvars - 1);
            for (const auto& [e, c] : g.terms) {
                unsigned long coef = c;
                for (unsigned k = 0; k < e[nvars - 1]; ++k) coef = f.mul(coef, r);
                Exps e2(e.begin(), e.end() - 1);
                add_term(f, p, e2, coef);
            }
            if (!p.is_zero()) sub_gens.push_back(p);
        }
        auto rest = solve_zero_dim(f, sub_gens, nvars - 1, rng);
        if (!rest) return std::nullopt;
        for (auto pt : *rest) {
            pt.push_back(r);
            out.push_back(pt);
        }
    }
    return out;
}

}  // namespace coxlink
