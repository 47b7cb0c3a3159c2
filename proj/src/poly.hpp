#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace coxlink {

// Prime field with runtime modulus. Elements are canonical residues.
struct Fp {
    unsigned long p = 0;
    using Elem = unsigned long;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem mul(Elem a, Elem b) const {
        return (Elem)((unsigned __int128)a * b % p);
    }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("Fp: inverse of zero");
        Elem r = 1, b = a;
        unsigned long e = p - 2;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    Elem from_long(long long x) const {
        long long m = x % (long long)p;
        if (m < 0) m += p;
        return (Elem)m;
    }
    Elem from_int(const Int& x) const {
        Int m = x % Int(p);
        if (m < 0) m += p;
        return m.get_ui();
    }
    static std::string to_string(Elem a) { return std::to_string(a); }
};

struct Rationals {
    using Elem = Rat;
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("Rationals: inverse of zero");
        return 1 / a;
    }
    Elem from_long(long long x) const { return Rat((long)x); }
    Elem from_int(const Int& x) const { return Rat(x); }
    static std::string to_string(const Elem& a) {
        return a.get_num().get_str() +
               (a.get_den() == 1 ? "" : "/" + a.get_den().get_str());
    }
};

using Exps = std::vector<unsigned>;

inline unsigned total_degree(const Exps& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

// Variable names of a polynomial ring; the grading lives with CoxPresentation.
struct VarSet {
    std::vector<std::string> names;
    std::size_t size() const { return names.size(); }
    std::optional<std::size_t> index_of(const std::string& n) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return i;
        return std::nullopt;
    }
};

template <class F>
struct Poly {
    using Elem = typename F::Elem;
    std::size_t nvars = 0;
    std::map<Exps, Elem> terms;  // no zero coefficients stored

    Poly() = default;
    explicit Poly(std::size_t n) : nvars(n) {}
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Poly&) const = default;
};

template <class F>
void add_term(const F& f, Poly<F>& p, const Exps& e, typename F::Elem c) {
    if (f.is_zero(c)) return;
    auto it = p.terms.find(e);
    if (it == p.terms.end()) {
        p.terms.emplace(e, c);
    } else {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second)) p.terms.erase(it);
    }
}

template <class F>
Poly<F> poly_const(const F& f, std::size_t nvars, typename F::Elem c) {
    Poly<F> p(nvars);
    add_term(f, p, Exps(nvars, 0), c);
    return p;
}

template <class F>
Poly<F> poly_var(const F& f, std::size_t nvars, std::size_t i) {
    Poly<F> p(nvars);
    Exps e(nvars, 0);
    e[i] = 1;
    add_term(f, p, e, f.one());
    return p;
}

template <class F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r = a;
    for (const auto& [e, c] : b.terms) add_term(f, r, e, c);
    return r;
}

template <class F>
Poly<F> neg(const F& f, const Poly<F>& a) {
    Poly<F> r(a.nvars);
    for (const auto& [e, c] : a.terms) r.terms.emplace(e, f.neg(c));
    return r;
}

template <class F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r = a;
    for (const auto& [e, c] : b.terms) add_term(f, r, e, f.neg(c));
    return r;
}

template <class F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r(a.nvars);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Exps e(a.nvars);
            for (std::size_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
            add_term(f, r, e, f.mul(ca, cb));
        }
    return r;
}

template <class F>
Poly<F> scale(const F& f, const Poly<F>& a, typename F::Elem c) {
    Poly<F> r(a.nvars);
    if (f.is_zero(c)) return r;
    for (const auto& [e, cc] : a.terms) {
        auto v = f.mul(cc, c);
        if (!f.is_zero(v)) r.terms.emplace(e, v);
    }
    return r;
}

template <class F>
Poly<F> poly_pow(const F& f, const Poly<F>& a, unsigned n) {
    Poly<F> r = poly_const(f, a.nvars, f.one());
    Poly<F> b = a;
    while (n) {
        if (n & 1) r = mul(f, r, b);
        n >>= 1;
        if (n) b = mul(f, b, b);
    }
    return r;
}

// Simultaneous substitution: images[i] replaces variable i (in a target ring
// of images[i].nvars variables). Fully expanded and collected.
template <class F>
Poly<F> substitute(const F& f, const Poly<F>& p, const std::vector<Poly<F>>& images) {
    if (images.size() != p.nvars)
        throw std::invalid_argument("substitute: image count mismatch");
    std::size_t tn = images.empty() ? 0 : images[0].nvars;
    for (const auto& im : images)
        if (im.nvars != tn) throw std::invalid_argument("substitute: ring mismatch");
    Poly<F> r(tn);
    std::vector<std::map<unsigned, Poly<F>>> pow_cache(p.nvars);
    auto power_of = [&](std::size_t i, unsigned e) -> const Poly<F>& {
        auto it = pow_cache[i].find(e);
        if (it != pow_cache[i].end()) return it->second;
        return pow_cache[i].emplace(e, poly_pow(f, images[i], e)).first->second;
    };
    for (const auto& [e, c] : p.terms) {
        Poly<F> t = poly_const(f, tn, c);
        for (std::size_t i = 0; i < p.nvars; ++i)
            if (e[i]) t = mul(f, t, power_of(i, e[i]));
        r = add(f, r, t);
    }
    return r;
}

template <class F>
Poly<F> derivative(const F& f, const Poly<F>& p, std::size_t var) {
    Poly<F> r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        if (e[var] == 0) continue;
        Exps e2 = e;
        e2[var] -= 1;
        add_term(f, r, e2, f.mul(c, f.from_long((long long)e[var])));
    }
    return r;
}

template <class F>
std::vector<std::vector<Poly<F>>> jacobian(const F& f, const std::vector<Poly<F>>& ps) {
    std::vector<std::vector<Poly<F>>> j;
    for (const auto& p : ps) {
        std::vector<Poly<F>> row;
        for (std::size_t v = 0; v < p.nvars; ++v) row.push_back(derivative(f, p, v));
        j.push_back(std::move(row));
    }
    return j;
}

template <class F>
typename F::Elem evaluate(const F& f, const Poly<F>& p,
                          const std::vector<typename F::Elem>& pt) {
    auto r = f.zero();
    for (const auto& [e, c] : p.terms) {
        auto t = c;
        for (std::size_t i = 0; i < p.nvars; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t = f.mul(t, pt[i]);
        r = f.add(r, t);
    }
    return r;
}

// Drop terms of total degree >= cutoff (local germ computations).
template <class F>
Poly<F> truncate(const Poly<F>& p, unsigned cutoff) {
    Poly<F> r(p.nvars);
    for (const auto& [e, c] : p.terms)
        if (total_degree(e) < cutoff) r.terms.emplace(e, c);
    return r;
}

// Multidegree of a homogeneous polynomial under per-variable degree columns.
struct MultidegreeReport {
    std::optional<IntVector> degree;          // set when homogeneous
    std::optional<std::pair<Exps, Exps>> offenders;  // two terms that disagree
};

template <class F>
MultidegreeReport multidegree_of(const Poly<F>& p,
                                 const std::vector<IntVector>& var_degrees) {
    MultidegreeReport rep;
    if (p.terms.empty()) {
        rep.degree = IntVector(var_degrees.empty() ? 0 : var_degrees[0].size(), Int(0));
        return rep;
    }
    std::size_t rank = var_degrees.empty() ? 0 : var_degrees[0].size();
    bool first = true;
    IntVector d0;
    Exps e0;
    for (const auto& [e, c] : p.terms) {
        IntVector d(rank, Int(0));
        for (std::size_t i = 0; i < p.nvars; ++i)
            for (std::size_t k = 0; k < rank; ++k)
                d[k] += Int((long)e[i]) * var_degrees[i][k];
        if (first) {
            d0 = d;
            e0 = e;
            first = false;
        } else if (d != d0) {
            rep.offenders = std::make_pair(e0, e);
            return rep;
        }
    }
    rep.degree = d0;
    return rep;
}

// All exponent vectors supported on `allowed` whose grading-weighted degree is
// exactly d. Variable degrees are columns of length rank(d); they must span a
// strictly convex cone (otherwise the fibre is infinite).
std::vector<Exps> monomials_of_multidegree(const std::vector<IntVector>& var_degrees,
                                           const IntVector& d,
                                           const std::vector<std::size_t>& allowed);

// Exact membership of a homogeneous polynomial in the ideal of homogeneous
// generators, solved degreewise by linear algebra (no Groebner bases).
bool homogeneous_membership(const Fp& f, const Poly<Fp>& target,
                            const std::vector<Poly<Fp>>& gens,
                            const std::vector<IntVector>& var_degrees);

// Deterministic coefficient generator ("genform-v1"): keyed by seed, form
// name and slot exponent vector, so a form's coefficients do not depend on
// which ambient ring it is instantiated in.
constexpr const char* kGenformVersion = "genform-v1";
std::uint64_t genform_hash(std::uint64_t seed, const std::string& name, const Exps& e);

struct GenericFormSpec {
    std::string name;
    IntVector multidegree;            // in the grading of the slot variables
    std::vector<std::string> slots;   // formal argument names
    std::uint64_t seed = 0;
};

// Dense generic form over F_p in slot space: every monomial of the given
// multidegree gets a nonzero seeded coefficient.
Poly<Fp> gen_generic(const Fp& f, const GenericFormSpec& spec,
                     const std::vector<IntVector>& slot_degrees);

// --- expression parser ---------------------------------------------------

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

template <class F>
struct FormBinding {
    std::vector<std::string> slots;
    Poly<F> body;  // polynomial in slot space
};

// Grammar: expr = term (('+'|'-') term)*, term = factor ('*' factor)*,
// factor = ('-')* atom ('^' uint)?, atom = int | var | form | form(args) | (expr).
// '^' binds tighter than '*', which binds tighter than '+'/'-'.
template <class F>
Poly<F> parse(const F& f, const std::string& text, const VarSet& vars,
              const std::map<std::string, FormBinding<F>>& forms = {});

std::string poly_str(const Fp& f, const Poly<Fp>& p, const VarSet& vars);
std::string poly_str(const Rationals& f, const Poly<Rationals>& p, const VarSet& vars);

// Equality up to a nonzero scalar (used when comparing strict transforms).
template <class F>
bool proportional(const F& f, const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin(), ib = b.terms.begin();
    auto ratio = f.mul(ia->second, f.inv(ib->second));
    for (; ia != a.terms.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!f.is_zero(f.sub(ia->second, f.mul(ratio, ib->second)))) return false;
    }
    return true;
}

extern template Poly<Fp> parse(const Fp&, const std::string&, const VarSet&,
                               const std::map<std::string, FormBinding<Fp>>&);
extern template Poly<Rationals> parse(const Rationals&, const std::string&,
                                      const VarSet&,
                                      const std::map<std::string, FormBinding<Rationals>>&);

}  // namespace coxlink
