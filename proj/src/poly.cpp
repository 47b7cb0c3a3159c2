#include "poly.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace coxlink {

namespace {

// a functional strictly positive on the given degree columns; exists exactly
// when the degrees span a strictly convex cone
std::optional<IntVector> positive_functional(const std::vector<IntVector>& degs,
                                             const std::vector<std::size_t>& allowed) {
    if (degs.empty() || allowed.empty()) return IntVector{};
    std::size_t rank = degs[0].size();
    if (rank == 0) return IntVector{};
    if (rank == 1) {
        for (auto v : allowed)
            if (degs[v][0] <= 0) return std::nullopt;
        return IntVector{Int(1)};
    }
    if (rank == 2) {
        // boundary rays of the spanned cone, then an interior dual vector
        auto cross = [](const IntVector& a, const IntVector& b) -> Int {
            return a[0] * b[1] - a[1] * b[0];
        };
        std::size_t lo = allowed[0], hi = allowed[0];
        for (auto v : allowed) {
            if (cross(degs[v], degs[lo]) > 0) lo = v;
            if (cross(degs[hi], degs[v]) > 0) hi = v;
        }
        IntVector n1{-degs[lo][1], degs[lo][0]};   // positive on the hi side
        IntVector n2{degs[hi][1], -degs[hi][0]};   // positive on the lo side
        IntVector phi{n1[0] + n2[0], n1[1] + n2[1]};
        for (auto v : allowed)
            if (dot(phi, degs[v]) <= 0) return std::nullopt;
        return phi;
    }
    // small search for higher rank (used only in tests)
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c) {
                IntVector phi{Int(a), Int(b), Int(c)};
                phi.resize(rank, Int(0));
                bool ok = true;
                for (auto v : allowed) ok &= dot(phi, degs[v]) > 0;
                if (ok) return phi;
            }
    return std::nullopt;
}

}  // namespace

std::vector<Exps> monomials_of_multidegree(const std::vector<IntVector>& var_degrees,
                                           const IntVector& d,
                                           const std::vector<std::size_t>& allowed) {
    std::vector<Exps> out;
    std::size_t n = var_degrees.size();
    auto phi = positive_functional(var_degrees, allowed);
    if (!phi)
        throw std::invalid_argument(
            "monomials_of_multidegree: degrees do not span a strictly convex cone");
    Exps cur(n, 0);
    std::function<void(std::size_t, IntVector, Int)> rec = [&](std::size_t k,
                                                               IntVector rem,
                                                               Int budget) {
        if (budget < 0) return;
        if (k == allowed.size()) {
            bool zero = true;
            for (const auto& x : rem)
                if (x != 0) zero = false;
            if (zero) out.push_back(cur);
            return;
        }
        std::size_t v = allowed[k];
        const IntVector& w = var_degrees[v];
        Int step = dot(*phi, w);  // strictly positive
        long maxe = Int(budget / step).get_si();
        for (long e = 0; e <= maxe; ++e) {
            cur[v] = (unsigned)e;
            IntVector r2 = rem;
            for (std::size_t i = 0; i < w.size(); ++i) r2[i] -= Int(e) * w[i];
            rec(k + 1, r2, budget - Int(e) * step);
        }
        cur[v] = 0;
    };
    rec(0, d, dot(*phi, d));
    return out;
}

bool homogeneous_membership(const Fp& f, const Poly<Fp>& target,
                            const std::vector<Poly<Fp>>& gens,
                            const std::vector<IntVector>& var_degrees) {
    if (target.is_zero()) return true;
    auto drep = multidegree_of(target, var_degrees);
    if (!drep.degree) return false;
    std::vector<std::size_t> all(var_degrees.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    // columns: monomial multiples of the generators in the target's degree
    std::vector<Poly<Fp>> cols;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        auto grep = multidegree_of(g, var_degrees);
        if (!grep.degree) continue;
        IntVector diff(drep.degree->size());
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = (*drep.degree)[i] - (*grep.degree)[i];
        for (const auto& m : monomials_of_multidegree(var_degrees, diff, all)) {
            Poly<Fp> mg(g.nvars);
            for (const auto& [e, c] : g.terms) {
                Exps e2(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) e2[i] = e[i] + m[i];
                mg.terms.emplace(e2, c);
            }
            cols.push_back(std::move(mg));
        }
    }
    // gaussian elimination over the monomial support
    std::map<Exps, std::size_t> row_of;
    auto index_of = [&](const Exps& e) {
        auto it = row_of.find(e);
        if (it != row_of.end()) return it->second;
        std::size_t k = row_of.size();
        row_of.emplace(e, k);
        return k;
    };
    for (const auto& c : cols)
        for (const auto& [e, co] : c.terms) index_of(e);
    for (const auto& [e, co] : target.terms) index_of(e);
    std::size_t rows = row_of.size(), ncols = cols.size();
    std::vector<std::vector<unsigned long>> m(rows,
                                              std::vector<unsigned long>(ncols + 1, 0));
    for (std::size_t j = 0; j < ncols; ++j)
        for (const auto& [e, co] : cols[j].terms) m[row_of.at(e)][j] = co;
    for (const auto& [e, co] : target.terms) m[row_of.at(e)][ncols] = co;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = row; i < rows; ++i)
            if (m[i][col]) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        unsigned long iv = f.inv(m[row][col]);
        for (auto& x : m[row]) x = f.mul(x, iv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            unsigned long cc = m[i][col];
            for (std::size_t k = col; k <= ncols; ++k)
                m[i][k] = f.sub(m[i][k], f.mul(cc, m[row][k]));
        }
        ++row;
    }
    // consistent iff no pivot sits in the rhs column
    for (std::size_t i = row; i < rows; ++i)
        if (m[i][ncols]) return false;
    // also every row with zero lhs must have zero rhs (handled above); rows
    // with pivots are consistent by construction
    return true;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t genform_hash(std::uint64_t seed, const std::string& name, const Exps& e) {
    std::uint64_t h = splitmix(seed ^ splitmix(fnv1a(name)));
    for (std::size_t i = 0; i < e.size(); ++i)
        h = splitmix(h ^ (0x9e3779b97f4a7c15ULL * (i + 1) + e[i]));
    return h;
}

Poly<Fp> gen_generic(const Fp& f, const GenericFormSpec& spec,
                     const std::vector<IntVector>& slot_degrees) {
    std::vector<std::size_t> allowed(spec.slots.size());
    for (std::size_t i = 0; i < allowed.size(); ++i) allowed[i] = i;
    auto monos = monomials_of_multidegree(slot_degrees, spec.multidegree, allowed);
    if (monos.empty())
        throw std::invalid_argument("gen_generic: empty monomial basis for form " +
                                    spec.name);
    Poly<Fp> p(spec.slots.size());
    for (const auto& e : monos) {
        unsigned long c = genform_hash(spec.seed, spec.name, e) % (f.p - 1) + 1;
        p.terms.emplace(e, c);
    }
    return p;
}

// --- parser ---------------------------------------------------------------

namespace {

template <class F>
struct Parser {
    const F& f;
    const std::string& s;
    const VarSet& vars;
    const std::map<std::string, FormBinding<F>>& forms;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    Poly<F> parse_expr() {
        Poly<F> r = parse_term();
        while (true) {
            if (accept('+'))
                r = add(f, r, parse_term());
            else if (accept('-'))
                r = sub(f, r, parse_term());
            else
                return r;
        }
    }

    Poly<F> parse_term() {
        Poly<F> r = parse_factor();
        while (accept('*')) r = mul(f, r, parse_factor());
        return r;
    }

    Poly<F> parse_factor() {
        bool negate = false;
        while (true) {
            if (accept('-'))
                negate = !negate;
            else if (accept('+'))
                ;
            else
                break;
        }
        Poly<F> a = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos;
            unsigned long e = 0;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
                e = e * 10 + (s[pos++] - '0');
            if (pos == start) throw ParseError("expected exponent", pos);
            a = poly_pow(f, a, (unsigned)e);
        }
        return negate ? neg(f, a) : a;
    }

    Poly<F> parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Poly<F> r = parse_expr();
            expect(')');
            return r;
        }
        if (std::isdigit((unsigned char)c)) {
            long long v = 0;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
                v = v * 10 + (s[pos++] - '0');
            return poly_const(f, vars.size(), f.from_long(v));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_' || s[pos] == '\''))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (peek('(')) {
                auto it = forms.find(name);
                if (it == forms.end())
                    throw ParseError("unknown form '" + name + "'", start);
                ++pos;
                std::vector<Poly<F>> args;
                if (!peek(')')) {
                    args.push_back(parse_expr());
                    while (accept(',')) args.push_back(parse_expr());
                }
                expect(')');
                if (args.size() != it->second.slots.size())
                    throw ParseError("form '" + name + "' expects " +
                                         std::to_string(it->second.slots.size()) +
                                         " arguments",
                                     start);
                return substitute(f, it->second.body, args);
            }
            if (auto vi = vars.index_of(name)) return poly_var(f, vars.size(), *vi);
            auto it = forms.find(name);
            if (it != forms.end()) {
                // bare form name: slots must name ambient variables
                std::vector<Poly<F>> args;
                for (const auto& slot : it->second.slots) {
                    auto si = vars.index_of(slot);
                    if (!si)
                        throw ParseError("form '" + name + "' slot '" + slot +
                                             "' is not an ambient variable",
                                         start);
                    args.push_back(poly_var(f, vars.size(), *si));
                }
                return substitute(f, it->second.body, args);
            }
            throw ParseError("unknown variable '" + name + "'", start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
};

}  // namespace

template <class F>
Poly<F> parse(const F& f, const std::string& text, const VarSet& vars,
              const std::map<std::string, FormBinding<F>>& forms) {
    Parser<F> p{f, text, vars, forms};
    Poly<F> r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return r;
}

template Poly<Fp> parse(const Fp&, const std::string&, const VarSet&,
                        const std::map<std::string, FormBinding<Fp>>&);
template Poly<Rationals> parse(const Rationals&, const std::string&, const VarSet&,
                               const std::map<std::string, FormBinding<Rationals>>&);

namespace {

template <class F>
std::string poly_str_impl(const F& f, const Poly<F>& p, const VarSet& vars) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        if (!first) os << " + ";
        first = false;
        os << F::to_string(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            os << "*" << vars.names[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace

std::string poly_str(const Fp& f, const Poly<Fp>& p, const VarSet& vars) {
    return poly_str_impl(f, p, vars);
}
std::string poly_str(const Rationals& f, const Poly<Rationals>& p, const VarSet& vars) {
    return poly_str_impl(f, p, vars);
}

}  // namespace coxlink
