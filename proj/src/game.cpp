#include "game.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <sstream>

namespace coxlink {

namespace {

Int cross2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

// primitive functional vanishing on `ray`, positive on `positive_side`
IntVector wall_normal(const IntVector& ray, const IntVector& positive_side) {
    IntVector n{-ray[1], ray[0]};
    n = primitive(n);
    if (dot(n, positive_side) < 0)
        for (auto& x : n) x = -x;
    return n;
}

std::string monomial_str(const std::string& var, const std::string& d, unsigned k) {
    if (k == 0) return var;
    std::string s = d;
    if (k > 1) s += "^" + std::to_string(k);
    return s + "*" + var;
}

}  // namespace

BlowupResult blow_up(const Subvariety& v, const BlowupSpec& spec) {
    const Fp& f = v.field;
    const auto& amb = v.ambient;
    if (spec.centre.size() != amb.rank)
        throw std::invalid_argument("blow_up: centre must name rank-many variables");
    if (amb.index_of(spec.exceptional))
        throw std::invalid_argument("blow_up: exceptional name already in use");

    BlowupResult out;
    out.centre_type = coordinate_point_type(v, spec.centre);
    if (out.centre_type.kind != SingKind::quotient || !out.centre_type.quotient)
        throw std::invalid_argument("blow_up: centre is not a cyclic quotient point (" +
                                    out.centre_type.kind_str() + ")");
    unsigned long r = out.centre_type.quotient->r;
    if (spec.kawamata) {
        auto [kr, ka] = *spec.kawamata;
        if (kr != r)
            throw std::invalid_argument("blow_up: kawamata index " +
                                        std::to_string(kr) + " != centre index " +
                                        std::to_string(r));
        std::vector<unsigned long> w{ka % kr, (kr - ka) % kr, 1 % kr};
        std::sort(w.begin(), w.end());
        bool match = false;
        for (unsigned long u = 1; u < kr && !match; ++u) {
            if (std::gcd(u, kr) != 1) continue;
            std::vector<unsigned long> cand;
            for (auto x : out.centre_type.quotient->weights)
                cand.push_back((unsigned long)((unsigned __int128)x * u % kr));
            std::sort(cand.begin(), cand.end());
            match = (cand == w);
        }
        if (!match)
            throw std::invalid_argument(
                "blow_up: centre type " + out.centre_type.quotient->str() +
                " does not match the declared 1/r(a, r-a, 1)");
    }

    LocalChart ch = local_chart(v, spec.centre);
    std::vector<std::size_t> centre_idx;
    for (const auto& n : spec.centre) centre_idx.push_back(*amb.index_of(n));

    // substitution exponents: centre 0, non-tangent = residue, tangent inferred
    const long BIG = LLONG_MAX / 8;
    std::vector<long> s(amb.nvars(), 0);
    std::vector<bool> is_tangent(amb.nvars(), false), is_centre(amb.nvars(), false);
    for (auto i : centre_idx) is_centre[i] = true;
    for (const auto& n : out.centre_type.tangents) is_tangent[*amb.index_of(n)] = true;
    for (std::size_t k = 0; k < ch.local_vars.size(); ++k) {
        std::size_t i = ch.local_vars[k];
        if (is_tangent[i]) {
            s[i] = BIG;
        } else {
            if (r > 1 && ch.residues[k] == 0)
                throw std::invalid_argument("blow_up: non-tangent variable " +
                                            amb.vars[i] + " has residue 0");
            s[i] = r == 1 ? 1 : (long)ch.residues[k];
        }
    }

    auto term_tau = [&](const Exps& e) {
        long t = 0;
        for (std::size_t i = 0; i < amb.nvars(); ++i)
            if (e[i]) {
                if (s[i] >= BIG) return BIG;
                t += (long)e[i] * s[i];
            }
        return t;
    };
    auto is_tangent_monomial = [&](const Exps& e, std::size_t var) {
        if (e[var] != 1) return false;
        for (std::size_t i = 0; i < amb.nvars(); ++i)
            if (i != var && e[i] && !is_centre[i]) return false;
        return true;
    };
    // fixpoint of the greedy caps
    for (int round = 0; round < 64; ++round) {
        bool changed = false;
        for (std::size_t tv = 0; tv < amb.nvars(); ++tv) {
            if (!is_tangent[tv]) continue;
            long cap = BIG;
            for (const auto& e : v.equations) {
                bool witness = false;
                long other_min = BIG;
                for (const auto& [ex, co] : e.terms) {
                    if (is_tangent_monomial(ex, tv)) {
                        witness = true;
                    } else {
                        other_min = std::min(other_min, term_tau(ex));
                    }
                }
                if (witness) cap = std::min(cap, other_min);
            }
            if (cap < s[tv]) {
                s[tv] = cap;
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
        if (is_tangent[i] && (s[i] >= BIG || s[i] <= 0))
            throw std::runtime_error("blow_up: weight inference failed for " +
                                     amb.vars[i]);
    }

    // variable order of the new presentation
    std::vector<std::size_t> order;
    if (amb.rank == 1) {
        // exceptional; centre; non-tangent; tangent by descending weight
        for (auto i : centre_idx) order.push_back(i);
        for (std::size_t i = 0; i < amb.nvars(); ++i)
            if (!is_centre[i] && !is_tangent[i]) order.push_back(i);
        std::vector<std::size_t> tg;
        for (std::size_t i = 0; i < amb.nvars(); ++i)
            if (is_tangent[i]) tg.push_back(i);
        std::stable_sort(tg.begin(), tg.end(),
                         [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
        for (auto i : tg) order.push_back(i);
    } else {
        for (std::size_t i = 0; i < amb.nvars(); ++i) order.push_back(i);
    }

    CoxPresentation pres;
    pres.rank = amb.rank + 1;
    auto add_var = [&](const std::string& name, IntVector old_part, long new_row) {
        old_part.push_back(Int(new_row));
        pres.vars.push_back(name);
        pres.degrees.push_back(old_part);
    };
    if (amb.rank == 1) add_var(spec.exceptional, IntVector{Int(0)}, -(long)r);
    for (auto i : order)
        add_var(amb.vars[i], amb.degrees[i], is_centre[i] ? 0 : s[i]);
    if (amb.rank != 1)
        add_var(spec.exceptional, IntVector(amb.rank, Int(0)), -(long)r);

    for (std::size_t j = 0; j < pres.nvars(); ++j)
        out.stacky_row.emplace_back(pres.vars[j],
                                    (long)pres.degrees[j].back().get_si());

    // irrelevant ideal of the blown-up model
    std::vector<std::vector<std::string>> comps = amb.irrelevant;
    for (const auto& c : spec.centre)
        comps.push_back({spec.exceptional, c});
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < amb.nvars(); ++i)
        if (!is_centre[i]) rest.push_back(amb.vars[i]);
    comps.push_back(rest);
    pres.irrelevant = comps;  // normalized below, after vars are final
    pres.irrelevant = normalize_components(pres, pres.irrelevant);

    // strict transforms
    std::vector<Poly<Fp>> eqs;
    std::size_t nn = pres.nvars();
    std::vector<std::size_t> newpos(amb.nvars());
    for (std::size_t j = 0; j < nn; ++j) {
        auto oi = amb.index_of(pres.vars[j]);
        if (oi) newpos[*oi] = j;
    }
    std::size_t exc_pos = *pres.index_of(spec.exceptional);
    for (const auto& e : v.equations) {
        long m = BIG;
        for (const auto& [ex, co] : e.terms) m = std::min(m, term_tau(ex));
        Poly<Fp> p(nn);
        for (const auto& [ex, co] : e.terms) {
            long tau = term_tau(ex) - m;
            if (tau % (long)r != 0)
                throw std::runtime_error(
                    "blow_up: transform not divisible by the exceptional weight");
            Exps e2(nn, 0);
            for (std::size_t i = 0; i < amb.nvars(); ++i) e2[newpos[i]] = ex[i];
            e2[exc_pos] = (unsigned)(tau / (long)r);
            add_term(f, p, e2, co);
        }
        eqs.push_back(p);
    }

    auto wf = well_form(pres);
    if (!wf.exponent_changes.empty())
        throw std::runtime_error(
            "blow_up: well-forming required a quasi-reflection move");
    out.model.field = f;
    out.model.ambient = wf.pres;
    out.model.equations = eqs;
    out.model.codim = v.codim;
    out.model.provenance = v.provenance + " blown up at " + [&] {
        std::string sstr;
        for (const auto& n : spec.centre) sstr += n;
        return sstr;
    }();
    if (auto bad = homogeneity_violation(out.model))
        throw std::runtime_error("blow_up: " + *bad);
    return out;
}

namespace {

struct FanPosition {
    ChamberFan fan;
    std::size_t chamber;
    std::vector<std::size_t> ray_of_var;
};

FanPosition fan_position(const Subvariety& v) {
    FanPosition fp;
    fp.fan = mori_chambers(v.ambient);
    auto ch = match_chamber(v.ambient, fp.fan);
    if (!ch)
        throw std::runtime_error(
            "cross_wall: irrelevant ideal matches no chamber of the fan");
    fp.chamber = *ch;
    fp.ray_of_var.assign(v.ambient.nvars(), 0);
    for (std::size_t k = 0; k < fp.fan.groups.size(); ++k)
        for (auto i : fp.fan.groups[k]) fp.ray_of_var[i] = k;
    return fp;
}

std::vector<long> oriented_values(std::vector<long> vals) {
    long pos = 0, neg = 0;
    for (long x : vals) (x > 0 ? pos : neg) += 1;
    if (pos < neg)
        for (auto& x : vals) x = -x;
    return vals;
}

}  // namespace

CrossResult cross_wall(const Subvariety& v) {
    auto fp = fan_position(v);
    const auto& fan = fp.fan;
    auto [a, b] = fan.chambers[fp.chamber];
    CrossResult out;
    out.crossing.wall_ray = b;
    out.crossing.wall = fan.rays[b];

    // primitive normal, positive on the pre-crossing side
    IntVector chi_pre(2);
    chi_pre[0] = fan.rays[a][0] + fan.rays[b][0];
    chi_pre[1] = fan.rays[a][1] + fan.rays[b][1];
    IntVector n = wall_normal(fan.rays[b], chi_pre);

    std::vector<long> vals;
    for (std::size_t i = 0; i < v.ambient.nvars(); ++i) {
        if (fp.ray_of_var[i] == b) continue;
        Int val = dot(n, v.ambient.degrees[i]);
        out.crossing.values.emplace_back(v.ambient.vars[i], val.get_si());
        vals.push_back(val.get_si());
    }
    // orientation: the strictly smaller side is negative; ties keep the
    // pre-crossing side positive
    long pos = 0, negc = 0;
    for (long x : vals) (x > 0 ? pos : negc) += 1;
    out.crossing.orientation_flipped = pos < negc;
    if (out.crossing.orientation_flipped)
        for (auto& [name, val] : out.crossing.values) val = -val;
    out.crossing.signed_type.clear();
    for (const auto& [name, val] : out.crossing.values)
        out.crossing.signed_type.push_back(val);
    std::sort(out.crossing.signed_type.begin(), out.crossing.signed_type.end());

    // strictly beyond the wall: rays after b
    std::vector<std::string> beyond;
    for (std::size_t k = b + 1; k < fan.rays.size(); ++k)
        for (auto i : fan.groups[k]) beyond.push_back(v.ambient.vars[i]);
    if (beyond.empty()) {
        out.crossing.kind = CrossingKind::fibration;
        for (auto i : fan.groups[b]) out.crossing.base_vars.push_back(v.ambient.vars[i]);
        return out;
    }
    if (beyond.size() == 1) {
        out.crossing.kind = CrossingKind::divisorial_contraction;
        out.crossing.contracted_var = beyond[0];
        return out;
    }
    out.crossing.kind = CrossingKind::flip;
    Subvariety next = v;
    next.ambient.irrelevant =
        irrelevant_ideal_of_chamber(v.ambient, fan, fp.chamber + 1);
    out.next = next;
    return out;
}

namespace {

// the wall's weighted projective space and the equations restricted to it
struct WallData {
    CoxPresentation wps;
    std::vector<std::size_t> wall_vars;  // ambient indices
    std::vector<std::size_t> off_vars;
    std::vector<Poly<Fp>> restricted;  // off-wall variables set to zero
};

WallData wall_data(const Subvariety& v, std::size_t wall_ray) {
    auto fan = mori_chambers(v.ambient);
    WallData wd;
    std::vector<bool> on_wall(v.ambient.nvars(), false);
    for (auto i : fan.groups[wall_ray]) on_wall[i] = true;
    for (std::size_t i = 0; i < v.ambient.nvars(); ++i)
        (on_wall[i] ? wd.wall_vars : wd.off_vars).push_back(i);
    wd.wps.rank = 1;
    const IntVector& ray = fan.rays[wall_ray];
    std::size_t nz = ray[0] != 0 ? 0 : 1;
    for (auto i : wd.wall_vars) {
        wd.wps.vars.push_back(v.ambient.vars[i]);
        Int c = v.ambient.degrees[i][nz] / ray[nz];
        wd.wps.degrees.push_back(IntVector{c});
    }
    wd.wps.irrelevant = {wd.wps.vars};
    const Fp& f = v.field;
    for (const auto& e : v.equations) {
        Poly<Fp> p(wd.wall_vars.size());
        for (const auto& [ex, co] : e.terms) {
            bool dead = false;
            for (auto i : wd.off_vars)
                if (ex[i]) {
                    dead = true;
                    break;
                }
            if (dead) continue;
            Exps e2(wd.wall_vars.size(), 0);
            for (std::size_t k = 0; k < wd.wall_vars.size(); ++k)
                e2[k] = ex[wd.wall_vars[k]];
            add_term(f, p, e2, co);
        }
        if (!p.is_zero()) wd.restricted.push_back(p);
    }
    return wd;
}

}  // namespace

RestrictedCrossing restrict_crossing(const Subvariety& v, const WallCrossing& cr) {
    const Fp& f = v.field;
    RestrictedCrossing out;
    WallData wd = wall_data(v, cr.wall_ray);
    PolyIdeal ideal{f, wd.restricted, wd.wps};
    try {
        out.count = count_points(ideal);
    } catch (const std::exception& e) {
        out.supported = false;
        out.note = std::string("non-isolated -- unsupported (") + e.what() + ")";
        return out;
    }
    if (out.count == 0) {
        out.note = "restriction misses the threefold";
        return out;
    }

    // linear coefficients: for equation e and off-wall variable v, the wall
    // polynomial multiplying the monomials (wall)^a * v
    std::size_t ne = v.equations.size(), no = wd.off_vars.size();
    std::vector<std::vector<Poly<Fp>>> L(ne, std::vector<Poly<Fp>>(no));
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t k = 0; k < no; ++k) L[e][k] = Poly<Fp>(wd.wall_vars.size());
    for (std::size_t e = 0; e < ne; ++e)
        for (const auto& [ex, co] : v.equations[e].terms) {
            std::size_t the_var = no;
            bool linear = true;
            for (std::size_t k = 0; k < no && linear; ++k) {
                unsigned d = ex[wd.off_vars[k]];
                if (d == 0) continue;
                if (d > 1 || the_var != no)
                    linear = false;
                else
                    the_var = k;
            }
            if (!linear || the_var == no) continue;
            Exps e2(wd.wall_vars.size(), 0);
            for (std::size_t k = 0; k < wd.wall_vars.size(); ++k)
                e2[k] = ex[wd.wall_vars[k]];
            add_term(f, L[e][the_var], e2, co);
        }

    // greedy pivot set: extend while every locus point still has a full-rank
    // minor on the chosen columns
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < no; ++k) {
        std::vector<std::size_t> cand = chosen;
        cand.push_back(k);
        if (cand.size() > ne) break;
        // all cand.size()-minors over row subsets
        std::vector<Poly<Fp>> minors;
        std::vector<std::size_t> rows(ne);
        std::iota(rows.begin(), rows.end(), 0);
        std::vector<std::size_t> pick(cand.size());
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                                std::size_t from) {
            if (pos == cand.size()) {
                // determinant of the pick x cand submatrix
                std::function<Poly<Fp>(std::vector<std::size_t>, std::vector<std::size_t>)>
                    ddet = [&](std::vector<std::size_t> rs,
                               std::vector<std::size_t> cs) -> Poly<Fp> {
                    if (rs.size() == 1) return L[rs[0]][cs[0]];
                    Poly<Fp> acc(wd.wall_vars.size());
                    for (std::size_t j = 0; j < cs.size(); ++j) {
                        std::vector<std::size_t> rs2(rs.begin() + 1, rs.end());
                        std::vector<std::size_t> cs2;
                        for (std::size_t t = 0; t < cs.size(); ++t)
                            if (t != j) cs2.push_back(cs[t]);
                        auto sub_det = mul(f, L[rs[0]][cs[j]], ddet(rs2, cs2));
                        acc = (j % 2 == 0) ? add(f, acc, sub_det) : sub(f, acc, sub_det);
                    }
                    return acc;
                };
                std::vector<std::size_t> rs(pick.begin(), pick.end());
                auto d = ddet(rs, cand);
                if (!d.is_zero()) minors.push_back(d);
                return;
            }
            for (std::size_t i = from; i < ne; ++i) {
                pick[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
        if (minors.empty()) continue;  // no possible pivot anywhere
        PolyIdeal test{f, wd.restricted, wd.wps};
        for (const auto& m : minors) test.generators.push_back(m);
        long leftover = 0;
        try {
            leftover = count_points(test);
        } catch (const std::exception&) {
            leftover = 1;  // conservatively refuse the extension
        }
        if (leftover == 0) chosen = cand;
    }
    for (auto k : chosen) out.eliminated.push_back(v.ambient.vars[wd.off_vars[k]]);

    // restricted type: surviving off-wall values, re-oriented from the
    // pre-positive base orientation
    long sign = cr.orientation_flipped ? -1 : 1;
    std::vector<long> vals;
    for (const auto& [name, val] : cr.values) {
        bool gone = false;
        for (const auto& el : out.eliminated) gone |= (el == name);
        if (!gone) vals.push_back(sign * val);
    }
    out.restricted_type = oriented_values(vals);
    std::sort(out.restricted_type.begin(), out.restricted_type.end());
    std::vector<long> flop_type{-1, -1, 1, 1};
    out.flop = (out.restricted_type == flop_type);
    return out;
}

namespace {

struct ApplyResult {
    CoxPresentation amb;
    std::vector<Poly<Fp>> eqs;
    std::vector<std::string> image_point;
};

// remove the contracted variable, absorbing it into the other columns via the
// exponents k; the image degrees are rewritten in the HNF basis of their span
ApplyResult contract_apply(const Subvariety& v, const std::string& dvar,
                           const std::vector<std::pair<std::string, unsigned>>& ks) {
    const Fp& f = v.field;
    const auto& amb = v.ambient;
    std::size_t di = *amb.index_of(dvar);
    std::map<std::string, unsigned> kmap(ks.begin(), ks.end());

    std::vector<IntVector> img_degs;
    std::vector<std::string> img_vars;
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
        if (i == di) continue;
        unsigned k = kmap.at(amb.vars[i]);
        IntVector d = amb.degrees[i];
        for (std::size_t c = 0; c < amb.rank; ++c)
            d[c] += Int((long)k) * amb.degrees[di][c];
        img_degs.push_back(d);
        img_vars.push_back(amb.vars[i]);
    }
    IntMatrix span((long)img_degs.size(), amb.rank);
    for (std::size_t i = 0; i < img_degs.size(); ++i) span[i] = img_degs[i];
    IntMatrix h = hnf(span).h;
    std::size_t new_rank = 0;
    for (std::size_t i = 0; i < h.rows; ++i) {
        bool zero = true;
        for (const auto& x : h[i]) zero &= (x == 0);
        if (!zero) ++new_rank;
    }
    if (new_rank != amb.rank - 1)
        throw std::runtime_error("contract_map: image degrees span rank " +
                                 std::to_string(new_rank));
    IntMatrix basis(new_rank, amb.rank);
    for (std::size_t i = 0; i < new_rank; ++i) basis[i] = h[i];

    ApplyResult out;
    out.amb.rank = new_rank;
    out.amb.vars = img_vars;
    for (const auto& d : img_degs) out.amb.degrees.push_back(in_basis(basis, d));
    for (const auto& [name, k] : ks)
        if (k == 0) out.image_point.push_back(name);

    for (const auto& e : v.equations) {
        long K = -1;
        Poly<Fp> p(img_vars.size());
        for (const auto& [ex, co] : e.terms) {
            long need = -(long)ex[di];
            for (std::size_t i = 0; i < amb.nvars(); ++i)
                if (i != di && ex[i]) need += (long)ex[i] * (long)kmap.at(amb.vars[i]);
            if (K < 0) K = need;
            if (need != K)
                throw std::runtime_error(
                    "contract_map: equation cannot be absorbed consistently");
            Exps e2;
            for (std::size_t i = 0; i < amb.nvars(); ++i)
                if (i != di) e2.push_back(ex[i]);
            add_term(f, p, e2, co);
        }
        if (K < 0) K = 0;
        if (K < 0 || (!e.is_zero() && K > 10000))
            throw std::runtime_error("contract_map: inconsistent exponent");
        out.eqs.push_back(p);
    }

    if (out.amb.rank == 0) {
        out.amb.irrelevant = {};
    } else if (out.amb.rank == 1) {
        out.amb.irrelevant = {out.amb.vars};
    } else {
        // the image sits against its far wall: take the last chamber
        auto fan = mori_chambers(out.amb);
        out.amb.irrelevant =
            irrelevant_ideal_of_chamber(out.amb, fan, fan.chambers.size() - 1);
    }
    return out;
}

}  // namespace

ContractionResult contract_map(const Subvariety& v, const WallCrossing& cr) {
    if (cr.kind != CrossingKind::divisorial_contraction)
        throw std::invalid_argument("contract_map: crossing is not divisorial");
    const auto& amb = v.ambient;
    std::size_t di = *amb.index_of(cr.contracted_var);
    const IntVector& ray = cr.wall;
    IntVector n{-ray[1], ray[0]};
    n = primitive(n);
    Int nd = dot(n, amb.degrees[di]);
    if (nd == 0) throw std::runtime_error("contract_map: divisor lies on the wall");
    if (nd > 0)
        for (auto& x : n) x = -x;
    nd = dot(n, amb.degrees[di]);  // now negative

    ContractionResult out;
    std::vector<std::pair<std::string, unsigned>> ks;
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
        if (i == di) continue;
        Int num = dot(n, amb.degrees[i]);
        if (num % (-nd) != 0 || num / (-nd) < 0)
            throw std::runtime_error("contract_map: no valid exponent for " +
                                     amb.vars[i]);
        Int kq = num / (-nd);
        unsigned k = (unsigned)kq.get_ui();
        ks.emplace_back(amb.vars[i], k);
        out.images.emplace_back(amb.vars[i],
                                monomial_str(amb.vars[i], cr.contracted_var, k));
    }
    out.k_exponents = ks;
    auto ap = contract_apply(v, cr.contracted_var, ks);
    out.image.field = v.field;
    out.image.ambient = ap.amb;
    out.image.equations = ap.eqs;
    out.image.codim = v.codim;
    out.image.provenance = v.provenance + " contracted along " + cr.contracted_var;
    out.image_point = ap.image_point;
    if (auto bad = homogeneity_violation(out.image))
        throw std::runtime_error("contract_map: " + *bad);
    return out;
}

std::optional<EliminationResult> eliminate_variable(const Subvariety& v,
                                                    const std::string& var) {
    const Fp& f = v.field;
    const auto& amb = v.ambient;
    auto vio = amb.index_of(var);
    if (!vio) return std::nullopt;
    std::size_t vi = *vio;

    auto var_degree = [&](const Poly<Fp>& e) {
        unsigned d = 0;
        for (const auto& [ex, co] : e.terms) d = std::max(d, ex[vi]);
        return d;
    };
    // coefficient of var and the rest, for a var-linear equation
    auto split_linear = [&](const Poly<Fp>& e) {
        Poly<Fp> q(amb.nvars()), rest(amb.nvars());
        for (const auto& [ex, co] : e.terms) {
            if (ex[vi] == 1) {
                Exps e2 = ex;
                e2[vi] = 0;
                add_term(f, q, e2, co);
            } else {
                add_term(f, rest, ex, co);
            }
        }
        return std::make_pair(q, rest);
    };
    auto singleton_component = [&](const std::string& name) {
        for (const auto& comp : amb.irrelevant)
            if (comp.size() == 1 && comp[0] == name) return true;
        return false;
    };
    auto is_component = [&](std::vector<std::string> names) {
        auto mine = normalize_components(amb, {names});
        for (const auto& comp : normalize_components(amb, amb.irrelevant))
            if (!mine.empty() && comp == mine[0]) return true;
        return false;
    };

    // a monomial is invertible on the relevant locus iff each of its
    // variables is an irrelevant component by itself
    auto unit_coefficient = [&](const Poly<Fp>& q) {
        if (q.terms.size() != 1) return false;
        const Exps& ex = q.terms.begin()->first;
        for (std::size_t i = 0; i < amb.nvars(); ++i)
            if (ex[i] && !singleton_component(amb.vars[i])) return false;
        return true;
    };

    std::optional<std::size_t> unit_eq;
    for (std::size_t e = 0; e < v.equations.size(); ++e) {
        if (var_degree(v.equations[e]) != 1) continue;
        auto [q, rest] = split_linear(v.equations[e]);
        if (unit_coefficient(q)) {
            unit_eq = e;
            break;
        }
    }

    // substitute var into E using q*var + r0 = 0, clearing q powers
    auto substitute_out = [&](const Poly<Fp>& E, const Poly<Fp>& q,
                              const Poly<Fp>& r0) {
        unsigned K = var_degree(E);
        // group E by var exponent
        std::vector<Poly<Fp>> parts(K + 1, Poly<Fp>(amb.nvars()));
        for (const auto& [ex, co] : E.terms) {
            Exps e2 = ex;
            unsigned j = ex[vi];
            e2[vi] = 0;
            add_term(f, parts[j], e2, co);
        }
        Poly<Fp> acc(amb.nvars());
        for (unsigned j = 0; j <= K; ++j) {
            if (parts[j].is_zero()) continue;
            Poly<Fp> t = parts[j];
            for (unsigned a = 0; a < j; ++a) t = mul(f, t, neg(f, r0));
            for (unsigned a = j; a < K; ++a) t = mul(f, t, q);
            acc = add(f, acc, t);
        }
        return acc;
    };

    std::vector<Poly<Fp>> next;
    std::string mode;
    if (unit_eq) {
        mode = "unit";
        auto [q, r0] = split_linear(v.equations[*unit_eq]);
        for (std::size_t e = 0; e < v.equations.size(); ++e) {
            if (e == *unit_eq) continue;
            next.push_back(substitute_out(v.equations[e], q, r0));
        }
    } else {
        // pair mode: coefficient variables together form an irrelevant component
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        for (std::size_t e1 = 0; e1 < v.equations.size() && !pair; ++e1) {
            if (var_degree(v.equations[e1]) != 1) continue;
            auto [q1, r1] = split_linear(v.equations[e1]);
            if (q1.terms.size() != 1) continue;
            for (std::size_t e2 = e1 + 1; e2 < v.equations.size() && !pair; ++e2) {
                if (var_degree(v.equations[e2]) != 1) continue;
                auto [q2, r2] = split_linear(v.equations[e2]);
                if (q2.terms.size() != 1) continue;
                // both single monomials in one variable each
                auto mono_var = [&](const Poly<Fp>& q) -> std::optional<std::string> {
                    const Exps& ex = q.terms.begin()->first;
                    std::optional<std::string> found;
                    for (std::size_t i = 0; i < amb.nvars(); ++i) {
                        if (!ex[i]) continue;
                        if (found || ex[i] > 1) return std::nullopt;
                        found = amb.vars[i];
                    }
                    return found;
                };
                auto w1 = mono_var(q1), w2 = mono_var(q2);
                if (!w1 || !w2 || *w1 == *w2) continue;
                if (is_component({*w1, *w2})) pair = {e1, e2};
            }
        }
        if (!pair) return std::nullopt;
        mode = "pair";
        auto [q1, r1] = split_linear(v.equations[pair->first]);
        auto [q2, r2] = split_linear(v.equations[pair->second]);
        // q2*e1 - q1*e2 cancels var
        Poly<Fp> combo = sub(f, mul(f, q2, r1), mul(f, q1, r2));
        next.push_back(combo);
        for (std::size_t e = 0; e < v.equations.size(); ++e) {
            if (e == pair->first || e == pair->second) continue;
            if (var_degree(v.equations[e]) == 0) {
                next.push_back(v.equations[e]);
            } else {
                next.push_back(substitute_out(v.equations[e], q1, r1));
                next.push_back(substitute_out(v.equations[e], q2, r2));
            }
        }
    }

    // rebuild over the smaller ring
    EliminationResult out;
    out.mode = mode;
    out.model.field = f;
    out.model.ambient.rank = amb.rank;
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
        if (i == vi) continue;
        out.model.ambient.vars.push_back(amb.vars[i]);
        out.model.ambient.degrees.push_back(amb.degrees[i]);
    }
    for (auto comp : amb.irrelevant) {
        comp.erase(std::remove(comp.begin(), comp.end(), var), comp.end());
        if (!comp.empty()) out.model.ambient.irrelevant.push_back(comp);
    }
    out.model.ambient.irrelevant =
        normalize_components(out.model.ambient, out.model.ambient.irrelevant);
    for (const auto& e : next) {
        Poly<Fp> p(out.model.ambient.nvars());
        for (const auto& [ex, co] : e.terms) {
            if (ex[vi] != 0) throw std::logic_error("eliminate_variable: leftover");
            Exps e2;
            for (std::size_t i = 0; i < amb.nvars(); ++i)
                if (i != vi) e2.push_back(ex[i]);
            add_term(f, p, e2, co);
        }
        if (!p.is_zero()) out.model.equations.push_back(p);
    }
    out.model.codim = v.codim > 0 ? v.codim - 1 : 0;
    out.model.provenance = v.provenance + " minus " + var;

    // drop equations that lie in the ideal of the others; the grading makes
    // this a finite linear problem per degree, biggest candidates first
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> order2(out.model.equations.size());
        std::iota(order2.begin(), order2.end(), 0);
        std::stable_sort(order2.begin(), order2.end(), [&](std::size_t a, std::size_t b) {
            return out.model.equations[a].terms.size() >
                   out.model.equations[b].terms.size();
        });
        for (std::size_t e : order2) {
            std::vector<Poly<Fp>> others;
            for (std::size_t j = 0; j < out.model.equations.size(); ++j)
                if (j != e) others.push_back(out.model.equations[j]);
            if (others.empty()) break;
            if (homogeneous_membership(f, out.model.equations[e], others,
                                       out.model.ambient.degrees)) {
                out.model.equations.erase(out.model.equations.begin() + (long)e);
                ++out.dropped;
                changed = true;
                break;
            }
        }
    }
    if (auto bad = homogeneity_violation(out.model))
        throw std::runtime_error("eliminate_variable: " + *bad);
    return out;
}

FibrationProfile fibration_profile(const Subvariety& v,
                                   const std::vector<std::string>& base_vars) {
    FibrationProfile out;
    out.base_vars = base_vars;
    const auto& amb = v.ambient;
    IntVector base_ray = primitive(amb.degrees[*amb.index_of(base_vars[0])]);
    for (const auto& n : base_vars)
        if (primitive(amb.degrees[*amb.index_of(n)]) != base_ray)
            throw std::invalid_argument("fibration_profile: base not on one ray");
    // residual weight: the base-ray functional, signed so fibres are positive
    long sign = 0;
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
        bool is_base = false;
        for (const auto& n : base_vars) is_base |= (amb.vars[i] == n);
        if (is_base) continue;
        Int w = cross2(base_ray, amb.degrees[i]);
        if (w == 0)
            throw std::invalid_argument("fibration_profile: fibre variable on base ray");
        long s = w > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign)
            throw std::invalid_argument("fibration_profile: mixed fibre side");
        out.fibre_vars.push_back(amb.vars[i]);
        Int sw = sign * w;
        out.fibre_weights.push_back(sw.get_si());
    }
    for (const auto& e : v.equations) {
        auto rep = multidegree_of(e, amb.degrees);
        if (!rep.degree) throw std::invalid_argument("fibration_profile: inhomogeneous");
        Int d = cross2(base_ray, *rep.degree) * sign;
        out.fibre_equation_degrees.push_back(d.get_si());
    }
    // cubic surface detection
    auto ws = out.fibre_weights;
    std::sort(ws.begin(), ws.end());
    auto ds = out.fibre_equation_degrees;
    std::sort(ds.begin(), ds.end());
    if (ws == std::vector<long>{1, 1, 1, 1} && ds == std::vector<long>{3}) {
        out.cubic_surface = true;
    } else if (ws == std::vector<long>{1, 1, 1, 1, 2} && ds == std::vector<long>{2, 3}) {
        // the quadric must be linear in the weight-2 fibre variable
        std::string heavy;
        for (std::size_t k = 0; k < out.fibre_vars.size(); ++k)
            if (out.fibre_weights[k] == 2) heavy = out.fibre_vars[k];
        std::size_t hi = *amb.index_of(heavy);
        for (std::size_t e = 0; e < v.equations.size(); ++e) {
            if (out.fibre_equation_degrees[e] != 2) continue;
            unsigned dmax = 0;
            bool present = false;
            for (const auto& [ex, co] : v.equations[e].terms) {
                dmax = std::max(dmax, ex[hi]);
                present |= ex[hi] == 1;
            }
            if (dmax == 1 && present) out.cubic_surface = true;
        }
    }
    return out;
}

std::vector<std::string> singularity_kinds(const Subvariety& v) {
    std::vector<std::string> out;
    for (const auto& pt : coordinate_points_on(v)) {
        auto rep = coordinate_point_type(v, pt);
        if (rep.kind == SingKind::smooth) continue;
        out.push_back(rep.kind_str());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void finish_endpoint(LinkTrace& tr, Subvariety cur,
                     const std::vector<std::string>& base_hint) {
    // eliminations enabled at the endpoint, to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& name : std::vector<std::string>(cur.ambient.vars)) {
            auto el = eliminate_variable(cur, name);
            if (!el) continue;
            TraceStep st;
            st.kind = "elimination";
            st.eliminated_var = name;
            st.equations_dropped = el->dropped;
            tr.steps.push_back(st);
            cur = el->model;
            changed = true;
            break;
        }
    }
    if (auto bad = homogeneity_violation(cur))
        throw std::runtime_error("run_link: " + *bad);
    tr.endpoint = cur;
    for (const auto& pt : coordinate_points_on(cur))
        tr.endpoint_sings.push_back(coordinate_point_type(cur, pt));
    if (cur.ambient.rank >= 2) {
        // fibration structure over the last ray of the fan
        auto fan = mori_chambers(cur.ambient);
        std::vector<std::string> base;
        for (auto i : fan.groups.back()) base.push_back(cur.ambient.vars[i]);
        if (!base_hint.empty() || !base.empty())
            tr.endpoint_profile = fibration_profile(cur, base);
    }
}

}  // namespace

LinkTrace run_link(const Subvariety& v, const BlowupSpec& spec) {
    LinkTrace tr;
    auto br = blow_up(v, spec);
    {
        TraceStep st;
        st.kind = "blowup";
        st.centre_type = br.centre_type;
        st.stacky_row = br.stacky_row;
        tr.steps.push_back(st);
    }

    Subvariety cur = br.model;
    std::vector<std::pair<std::string, unsigned>> rel_ks;  // relative exponents
    std::optional<std::string> rel_divisor;
    Subvariety rank3 = cur;  // kept for the relative re-expression
    bool relative = v.ambient.rank == 2;
    std::string chart_var;
    if (relative) {
        if (spec.base.empty())
            throw std::invalid_argument("run_link: rank-2 ambient needs base variables");
        // the base variable hit by the blow-up carries the relative chart
        for (const auto& b : spec.base)
            for (const auto& c : spec.centre)
                if (b == c) chart_var = b;
        if (chart_var.empty())
            throw std::invalid_argument("run_link: centre does not meet the base");
        Subvariety rel;
        rel.field = cur.field;
        rel.ambient = chart(cur.ambient, chart_var);
        std::size_t ci = *cur.ambient.index_of(chart_var);
        for (const auto& e : cur.equations) {
            Poly<Fp> p(rel.ambient.nvars());
            for (const auto& [ex, co] : e.terms) {
                Exps e2;
                for (std::size_t i = 0; i < cur.ambient.nvars(); ++i)
                    if (i != ci) e2.push_back(ex[i]);
                add_term(cur.field, p, e2, co);
            }
            rel.equations.push_back(p);
        }
        rel.codim = cur.codim;
        rel.provenance = cur.provenance + " relative chart at " + chart_var;
        cur = rel;
    }

    while (true) {
        auto cres = cross_wall(cur);
        if (cres.crossing.kind == CrossingKind::flip) {
            auto restr = restrict_crossing(cur, cres.crossing);
            TraceStep st;
            st.kind = restr.flop ? "flop" : "flip";
            st.crossing = cres.crossing;
            st.restricted = restr;
            tr.steps.push_back(st);
            if (!restr.supported) {
                tr.annotations.push_back("aborted: " + restr.note);
                tr.endpoint = cur;
                return tr;
            }
            cur = *cres.next;
            continue;
        }
        if (cres.crossing.kind == CrossingKind::divisorial_contraction) {
            if (!relative) {
                auto con = contract_map(cur, cres.crossing);
                TraceStep st;
                st.kind = "contraction";
                st.crossing = cres.crossing;
                st.images = con.images;
                st.image_point = con.image_point;
                tr.steps.push_back(st);
                cur = con.image;
            } else {
                // compute the exponents relatively, re-express on the full model
                auto con = contract_map(cur, cres.crossing);
                auto ks = con.k_exponents;
                ks.emplace_back(chart_var, 0u);
                auto ap = contract_apply(rank3, cres.crossing.contracted_var, ks);
                TraceStep st;
                st.kind = "contraction";
                st.crossing = cres.crossing;
                st.image_point = ap.image_point;
                // the displayed map carries the base variable along unchanged
                for (std::size_t i = 0; i < rank3.ambient.nvars(); ++i) {
                    const auto& name = rank3.ambient.vars[i];
                    if (name == cres.crossing.contracted_var) continue;
                    unsigned k = 0;
                    for (const auto& [nm, kk] : ks)
                        if (nm == name) k = kk;
                    st.images.emplace_back(
                        name, monomial_str(name, cres.crossing.contracted_var, k));
                }
                tr.steps.push_back(st);
                Subvariety img;
                img.field = cur.field;
                img.ambient = ap.amb;
                img.equations = ap.eqs;
                img.codim = rank3.codim;
                img.provenance = rank3.provenance + " contracted along " +
                                 cres.crossing.contracted_var;
                if (auto bad = homogeneity_violation(img))
                    throw std::runtime_error("run_link: " + *bad);
                cur = img;
            }
            break;
        }
        // fibration: terminal
        TraceStep st;
        st.kind = "fibration";
        st.crossing = cres.crossing;
        st.base_vars = cres.crossing.base_vars;
        tr.steps.push_back(st);
        break;
    }

    finish_endpoint(tr, cur, {});
    // annotate the contraction step with the classified image point
    for (auto& st : tr.steps) {
        if (st.kind != "contraction" || st.image_point.empty()) continue;
        for (const auto& rep : tr.endpoint_sings) {
            std::vector<std::string> a = rep.point, b = st.image_point;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a == b) st.image_point_type = rep.kind_str();
        }
    }
    return tr;
}

CompareVerdict compare_models(const Subvariety& a, const Subvariety& b,
                              const std::vector<std::string>& sings_a,
                              const std::vector<std::string>& sings_b) {
    CompareVerdict out;
    if (a.ambient.rank != b.ambient.rank || a.ambient.nvars() != b.ambient.nvars()) {
        out.witness = "ambient shapes differ";
        return out;
    }
    auto ca = canonical_presentation(a.ambient);
    auto cb = canonical_presentation(b.ambient);
    if (!(ca == cb)) {
        out.witness = "canonical ambients differ: " + ca.str() + " vs " + cb.str();
        return out;
    }
    auto canon_degrees = [&](const Subvariety& v, const CanonicalPresentation& cp) {
        std::vector<IntVector> ds;
        for (const auto& e : v.equations) {
            auto rep = multidegree_of(e, v.ambient.degrees);
            if (!rep.degree) continue;
            ds.push_back(mat_apply(cp.row_transform, *rep.degree));
        }
        std::sort(ds.begin(), ds.end());
        return ds;
    };
    if (canon_degrees(a, ca) != canon_degrees(b, cb)) {
        out.witness = "equation multidegree multisets differ";
        return out;
    }
    auto sa = sings_a, sb = sings_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
        out.witness = "singularity multisets differ";
        return out;
    }
    out.isomorphic = true;
    out.witness = "canonical presentations, equation degrees and singularities agree";
    return out;
}

}  // namespace coxlink
