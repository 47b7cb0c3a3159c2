#include <doctest.h>

#include "fixtures.hpp"
#include "groebner.hpp"
#include "pfaffian.hpp"

using namespace coxlink;

namespace {
const Fp F{32003};
}

TEST_CASE("the family of the reference matrix reproduces its five equations") {
    auto forms = fixtures::x_forms(F, 42);
    auto ring = fixtures::x_ring();
    auto fam = fixtures::x_family(F, 42);
    auto pf = pfaffians5(F, fam);
    auto P = [&](const char* s) { return parse(F, s, ring, forms); };
    CHECK(pf[0] == P("y*z - (A*D - (y1 + C)*B)"));
    CHECK(pf[1] == P("y*y1 - (-(x*A) - x1*B)"));
    CHECK(pf[2] == P("y*x3 - (x*(y1 + C) + x1*D)"));
    CHECK(pf[3] == P("x3*A - (-(y1*(y1 + C)) + x1*z)"));
    CHECK(pf[4] == P("x3*B - (-(y1*D) - x*z)"));
}

TEST_CASE("zero matrix gives five zeros") {
    PfaffianFamily<Fp> fam;
    for (auto& e : fam.m) e = Poly<Fp>(3);
    for (const auto& p : pfaffians5(F, fam)) CHECK(p.is_zero());
}

TEST_CASE("pfaffian squared equals the determinant of the 4x4 block") {
    Rationals Q;
    std::uint64_t st = 2024;
    auto rnd = [&](long m) {
        st ^= st << 13;
        st ^= st >> 7;
        st ^= st << 17;
        return (long)(st % (unsigned long)(2 * m + 1)) - m;
    };
    static const int quad[5][4] = {
        {1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}};
    for (int trial = 0; trial < 100; ++trial) {
        PfaffianFamily<Rationals> fam;
        long vals[6][6] = {};
        static const int pr[10][2] = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3},
                                      {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
        for (int k = 0; k < 10; ++k) {
            long v = rnd(9);
            vals[pr[k][0]][pr[k][1]] = v;
            vals[pr[k][1]][pr[k][0]] = -v;
            fam.m[k] = poly_const(Q, 1, Rat((long)v));
        }
        auto pf = pfaffians5(Q, fam);
        for (int k = 0; k < 5; ++k) {
            IntMatrix sub(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    sub[a][b] = Int(vals[quad[k][a]][quad[k][b]]);
            Rat val = pf[k].is_zero() ? Rat(0) : pf[k].terms.begin()->second;
            CHECK(val * val == Rat(det(sub)));
        }
    }
}

TEST_CASE("equation degrees of the reference family are 5,4,3,4,4") {
    auto eqs = fixtures::x_equations(F, 42);
    auto pres = fixtures::x_presentation();
    std::vector<long> want{5, 4, 3, 4, 4};
    for (std::size_t i = 0; i < 5; ++i) {
        auto rep = multidegree_of(eqs[i], pres.degrees);
        REQUIRE(rep.degree.has_value());
        CHECK((*rep.degree)[0] == Int(want[i]));
    }
}

TEST_CASE("weight inference on the reference family") {
    auto fam = fixtures::x_family(F, 42);
    auto pres = fixtures::x_presentation();
    auto w = infer_pfaffian_weights(F, fam, pres.degrees);
    REQUIRE(w.b.has_value());
    std::vector<long> want{1, 1, 2, 1, 0};
    for (int i = 0; i < 5; ++i) CHECK((*w.b)[i][0] == Int(want[i]));
}

TEST_CASE("weight inference in the symmetric and broken cases") {
    VarSet ring{{"s", "t"}};
    std::vector<IntVector> degs{{Int(1)}, {Int(1)}};
    PfaffianFamily<Fp> fam;
    for (auto& e : fam.m) e = parse(F, "s^2 + t^2", ring);
    auto w = infer_pfaffian_weights(F, fam, degs);
    REQUIRE(w.b.has_value());
    for (int i = 0; i < 5; ++i) CHECK((*w.b)[i][0] == Int(1));
    fam.m[7] = parse(F, "s^3", ring);  // perturb one entry's degree
    auto bad = infer_pfaffian_weights(F, fam, degs);
    CHECK(!bad.b.has_value());
    CHECK(!bad.failure.empty());
}

TEST_CASE("rank drop: zero row puts all pfaffians in the 3x3 block ideal") {
    std::uint64_t st = 77;
    auto rnd = [&]() {
        st ^= st << 13;
        st ^= st >> 7;
        st ^= st << 17;
        return st;
    };
    VarSet ring{{"a", "b", "c"}};
    for (int trial = 0; trial < 20; ++trial) {
        // random linear-form entries, then zero out row/column 5
        PfaffianFamily<Fp> fam;
        for (auto& e : fam.m) {
            Poly<Fp> p(3);
            for (int v = 0; v < 3; ++v) {
                Exps ex(3, 0);
                ex[v] = 1;
                add_term(F, p, ex, rnd() % F.p);
            }
            e = p;
        }
        // entries m15, m25, m35, m45 vanish
        fam.m[3] = Poly<Fp>(3);
        fam.m[6] = Poly<Fp>(3);
        fam.m[8] = Poly<Fp>(3);
        fam.m[9] = Poly<Fp>(3);
        auto pf = pfaffians5(F, fam);
        // remaining block entries: m12 m13 m14 m23 m24 m34
        std::vector<Poly<Fp>> block{fam.m[0], fam.m[1], fam.m[2],
                                    fam.m[4], fam.m[5], fam.m[7]};
        auto basis = groebner(F, block, TermOrder::degrevlex);
        for (const auto& p : pf)
            CHECK(normal_form(F, p, basis, TermOrder::degrevlex).is_zero());
    }
}
