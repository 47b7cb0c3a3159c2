#include <doctest.h>

#include "poly.hpp"

using namespace coxlink;

namespace {

const Fp F{32003};
const VarSet XR{{"x", "x1", "x2", "x3", "y", "y1", "z"}};

std::vector<IntVector> unit_degrees(std::size_t n) {
    return std::vector<IntVector>(n, IntVector{Int(1)});
}

long binom(long n, long k) {
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("parser basics") {
    VarSet v{{"x", "y"}};
    auto zero = parse(F, "0", v);
    CHECK(zero.is_zero());
    auto cancel = parse(F, "x^2 - x*x", v);
    CHECK(cancel.is_zero());
    auto p = parse(F, "(x + y)^2", v);
    auto q = parse(F, "x^2 + 2*x*y + y^2", v);
    CHECK(p == q);
    CHECK_THROWS_AS(parse(F, "x + w", v), ParseError);
    CHECK_THROWS_AS(parse(F, "x + ", v), ParseError);
    CHECK_THROWS_AS(parse(F, "x ) y", v), ParseError);
}

TEST_CASE("parser reports positions") {
    VarSet v{{"x"}};
    try {
        parse(F, "x * qq", v);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("monomial enumeration matches stars-and-bars") {
    auto degs = unit_degrees(4);
    std::vector<std::size_t> all{0, 1, 2, 3};
    auto cubics = monomials_of_multidegree(degs, IntVector{Int(3)}, all);
    CHECK((long)cubics.size() == binom(3 + 3, 3));  // 20
    auto consts = monomials_of_multidegree(degs, IntVector{Int(0)}, all);
    CHECK(consts.size() == 1);
    // weight (1,2): no monomial of degree 1 supported on the weight-2 variable
    std::vector<IntVector> w{{Int(1)}, {Int(2)}};
    auto none = monomials_of_multidegree(w, IntVector{Int(1)}, {1});
    CHECK(none.empty());
}

TEST_CASE("generic forms are seeded and dense") {
    GenericFormSpec a{"A", IntVector{Int(3)}, {"x", "x1", "x2", "x3"}, 42};
    auto p1 = gen_generic(F, a, unit_degrees(4));
    auto p2 = gen_generic(F, a, unit_degrees(4));
    CHECK(p1 == p2);
    CHECK(p1.terms.size() == 20);
    GenericFormSpec c{"C", IntVector{Int(2)}, {"x", "x1", "x2", "x3"}, 42};
    CHECK(gen_generic(F, c, unit_degrees(4)).terms.size() == 10);
    GenericFormSpec a2 = a;
    a2.seed = 43;
    auto q = gen_generic(F, a2, unit_degrees(4));
    CHECK(p1 != q);
    GenericFormSpec single{"S", IntVector{Int(2)}, {"t"}, 7};
    std::vector<IntVector> w{{Int(2)}};
    auto s = gen_generic(F, single, w);
    CHECK(s.terms.size() == 1);
}

TEST_CASE("generic form multidegree equals its spec") {
    GenericFormSpec a{"A", IntVector{Int(3)}, {"x", "x1", "x2", "x3"}, 42};
    auto p = gen_generic(F, a, unit_degrees(4));
    auto rep = multidegree_of(p, unit_degrees(4));
    REQUIRE(rep.degree.has_value());
    CHECK(*rep.degree == IntVector{Int(3)});
}

TEST_CASE("substitution composes") {
    std::uint64_t st = 99;
    auto rnd_poly = [&]() {
        Poly<Fp> p(2);
        for (int t = 0; t < 3; ++t) {
            st = st * 6364136223846793005ULL + 1442695040888963407ULL;
            Exps e{(unsigned)(st >> 60) % 3, (unsigned)(st >> 40) % 3};
            add_term(F, p, e, (unsigned long)(st % 1000) + 1);
        }
        return p;
    };
    for (int trial = 0; trial < 25; ++trial) {
        auto p = rnd_poly();
        std::vector<Poly<Fp>> f{rnd_poly(), rnd_poly()};
        std::vector<Poly<Fp>> g{rnd_poly(), rnd_poly()};
        // substitute f into p then g; equals substituting g-after-f at once
        auto lhs = substitute(F, substitute(F, p, f), g);
        std::vector<Poly<Fp>> gf{substitute(F, f[0], g), substitute(F, f[1], g)};
        auto rhs = substitute(F, p, gf);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("substitution special cases") {
    VarSet v{{"x", "y"}};
    auto p = parse(F, "x^2*y + y^2 + x", v);
    std::vector<Poly<Fp>> ident{poly_var(F, 2, 0), poly_var(F, 2, 1)};
    CHECK(substitute(F, p, ident) == p);
    std::vector<Poly<Fp>> kill_x{Poly<Fp>(2), poly_var(F, 2, 1)};
    CHECK(substitute(F, p, kill_x) == parse(F, "y^2", v));
}

TEST_CASE("multidegree in the weighted ring") {
    // ring of P(1,1,1,1,2,2,3)
    std::vector<IntVector> degs{{Int(1)}, {Int(1)}, {Int(1)}, {Int(1)},
                                {Int(2)}, {Int(2)}, {Int(3)}};
    auto yz = parse(F, "y*z", XR);
    auto rep = multidegree_of(yz, degs);
    REQUIRE(rep.degree.has_value());
    CHECK(*rep.degree == IntVector{Int(5)});
    auto inhom = multidegree_of(parse(F, "y + x", XR), degs);
    CHECK(!inhom.degree.has_value());
    REQUIRE(inhom.offenders.has_value());
    auto cst = multidegree_of(parse(F, "7", XR), degs);
    REQUIRE(cst.degree.has_value());
    CHECK(*cst.degree == IntVector{Int(0)});
}

TEST_CASE("jacobian of simple systems") {
    VarSet v{{"x", "y"}};
    auto j1 = jacobian(F, {parse(F, "x^2", v)});
    CHECK(j1[0][0] == parse(F, "2*x", v));
    CHECK(j1[0][1].is_zero());
    auto j2 = jacobian(F, {parse(F, "x*y", v), parse(F, "x+y", v)});
    CHECK(j2[0][0] == parse(F, "y", v));
    CHECK(j2[0][1] == parse(F, "x", v));
    CHECK(j2[1][0] == parse(F, "1", v));
    CHECK(j2[1][1] == parse(F, "1", v));
}

TEST_CASE("rational coefficients work through the same machinery") {
    Rationals Q;
    VarSet v{{"x", "y"}};
    auto p = parse(Q, "x^2 - 2*x*y + y^2", v);
    auto q = parse(Q, "(x - y)^2", v);
    CHECK(p == q);
}

TEST_CASE("form application in expressions") {
    VarSet amb{{"u", "t"}};
    GenericFormSpec spec{"Q", IntVector{Int(2)}, {"s1", "s2"}, 5};
    auto body = gen_generic(F, spec, unit_degrees(2));
    std::map<std::string, FormBinding<Fp>> forms{{"Q", {{"s1", "s2"}, body}}};
    auto direct = parse(F, "Q(u, t)", amb, forms);
    std::vector<Poly<Fp>> args{poly_var(F, 2, 0), poly_var(F, 2, 1)};
    CHECK(direct == substitute(F, body, args));
    auto zeroed = parse(F, "Q(0, t)", amb, forms);
    std::vector<Poly<Fp>> args0{Poly<Fp>(2), poly_var(F, 2, 1)};
    CHECK(zeroed == substitute(F, body, args0));
}
