#include <doctest.h>

#include "fixtures.hpp"
#include "sing.hpp"

using namespace coxlink;

namespace {

const Fp F{32003};

Subvariety make_x(std::uint64_t seed = 42) {
    Subvariety v;
    v.field = F;
    v.ambient = fixtures::x_presentation();
    v.equations = fixtures::x_equations(F, seed);
    v.codim = 3;
    v.provenance = "pfaffian threefold";
    return v;
}

// the codimension-two model: two cubics in P(1,1,1,1,1,2)
Subvariety make_y(std::uint64_t seed = 42) {
    Subvariety v;
    v.field = F;
    v.ambient.rank = 1;
    v.ambient.vars = {"u", "x", "x1", "x2", "y1", "z"};
    v.ambient.degrees = {{Int(1)}, {Int(1)}, {Int(1)}, {Int(1)}, {Int(1)}, {Int(2)}};
    v.ambient.irrelevant = {v.ambient.vars};
    VarSet ring{v.ambient.vars};
    auto forms = fixtures::x_forms(F, seed);
    auto P = [&](const char* s) { return parse(F, s, ring, forms); };
    v.equations = {
        P("A(x,x1,x2,u) + y1*(u*y1 + C(x,x1,x2,u)) - x1*z"),
        P("B(x,x1,x2,u) + x*z + y1*D(x,x1,x2,u)"),
    };
    v.codim = 2;
    v.provenance = "two cubics";
    return v;
}

}  // namespace

TEST_CASE("quadratic rank of germs") {
    Rationals Q;
    VarSet v4{{"x", "x1", "x2", "z"}};
    CHECK(quadratic_rank(Q, parse(Q, "x*z + x1^2 + x2^2", v4)) == 4);
    CHECK(quadratic_rank(Q, parse(Q, "x^2", v4)) == 1);
    CHECK(quadratic_rank(Q, parse(Q, "x^3 + x1^3", v4)) == 0);
    CHECK(quadratic_rank(F, parse(F, "x*z + x1^2 + x2^2", v4)) == 4);
}

TEST_CASE("only the two coordinate points lie on the threefold") {
    auto x = make_x();
    auto pts = coordinate_points_on(x);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == std::vector<std::string>{"y"});
    CHECK(pts[1] == std::vector<std::string>{"z"});
}

TEST_CASE("the index-two point is a quotient 1/2(1,1,1)") {
    auto x = make_x();
    auto rep = coordinate_point_type(x, {"y"});
    CHECK(rep.kind == SingKind::quotient);
    REQUIRE(rep.quotient.has_value());
    CHECK(rep.quotient->r == 2);
    CHECK(rep.quotient->weights == std::vector<unsigned long>{1, 1, 1});
    // the chart sixfold is 1/2(1,1,1,1,0,1) and three variables are tangent
    CHECK(rep.ambient_residues == std::vector<unsigned long>{1, 1, 1, 1, 0, 1});
    std::vector<std::string> tg = rep.tangents;
    std::sort(tg.begin(), tg.end());
    CHECK(tg == std::vector<std::string>{"x3", "y1", "z"});
}

TEST_CASE("the index-three point is a quotient 1/3(1,1,2)") {
    auto x = make_x();
    auto rep = coordinate_point_type(x, {"z"});
    CHECK(rep.kind == SingKind::quotient);
    REQUIRE(rep.quotient.has_value());
    CHECK(rep.quotient->r == 3);
    CHECK(rep.quotient->weights == std::vector<unsigned long>{1, 1, 2});
    std::vector<std::string> tg = rep.tangents;
    std::sort(tg.begin(), tg.end());
    CHECK(tg == std::vector<std::string>{"x", "x1", "y"});
}

TEST_CASE("the codimension-two model has a cA1 point") {
    auto y = make_y();
    auto pts = coordinate_points_on(y);
    REQUIRE(pts.size() == 2);  // p_y1 and p_z
    auto rep = coordinate_point_type(y, {"y1"});
    CHECK(rep.kind == SingKind::cA1);
    CHECK(rep.quadratic_rank == 4);
    auto rep2 = coordinate_point_type(y, {"z"});
    CHECK(rep2.kind == SingKind::quotient);
    REQUIRE(rep2.quotient.has_value());
    CHECK(rep2.quotient->str() == "1/2(1,1,1)");
}

TEST_CASE("weight-one point with full elimination is smooth") {
    Subvariety v;
    v.field = F;
    v.ambient.rank = 1;
    v.ambient.vars = {"x", "y", "z"};
    v.ambient.degrees = {{Int(1)}, {Int(1)}, {Int(1)}};
    v.ambient.irrelevant = {v.ambient.vars};
    VarSet ring{v.ambient.vars};
    v.equations = {parse(F, "y*z - x^2", ring)};
    v.codim = 1;
    auto rep = coordinate_point_type(v, {"y"});
    CHECK(rep.kind == SingKind::smooth);
    CHECK_THROWS(coordinate_point_type(v, {"x"}));  // not on the variety
}

TEST_CASE("classification is invariant under seeds") {
    for (std::uint64_t seed : {43, 44}) {
        auto x = make_x(seed);
        CHECK(coordinate_point_type(x, {"y"}).quotient->str() == "1/2(1,1,1)");
        CHECK(coordinate_point_type(x, {"z"}).quotient->str() == "1/3(1,1,2)");
    }
}

TEST_CASE("quasi-smoothness of the threefold") {
    auto x = make_x();
    auto verdict = quasi_smooth_check(x, 12, 42);
    CHECK(!verdict.witness_found);
    CHECK(verdict.points_checked >= 12);
    // deterministic given the seed
    auto again = quasi_smooth_check(x, 12, 42);
    CHECK(again.points_checked == verdict.points_checked);
    CHECK(again.slices_used == verdict.slices_used);
}

TEST_CASE("negative control: the cone over xy in the plane is singular") {
    Subvariety v;
    v.field = F;
    v.ambient.rank = 1;
    v.ambient.vars = {"x", "y", "z"};
    v.ambient.degrees = {{Int(1)}, {Int(1)}, {Int(1)}};
    v.ambient.irrelevant = {v.ambient.vars};
    VarSet ring{v.ambient.vars};
    v.equations = {parse(F, "x*y", ring)};
    v.codim = 1;
    auto verdict = quasi_smooth_check(v, 10, 42);
    CHECK(verdict.witness_found);
    CHECK(verdict.witness_location == "stratum");
    // the witness is the z-axis point
    CHECK(verdict.witness == std::vector<unsigned long>{0, 0, 1});
}

TEST_CASE("the Fermat cubic surface is quasi-smooth") {
    Subvariety v;
    v.field = F;
    v.ambient.rank = 1;
    v.ambient.vars = {"x", "y", "z", "w"};
    v.ambient.degrees = {{Int(1)}, {Int(1)}, {Int(1)}, {Int(1)}};
    v.ambient.irrelevant = {v.ambient.vars};
    VarSet ring{v.ambient.vars};
    v.equations = {parse(F, "x^3 + y^3 + z^3 + w^3", ring)};
    v.codim = 1;
    auto verdict = quasi_smooth_check(v, 25, 42);
    CHECK(!verdict.witness_found);
}

TEST_CASE("small primes are rejected") {
    Subvariety v;
    v.field = Fp{97};
    v.ambient.rank = 1;
    v.ambient.vars = {"x"};
    v.ambient.degrees = {{Int(1)}};
    v.ambient.irrelevant = {{"x"}};
    v.equations = {};
    v.codim = 0;
    CHECK_THROWS(quasi_smooth_check(v, 1, 1));
}
