#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "coxlink.h"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string data_dir() { return std::string(COXLINK_SOURCE_DIR); }

struct Ctx {
    coxlink_ctx* c;
    Ctx() : c(coxlink_ctx_new()) {}
    ~Ctx() { coxlink_ctx_free(c); }
};

}  // namespace

TEST_CASE("abi surface") { CHECK(coxlink_abi_version() == 1); }

TEST_CASE("run and count through the C interface") {
    Ctx ctx;
    auto text = slurp(data_dir() + "/scenarios/points-11.json");
    long long n = 0;
    CHECK(coxlink_count(ctx.c, text.c_str(), nullptr, &n) == COXLINK_OK);
    CHECK(n == 11);

    char* report = nullptr;
    auto link = slurp(data_dir() + "/scenarios/X-py-link.json");
    CHECK(coxlink_run_scenario(ctx.c, link.c_str(), nullptr, &report) == COXLINK_OK);
    REQUIRE(report != nullptr);
    std::string rs(report);
    coxlink_free_string(report);
    CHECK(rs.find("\"pass\": true") != std::string::npos);

    // expectation failures surface in the return code, with the report intact
    auto wrong = slurp(data_dir() + "/tests/data/points-11-wrong.json");
    report = nullptr;
    CHECK(coxlink_run_scenario(ctx.c, wrong.c_str(), nullptr, &report) ==
          COXLINK_EXPECTATION_FAILED);
    coxlink_free_string(report);
}

TEST_CASE("invalid input reports an error message") {
    Ctx ctx;
    char* out = nullptr;
    CHECK(coxlink_run_scenario(ctx.c, "{ not json", nullptr, &out) ==
          COXLINK_INVALID_INPUT);
    CHECK(std::string(coxlink_last_error(ctx.c)).size() > 0);
    CHECK(coxlink_wellform(ctx.c, "{\"names\": []}", &out) == COXLINK_INVALID_INPUT);
}

TEST_CASE("presentation utilities through the C interface") {
    Ctx ctx;
    const char* stacky =
        R"({"names": ["u","y","x","x1","x2","z","y1","x3"],
            "rows": [[0,2,1,1,1,3,2,1],[-2,0,1,1,1,5,4,3]]})";
    char* out = nullptr;
    REQUIRE(coxlink_wellform(ctx.c, stacky, &out) == COXLINK_OK);
    std::string s(out);
    coxlink_free_string(out);
    CHECK(s.find("-1,") != std::string::npos);

    REQUIRE(coxlink_validate(ctx.c, stacky, &out) == COXLINK_OK);
    std::string v(out);
    coxlink_free_string(out);
    CHECK(v.find("\"valid\": false") != std::string::npos);  // stacky, not surjective

    const char* wf =
        R"({"names": ["u","y","x","x1","x2","z","y1","x3"],
            "rows": [[0,2,1,1,1,3,2,1],[-1,-1,0,0,0,1,1,1]]})";
    REQUIRE(coxlink_chambers(ctx.c, wf, &out) == COXLINK_OK);
    std::string ch(out);
    coxlink_free_string(out);
    CHECK(ch.find("\"x3\"") != std::string::npos);

    REQUIRE(coxlink_validate(ctx.c, wf, &out) == COXLINK_OK);
    std::string v2(out);
    coxlink_free_string(out);
    CHECK(v2.find("\"valid\": true") != std::string::npos);
}

TEST_CASE("blow-up and diagram through the C interface") {
    Ctx ctx;
    auto link = slurp(data_dir() + "/scenarios/X-py-link.json");
    char* out = nullptr;
    REQUIRE(coxlink_blowup(ctx.c, link.c_str(), nullptr, &out) == COXLINK_OK);
    std::string b(out);
    coxlink_free_string(out);
    CHECK(b.find("1/2(1,1,1)") != std::string::npos);

    char* rep = nullptr;
    REQUIRE(coxlink_run_scenario(ctx.c, link.c_str(), nullptr, &rep) == COXLINK_OK);
    const char* reports[1] = {rep};
    char* dot = nullptr;
    REQUIRE(coxlink_diagram(ctx.c, reports, 1, &dot) == COXLINK_OK);
    std::string d(dot);
    coxlink_free_string(dot);
    coxlink_free_string(rep);
    CHECK(d.find("digraph") != std::string::npos);
}
