// Command line front end over the coxlink C API.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coxlink.h"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    out << text;
}

std::string overrides_json(long prime, long long seed, long trials) {
    std::string s = "{";
    bool first = true;
    auto add = [&](const char* key, long long v) {
        if (v < 0) return;
        if (!first) s += ",";
        s += std::string("\"") + key + "\":" + std::to_string(v);
        first = false;
    };
    add("prime", prime);
    add("seed", seed);
    add("trials", trials);
    s += "}";
    return s;
}

struct Ctx {
    coxlink_ctx* c;
    Ctx() : c(coxlink_ctx_new()) {}
    ~Ctx() { coxlink_ctx_free(c); }
};

int report_error(const Ctx& ctx) {
    std::cerr << "error: " << coxlink_last_error(ctx.c) << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coxlink: Cox-ring 2-ray games and Sarkisov link replay"};
    app.require_subcommand(1);

    std::string file, out_path;
    long prime = -1;
    long long seed = -1;
    long trials = -1;
    std::vector<std::string> report_files;

    auto add_common = [&](CLI::App* cmd, bool with_field = true) {
        cmd->add_option("--out", out_path, "write output to a file");
        if (with_field) {
            cmd->add_option("--prime", prime, "field characteristic override");
            cmd->add_option("--seed", seed, "generic form seed override");
        }
    };

    auto* run = app.add_subcommand("run", "run a scenario and print its report");
    run->add_option("scenario", file, "scenario JSON file")->required();
    add_common(run);

    auto* diagram =
        app.add_subcommand("diagram", "combine run reports into a DOT digraph");
    diagram->add_option("reports", report_files, "report JSON files")->required();
    add_common(diagram, false);

    auto* count = app.add_subcommand("count", "point count of a scenario's locus");
    count->add_option("scenario", file, "scenario JSON file")->required();
    add_common(count);

    auto* chambers =
        app.add_subcommand("chambers", "GIT chamber structure of a presentation");
    chambers->add_option("presentation", file, "presentation JSON file")->required();
    add_common(chambers, false);

    auto* wellform = app.add_subcommand("wellform", "well-form a presentation");
    wellform->add_option("presentation", file, "presentation JSON file")->required();
    add_common(wellform, false);

    auto* validate = app.add_subcommand("validate", "validate a presentation");
    validate->add_option("presentation", file, "presentation JSON file")->required();
    add_common(validate, false);

    auto* blowup = app.add_subcommand("blowup", "blow up a scenario's link centre");
    blowup->add_option("scenario", file, "scenario JSON file")->required();
    add_common(blowup);

    auto* sing = app.add_subcommand(
        "sing", "classify coordinate points and sample quasi-smoothness");
    sing->add_option("scenario", file, "scenario JSON file")->required();
    sing->add_option("--trials", trials, "sample size (default 200)");
    add_common(sing);

    CLI11_PARSE(app, argc, argv);

    Ctx ctx;
    char* result = nullptr;
    std::string ov = overrides_json(prime, seed, trials);

    try {
        if (run->parsed()) {
            int rc = coxlink_run_scenario(ctx.c, slurp(file).c_str(), ov.c_str(),
                                          &result);
            if (rc == COXLINK_INVALID_INPUT) return report_error(ctx);
            emit(result, out_path);
            coxlink_free_string(result);
            return rc == COXLINK_OK ? 0 : 1;
        }
        if (diagram->parsed()) {
            std::vector<std::string> texts;
            std::vector<const char*> ptrs;
            for (const auto& f : report_files) texts.push_back(slurp(f));
            for (const auto& t : texts) ptrs.push_back(t.c_str());
            int rc = coxlink_diagram(ctx.c, ptrs.data(), ptrs.size(), &result);
            if (rc != COXLINK_OK) return report_error(ctx);
            emit(result, out_path);
            coxlink_free_string(result);
            return 0;
        }
        if (count->parsed()) {
            long long value = 0;
            int rc = coxlink_count(ctx.c, slurp(file).c_str(), ov.c_str(), &value);
            if (rc == COXLINK_INVALID_INPUT) return report_error(ctx);
            emit(std::to_string(value) + "\n", out_path);
            return rc == COXLINK_OK ? 0 : 1;
        }
        auto simple = [&](auto fn) {
            int rc = fn(ctx.c, slurp(file).c_str(), &result);
            if (rc != COXLINK_OK) return report_error(ctx);
            emit(result, out_path);
            coxlink_free_string(result);
            return 0;
        };
        if (chambers->parsed()) return simple(coxlink_chambers);
        if (wellform->parsed()) return simple(coxlink_wellform);
        if (validate->parsed()) return simple(coxlink_validate);
        if (blowup->parsed()) {
            int rc = coxlink_blowup(ctx.c, slurp(file).c_str(), ov.c_str(), &result);
            if (rc != COXLINK_OK) return report_error(ctx);
            emit(result, out_path);
            coxlink_free_string(result);
            return 0;
        }
        if (sing->parsed()) {
            int rc = coxlink_sing(ctx.c, slurp(file).c_str(), ov.c_str(), &result);
            if (rc != COXLINK_OK) return report_error(ctx);
            emit(result, out_path);
            coxlink_free_string(result);
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    }
    return 2;
}
