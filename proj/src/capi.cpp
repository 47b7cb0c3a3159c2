#include "coxlink.h"

#include <cstring>
#include <string>

#include "report.hpp"
#include "scenario.hpp"

using namespace coxlink;

extern "C" {

struct coxlink_ctx {
    std::string last_error;
};

unsigned coxlink_abi_version(void) { return 1; }

coxlink_ctx* coxlink_ctx_new(void) { return new coxlink_ctx(); }

void coxlink_ctx_free(coxlink_ctx* ctx) { delete ctx; }

const char* coxlink_last_error(const coxlink_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

void coxlink_free_string(char* s) { std::free(s); }

}  // extern "C"

namespace {

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

struct Overrides {
    std::optional<unsigned long> prime;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
};

Overrides parse_overrides(const char* text) {
    Overrides o;
    if (!text || !*text) return o;
    Json j = Json::parse(text);
    if (j.contains("prime")) o.prime = j["prime"].get<unsigned long>();
    if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trials")) o.trials = j["trials"].get<long>();
    return o;
}

CoxPresentation parse_presentation(const char* text) {
    Json j = Json::parse(text);
    CoxPresentation c;
    if (j.contains("rows")) {
        auto names = j.at("names").get<std::vector<std::string>>();
        c.vars = names;
        auto rows = j.at("rows");
        c.rank = rows.size();
        for (std::size_t v = 0; v < names.size(); ++v) {
            IntVector d;
            for (std::size_t r = 0; r < c.rank; ++r)
                d.push_back(Int(rows[r][v].get<long>()));
            c.degrees.push_back(d);
        }
    } else {
        c.rank = j.at("rank").get<std::size_t>();
        for (const auto& var : j.at("variables")) {
            c.vars.push_back(var.at("name").get<std::string>());
            IntVector d;
            for (const auto& x : var.at("degree")) d.push_back(Int(x.get<long>()));
            c.degrees.push_back(d);
        }
    }
    if (j.contains("irrelevant"))
        for (const auto& comp : j.at("irrelevant"))
            c.irrelevant.push_back(comp.get<std::vector<std::string>>());
    else
        c.irrelevant = {c.vars};
    return c;
}

Json presentation_out(const CoxPresentation& c) {
    Json out;
    out["rank"] = c.rank;
    Json names = Json::array();
    for (const auto& n : c.vars) names.push_back(n);
    out["names"] = names;
    Json rows = Json::array();
    for (std::size_t r = 0; r < c.rank; ++r) {
        Json row = Json::array();
        for (std::size_t v = 0; v < c.nvars(); ++v)
            row.push_back((long)c.degrees[v][r].get_si());
        rows.push_back(row);
    }
    out["rows"] = rows;
    Json irr = Json::array();
    for (const auto& comp : c.irrelevant) irr.push_back(comp);
    out["irrelevant"] = irr;
    return out;
}

template <class Fn>
int guarded(coxlink_ctx* ctx, Fn&& fn) {
    if (!ctx) return COXLINK_INVALID_INPUT;
    ctx->last_error.clear();
    try {
        return fn();
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return COXLINK_INVALID_INPUT;
    }
}

}  // namespace

extern "C" {

int coxlink_run_scenario(coxlink_ctx* ctx, const char* scenario_json,
                         const char* overrides_json, char** report_json) {
    return guarded(ctx, [&]() {
        if (!scenario_json || !report_json) throw std::invalid_argument("null argument");
        auto o = parse_overrides(overrides_json);
        auto sc = parse_scenario(scenario_json);
        auto rr = run_scenario(sc, o.prime, o.seed);
        *report_json = dup_string(report_text(rr));
        return rr.pass ? COXLINK_OK : COXLINK_EXPECTATION_FAILED;
    });
}

int coxlink_count(coxlink_ctx* ctx, const char* scenario_json,
                  const char* overrides_json, long long* out_count) {
    return guarded(ctx, [&]() {
        if (!scenario_json || !out_count) throw std::invalid_argument("null argument");
        auto o = parse_overrides(overrides_json);
        auto sc = parse_scenario(scenario_json);
        auto rr = run_scenario(sc, o.prime, o.seed);
        if (!rr.count)
            throw std::invalid_argument("scenario has no count action");
        *out_count = *rr.count;
        return rr.pass ? COXLINK_OK : COXLINK_EXPECTATION_FAILED;
    });
}

int coxlink_diagram(coxlink_ctx* ctx, const char* const* report_jsons, size_t n,
                    char** dot_out) {
    return guarded(ctx, [&]() {
        if (!report_jsons || !dot_out) throw std::invalid_argument("null argument");
        std::vector<Json> reports;
        for (size_t i = 0; i < n; ++i) reports.push_back(Json::parse(report_jsons[i]));
        *dot_out = dup_string(diagram_dot(reports));
        return COXLINK_OK;
    });
}

int coxlink_wellform(coxlink_ctx* ctx, const char* presentation_json,
                     char** out_json) {
    return guarded(ctx, [&]() {
        if (!presentation_json || !out_json)
            throw std::invalid_argument("null argument");
        auto c = parse_presentation(presentation_json);
        auto wf = well_form(c);
        Json out = presentation_out(wf.pres);
        Json changes = Json::array();
        for (const auto& [n, e] : wf.exponent_changes) {
            Json ch;
            ch["variable"] = n;
            ch["exponent"] = e;
            changes.push_back(ch);
        }
        out["exponent_changes"] = changes;
        *out_json = dup_string(out.dump(2) + "\n");
        return COXLINK_OK;
    });
}

int coxlink_chambers(coxlink_ctx* ctx, const char* presentation_json,
                     char** out_json) {
    return guarded(ctx, [&]() {
        if (!presentation_json || !out_json)
            throw std::invalid_argument("null argument");
        auto c = parse_presentation(presentation_json);
        auto fan = mori_chambers(c);
        Json out;
        Json rays = Json::array();
        for (std::size_t k = 0; k < fan.rays.size(); ++k) {
            Json r;
            Json dir = Json::array();
            for (const auto& x : fan.rays[k]) dir.push_back((long)x.get_si());
            r["ray"] = dir;
            std::vector<std::string> group;
            for (auto v : fan.groups[k]) group.push_back(c.vars[v]);
            r["variables"] = group;
            rays.push_back(r);
        }
        out["rays"] = rays;
        Json chambers = Json::array();
        for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
            Json ch;
            ch["between"] = Json::array({fan.chambers[i].first,
                                         fan.chambers[i].second});
            Json comps = Json::array();
            for (const auto& comp : irrelevant_ideal_of_chamber(c, fan, i))
                comps.push_back(comp);
            ch["irrelevant"] = comps;
            chambers.push_back(ch);
        }
        out["chambers"] = chambers;
        *out_json = dup_string(out.dump(2) + "\n");
        return COXLINK_OK;
    });
}

int coxlink_validate(coxlink_ctx* ctx, const char* presentation_json,
                     char** out_json) {
    return guarded(ctx, [&]() {
        if (!presentation_json || !out_json)
            throw std::invalid_argument("null argument");
        auto c = parse_presentation(presentation_json);
        auto violations = validate(c);
        Json out;
        out["valid"] = violations.empty();
        out["violations"] = violations;
        *out_json = dup_string(out.dump(2) + "\n");
        return COXLINK_OK;
    });
}

int coxlink_blowup(coxlink_ctx* ctx, const char* scenario_json,
                   const char* overrides_json, char** out_json) {
    return guarded(ctx, [&]() {
        if (!scenario_json || !out_json) throw std::invalid_argument("null argument");
        auto o = parse_overrides(overrides_json);
        auto sc = parse_scenario(scenario_json);
        auto model = instantiate(sc, o.prime.value_or(sc.prime),
                                 o.seed.value_or(sc.seed));
        const Json& j = sc.raw;
        Json link;
        for (const auto& act : j.at("actions"))
            if (act.at("op") == "link") {
                link = act;
                break;
            }
        if (link.is_null())
            throw std::invalid_argument("scenario has no link action to blow up");
        BlowupSpec spec;
        spec.centre = link.at("centre").get<std::vector<std::string>>();
        spec.exceptional = link.at("exceptional").get<std::string>();
        if (link.contains("kawamata")) {
            auto k = link.at("kawamata").get<std::vector<unsigned long>>();
            spec.kawamata = std::make_pair(k.at(0), k.at(1));
        }
        if (link.contains("base"))
            spec.base = link.at("base").get<std::vector<std::string>>();
        auto br = blow_up(model, spec);
        Json out;
        out["centre_type"] = br.centre_type.kind_str();
        Json row;
        for (const auto& [n, w] : br.stacky_row) row[n] = w;
        out["stacky_row"] = row;
        out["presentation"] = presentation_out(br.model.ambient);
        Json eqs = Json::array();
        VarSet ring{br.model.ambient.vars};
        for (const auto& e : br.model.equations)
            eqs.push_back(poly_str(br.model.field, e, ring));
        out["equations"] = eqs;
        *out_json = dup_string(out.dump(2) + "\n");
        return COXLINK_OK;
    });
}

int coxlink_sing(coxlink_ctx* ctx, const char* scenario_json,
                 const char* overrides_json, char** out_json) {
    return guarded(ctx, [&]() {
        if (!scenario_json || !out_json) throw std::invalid_argument("null argument");
        auto o = parse_overrides(overrides_json);
        auto sc = parse_scenario(scenario_json);
        auto model = instantiate(sc, o.prime.value_or(sc.prime),
                                 o.seed.value_or(sc.seed));
        Json out;
        Json cl = Json::array();
        for (const auto& pt : coordinate_points_on(model)) {
            auto rep = coordinate_point_type(model, pt);
            Json s;
            s["point"] = rep.point;
            s["kind"] = rep.kind_str();
            s["tangents"] = rep.tangents;
            Json res = Json::array();
            for (auto r : rep.ambient_residues) res.push_back(r);
            s["ambient_residues"] = res;
            if (!rep.detail.empty()) s["detail"] = rep.detail;
            cl.push_back(s);
        }
        out["points"] = cl;
        long trials = o.trials.value_or(200);
        auto verdict = quasi_smooth_check(model, trials, o.seed.value_or(sc.seed));
        Json q;
        q["witness_found"] = verdict.witness_found;
        if (verdict.witness_found) {
            Json w = Json::array();
            for (auto x : verdict.witness) w.push_back(x);
            q["witness"] = w;
            q["witness_location"] = verdict.witness_location;
        }
        q["points_checked"] = verdict.points_checked;
        q["slices_used"] = verdict.slices_used;
        out["quasi_smooth"] = q;
        *out_json = dup_string(out.dump(2) + "\n");
        return COXLINK_OK;
    });
}

}  // extern "C"
