#include "scenario.hpp"

#include <algorithm>
#include <sstream>

#include "pfaffian.hpp"

namespace coxlink {

namespace {

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

template <class T>
std::string vec_to_string(const std::vector<T>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    Json j = Json::parse(text);  // throws nlohmann parse_error with position
    if (!j.contains("name") || !j["name"].is_string())
        throw std::invalid_argument("scenario: missing name");
    sc.name = j["name"].get<std::string>();
    if (j.contains("field")) {
        const auto& f = j["field"];
        if (f.contains("prime")) sc.prime = f["prime"].get<unsigned long>();
        if (f.contains("seed")) sc.seed = f["seed"].get<std::uint64_t>();
        if (f.contains("replicas")) sc.replicas = f["replicas"].get<int>();
    }
    if (!j.contains("ambient")) throw std::invalid_argument("scenario: missing ambient");
    if (!j.contains("equations") && !j.contains("pfaffian"))
        throw std::invalid_argument("scenario: needs equations or a pfaffian block");
    sc.raw = j;
    return sc;
}

Subvariety instantiate(const Scenario& sc, unsigned long prime, std::uint64_t seed) {
    const Json& j = sc.raw;
    Subvariety v;
    v.field = Fp{prime};
    v.provenance = sc.name;

    const auto& amb = j.at("ambient");
    v.ambient.rank = amb.contains("rank") ? amb.at("rank").get<std::size_t>()
                                          : amb.at("variables")[0].at("degree").size();
    for (const auto& var : amb.at("variables")) {
        v.ambient.vars.push_back(var.at("name").get<std::string>());
        IntVector d;
        for (const auto& x : var.at("degree")) d.push_back(Int(x.get<long>()));
        if (d.size() != v.ambient.rank)
            throw std::invalid_argument("scenario: degree length != rank");
        v.ambient.degrees.push_back(d);
    }
    if (amb.contains("irrelevant")) {
        for (const auto& comp : amb.at("irrelevant"))
            v.ambient.irrelevant.push_back(comp.get<std::vector<std::string>>());
    } else {
        v.ambient.irrelevant = {v.ambient.vars};
    }
    auto violations = validate(v.ambient);
    if (!violations.empty())
        throw std::invalid_argument("scenario: invalid ambient: " + violations[0]);

    std::map<std::string, FormBinding<Fp>> forms;
    if (j.contains("forms")) {
        for (const auto& fj : j.at("forms")) {
            GenericFormSpec spec;
            spec.name = fj.at("name").get<std::string>();
            spec.slots = fj.at("slots").get<std::vector<std::string>>();
            spec.seed = seed;
            if (fj.at("degree").is_array()) {
                for (const auto& x : fj.at("degree"))
                    spec.multidegree.push_back(Int(x.get<long>()));
            } else {
                spec.multidegree = IntVector{Int(fj.at("degree").get<long>())};
            }
            // forms are generated over unit-weight slots
            std::vector<IntVector> slot_degrees(spec.slots.size(),
                                                IntVector(spec.multidegree.size(),
                                                          Int(0)));
            for (auto& d : slot_degrees) d[0] = 1;
            forms.emplace(spec.name,
                          FormBinding<Fp>{spec.slots,
                                          gen_generic(v.field, spec, slot_degrees)});
        }
    }

    VarSet ring{v.ambient.vars};
    if (j.contains("pfaffian")) {
        const auto& pj = j.at("pfaffian");
        if (pj.size() != 10)
            throw std::invalid_argument(
                "scenario: pfaffian block needs the ten upper entries");
        PfaffianFamily<Fp> fam;
        for (std::size_t k = 0; k < 10; ++k)
            fam.m[k] = parse(v.field, pj[k].get<std::string>(), ring, forms);
        auto pf = pfaffians5(v.field, fam);
        v.equations.assign(pf.begin(), pf.end());
        v.codim = 3;
    } else {
        for (const auto& e : j.at("equations"))
            v.equations.push_back(parse(v.field, e.get<std::string>(), ring, forms));
        v.codim = v.equations.size();
    }
    if (j.contains("codim")) v.codim = j.at("codim").get<std::size_t>();
    if (auto bad = homogeneity_violation(v))
        throw std::invalid_argument("scenario: " + *bad);
    return v;
}

namespace {

struct StepSummary {
    std::string kind;
    long count = 0;
    std::vector<long> type;
    bool operator==(const StepSummary&) const = default;
};

std::vector<StepSummary> summarize(const LinkTrace& tr) {
    std::vector<StepSummary> out;
    for (const auto& st : tr.steps) {
        if (st.kind == "flop" || st.kind == "flip") {
            out.push_back({st.kind, st.restricted ? st.restricted->count : 0,
                           st.restricted ? st.restricted->restricted_type
                                         : std::vector<long>{}});
        } else if (st.kind == "contraction" || st.kind == "fibration" ||
                   st.kind == "elimination") {
            out.push_back({st.kind, 0, {}});
        }
    }
    return out;
}

void expect_row(RunResult& rr, const std::string& id, const std::string& want,
                const std::string& got) {
    Expectation e;
    e.id = id;
    e.expected = want;
    e.actual = got;
    e.pass = want == got;
    rr.pass &= e.pass;
    rr.expectations.push_back(e);
}

std::string point_key(std::vector<std::string> pt) {
    std::sort(pt.begin(), pt.end());
    return join(pt);
}

void check_link_expectations(RunResult& rr, const Json& exp, const LinkTrace& tr,
                             const std::string& prefix) {
    if (exp.contains("centre_type")) {
        std::string got = tr.steps.empty() || !tr.steps[0].centre_type
                              ? ""
                              : tr.steps[0].centre_type->kind_str();
        expect_row(rr, prefix + ".centre_type", exp["centre_type"].get<std::string>(),
                   got);
    }
    if (exp.contains("stacky_row")) {
        std::map<std::string, long> got(tr.steps[0].stacky_row.begin(),
                                        tr.steps[0].stacky_row.end());
        for (auto it = exp["stacky_row"].begin(); it != exp["stacky_row"].end(); ++it) {
            long want = it.value().get<long>();
            expect_row(rr, prefix + ".stacky_row." + it.key(), std::to_string(want),
                       got.count(it.key()) ? std::to_string(got[it.key()]) : "absent");
        }
    }
    if (exp.contains("steps")) {
        std::vector<const TraceStep*> game_steps;
        for (const auto& st : tr.steps)
            if (st.kind == "flop" || st.kind == "flip" || st.kind == "contraction" ||
                st.kind == "fibration")
                game_steps.push_back(&st);
        std::size_t i = 0;
        for (const auto& ej : exp["steps"]) {
            std::string id = prefix + ".steps[" + std::to_string(i) + "]";
            if (i >= game_steps.size()) {
                expect_row(rr, id, ej.at("kind").get<std::string>(), "absent");
                ++i;
                continue;
            }
            const TraceStep& st = *game_steps[i];
            expect_row(rr, id + ".kind", ej.at("kind").get<std::string>(), st.kind);
            if (ej.contains("count"))
                expect_row(rr, id + ".count", std::to_string(ej["count"].get<long>()),
                           st.restricted ? std::to_string(st.restricted->count) : "-");
            if (ej.contains("type"))
                expect_row(rr, id + ".type",
                           vec_to_string(ej["type"].get<std::vector<long>>()),
                           st.restricted
                               ? vec_to_string(st.restricted->restricted_type)
                               : "-");
            if (ej.contains("negative")) {
                std::vector<long> neg;
                if (st.restricted)
                    for (long x : st.restricted->restricted_type)
                        if (x < 0) neg.push_back(x);
                std::sort(neg.begin(), neg.end());
                auto want = ej["negative"].get<std::vector<long>>();
                std::sort(want.begin(), want.end());
                expect_row(rr, id + ".negative", vec_to_string(want),
                           vec_to_string(neg));
            }
            if (ej.contains("divisor"))
                expect_row(rr, id + ".divisor", ej["divisor"].get<std::string>(),
                           st.crossing ? st.crossing->contracted_var : "-");
            if (ej.contains("map")) {
                std::map<std::string, std::string> got(st.images.begin(),
                                                       st.images.end());
                for (auto it = ej["map"].begin(); it != ej["map"].end(); ++it)
                    expect_row(rr, id + ".map." + it.key(),
                               it.value().get<std::string>(),
                               got.count(it.key()) ? got[it.key()] : "absent");
            }
            if (ej.contains("image_point_type"))
                expect_row(rr, id + ".image_point_type",
                           ej["image_point_type"].get<std::string>(),
                           st.image_point_type);
            if (ej.contains("base"))
                expect_row(rr, id + ".base",
                           join(ej["base"].get<std::vector<std::string>>()),
                           join(st.base_vars));
            ++i;
        }
    }
    if (exp.contains("endpoint")) {
        const auto& ej = exp["endpoint"];
        const auto& ep = tr.endpoint;
        if (ej.contains("weights_sorted")) {
            std::vector<long> ws;
            for (const auto& d : ep.ambient.degrees)
                if (ep.ambient.rank == 1) ws.push_back(d[0].get_si());
            std::sort(ws.begin(), ws.end());
            expect_row(rr, prefix + ".endpoint.weights",
                       vec_to_string(ej["weights_sorted"].get<std::vector<long>>()),
                       vec_to_string(ws));
        }
        if (ej.contains("equation_count"))
            expect_row(rr, prefix + ".endpoint.equations",
                       std::to_string(ej["equation_count"].get<std::size_t>()),
                       std::to_string(ep.equations.size()));
        if (ej.contains("equation_degrees") && ep.ambient.rank == 1) {
            std::vector<long> ds;
            for (const auto& e : ep.equations) {
                auto rep = multidegree_of(e, ep.ambient.degrees);
                ds.push_back(rep.degree ? (*rep.degree)[0].get_si() : -1);
            }
            std::sort(ds.begin(), ds.end());
            expect_row(rr, prefix + ".endpoint.equation_degrees",
                       vec_to_string(ej["equation_degrees"].get<std::vector<long>>()),
                       vec_to_string(ds));
        }
        if (ej.contains("singularities")) {
            std::map<std::string, std::string> got;
            for (const auto& rep : tr.endpoint_sings)
                if (rep.kind != SingKind::smooth)
                    got[point_key(rep.point)] = rep.kind_str();
            for (auto it = ej["singularities"].begin(); it != ej["singularities"].end();
                 ++it)
                expect_row(rr, prefix + ".endpoint.sing." + it.key(),
                           it.value().get<std::string>(),
                           got.count(it.key()) ? got[it.key()] : "absent");
            expect_row(rr, prefix + ".endpoint.sing_count",
                       std::to_string(ej["singularities"].size()),
                       std::to_string(got.size()));
        }
        if (ej.contains("fibre")) {
            const auto& fj = ej["fibre"];
            if (!tr.endpoint_profile) {
                expect_row(rr, prefix + ".endpoint.fibre", "profile", "absent");
            } else {
                const auto& pf = *tr.endpoint_profile;
                if (fj.contains("weights")) {
                    auto ws = pf.fibre_weights;
                    std::sort(ws.begin(), ws.end());
                    expect_row(rr, prefix + ".endpoint.fibre.weights",
                               vec_to_string(fj["weights"].get<std::vector<long>>()),
                               vec_to_string(ws));
                }
                if (fj.contains("degrees")) {
                    auto ds = pf.fibre_equation_degrees;
                    std::sort(ds.begin(), ds.end());
                    expect_row(rr, prefix + ".endpoint.fibre.degrees",
                               vec_to_string(fj["degrees"].get<std::vector<long>>()),
                               vec_to_string(ds));
                }
                if (fj.contains("cubic_surface"))
                    expect_row(rr, prefix + ".endpoint.fibre.cubic_surface",
                               fj["cubic_surface"].get<bool>() ? "true" : "false",
                               pf.cubic_surface ? "true" : "false");
            }
        }
    }
}

BlowupSpec blowup_spec_of(const Json& act) {
    BlowupSpec spec;
    spec.centre = act.at("centre").get<std::vector<std::string>>();
    spec.exceptional = act.at("exceptional").get<std::string>();
    if (act.contains("kawamata")) {
        auto k = act.at("kawamata").get<std::vector<unsigned long>>();
        spec.kawamata = std::make_pair(k.at(0), k.at(1));
    }
    if (act.contains("base")) spec.base = act.at("base").get<std::vector<std::string>>();
    return spec;
}

}  // namespace

RunResult run_scenario(const Scenario& sc, std::optional<unsigned long> prime_override,
                       std::optional<std::uint64_t> seed_override) {
    RunResult rr;
    rr.scenario = sc.name;
    rr.prime = prime_override.value_or(sc.prime);
    rr.seed = seed_override.value_or(sc.seed);
    int replicas = std::max(1, sc.replicas);
    for (int k = 0; k < replicas; ++k) rr.replica_seeds.push_back(rr.seed + k);

    const Json& j = sc.raw;
    if (!j.contains("actions") || j.at("actions").empty())
        throw std::invalid_argument("scenario: no actions");

    std::size_t ai = 0;
    for (const auto& act : j.at("actions")) {
        std::string op = act.at("op").get<std::string>();
        std::string prefix = "actions[" + std::to_string(ai) + "]";
        if (op == "link") {
            BlowupSpec spec = blowup_spec_of(act);
            std::vector<std::uint64_t> seeds = rr.replica_seeds;
            std::optional<LinkTrace> primary;
            int extra = 0;
            std::vector<std::vector<StepSummary>> seen;
            for (std::size_t k = 0; k < seeds.size(); ++k) {
                auto model = instantiate(sc, rr.prime, seeds[k]);
                auto tr = run_link(model, spec);
                if (k == 0) primary = tr;
                seen.push_back(summarize(tr));
                if (seen.back() != seen.front()) {
                    if (extra < 3) {
                        seeds.push_back(rr.seed + seeds.size());
                        ++extra;
                    } else {
                        throw std::runtime_error("scenario " + sc.name +
                                                 ": counts unstable across seeds");
                    }
                }
            }
            rr.trace = primary;
            if (act.contains("expect"))
                check_link_expectations(rr, act.at("expect"), *primary, prefix);
        } else if (op == "count") {
            std::vector<std::uint64_t> seeds = rr.replica_seeds;
            std::optional<long> value;
            int extra = 0;
            for (std::size_t k = 0; k < seeds.size(); ++k) {
                auto model = instantiate(sc, rr.prime, seeds[k]);
                PolyIdeal ideal{model.field, model.equations, model.ambient};
                long c = count_points(ideal);
                if (!value) value = c;
                if (c != *value) {
                    if (extra < 3) {
                        seeds.push_back(rr.seed + seeds.size());
                        ++extra;
                    } else {
                        throw std::runtime_error("scenario " + sc.name +
                                                 ": counts unstable across seeds");
                    }
                }
            }
            rr.count = value;
            if (act.contains("expect"))
                expect_row(rr, prefix + ".count",
                           std::to_string(act.at("expect").get<long>()),
                           std::to_string(*value));
        } else if (op == "quasi_smooth") {
            long trials = act.contains("trials") ? act.at("trials").get<long>() : 200;
            auto model = instantiate(sc, rr.prime, rr.seed);
            rr.quasi = quasi_smooth_check(model, trials, rr.seed);
            if (act.contains("expect"))
                expect_row(rr, prefix + ".quasi_smooth",
                           act.at("expect").get<std::string>(),
                           rr.quasi->witness_found ? "witness" : "no_witness");
        } else if (op == "classify") {
            auto model = instantiate(sc, rr.prime, rr.seed);
            rr.classified.clear();
            for (const auto& pt : coordinate_points_on(model))
                rr.classified.push_back(coordinate_point_type(model, pt));
            if (act.contains("expect")) {
                std::map<std::string, std::string> got;
                for (const auto& rep : rr.classified)
                    got[point_key(rep.point)] = rep.kind_str();
                for (auto it = act.at("expect").begin(); it != act.at("expect").end();
                     ++it)
                    expect_row(rr, prefix + ".classify." + it.key(),
                               it.value().get<std::string>(),
                               got.count(it.key()) ? got[it.key()] : "absent");
            }
        } else {
            throw std::invalid_argument("scenario: unknown action op '" + op + "'");
        }
        ++ai;
    }

    if (j.contains("models") && rr.trace) {
        const auto& mj = j.at("models");
        std::string start = mj.value("start", sc.name);
        std::string prefix = mj.value("prefix", sc.name + "_");
        std::string endpoint = mj.value("endpoint", sc.name + "_end");
        bool has_contraction = false;
        for (const auto& st : rr.trace->steps)
            has_contraction |= (st.kind == "contraction");
        rr.model_names.push_back(start);
        int k = 1;
        rr.model_names.push_back(prefix + std::to_string(k));
        for (const auto& st : rr.trace->steps)
            if (st.kind == "flop" || st.kind == "flip")
                rr.model_names.push_back(prefix + std::to_string(++k));
        if (has_contraction)
            rr.model_names.push_back(endpoint);
        else
            rr.model_names.back() = endpoint;  // the fibration model is the endpoint
    }
    return rr;
}

}  // namespace coxlink
