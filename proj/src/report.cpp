#include "report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coxlink {

namespace {

Json presentation_json(const CoxPresentation& c) {
    Json out;
    out["rank"] = c.rank;
    Json vars = Json::array();
    for (std::size_t i = 0; i < c.nvars(); ++i) {
        Json v;
        v["name"] = c.vars[i];
        Json deg = Json::array();
        for (const auto& x : c.degrees[i]) deg.push_back((long)x.get_si());
        v["degree"] = deg;
        vars.push_back(v);
    }
    out["variables"] = vars;
    Json irr = Json::array();
    for (const auto& comp : c.irrelevant) irr.push_back(comp);
    out["irrelevant"] = irr;
    return out;
}

// canonical fingerprint used for cross-report identification
Json canonical_json(const Subvariety& v, const std::vector<SingularityReport>& sings) {
    Json out;
    auto cp = canonical_presentation(v.ambient);
    out["presentation"] = cp.str();
    std::vector<std::string> degs;
    for (const auto& e : v.equations) {
        auto rep = multidegree_of(e, v.ambient.degrees);
        if (rep.degree) degs.push_back(vec_str(mat_apply(cp.row_transform, *rep.degree)));
    }
    std::sort(degs.begin(), degs.end());
    out["equation_degrees"] = degs;
    std::vector<std::string> kinds;
    for (const auto& rep : sings)
        if (rep.kind != SingKind::smooth) kinds.push_back(rep.kind_str());
    std::sort(kinds.begin(), kinds.end());
    out["singularities"] = kinds;
    return out;
}

template <class T>
Json long_array(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

std::string type_label(const std::vector<long>& t) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
    return os.str();
}

}  // namespace

Json make_report(const RunResult& rr) {
    Json out;
    out["coxlink_report"] = 1;
    out["generator"] = kGenformVersion;
    out["scenario"] = rr.scenario;
    out["prime"] = rr.prime;
    out["seed"] = rr.seed;
    out["replicas"] = long_array(rr.replica_seeds);
    if (!rr.model_names.empty()) out["models"] = rr.model_names;

    if (rr.trace) {
        const auto& tr = *rr.trace;
        Json steps = Json::array();
        std::size_t crossing_index = 1;  // blow-up model is models[1]
        auto model_at = [&](std::size_t i) -> std::string {
            if (rr.model_names.empty()) return "m" + std::to_string(i);
            return rr.model_names[std::min(i, rr.model_names.size() - 1)];
        };
        for (const auto& st : tr.steps) {
            Json sj;
            sj["kind"] = st.kind;
            if (st.kind == "blowup") {
                sj["from"] = model_at(1);
                sj["to"] = model_at(0);
                if (st.centre_type) {
                    sj["centre"] = st.centre_type->point;
                    sj["centre_type"] = st.centre_type->kind_str();
                    sj["ambient_residues"] = long_array(st.centre_type->ambient_residues);
                    sj["tangents"] = st.centre_type->tangents;
                }
                Json row;
                for (const auto& [n, w] : st.stacky_row) row[n] = w;
                sj["stacky_row"] = row;
            } else if (st.kind == "flop" || st.kind == "flip") {
                sj["from"] = model_at(crossing_index);
                sj["to"] = model_at(crossing_index + 1);
                ++crossing_index;
                if (st.crossing) {
                    Json wall = Json::array();
                    for (const auto& x : st.crossing->wall)
                        wall.push_back((long)x.get_si());
                    sj["wall"] = wall;
                    sj["ambient_type"] = long_array(st.crossing->signed_type);
                }
                if (st.restricted) {
                    sj["count"] = st.restricted->count;
                    sj["restricted_type"] = long_array(st.restricted->restricted_type);
                    sj["eliminated"] = st.restricted->eliminated;
                    if (!st.restricted->note.empty()) sj["note"] = st.restricted->note;
                }
            } else if (st.kind == "contraction") {
                sj["from"] = model_at(crossing_index);
                sj["to"] = model_at(crossing_index + 1);
                if (st.crossing) sj["divisor"] = st.crossing->contracted_var;
                Json imgs;
                for (const auto& [n, m] : st.images) imgs[n] = m;
                sj["map"] = imgs;
                sj["image_point"] = st.image_point;
                if (!st.image_point_type.empty())
                    sj["image_point_type"] = st.image_point_type;
            } else if (st.kind == "fibration") {
                sj["from"] = model_at(crossing_index);
                sj["to"] = "P1";
                sj["base"] = st.base_vars;
            } else if (st.kind == "elimination") {
                sj["variable"] = st.eliminated_var;
                sj["dropped"] = st.equations_dropped;
            }
            steps.push_back(sj);
        }
        out["steps"] = steps;

        Json ep;
        if (!rr.model_names.empty()) ep["name"] = rr.model_names.back();
        ep["presentation"] = presentation_json(tr.endpoint.ambient);
        Json eqdeg = Json::array();
        for (const auto& e : tr.endpoint.equations) {
            auto rep = multidegree_of(e, tr.endpoint.ambient.degrees);
            Json d = Json::array();
            if (rep.degree)
                for (const auto& x : *rep.degree) d.push_back((long)x.get_si());
            eqdeg.push_back(d);
        }
        ep["equation_degrees"] = eqdeg;
        Json sings = Json::array();
        for (const auto& rep : tr.endpoint_sings) {
            Json s;
            s["point"] = rep.point;
            s["kind"] = rep.kind_str();
            sings.push_back(s);
        }
        ep["singularities"] = sings;
        if (tr.endpoint_profile) {
            Json pf;
            pf["base"] = tr.endpoint_profile->base_vars;
            pf["fibre_vars"] = tr.endpoint_profile->fibre_vars;
            pf["fibre_weights"] = long_array(tr.endpoint_profile->fibre_weights);
            pf["fibre_degrees"] =
                long_array(tr.endpoint_profile->fibre_equation_degrees);
            pf["cubic_surface"] = tr.endpoint_profile->cubic_surface;
            ep["profile"] = pf;
        }
        ep["canonical"] = canonical_json(tr.endpoint, tr.endpoint_sings);
        out["endpoint"] = ep;
        if (!tr.annotations.empty()) out["annotations"] = tr.annotations;
    }
    if (rr.count) out["count"] = *rr.count;
    if (rr.quasi) {
        Json q;
        q["witness_found"] = rr.quasi->witness_found;
        if (rr.quasi->witness_found) {
            q["witness"] = long_array(rr.quasi->witness);
            q["witness_location"] = rr.quasi->witness_location;
        }
        q["points_checked"] = rr.quasi->points_checked;
        q["slices_used"] = rr.quasi->slices_used;
        out["quasi_smooth"] = q;
    }
    if (!rr.classified.empty()) {
        Json cl = Json::array();
        for (const auto& rep : rr.classified) {
            Json s;
            s["point"] = rep.point;
            s["kind"] = rep.kind_str();
            if (!rep.tangents.empty()) s["tangents"] = rep.tangents;
            s["ambient_residues"] = long_array(rep.ambient_residues);
            cl.push_back(s);
        }
        out["classified"] = cl;
    }
    Json exps = Json::array();
    for (const auto& e : rr.expectations) {
        Json ej;
        ej["id"] = e.id;
        ej["expected"] = e.expected;
        ej["actual"] = e.actual;
        ej["pass"] = e.pass;
        exps.push_back(ej);
    }
    out["expectations"] = exps;
    out["pass"] = rr.pass;
    return out;
}

std::string report_text(const RunResult& rr) { return make_report(rr).dump(2) + "\n"; }

std::string diagram_dot(const std::vector<Json>& reports) {
    if (reports.empty()) throw std::invalid_argument("diagram: no reports given");
    struct Edge {
        std::string from, to, style, label;
        bool undirected = false;
        bool operator<(const Edge& o) const {
            return std::tie(from, to, label, style) <
                   std::tie(o.from, o.to, o.label, o.style);
        }
    };
    std::set<std::string> nodes;
    std::vector<Edge> edges;
    std::map<std::string, Json> canon;  // model name -> canonical fingerprint
    struct Endpoint {
        std::string name;
        Json canonical;
    };
    std::vector<Endpoint> endpoints;

    for (const auto& rep : reports) {
        if (!rep.contains("steps"))
            throw std::invalid_argument("diagram: report carries no link trace");
        for (const auto& m : rep.value("models", Json::array()))
            nodes.insert(m.get<std::string>());
        for (const auto& st : rep.at("steps")) {
            std::string kind = st.at("kind").get<std::string>();
            if (kind == "elimination") continue;
            std::string from = st.value("from", "");
            std::string to = st.value("to", "");
            if (from.empty() || to.empty()) continue;
            nodes.insert(from);
            nodes.insert(to);
            Edge e;
            e.from = from;
            e.to = to;
            if (kind == "blowup") {
                e.style = "solid";
                e.label = "blow-up " + st.value("centre_type", "");
            } else if (kind == "flop") {
                e.style = "dashed";
                std::vector<long> t = st.value("restricted_type", std::vector<long>{});
                e.label = std::to_string(st.value("count", 0L)) + " flops " +
                          type_label(t);
            } else if (kind == "flip") {
                e.style = "dashed";
                std::vector<long> t = st.value("restricted_type", std::vector<long>{});
                e.label = "flip " + type_label(t);
            } else if (kind == "contraction") {
                e.style = "solid";
                std::string ty = st.value("image_point_type", "");
                e.label = ty.empty() ? "contraction" : "blow-up " + ty;
            } else if (kind == "fibration") {
                e.style = "solid";
                e.label = "dP3";
            }
            edges.push_back(e);
        }
        if (rep.contains("endpoint") && rep.at("endpoint").contains("canonical")) {
            std::string name = rep.at("endpoint").value("name", "");
            Json c = rep.at("endpoint").at("canonical");
            if (!name.empty()) {
                if (canon.count(name) && canon[name] != c)
                    throw std::runtime_error(
                        "diagram: inconsistent identification of model " + name);
                canon[name] = c;
                endpoints.push_back({name, c});
                // endpoints fibred over the line carry their own arrow
                if (rep.at("endpoint").contains("profile")) {
                    Edge e;
                    e.from = name;
                    e.to = "P1";
                    e.style = "solid";
                    e.label = rep.at("endpoint").at("profile").value("cubic_surface",
                                                                     false)
                                  ? "dP3"
                                  : "fibration";
                    nodes.insert("P1");
                    edges.push_back(e);
                }
            }
        }
    }
    // equality edges between distinct endpoint models with equal fingerprints
    std::set<std::pair<std::string, std::string>> iso_done;
    for (std::size_t i = 0; i < endpoints.size(); ++i)
        for (std::size_t j = i + 1; j < endpoints.size(); ++j) {
            const auto& a = endpoints[i];
            const auto& b = endpoints[j];
            if (a.name == b.name || a.canonical != b.canonical) continue;
            auto key = std::minmax(a.name, b.name);
            if (!iso_done.insert(key).second) continue;
            Edge e;
            e.from = key.first;
            e.to = key.second;
            e.style = "bold";
            e.label = "iso";
            e.undirected = true;
            edges.push_back(e);
        }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                                return a.from == b.from && a.to == b.to &&
                                       a.label == b.label && a.style == b.style;
                            }),
                edges.end());
    std::ostringstream os;
    os << "digraph sarkisov_links {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box];\n";
    for (const auto& n : nodes) os << "  \"" << n << "\";\n";
    for (const auto& e : edges) {
        os << "  \"" << e.from << "\" -> \"" << e.to << "\" [style=" << e.style;
        if (e.undirected) os << ", dir=none";
        os << ", label=\"" << e.label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace coxlink
