#include "simpla/json_io.hpp"

#include <fstream>
#include <sstream>

#include "simpla/errors.hpp"

namespace simpla {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& msg) {
    throw ModelError(origin + ": " + msg);
}

std::vector<std::string> string_list(const json& j, const std::string& origin,
                                     const std::string& where) {
    if (!j.is_array()) bad(origin, where + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) bad(origin, where + " must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

SimplicialModel simplicial_from_json(const json& j, const std::string& origin) {
    SimplicialModel C;
    if (!j.contains("agents")) bad(origin, "missing \"agents\"");
    C.agents = string_list(j.at("agents"), origin, "\"agents\"");

    if (!j.contains("vertices")) bad(origin, "missing \"vertices\"");
    if (!j.at("vertices").is_array()) bad(origin, "\"vertices\" must be an array");
    for (const auto& v : j.at("vertices")) {
        if (!v.is_object() || !v.contains("id") || !v.contains("color"))
            bad(origin, "each vertex needs \"id\" and \"color\"");
        auto id = v.at("id").get<std::string>();
        if (C.color.count(id)) bad(origin, "vertex '" + id + "' declared twice");
        C.vertices.push_back(id);
        C.color[id] = v.at("color").get<std::string>();
    }

    if (!j.contains("facets")) bad(origin, "missing \"facets\"");
    if (!j.at("facets").is_array()) bad(origin, "\"facets\" must be an array");
    int fi = 0;
    for (const auto& f : j.at("facets")) {
        auto vs = string_list(f, origin, "facets[" + std::to_string(fi) + "]");
        C.facet_list.emplace_back(vs.begin(), vs.end());
        ++fi;
    }

    if (j.contains("labeling")) {
        if (!j.at("labeling").is_object()) bad(origin, "\"labeling\" must be an object");
        for (const auto& [p, vs] : j.at("labeling").items()) {
            auto list = string_list(vs, origin, "labeling[\"" + p + "\"]");
            C.labeling[p] = {list.begin(), list.end()};
        }
    }

    if (j.contains("facet_names")) {
        if (!j.at("facet_names").is_object()) bad(origin, "\"facet_names\" must be an object");
        for (const auto& [name, idx] : j.at("facet_names").items()) {
            if (!idx.is_number_integer())
                bad(origin, "facet_names[\"" + name + "\"] must be an index");
            C.facet_names[name] = idx.get<int>();
        }
    }

    C.finalize();
    return C;
}

KripkeModel kripke_from_json(const json& j, const std::string& origin) {
    KripkeModel M;
    if (!j.contains("agents")) bad(origin, "missing \"agents\"");
    M.agents = string_list(j.at("agents"), origin, "\"agents\"");

    if (!j.contains("worlds")) bad(origin, "missing \"worlds\"");
    if (!j.at("worlds").is_array()) bad(origin, "\"worlds\" must be an array");
    for (const auto& w : j.at("worlds")) {
        if (!w.is_object() || !w.contains("id") || !w.contains("domain"))
            bad(origin, "each world needs \"id\" and \"domain\"");
        auto id = w.at("id").get<std::string>();
        if (M.domain.count(id)) bad(origin, "world '" + id + "' declared twice");
        M.worlds.push_back(id);
        auto dom = string_list(w.at("domain"), origin, "domain of '" + id + "'");
        M.domain[id] = {dom.begin(), dom.end()};
        if (w.contains("interp")) {
            if (!w.at("interp").is_object())
                bad(origin, "\"interp\" of '" + id + "' must be an object");
            for (const auto& [p, as] : w.at("interp").items()) {
                auto ext = string_list(as, origin, "interp[\"" + p + "\"] of '" + id + "'");
                M.interp[p][id] = {ext.begin(), ext.end()};
            }
        }
    }

    if (j.contains("relations")) {
        if (!j.at("relations").is_object()) bad(origin, "\"relations\" must be an object");
        for (const auto& [a, pairs] : j.at("relations").items()) {
            if (!pairs.is_array()) bad(origin, "relations[\"" + a + "\"] must be an array");
            for (const auto& pr : pairs) {
                if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
                    bad(origin, "relations[\"" + a + "\"] must hold [from, to] pairs");
                M.rel[a].insert({pr[0].get<std::string>(), pr[1].get<std::string>()});
            }
        }
    }

    M.finalize();
    return M;
}

}  // namespace

ModelVariant parse_model(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad(origin, std::string("not valid JSON (") + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        bad(origin, "top level must be an object with a \"kind\" string");
    auto kind = j.at("kind").get<std::string>();
    if (kind == "simplicial") return simplicial_from_json(j, origin);
    if (kind == "kripke") return kripke_from_json(j, origin);
    bad(origin, "unknown kind '" + kind + "' (expected \"simplicial\" or \"kripke\")");
}

ModelVariant load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str(), path);
}

nlohmann::json to_json(const SimplicialModel& C) {
    json j;
    j["kind"] = "simplicial";
    j["agents"] = C.agents;
    j["vertices"] = json::array();
    for (const auto& v : C.vertices)
        j["vertices"].push_back({{"id", v}, {"color", C.color.at(v)}});
    j["facets"] = json::array();
    for (const auto& F : C.facet_list) j["facets"].push_back(F);
    if (!C.labeling.empty()) {
        j["labeling"] = json::object();
        for (const auto& [p, vs] : C.labeling) j["labeling"][p] = vs;
    }
    if (!C.facet_names.empty()) {
        j["facet_names"] = json::object();
        for (const auto& [name, idx] : C.facet_names) j["facet_names"][name] = idx;
    }
    return j;
}

nlohmann::json to_json(const KripkeModel& M) {
    json j;
    j["kind"] = "kripke";
    j["agents"] = M.agents;
    j["worlds"] = json::array();
    for (const auto& w : M.worlds) {
        json jw = {{"id", w}, {"domain", M.domain.at(w)}};
        json ji = json::object();
        for (const auto& [p, per_world] : M.interp) {
            auto it = per_world.find(w);
            if (it != per_world.end() && !it->second.empty()) ji[p] = it->second;
        }
        if (!ji.empty()) jw["interp"] = ji;
        j["worlds"].push_back(jw);
    }
    j["relations"] = json::object();
    for (const auto& [a, pairs] : M.rel) {
        json arr = json::array();
        for (const auto& [w, v] : pairs) arr.push_back({w, v});
        j["relations"][a] = arr;
    }
    return j;
}

std::string dump_model(const ModelVariant& m) {
    return std::visit([](const auto& x) { return to_json(x).dump(2) + "\n"; }, m);
}

}  // namespace simpla
