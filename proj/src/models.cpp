#include "simpla/models.hpp"

#include <algorithm>
#include <cctype>

namespace simpla {

namespace {

std::string join(const std::set<std::string>& parts, const char* sep = "+") {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

}  // namespace

// --------------------------------------------------------------------------
// simplicial models
// --------------------------------------------------------------------------

void SimplicialModel::finalize() {
    std::sort(agents.begin(), agents.end());
    agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
    facet_vertex_by_color.clear();
    live_sets.clear();
    for (const auto& F : facet_list) {
        std::map<AgentId, VertexId> by_color;
        std::set<AgentId> live;
        for (const auto& v : F) {
            auto it = color.find(v);
            if (it == color.end()) continue;  // validation will report this
            by_color[it->second] = v;
            live.insert(it->second);
        }
        facet_vertex_by_color.push_back(std::move(by_color));
        live_sets.push_back(std::move(live));
    }
}

bool SimplicialModel::shares(int i, int j, const AgentId& a) const {
    const auto& fi = facet_vertex_by_color[i];
    const auto& fj = facet_vertex_by_color[j];
    auto it = fi.find(a);
    if (it == fi.end()) return false;
    auto jt = fj.find(a);
    return jt != fj.end() && jt->second == it->second;
}

std::set<AgentId> SimplicialModel::link(int i, int j) const {
    std::set<AgentId> out;
    for (const auto& [a, v] : facet_vertex_by_color[i])
        if (shares(i, j, a)) out.insert(a);
    return out;
}

std::set<AgentId> SimplicialModel::atom_extension(const PredId& p, int i) const {
    std::set<AgentId> out;
    auto it = labeling.find(p);
    if (it == labeling.end()) return out;
    for (const auto& [a, v] : facet_vertex_by_color[i])
        if (it->second.count(v)) out.insert(a);
    return out;
}

std::vector<int> SimplicialModel::successors(int i, const std::set<AgentId>& A) const {
    std::vector<int> out;
    for (int j = 0; j < facet_count(); ++j) {
        bool ok = true;
        for (const AgentId& a : A)
            if (!shares(i, j, a)) { ok = false; break; }
        if (ok) out.push_back(j);  // A = {} admits every facet
    }
    return out;
}

std::string SimplicialModel::facet_label(int i) const {
    for (const auto& [name, idx] : facet_names)
        if (idx == i) return name;
    return join(facet_list[i]);
}

std::optional<int> SimplicialModel::find_facet(const std::string& name) const {
    auto it = facet_names.find(name);
    if (it != facet_names.end()) return it->second;
    if (!name.empty() &&
        std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        int idx = std::stoi(name);
        if (idx >= 0 && idx < facet_count()) return idx;
        return std::nullopt;
    }
    // vertex list joined with '+' or ','
    std::set<VertexId> want;
    std::string piece;
    for (char c : name + "+") {
        if (c == '+' || c == ',') {
            if (!piece.empty()) want.insert(piece);
            piece.clear();
        } else {
            piece += c;
        }
    }
    for (int i = 0; i < facet_count(); ++i)
        if (facet_list[i] == want) return i;
    return std::nullopt;
}

std::vector<std::set<VertexId>> SimplicialModel::all_faces() const {
    std::set<std::set<VertexId>> seen;
    for (const auto& F : facet_list) {
        std::vector<VertexId> vs(F.begin(), F.end());
        auto n = vs.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::set<VertexId> face;
            for (std::size_t k = 0; k < n; ++k)
                if (mask & (std::uint64_t{1} << k)) face.insert(vs[k]);
            seen.insert(std::move(face));
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::string> validate_simplicial(const SimplicialModel& C) {
    std::vector<std::string> errors;
    auto complain = [&](const std::string& msg) { errors.push_back(msg); };

    if (C.facet_list.empty()) complain("model has no facets");
    std::set<AgentId> universe(C.agents.begin(), C.agents.end());
    std::set<VertexId> declared(C.vertices.begin(), C.vertices.end());

    for (const auto& [v, a] : C.color)
        if (!universe.count(a))
            complain("vertex '" + v + "' colored with undeclared agent '" + a + "'");

    std::set<VertexId> used;
    for (std::size_t i = 0; i < C.facet_list.size(); ++i) {
        const auto& F = C.facet_list[i];
        if (F.empty()) complain("facet #" + std::to_string(i) + " is empty");
        std::map<AgentId, VertexId> by_color;
        for (const auto& v : F) {
            used.insert(v);
            if (!declared.count(v)) {
                complain("facet #" + std::to_string(i) + " mentions undeclared vertex '" + v + "'");
                continue;
            }
            auto it = C.color.find(v);
            if (it == C.color.end()) {
                complain("vertex '" + v + "' has no color");
                continue;
            }
            auto [prev, fresh] = by_color.emplace(it->second, v);
            if (!fresh)
                complain("facet #" + std::to_string(i) + " has two vertices of color '" +
                         it->second + "': '" + prev->second + "' and '" + v + "'");
        }
    }
    for (const auto& v : C.vertices)
        if (!used.count(v))
            complain("vertex '" + v + "' does not occur in any facet");

    for (std::size_t i = 0; i < C.facet_list.size(); ++i)
        for (std::size_t j = 0; j < C.facet_list.size(); ++j) {
            if (i == j) continue;
            const auto& Fi = C.facet_list[i];
            const auto& Fj = C.facet_list[j];
            if (std::includes(Fj.begin(), Fj.end(), Fi.begin(), Fi.end()) &&
                (Fi != Fj || i < j))
                complain("facet {" + join(Fi) + "} is contained in facet {" + join(Fj) + "}");
        }

    for (const auto& [p, vs] : C.labeling)
        for (const auto& v : vs)
            if (!declared.count(v))
                complain("labeling of '" + p + "' mentions undeclared vertex '" + v + "'");

    for (const auto& [name, idx] : C.facet_names)
        if (idx < 0 || idx >= C.facet_count())
            complain("facet alias '" + name + "' points outside the facet list");

    return errors;
}

// --------------------------------------------------------------------------
// Kripke models
// --------------------------------------------------------------------------

void KripkeModel::finalize() {
    std::sort(agents.begin(), agents.end());
    agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
    if (worlds.empty())
        for (const auto& [w, d] : domain) worlds.push_back(w);
    out_edges.clear();
    for (const auto& [a, pairs] : rel)
        for (const auto& [w, v] : pairs) out_edges[a][w].insert(v);
}

std::set<AgentId> KripkeModel::atom_extension(const PredId& p, const WorldId& w) const {
    auto it = interp.find(p);
    if (it == interp.end()) return {};
    auto jt = it->second.find(w);
    return jt == it->second.end() ? std::set<AgentId>{} : jt->second;
}

const std::set<WorldId>& KripkeModel::reachable(const AgentId& a, const WorldId& w) const {
    static const std::set<WorldId> empty;
    auto it = out_edges.find(a);
    if (it == out_edges.end()) return empty;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? empty : jt->second;
}

std::vector<WorldId> KripkeModel::successors(const WorldId& w,
                                             const std::set<AgentId>& A) const {
    std::vector<WorldId> out;
    for (const WorldId& v : worlds) {
        bool ok = true;
        for (const AgentId& a : A)
            if (!reachable(a, w).count(v)) { ok = false; break; }
        if (ok) out.push_back(v);  // A = {}: the whole world set
    }
    return out;
}

std::vector<std::string> validate_kripke(const KripkeModel& M) {
    std::vector<std::string> errors;
    auto complain = [&](const std::string& msg) { errors.push_back(msg); };

    if (M.worlds.empty()) complain("model has no worlds");
    std::set<AgentId> universe(M.agents.begin(), M.agents.end());
    std::set<WorldId> declared(M.worlds.begin(), M.worlds.end());

    for (const auto& w : M.worlds) {
        auto it = M.domain.find(w);
        if (it == M.domain.end()) {
            complain("world '" + w + "' has no domain");
            continue;
        }
        if (it->second.empty()) complain("world '" + w + "' has an empty domain");
        for (const auto& a : it->second)
            if (!universe.count(a))
                complain("world '" + w + "' lists undeclared agent '" + a + "'");
    }

    for (const auto& [a, pairs] : M.rel) {
        if (!universe.count(a)) complain("relation for undeclared agent '" + a + "'");
        for (const auto& [w, v] : pairs) {
            if (!declared.count(w) || !declared.count(v)) {
                complain("relation for '" + a + "' touches undeclared world in (" + w + "," + v + ")");
                continue;
            }
            auto it = M.domain.find(w);
            if (it != M.domain.end() && !it->second.count(a))
                complain("edge (" + w + "," + v + ") for '" + a + "' leaves world '" + w +
                         "' where '" + a + "' is not alive");
        }
    }

    for (const auto& [p, per_world] : M.interp)
        for (const auto& [w, ext] : per_world) {
            if (!declared.count(w)) {
                complain("interpretation of '" + p + "' mentions undeclared world '" + w + "'");
                continue;
            }
            auto it = M.domain.find(w);
            for (const auto& a : ext)
                if (it != M.domain.end() && !it->second.count(a))
                    complain("'" + p + "' holds of dead agent '" + a + "' at world '" + w + "'");
        }

    return errors;
}

// --------------------------------------------------------------------------
// local epistemic checks
// --------------------------------------------------------------------------

namespace {

// intersection of R_a(w) over a in delta(w) (never empty on an S5-respecting
// model, since each R_a is reflexive where a is alive)
std::set<WorldId> delta_cell(const KripkeModel& M, const WorldId& w) {
    std::set<WorldId> cell;
    bool first = true;
    for (const AgentId& a : M.live(w)) {
        const auto& reach = M.reachable(a, w);
        if (first) {
            cell = reach;
            first = false;
        } else {
            std::set<WorldId> keep;
            for (const auto& v : cell)
                if (reach.count(v)) keep.insert(v);
            cell = std::move(keep);
        }
    }
    return cell;
}

}  // namespace

LepReport check_local_epistemic(const KripkeModel& M) {
    LepReport r;

    // (Local S5): restricted to the worlds where a is alive, R_a is an
    // equivalence relation.
    for (const AgentId& a : M.agents) {
        for (const WorldId& w : M.worlds) {
            if (!M.live(w).count(a)) continue;
            if (!M.reachable(a, w).count(w)) {
                r.local_s5 = {false, "R_" + a + " not reflexive at '" + w + "'"};
                goto s5_done;
            }
            for (const WorldId& v : M.reachable(a, w)) {
                if (M.live(v).count(a) && !M.reachable(a, v).count(w)) {
                    r.local_s5 = {false, "R_" + a + " not symmetric on ('" + w + "','" + v + "')"};
                    goto s5_done;
                }
                for (const WorldId& u : M.reachable(a, v))
                    if (M.live(v).count(a) && M.live(u).count(a) &&
                        !M.reachable(a, w).count(u)) {
                        r.local_s5 = {false, "R_" + a + " not transitive via ('" + w +
                                                 "','" + v + "','" + u + "')"};
                        goto s5_done;
                    }
            }
        }
    }
s5_done:

    // (Individually Increasing Domain): an alive agent stays alive along its
    // own relation — every agent knows their own existence.
    for (const auto& [a, pairs] : M.rel)
        for (const auto& [w, v] : pairs)
            if (M.live(w).count(a) && !M.live(v).count(a)) {
                r.indiv_increasing = {false, "'" + a + "' alive at '" + w +
                                                "' but dead at its successor '" + v + "'"};
            }

    // (Local Predicates): atomic properties travel along the owner's relation.
    for (const auto& [p, per_world] : M.interp)
        for (const auto& [w, ext] : per_world)
            for (const AgentId& a : ext)
                for (const WorldId& v : M.reachable(a, w))
                    if (!M.atom_extension(p, v).count(a)) {
                        r.local_predicates = {false, "'" + p + "(" + a + ")' holds at '" + w +
                                                        "' but not at '" + v + "'"};
                    }

    // (Collectively Decreasing Domain): whoever all the locals can reach
    // together has no extra agents.
    for (const WorldId& w : M.worlds)
        for (const WorldId& v : delta_cell(M, w)) {
            const auto& dv = M.live(v);
            const auto& dw = M.live(w);
            if (!std::includes(dw.begin(), dw.end(), dv.begin(), dv.end())) {
                r.coll_decreasing = {false, "cell of '" + w + "' contains '" + v +
                                               "' with a larger domain"};
            }
        }

    // (Properness): each world is alone in its cell.
    for (const WorldId& w : M.worlds) {
        auto cell = delta_cell(M, w);
        if (cell != std::set<WorldId>{w}) {
            r.properness = {false, "cell of '" + w + "' is {" + join(cell) + "}"};
            break;
        }
    }

    return r;
}

// --------------------------------------------------------------------------
// properization
// --------------------------------------------------------------------------

Properization properize(const KripkeModel& M) {
    LepReport rep = check_local_epistemic(M);
    if (!rep.local_epistemic()) {
        std::string why = !rep.local_s5.pass          ? rep.local_s5.witness
                          : !rep.indiv_increasing.pass ? rep.indiv_increasing.witness
                          : !rep.local_predicates.pass ? rep.local_predicates.witness
                                                       : rep.coll_decreasing.witness;
        throw NotLocalEpistemic("properize needs a local epistemic model: " + why);
    }

    Properization out;
    out.model.agents = M.agents;

    // name each cell by its sorted member list; map every world to its cell
    std::map<WorldId, std::set<WorldId>> cell_members;
    for (const WorldId& w : M.worlds) {
        auto cell = delta_cell(M, w);
        out.cell_of[w] = join(cell);
        cell_members[join(cell)] = std::move(cell);
    }

    for (const auto& [id, members] : cell_members) {
        out.model.worlds.push_back(id);
        const WorldId& rep_world = *members.begin();
        out.model.domain[id] = M.live(rep_world);
        for (const auto& [p, per_world] : M.interp) {
            auto ext = M.atom_extension(p, rep_world);
            if (!ext.empty()) out.model.interp[p][id] = std::move(ext);
        }
    }

    for (const auto& [a, pairs] : M.rel)
        for (const auto& [w, v] : pairs)
            out.model.rel[a].insert({out.cell_of.at(w), out.cell_of.at(v)});

    out.model.finalize();
    return out;
}

}  // namespace simpla
