#include "simpla/correspondence.hpp"

#include <algorithm>
#include <map>

#include "simpla/errors.hpp"

namespace simpla {

namespace {

std::string join(const std::set<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "+";
        out += p;
    }
    return out;
}

}  // namespace

KripkeModel lem(const SimplicialModel& C) {
    KripkeModel M;
    M.agents = C.agents;
    for (int i = 0; i < C.facet_count(); ++i) {
        WorldId w = C.facet_label(i);
        M.worlds.push_back(w);
        M.domain[w] = C.live(i);
        for (const auto& [p, vs] : C.labeling) {
            auto ext = C.atom_extension(p, i);
            if (!ext.empty()) M.interp[p][w] = std::move(ext);
        }
    }
    for (int i = 0; i < C.facet_count(); ++i)
        for (int j = 0; j < C.facet_count(); ++j)
            for (const AgentId& a : C.link(i, j))
                M.rel[a].insert({M.worlds[i], M.worlds[j]});
    M.finalize();
    return M;
}

SimplicialModel sc(const KripkeModel& M) {
    LepReport rep = check_local_epistemic(M);
    if (!rep.local_epistemic()) {
        std::string why = !rep.local_s5.pass          ? rep.local_s5.witness
                          : !rep.indiv_increasing.pass ? rep.indiv_increasing.witness
                          : !rep.local_predicates.pass ? rep.local_predicates.witness
                                                       : rep.coll_decreasing.witness;
        throw NotLocalEpistemic("sc needs a local epistemic model: " + why);
    }

    SimplicialModel C;
    C.agents = M.agents;

    // vertex of agent a seen from w: a's equivalence class around w
    auto vertex_at = [&](const AgentId& a, const WorldId& w) {
        return a + ":" + join(M.reachable(a, w));
    };

    std::set<std::set<VertexId>> facet_seen;  // same-cell worlds repeat a facet
    for (const WorldId& w : M.worlds) {
        std::set<VertexId> facet;
        for (const AgentId& a : M.live(w)) {
            VertexId v = vertex_at(a, w);
            facet.insert(v);
            if (!C.color.count(v)) {
                C.vertices.push_back(v);
                C.color[v] = a;
            }
        }
        if (facet_seen.insert(facet).second) C.facet_list.push_back(std::move(facet));
    }
    std::sort(C.vertices.begin(), C.vertices.end());

    for (const auto& [p, per_world] : M.interp)
        for (const auto& [w, ext] : per_world)
            for (const AgentId& a : ext)
                C.labeling[p].insert(vertex_at(a, w));

    C.finalize();
    return C;
}

// --------------------------------------------------------------------------
// isomorphism
// --------------------------------------------------------------------------

namespace {

// Backtracking facet matcher.  A complex isomorphism is exactly a facet
// bijection that preserves color sets, per-predicate extensions, and which
// agents' vertices are shared between any two facets; the vertex bijection
// falls out of it.
struct SimpIso {
    const SimplicialModel& A;
    const SimplicialModel& B;
    std::vector<int> to_b;    // facet i of A -> facet of B, -1 while unset
    std::vector<bool> used;

    bool compatible(int i, int j) const {
        if (A.live(i) != B.live(j)) return false;
        for (const auto& [p, vs] : A.labeling)
            if (A.atom_extension(p, i) != B.atom_extension(p, j)) return false;
        for (const auto& [p, vs] : B.labeling)
            if (A.atom_extension(p, i) != B.atom_extension(p, j)) return false;
        return true;
    }

    bool extend(int i) {
        if (i == A.facet_count()) return true;
        for (int j = 0; j < B.facet_count(); ++j) {
            if (used[j] || !compatible(i, j)) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k)
                ok = A.link(k, i) == B.link(to_b[k], j);
            if (!ok) continue;
            to_b[i] = j;
            used[j] = true;
            if (extend(i + 1)) return true;
            to_b[i] = -1;
            used[j] = false;
        }
        return false;
    }
};

struct KripIso {
    const KripkeModel& A;
    const KripkeModel& B;
    std::vector<WorldId> order;              // A's worlds in match order
    std::map<WorldId, WorldId> to_b;
    std::set<WorldId> used;

    bool compatible(const WorldId& w, const WorldId& v) const {
        if (A.live(w) != B.live(v)) return false;
        for (const auto& [p, pw] : A.interp)
            if (A.atom_extension(p, w) != B.atom_extension(p, v)) return false;
        for (const auto& [p, pw] : B.interp)
            if (A.atom_extension(p, w) != B.atom_extension(p, v)) return false;
        return true;
    }

    bool extend(std::size_t i) {
        if (i == order.size()) return true;
        const WorldId& w = order[i];
        for (const WorldId& v : B.worlds) {
            if (used.count(v) || !compatible(w, v)) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) {
                const WorldId& wk = order[k];
                const WorldId& vk = to_b.at(wk);
                for (const AgentId& a : A.agents) {
                    if (A.reachable(a, w).count(wk) != B.reachable(a, v).count(vk) ||
                        A.reachable(a, wk).count(w) != B.reachable(a, vk).count(v)) {
                        ok = false;
                        break;
                    }
                }
            }
            for (const AgentId& a : A.agents)
                if (ok && A.reachable(a, w).count(w) != B.reachable(a, v).count(v)) ok = false;
            if (!ok) continue;
            to_b[w] = v;
            used.insert(v);
            if (extend(i + 1)) return true;
            to_b.erase(w);
            used.erase(v);
        }
        return false;
    }
};

}  // namespace

std::optional<std::map<std::string, std::string>> isomorphism(
    const SimplicialModel& A, const SimplicialModel& B) {
    if (A.agents != B.agents) return std::nullopt;
    if (A.facet_count() != B.facet_count()) return std::nullopt;
    if (A.vertices.size() != B.vertices.size()) return std::nullopt;
    SimpIso iso{A, B, std::vector<int>(A.facet_count(), -1),
                std::vector<bool>(B.facet_count(), false)};
    if (!iso.extend(0)) return std::nullopt;
    std::map<std::string, std::string> out;
    for (int i = 0; i < A.facet_count(); ++i)
        out[A.facet_label(i)] = B.facet_label(iso.to_b[i]);
    return out;
}

std::optional<std::map<std::string, std::string>> isomorphism(
    const KripkeModel& A, const KripkeModel& B) {
    if (A.agents != B.agents) return std::nullopt;
    if (A.worlds.size() != B.worlds.size()) return std::nullopt;
    KripIso iso{A, B, A.worlds, {}, {}};
    if (!iso.extend(0)) return std::nullopt;
    return std::map<std::string, std::string>(iso.to_b.begin(),
                                              iso.to_b.end());
}

bool isomorphic(const SimplicialModel& A, const SimplicialModel& B) {
    return isomorphism(A, B).has_value();
}

bool isomorphic(const KripkeModel& A, const KripkeModel& B) {
    return isomorphism(A, B).has_value();
}

}  // namespace simpla
