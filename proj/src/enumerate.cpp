#include "simpla/enumerate.hpp"

#include <algorithm>
#include <string>

namespace simpla {

namespace {

// Restricted-growth-string successor; the standard walk over set partitions.
bool next_rgs(std::vector<int>& a) {
    int n = static_cast<int>(a.size());
    for (int i = n - 1; i > 0; --i) {
        int mx = 0;
        for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
        if (a[i] <= mx) {
            ++a[i];
            for (int j = i + 1; j < n; ++j) a[j] = 0;
            return true;
        }
    }
    return false;
}

struct Walk {
    const std::vector<AgentId>& agents;
    const std::vector<PredId>& preds;
    const std::function<bool(const SimplicialModel&)>& visit;
    std::set<std::string> seen;
    bool stopped = false;

    int acount() const { return static_cast<int>(agents.size()); }

    // Name-independent fingerprint: minimal serialization over all facet
    // orders, with vertices renumbered per color in order of appearance.
    std::string canon(const SimplicialModel& C) const {
        int n = C.facet_count();
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::string best;
        do {
            std::map<VertexId, int> num;
            std::map<AgentId, int> next_of_color;
            std::string key;
            for (int i : perm) {
                key += ";";
                for (const auto& [a, v] : C.facet_vertex_by_color[i]) {
                    if (!num.count(v)) num[v] = next_of_color[a]++;
                    key += a + std::to_string(num[v]) + ",";
                }
            }
            for (const auto& [p, vs] : C.labeling) {
                std::set<std::string> marks;
                for (const auto& v : vs)
                    if (num.count(v)) marks.insert(C.color.at(v) + std::to_string(num.at(v)));
                key += "|" + p + ":";
                for (const auto& m : marks) key += m + ",";
            }
            if (best.empty() || key < best) best = key;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    void emit(SimplicialModel& C) {
        C.finalize();
        if (!seen.insert(canon(C)).second) return;
        if (!visit(C)) stopped = true;
    }

    // Fixed structure (facets as vertex-id sets); loop over the labelings.
    void labelings(const std::vector<std::set<VertexId>>& facets,
                   const std::map<VertexId, AgentId>& color) {
        std::vector<VertexId> verts;
        for (const auto& [v, a] : color) verts.push_back(v);
        std::uint64_t bits = static_cast<std::uint64_t>(verts.size()) * preds.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits) && !stopped; ++mask) {
            SimplicialModel C;
            C.agents = agents;
            C.vertices = verts;
            C.color = color;
            C.facet_list = facets;
            std::uint64_t bit = 0;
            for (const PredId& p : preds)
                for (const VertexId& v : verts) {
                    if (mask & (std::uint64_t{1} << bit)) C.labeling[p].insert(v);
                    ++bit;
                }
            emit(C);
        }
    }

    // One sharing pattern chosen: realize vertices, reject nested facets.
    void structure(const std::vector<int>& masks,
                   const std::vector<std::vector<int>>& slots,
                   const std::vector<std::vector<int>>& blocks) {
        int n = static_cast<int>(masks.size());
        std::vector<std::set<VertexId>> facets(n);
        std::map<VertexId, AgentId> color;
        for (int ai = 0; ai < acount(); ++ai)
            for (std::size_t s = 0; s < slots[ai].size(); ++s) {
                VertexId v = agents[ai] + std::to_string(blocks[ai][s]);
                color[v] = agents[ai];
                facets[slots[ai][s]].insert(v);
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && std::includes(facets[j].begin(), facets[j].end(),
                                            facets[i].begin(), facets[i].end()))
                    return;
        labelings(facets, color);
    }

    // All ways the facets carrying each agent can share its vertices: an
    // odometer over one set partition per agent.
    void share_patterns(const std::vector<int>& masks) {
        std::vector<std::vector<int>> slots(acount());
        for (int i = 0; i < static_cast<int>(masks.size()); ++i)
            for (int ai = 0; ai < acount(); ++ai)
                if (masks[i] & (1 << ai)) slots[ai].push_back(i);
        std::vector<std::vector<int>> blocks(acount());
        for (int ai = 0; ai < acount(); ++ai) blocks[ai].assign(slots[ai].size(), 0);
        while (!stopped) {
            structure(masks, slots, blocks);
            int ai = 0;
            while (ai < acount() && !next_rgs(blocks[ai])) {
                std::fill(blocks[ai].begin(), blocks[ai].end(), 0);
                ++ai;
            }
            if (ai == acount()) break;
        }
    }

    // Non-decreasing color-mask sequences; reordering is soaked up by canon.
    void masks_from(std::vector<int>& masks, int pos, int from) {
        if (stopped) return;
        if (pos == static_cast<int>(masks.size())) {
            share_patterns(masks);
            return;
        }
        for (int m = from; m < (1 << acount()) && !stopped; ++m) {
            masks[pos] = m;
            masks_from(masks, pos + 1, m);
        }
    }

    void run(int max_facets) {
        for (int n = 1; n <= max_facets && !stopped; ++n) {
            std::vector<int> masks(n);
            masks_from(masks, 0, 1);
        }
    }
};

}  // namespace

bool forall_enumerated(const std::vector<AgentId>& agents,
                       const std::vector<PredId>& preds,
                       int max_facets,
                       const std::function<bool(const SimplicialModel&)>& visit) {
    Walk w{agents, preds, visit, {}, false};
    w.run(max_facets);
    return !w.stopped;
}

}  // namespace simpla
