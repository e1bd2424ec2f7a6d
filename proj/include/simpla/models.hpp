#pragma once

// Model representations.
//
// A simplicial model is stored intensionally: we keep the facet list only,
// since every semantic clause quantifies over facets.  Faces (the downward
// closure) are enumerated on demand for diagnostics.  A first-order Kripke
// model keeps per-world agent domains, per-agent accessibility relations and
// a per-world predicate interpretation.  Both are plain structs; call
// finalize() after filling the fields (loaders and generators do this) to
// build the derived lookup tables, then treat the model as immutable.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simpla/syntax.hpp"

namespace simpla {

using VertexId = std::string;
using WorldId = std::string;

// --------------------------------------------------------------------------

struct SimplicialModel {
    std::vector<AgentId> agents;                    // declared universe, sorted
    std::vector<VertexId> vertices;                 // declaration order
    std::map<VertexId, AgentId> color;              // chi
    std::vector<std::set<VertexId>> facet_list;     // generators of the complex
    std::map<PredId, std::set<VertexId>> labeling;  // ell
    std::map<std::string, int> facet_names;         // optional display aliases

    // derived (built by finalize)
    std::vector<std::map<AgentId, VertexId>> facet_vertex_by_color;
    std::vector<std::set<AgentId>> live_sets;

    void finalize();

    int facet_count() const { return static_cast<int>(facet_list.size()); }

    // chi[F]: the agents alive at facet i.
    const std::set<AgentId>& live(int i) const { return live_sets[i]; }

    // true iff agent a has a vertex shared by facets i and j (a in chi[F_i cap F_j]).
    bool shares(int i, int j, const AgentId& a) const;

    // chi[F_i cap F_j].
    std::set<AgentId> link(int i, int j) const;

    // chi[F_i cap ell(p)]: agents whose vertex in facet i carries predicate p.
    std::set<AgentId> atom_extension(const PredId& p, int i) const;

    // Facets j such that A is a subset of chi[F_i cap F_j].  A = {} yields
    // every facet (the universal modality's successor set).
    std::vector<int> successors(int i, const std::set<AgentId>& A) const;

    // Display label: a declared alias if one exists, otherwise the sorted
    // vertex ids joined with '+'.
    std::string facet_label(int i) const;

    // Resolves an alias, a decimal index, or a '+'- or ','-joined vertex
    // list to a facet index.
    std::optional<int> find_facet(const std::string& name) const;

    // Downward closure (every non-empty subset of a facet), deduplicated;
    // diagnostics only, exponential in facet size.
    std::vector<std::set<VertexId>> all_faces() const;
};

// Structural invariant check: vertex coverage, per-facet color injectivity,
// facet maximality, labeling range, color/universe consistency.  Returns an
// empty list when the model is well-formed; each entry carries a witness.
std::vector<std::string> validate_simplicial(const SimplicialModel& C);

// --------------------------------------------------------------------------

struct KripkeModel {
    std::vector<AgentId> agents;  // declared universe, sorted
    std::vector<WorldId> worlds;  // declaration order
    std::map<WorldId, std::set<AgentId>> domain;                    // delta
    std::map<AgentId, std::set<std::pair<WorldId, WorldId>>> rel;   // R_a
    std::map<PredId, std::map<WorldId, std::set<AgentId>>> interp;  // rho

    // derived (built by finalize)
    std::map<AgentId, std::map<WorldId, std::set<WorldId>>> out_edges;

    void finalize();

    bool has_world(const WorldId& w) const { return domain.count(w) != 0; }

    const std::set<AgentId>& live(const WorldId& w) const { return domain.at(w); }

    // rho(p, w); empty set when p is not interpreted at all.
    std::set<AgentId> atom_extension(const PredId& p, const WorldId& w) const;

    // R_a(w).
    const std::set<WorldId>& reachable(const AgentId& a, const WorldId& w) const;

    // Intersection of R_a(w) over a in A; by convention A = {} yields all
    // worlds (K over the empty group is the universal modality).
    std::vector<WorldId> successors(const WorldId& w, const std::set<AgentId>& A) const;
};

std::vector<std::string> validate_kripke(const KripkeModel& M);

// --------------------------------------------------------------------------
// local epistemic model checks

struct LepCheck {
    bool pass = true;
    std::string witness;  // human-readable counterexample when !pass
};

struct LepReport {
    LepCheck local_s5;
    LepCheck indiv_increasing;
    LepCheck local_predicates;
    LepCheck coll_decreasing;
    LepCheck properness;

    // the four properties that make the model a local epistemic model
    bool local_epistemic() const {
        return local_s5.pass && indiv_increasing.pass && local_predicates.pass &&
               coll_decreasing.pass;
    }
    // ... plus properness
    bool proper() const { return local_epistemic() && properness.pass; }
};

LepReport check_local_epistemic(const KripkeModel& M);

// --------------------------------------------------------------------------
// properization

// Quotient of a local epistemic model by the cells [w] = intersection of
// R_a(w) over the live agents a at w.  Cell worlds are named by the sorted
// member ids joined with '+'.  Throws NotLocalEpistemic when the input lacks
// one of the four required properties.
struct Properization {
    KripkeModel model;
    std::map<WorldId, WorldId> cell_of;  // original world -> cell world
};

Properization properize(const KripkeModel& M);

}  // namespace simpla
