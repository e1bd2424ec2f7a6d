#pragma once

#include <functional>

#include "simpla/models.hpp"

// Exhaustive generation of small simplicial models, shared by the bounded
// satisfiability search and the introspection counterexample hunt.
//
// The space is walked in a fixed order: facet count ascending, then the
// multiset of facet color sets, then the vertex-sharing pattern (one set
// partition per agent of the facets carrying it), then the labeling bitmask
// per predicate.  Candidates whose facet sets are nested are dropped, and
// models equal up to facet reordering are emitted once (canonical-key
// deduplication), so "the first witness" is well defined and reproducible.

namespace simpla {

// Calls visit for every model over the given signature with 1..max_facets
// facets.  visit returns false to stop the walk early.  Returns true when
// the space was exhausted, false when the visitor stopped it.
bool forall_enumerated(const std::vector<AgentId>& agents,
                       const std::vector<PredId>& preds,
                       int max_facets,
                       const std::function<bool(const SimplicialModel&)>& visit);

}  // namespace simpla
