#pragma once

#include "simpla/models.hpp"

// Translations between the two model kinds, and isomorphism tests used to
// state the round-trip facts about them.
//
//   lem(C): facets become worlds; the domain of a facet is its color set; two
//           facets are a-related iff they share their a-vertex.  The result
//           is always a proper local epistemic model.
//   sc(M):  for a local epistemic M, vertices are pairs (agent, R_a-class);
//           each world contributes the facet of its classes.  Composing the
//           two recovers the input up to isomorphism (properizing it first
//           when M is improper).

namespace simpla {

KripkeModel lem(const SimplicialModel& C);

// Throws NotLocalEpistemic when M fails one of the four local-epistemic
// properties (properness is not needed; same-cell worlds collapse to one
// facet).
SimplicialModel sc(const KripkeModel& M);

// Isomorphism keeps agent names fixed and asks for a structure-preserving
// bijection on facets/worlds (for complexes this determines the vertex map:
// matched facets must pair up their same-colored vertices).  The witness
// maps A's facet labels / world ids to B's.
std::optional<std::map<std::string, std::string>> isomorphism(
    const SimplicialModel& A, const SimplicialModel& B);
std::optional<std::map<std::string, std::string>> isomorphism(
    const KripkeModel& A, const KripkeModel& B);

bool isomorphic(const SimplicialModel& A, const SimplicialModel& B);
bool isomorphic(const KripkeModel& A, const KripkeModel& B);

}  // namespace simpla
