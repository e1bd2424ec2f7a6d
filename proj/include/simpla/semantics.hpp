#pragma once

#include "simpla/models.hpp"
#include "simpla/syntax.hpp"

// Evaluation of formulas at a point of a model, under a variable assignment.
// Truth is only defined for admissible assignments: every free variable must
// be mapped, and mapped to an agent alive at the point.  Evaluating an
// inadmissible pair is a hard error, never a silent false.

namespace simpla {

// Does sigma map every free variable of f into `live`?  (Extra bindings in
// sigma are fine; only the free variables matter.)
bool admissible(const FormulaPtr& f, const Assignment& sigma, const std::set<AgentId>& live);

// Throws UnmappedFreeVariable / InadmissibleAssignment when not admissible.
bool eval_simplicial(const SimplicialModel& C, int facet, const FormulaPtr& f,
                     const Assignment& sigma = {});
bool eval_kripke(const KripkeModel& M, const WorldId& w, const FormulaPtr& f,
                 const Assignment& sigma = {});

struct ValidityCheck {
    bool valid = true;
    std::string failing_point;  // label of some point refuting f, if any
};

// Is the sentence f true at every point of the model?  Throws Error when f
// has free variables.
ValidityCheck valid_on_model(const SimplicialModel& C, const FormulaPtr& f);
ValidityCheck valid_on_model(const KripkeModel& M, const FormulaPtr& f);

}  // namespace simpla
