#pragma once

#include <optional>

#include "simpla/models.hpp"
#include "simpla/syntax.hpp"

// Knowledge indexed by a described group instead of a listed one.  A group
// formula phi with one free variable carves out, at each point, the set of
// living agents satisfying it; K_phi alpha quantifies over exactly the
// successors that preserve that set.  Two implementations are kept side by
// side on purpose: a direct evaluator on the truth condition, and a
// syntactic expansion into a case split over all possible groups — they must
// agree everywhere, and tests hold them to that.

namespace simpla {

// A formula with at most one free variable (the membership test).  `var` is
// the designated variable even when the body happens to be closed.
struct GroupFormula {
    FormulaPtr body;
    VarId var;
};

// Throws Error if body has two or more free variables; a closed body gets
// the designated variable "x".
GroupFormula group_formula(FormulaPtr body);
GroupFormula group_formula(const std::string& text);  // parse + wrap

// {a alive at the point | body true when var denotes a}
std::set<AgentId> group_extension(const GroupFormula& phi, const SimplicialModel& C, int facet);
std::set<AgentId> group_extension(const GroupFormula& phi, const KripkeModel& M, const WorldId& w);

// phi!(A): "A is exactly the group phi describes here" — every member
// satisfies phi and is alive, everyone else fails it or is dead.
FormulaPtr characterizer(const GroupFormula& phi, const std::set<AgentId>& A,
                         const std::vector<AgentId>& universe);

// The case split: conjunction over every subset A of the universe of
//   phi!(A) -> [x1:=a1]...[xk:=ak] K{x1..xk} alpha
// with deterministic fresh variables.  Exponential in |universe|.
FormulaPtr expand_k_phi(const GroupFormula& phi, const FormulaPtr& alpha,
                        const std::vector<AgentId>& universe);

// The truth condition itself: compute the extension, then require alpha at
// every successor reached by it.
bool eval_k_phi_direct(const GroupFormula& phi, const FormulaPtr& alpha,
                       const SimplicialModel& C, int facet);
bool eval_k_phi_direct(const GroupFormula& phi, const FormulaPtr& alpha,
                       const KripkeModel& M, const WorldId& w);

// --- introspection ---------------------------------------------------------

struct IntrospectionReport {
    // whether phi fits the fragment (atoms on the variable, K over just the
    // variable, negation, conjunction) for which positive introspection is
    // guaranteed; outside it the check still runs but proves nothing
    bool within_grammar = false;
    int points_checked = 0;
    std::vector<std::string> failures;  // "alpha @ model#k point" lines

    bool all_pass() const { return failures.empty(); }
};

bool positive_introspection_grammar(const GroupFormula& phi);

// Evaluates K_phi alpha -> K_phi K_phi alpha at every point of every model.
IntrospectionReport check_pos_introspection(const GroupFormula& phi,
                                            const std::vector<FormulaPtr>& alphas,
                                            const std::vector<SimplicialModel>& models);

struct NegIntrospectionWitness {
    SimplicialModel model;
    std::string point;   // facet label
    FormulaPtr alpha;
};

// Exhaustive hunt over models with <= bound facets (3-agent signature) and a
// small pool of sentences for a point where ~K_phi alpha holds but
// K_phi ~K_phi alpha does not.  Any witness is double-checked through the
// syntactic expansion before being returned.
std::optional<NegIntrospectionWitness>
search_neg_introspection_counterexample(const GroupFormula& phi, int bound);

}  // namespace simpla
