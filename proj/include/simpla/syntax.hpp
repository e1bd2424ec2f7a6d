#pragma once

// Abstract syntax for the term-modal language with assignment operators.
//
// The primitive constructors are
//
//   p(x) | top | ~f | (f & g) | [x:=a] f | K{X} f
//
// where the body of K must be closed (no free variables).  Everything else
// (bot, |, ->, <x:=a>, Khat) is sugar expanded at construction/parse time,
// so the evaluators and rewriters only ever see six node kinds.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "simpla/errors.hpp"

namespace simpla {

using AgentId = std::string;
using VarId = std::string;
using PredId = std::string;

// Finite partial map from variables to agents; consulted only on free
// variables during evaluation.  A missing binding for a free variable is an
// error at evaluation time, never a silent default.
using Assignment = std::map<VarId, AgentId>;

enum class Op : std::uint8_t { Atom, Top, Neg, And, Assign, Know };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
    Op op;

    // Atom: pred + var.  Assign: var + agent + child.  Know: group + child.
    PredId pred;
    VarId var;
    AgentId agent;
    FormulaPtr left;               // Neg/Assign/Know body, And lhs
    FormulaPtr right;              // And rhs
    std::vector<VarId> group;      // Know: sorted, duplicate-free

    // Free variables, cached at construction (the recursion is the standard
    // one; note FV(K{X} f) = X, not FV(f)).
    std::set<VarId> fv;

    // -- factories (the only way to build nodes) --
    static FormulaPtr atom(PredId p, VarId x);
    static FormulaPtr top();
    static FormulaPtr neg(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr f, FormulaPtr g);
    static FormulaPtr assign(VarId x, AgentId a, FormulaPtr f);
    // Throws FreeVariableUnderK unless FV(f) is empty.
    static FormulaPtr know(std::set<VarId> xs, FormulaPtr f);

    // -- sugar, expanded immediately --
    static FormulaPtr bot();                                       // ~top
    static FormulaPtr disj(FormulaPtr f, FormulaPtr g);            // ~(~f & ~g)
    static FormulaPtr implies(FormulaPtr f, FormulaPtr g);         // ~(f & ~g)
    static FormulaPtr dual_assign(VarId x, AgentId a, FormulaPtr f);  // ~[x:=a]~f
    static FormulaPtr dual_know(std::set<VarId> xs, FormulaPtr f);    // ~K{X}~f

    bool is_bot() const;  // structurally ~top
    bool closed() const { return fv.empty(); }

protected:
    Formula() = default;
};

// Structural equality (identifiers compared as strings, Know groups as sets).
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// --- concrete syntax ------------------------------------------------------

// Parses the grammar
//   f ::= top | bot | PRED(VAR) | ~f | (f&f) | (f|f) | (f->f)
//       | [VAR:=AGENT]f | <VAR:=AGENT>f | K{VAR*}f | Khat{VAR*}f
// Whitespace-insensitive; binary connectives always need parentheses; the
// variables in K{...} may be separated by commas or spaces.
// Throws SyntaxError / FreeVariableUnderK.
FormulaPtr parse(const std::string& text);

// Inverse of parse up to sugar: prints ~top as `bot`, ~[x:=a]~f as `<x:=a>`,
// ~K{X}~f as `Khat{X}`, and the two derived binary connectives.  The
// round-trip parse(print(f)) == f holds structurally for every formula.
std::string print(const FormulaPtr& f);

// --- operations -----------------------------------------------------------

inline const std::set<VarId>& free_vars(const FormulaPtr& f) { return f->fv; }

// phi[y/x]: replaces free occurrences of x (in atoms and K-groups) with y.
// Throws InadmissibleSubstitution if some free x sits inside a [y:=_] scope.
// substitute(f, y, x) with x == y, or with x not free, returns f unchanged.
FormulaPtr substitute(const FormulaPtr& f, const VarId& y, const VarId& x);

// Deterministic fresh-name supply: the first of x0, x1, x2, ... not in
// `avoid`.
VarId fresh_var(const std::set<VarId>& avoid);

// Seeded random sentence: closed, modal/assignment nesting depth <= depth,
// identical output for identical arguments.
FormulaPtr random_formula(const std::vector<AgentId>& agents,
                          const std::vector<PredId>& preds,
                          int depth, std::uint64_t seed);

// Same generator but starting with a non-empty pool of bindable variables,
// so the result may be open (FV a subset of the pool).  Used by the axiom
// instantiator for formula metavariables.
FormulaPtr random_formula_open(const std::vector<AgentId>& agents,
                               const std::vector<PredId>& preds,
                               const std::vector<VarId>& pool,
                               int depth, std::uint64_t seed);

// Signature helpers: every agent / predicate / variable token occurring
// anywhere in the formula (bound or free, in any position).
std::set<AgentId> collect_agents(const FormulaPtr& f);
std::set<PredId> collect_preds(const FormulaPtr& f);
std::set<VarId> collect_vars(const FormulaPtr& f);

}  // namespace simpla
