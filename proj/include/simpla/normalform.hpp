#pragma once

#include "simpla/syntax.hpp"

// Assignment normal form.  The target grammar is
//
//   g ::= [x:=a]p(x) | [x:=a]bot | top | ~g | (g & g) | [x1:=a1]..[xn:=an] K{x1..xn} g
//
// i.e. assignment operators survive only directly over an atom on their own
// variable, over bot, or as a prefix feeding exactly the variables of a K.
// nf_step eliminates one operator shape at a time via the valid elimination
// equivalences; anf drives it to a fixpoint over every operator occurring in
// a sentence.

namespace simpla {

// One translation pass for the operator [x:=a], applied throughout f:
//   * other connectives and other binders are mapped through structurally;
//   * [x:=a]chi with x not free in chi becomes ([x:=a]bot | chi');
//   * [x:=a]~phi becomes ([x:=a]bot | ~[x:=a]phi'), conjunctions split,
//     an inner binder [y:=b] commutes out, and a body K{X} with x in X
//     keeps the binder in place;
//   * subformulas already of a target shape ([x:=a]p(x), [x:=a]bot, or an
//     assignment prefix over its own K) are left standing, so a second pass
//     is a no-op on them.
// The output contains no [x:=a] scope other than the target shapes, and
// stays normal for binders handled earlier.
FormulaPtr nf_step(const FormulaPtr& f, const VarId& x, const AgentId& a);

// Full pipeline: repeatedly list the binders occurring in the sentence
// (innermost first, duplicates dropped) and run nf_step for each, until the
// recognizer accepts.  Throws Error if alpha is open or the loop exceeds its
// certain-termination bound.
FormulaPtr anf(const FormulaPtr& alpha);

// Grammar membership.  Assignment prefixes over K are accepted in any order
// (the commuted forms are interderivable), but must be duplicate-free and
// use exactly the K's variable set.
bool is_anf(const FormulaPtr& f);

// Optional cosmetic pass for the CLI: folds top/bot through the connectives
// (~bot, g&top, K{X}top, [x:=a]top, ...).  [x:=a]bot is never folded; it is
// the live-ness test the normal form is built from.
FormulaPtr simplify_constants(const FormulaPtr& f);

}  // namespace simpla
