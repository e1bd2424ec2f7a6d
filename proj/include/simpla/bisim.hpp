#pragma once

#include <utility>

#include "simpla/models.hpp"
#include "simpla/syntax.hpp"

// Greatest bisimulations between two models of the same kind, bisimilarity
// queries, and constructive distinguishing sentences.
//
// A bisimulation relates points with equal live-agent sets and equal atomic
// extensions, such that every A-successor on one side has a related
// A-successor on the other, for every agent subset A (including A = {},
// which makes the clauses range over all points).  On finite models a pair
// is bisimilar exactly when no sentence tells the two points apart, and for
// non-bisimilar pairs such a sentence can be read off the fixpoint run.

namespace simpla {

struct BisimRelation {
    enum class Kind { Simplicial, Kripke };
    Kind kind;
    // surviving pairs, named by facet label / world id (left model first)
    std::set<std::pair<std::string, std::string>> pairs;

    bool contains(const std::string& l, const std::string& r) const {
        return pairs.count({l, r}) != 0;
    }
};

BisimRelation greatest_bisim(const SimplicialModel& A, const SimplicialModel& B);
BisimRelation greatest_bisim(const KripkeModel& A, const KripkeModel& B);

bool bisimilar(const SimplicialModel& A, int i, const SimplicialModel& B, int j);
bool bisimilar(const KripkeModel& A, const WorldId& w, const KripkeModel& B, const WorldId& v);

// For a non-bisimilar pair: a sentence true at the left point and false at
// the right one, assembled from the reason each pair died in the fixpoint
// (domain/atom mismatches at the leaves, assignment-prefixed \hat{K} steps
// above them).  The result is re-evaluated on both points before being
// returned.  Returns nullptr when the points are bisimilar.
FormulaPtr distinguishing_sentence(const SimplicialModel& A, int i,
                                   const SimplicialModel& B, int j);
FormulaPtr distinguishing_sentence(const KripkeModel& A, const WorldId& w,
                                   const KripkeModel& B, const WorldId& v);

}  // namespace simpla
