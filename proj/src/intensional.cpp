#include "simpla/intensional.hpp"

#include <algorithm>
#include <functional>

#include "simpla/enumerate.hpp"
#include "simpla/errors.hpp"
#include "simpla/semantics.hpp"

namespace simpla {

GroupFormula group_formula(FormulaPtr body) {
    const auto& fv = body->fv;
    if (fv.size() > 1) {
        std::string vars;
        for (const auto& v : fv) vars += (vars.empty() ? "" : ", ") + v;
        throw Error("a group formula may have at most one free variable, got {" + vars + "}");
    }
    VarId var = fv.empty() ? VarId("x") : *fv.begin();
    return {std::move(body), std::move(var)};
}

GroupFormula group_formula(const std::string& text) { return group_formula(parse(text)); }

std::set<AgentId> group_extension(const GroupFormula& phi, const SimplicialModel& C, int facet) {
    std::set<AgentId> out;
    for (const AgentId& a : C.live(facet))
        if (eval_simplicial(C, facet, phi.body, {{phi.var, a}})) out.insert(a);
    return out;
}

std::set<AgentId> group_extension(const GroupFormula& phi, const KripkeModel& M, const WorldId& w) {
    std::set<AgentId> out;
    for (const AgentId& a : M.live(w))
        if (eval_kripke(M, w, phi.body, {{phi.var, a}})) out.insert(a);
    return out;
}

FormulaPtr characterizer(const GroupFormula& phi, const std::set<AgentId>& A,
                         const std::vector<AgentId>& universe) {
    FormulaPtr out;
    auto push = [&](FormulaPtr f) { out = out ? Formula::conj(out, f) : f; };
    for (const AgentId& a : universe) {
        if (A.count(a))
            push(Formula::dual_assign(phi.var, a, phi.body));
        else
            push(Formula::assign(phi.var, a, Formula::neg(phi.body)));
    }
    return out ? out : Formula::top();  // empty universe: vacuously "exactly A"
}

FormulaPtr expand_k_phi(const GroupFormula& phi, const FormulaPtr& alpha,
                        const std::vector<AgentId>& universe) {
    if (!alpha->closed()) throw Error("the body of a group-knowledge operator must be a sentence");
    std::vector<AgentId> sorted(universe.begin(), universe.end());
    std::sort(sorted.begin(), sorted.end());

    std::set<VarId> avoid = collect_vars(alpha);
    for (const VarId& v : collect_vars(phi.body)) avoid.insert(v);

    FormulaPtr out;
    for (std::uint32_t mask = 0; mask < (1u << sorted.size()); ++mask) {
        std::set<AgentId> A;
        for (std::size_t k = 0; k < sorted.size(); ++k)
            if (mask & (1u << k)) A.insert(sorted[k]);

        // [x1:=a1]...[xk:=ak] K{x1..xk} alpha over the members of A
        std::set<VarId> xs;
        std::vector<std::pair<VarId, AgentId>> binds;
        {
            std::set<VarId> taken = avoid;
            for (const AgentId& a : A) {
                VarId x = fresh_var(taken);
                taken.insert(x);
                xs.insert(x);
                binds.push_back({x, a});
            }
        }
        FormulaPtr boxed = Formula::know(xs, alpha);
        for (auto it = binds.rbegin(); it != binds.rend(); ++it)
            boxed = Formula::assign(it->first, it->second, boxed);

        FormulaPtr clause = Formula::implies(characterizer(phi, A, sorted), boxed);
        out = out ? Formula::conj(out, clause) : clause;
    }
    return out;
}

bool eval_k_phi_direct(const GroupFormula& phi, const FormulaPtr& alpha,
                       const SimplicialModel& C, int facet) {
    if (!alpha->closed()) throw Error("the body of a group-knowledge operator must be a sentence");
    for (int g : C.successors(facet, group_extension(phi, C, facet)))
        if (!eval_simplicial(C, g, alpha)) return false;
    return true;
}

bool eval_k_phi_direct(const GroupFormula& phi, const FormulaPtr& alpha,
                       const KripkeModel& M, const WorldId& w) {
    if (!alpha->closed()) throw Error("the body of a group-knowledge operator must be a sentence");
    for (const WorldId& v : M.successors(w, group_extension(phi, M, w)))
        if (!eval_kripke(M, v, alpha)) return false;
    return true;
}

// --------------------------------------------------------------------------
// introspection
// --------------------------------------------------------------------------

bool positive_introspection_grammar(const GroupFormula& phi) {
    // chi ::= p(var) | K{var} alpha | ~chi | (chi & chi)
    std::function<bool(const FormulaPtr&)> ok = [&](const FormulaPtr& f) {
        switch (f->op) {
            case Op::Atom:
                return f->var == phi.var;
            case Op::Know:
                return f->group == std::vector<VarId>{phi.var};
            case Op::Neg:
                return ok(f->left);
            case Op::And:
                return ok(f->left) && ok(f->right);
            case Op::Top:
            case Op::Assign:
                return false;
        }
        return false;
    };
    return ok(phi.body);
}

IntrospectionReport check_pos_introspection(const GroupFormula& phi,
                                            const std::vector<FormulaPtr>& alphas,
                                            const std::vector<SimplicialModel>& models) {
    IntrospectionReport rep;
    rep.within_grammar = positive_introspection_grammar(phi);
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const SimplicialModel& C = models[mi];
        for (const FormulaPtr& alpha : alphas)
            for (int i = 0; i < C.facet_count(); ++i) {
                ++rep.points_checked;
                if (!eval_k_phi_direct(phi, alpha, C, i)) continue;
                // K_phi alpha holds here; K_phi K_phi alpha must too
                bool nested = true;
                for (int g : C.successors(i, group_extension(phi, C, i)))
                    if (!eval_k_phi_direct(phi, alpha, C, g)) { nested = false; break; }
                if (!nested)
                    rep.failures.push_back(print(alpha) + " @ model#" + std::to_string(mi) +
                                           " " + C.facet_label(i));
            }
    }
    return rep;
}

std::optional<NegIntrospectionWitness>
search_neg_introspection_counterexample(const GroupFormula& phi, int bound) {
    const std::vector<AgentId> agents = {"a", "b", "c"};
    std::set<PredId> pset = collect_preds(phi.body);
    std::vector<PredId> preds(pset.begin(), pset.end());

    // small closed probes for alpha: liveness and predicate claims per agent
    std::vector<FormulaPtr> alphas;
    for (const AgentId& a : agents) {
        alphas.push_back(Formula::dual_assign("z", a, Formula::top()));
        for (const PredId& p : preds)
            alphas.push_back(Formula::dual_assign("z", a, Formula::atom(p, "z")));
    }

    std::optional<NegIntrospectionWitness> found;
    forall_enumerated(agents, preds, bound, [&](const SimplicialModel& C) {
        for (int i = 0; i < C.facet_count(); ++i) {
            auto ext = group_extension(phi, C, i);
            for (const FormulaPtr& alpha : alphas) {
                if (eval_k_phi_direct(phi, alpha, C, i)) continue;  // ~K_phi alpha
                bool nested = true;
                for (int g : C.successors(i, ext))
                    if (eval_k_phi_direct(phi, alpha, C, g)) { nested = false; break; }
                if (nested) continue;  // K_phi ~K_phi alpha holds: no failure
                // cross-check the finding through the syntactic expansion
                FormulaPtr ka = expand_k_phi(phi, alpha, C.agents);
                FormulaPtr kna = expand_k_phi(phi, Formula::neg(ka), C.agents);
                if (eval_simplicial(C, i, ka) || eval_simplicial(C, i, kna)) continue;
                found = NegIntrospectionWitness{C, C.facet_label(i), alpha};
                return false;
            }
        }
        return true;
    });
    return found;
}

}  // namespace simpla
