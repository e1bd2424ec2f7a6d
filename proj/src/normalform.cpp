#include "simpla/normalform.hpp"

#include <algorithm>
#include <utility>

#include "simpla/errors.hpp"

namespace simpla {

namespace {

// Peel a maximal [y1:=b1]...[yk:=bk] prefix.
struct Prefix {
    std::vector<std::pair<VarId, AgentId>> binds;
    FormulaPtr base;  // first non-Assign node under the prefix
};

Prefix peel(FormulaPtr f) {
    Prefix p;
    while (f->op == Op::Assign) {
        p.binds.push_back({f->var, f->agent});
        f = f->left;
    }
    p.base = std::move(f);
    return p;
}

bool distinct_vars(const std::vector<std::pair<VarId, AgentId>>& binds) {
    std::set<VarId> seen;
    for (const auto& [x, a] : binds)
        if (!seen.insert(x).second) return false;
    return true;
}

// Is [x:=a]chi already one of the shapes the normal form keeps?  Besides the
// atom and bot leaves this accepts a binder prefix over K whose variables all
// feed the K and do not rebind x, with x itself in the K's set — re-running
// the translation must not reshuffle such a prefix.
bool locally_normal(const VarId& x, const FormulaPtr& chi) {
    if (chi->op == Op::Atom) return chi->var == x;
    if (chi->is_bot()) return true;
    Prefix p = peel(chi);
    if (p.base->op != Op::Know) return false;
    std::set<VarId> group(p.base->group.begin(), p.base->group.end());
    if (!group.count(x)) return false;
    if (!distinct_vars(p.binds)) return false;
    for (const auto& [y, b] : p.binds)
        if (y == x || !group.count(y)) return false;
    return true;
}

FormulaPtr rebuild_prefix(const std::vector<std::pair<VarId, AgentId>>& binds, FormulaPtr base) {
    for (auto it = binds.rbegin(); it != binds.rend(); ++it)
        base = Formula::assign(it->first, it->second, std::move(base));
    return base;
}

}  // namespace

FormulaPtr nf_step(const FormulaPtr& f, const VarId& x, const AgentId& a) {
    switch (f->op) {
        case Op::Atom:
        case Op::Top:
            return f;
        case Op::Neg:
            return Formula::neg(nf_step(f->left, x, a));
        case Op::And:
            return Formula::conj(nf_step(f->left, x, a), nf_step(f->right, x, a));
        case Op::Know:
            return Formula::know({f->group.begin(), f->group.end()}, nf_step(f->left, x, a));
        case Op::Assign:
            break;
    }

    if (f->var != x || f->agent != a)  // someone else's binder: map through
        return Formula::assign(f->var, f->agent, nf_step(f->left, x, a));

    const FormulaPtr& chi = f->left;

    if (locally_normal(x, chi)) {
        // keep the shape, but still normalize inside the K body
        if (chi->op == Op::Atom || chi->is_bot()) return f;
        Prefix p = peel(chi);
        FormulaPtr body = Formula::know({p.base->group.begin(), p.base->group.end()},
                                        nf_step(p.base->left, x, a));
        return Formula::assign(x, a, rebuild_prefix(p.binds, std::move(body)));
    }

    if (!chi->fv.count(x))  // x not free below: the binder only tests liveness
        return Formula::disj(Formula::assign(x, a, Formula::bot()), nf_step(chi, x, a));

    switch (chi->op) {
        case Op::Neg:
            return Formula::disj(
                Formula::assign(x, a, Formula::bot()),
                Formula::neg(nf_step(Formula::assign(x, a, chi->left), x, a)));
        case Op::And:
            return Formula::conj(nf_step(Formula::assign(x, a, chi->left), x, a),
                                 nf_step(Formula::assign(x, a, chi->right), x, a));
        case Op::Assign:
            // x free below, so chi binds some other variable: commute it out
            return Formula::assign(chi->var, chi->agent,
                                   nf_step(Formula::assign(x, a, chi->left), x, a));
        case Op::Atom:
        case Op::Top:
        case Op::Know:
            break;  // unreachable: atoms on x, bot and K with x in its set
                    // are locally normal; others have x not free
    }
    throw Error("nf_step: no translation row matched " + print(f));
}

bool is_anf(const FormulaPtr& f) {
    switch (f->op) {
        case Op::Top:
            return true;
        case Op::Atom:
            return false;  // an open atom is not a sentence
        case Op::Neg:
            return is_anf(f->left);
        case Op::And:
            return is_anf(f->left) && is_anf(f->right);
        case Op::Know:
            // a bare K is only in the grammar with an empty prefix and set
            return f->group.empty() && is_anf(f->left);
        case Op::Assign:
            break;
    }

    Prefix p = peel(f);
    if (!distinct_vars(p.binds)) return false;
    if (p.base->op == Op::Atom)
        return p.binds.size() == 1 && p.base->var == p.binds.front().first;
    if (p.base->is_bot()) return p.binds.size() == 1;
    if (p.base->op == Op::Know) {
        std::set<VarId> vars;
        for (const auto& [y, b] : p.binds) vars.insert(y);
        std::set<VarId> group(p.base->group.begin(), p.base->group.end());
        return vars == group && is_anf(p.base->left);
    }
    return false;
}

namespace {

void collect_binders(const FormulaPtr& f,
                     std::vector<std::pair<VarId, AgentId>>& out,
                     std::set<std::pair<VarId, AgentId>>& seen) {
    if (f->left) collect_binders(f->left, out, seen);
    if (f->right) collect_binders(f->right, out, seen);
    if (f->op == Op::Assign && seen.insert({f->var, f->agent}).second)
        out.push_back({f->var, f->agent});
}

}  // namespace

FormulaPtr anf(const FormulaPtr& alpha) {
    if (!alpha->closed()) throw Error("assignment normal form is defined on sentences");

    FormulaPtr f = alpha;
    std::vector<std::pair<VarId, AgentId>> binders;
    std::set<std::pair<VarId, AgentId>> seen;
    collect_binders(f, binders, seen);

    // one pass per binder normally suffices; the cap turns a logic error
    // into a loud failure instead of an endless loop
    int max_passes = static_cast<int>(binders.size()) + 2;
    for (int pass = 0; pass < max_passes; ++pass) {
        if (is_anf(f)) return f;
        binders.clear();
        seen.clear();
        collect_binders(f, binders, seen);  // innermost first, duplicates dropped
        for (const auto& [x, a] : binders) f = nf_step(f, x, a);
    }
    if (is_anf(f)) return f;
    throw Error("anf did not reach normal form for " + print(alpha));
}

FormulaPtr simplify_constants(const FormulaPtr& f) {
    switch (f->op) {
        case Op::Atom:
        case Op::Top:
            return f;
        case Op::Neg: {
            FormulaPtr g = simplify_constants(f->left);
            if (g->is_bot()) return Formula::top();
            return Formula::neg(g);  // ~top already *is* bot
        }
        case Op::And: {
            FormulaPtr l = simplify_constants(f->left);
            FormulaPtr r = simplify_constants(f->right);
            if (l->is_bot() || r->is_bot()) return Formula::bot();
            if (l->op == Op::Top) return r;
            if (r->op == Op::Top) return l;
            return Formula::conj(l, r);
        }
        case Op::Know: {
            FormulaPtr g = simplify_constants(f->left);
            if (g->op == Op::Top) return g;
            return Formula::know({f->group.begin(), f->group.end()}, g);
        }
        case Op::Assign: {
            FormulaPtr g = simplify_constants(f->left);
            if (g->op == Op::Top) return g;
            // [x:=a]bot is the liveness probe: never folded
            return Formula::assign(f->var, f->agent, g);
        }
    }
    return f;
}

}  // namespace simpla
