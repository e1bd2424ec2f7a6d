#include "simpla/semantics.hpp"

#include <map>
#include <utility>

#include "simpla/errors.hpp"

namespace simpla {

bool admissible(const FormulaPtr& f, const Assignment& sigma, const std::set<AgentId>& live) {
    for (const VarId& x : f->fv) {
        auto it = sigma.find(x);
        if (it == sigma.end() || !live.count(it->second)) return false;
    }
    return true;
}

namespace {

void require_admissible(const Formula& f, const Assignment& sigma,
                        const std::set<AgentId>& live, const std::string& where) {
    for (const VarId& x : f.fv) {
        auto it = sigma.find(x);
        if (it == sigma.end()) throw UnmappedFreeVariable(x);
        if (!live.count(it->second))
            throw InadmissibleAssignment("variable '" + x + "' is mapped to '" + it->second +
                                         "', which is not alive at " + where);
    }
}

// One evaluator per model kind, sharing the recursion via an adapter that
// supplies live/atom/successors.  Closed subformulas are memoized per point,
// which keeps the big expanded group-knowledge conjunctions affordable.
template <typename Adapter>
struct Evaluator {
    const Adapter& side;
    std::map<std::pair<const Formula*, typename Adapter::Point>, bool> memo;

    bool eval(const typename Adapter::Point& at, const Formula& f, const Assignment& sigma) {
        const bool cacheable = f.fv.empty();
        if (cacheable) {
            auto it = memo.find({&f, at});
            if (it != memo.end()) return it->second;
        }
        bool result = true;
        switch (f.op) {
            case Op::Top:
                break;
            case Op::Atom:
                result = side.atom(at, f.pred, sigma.at(f.var));
                break;
            case Op::Neg:
                result = !eval(at, *f.left, sigma);
                break;
            case Op::And:
                result = eval(at, *f.left, sigma) && eval(at, *f.right, sigma);
                break;
            case Op::Assign:
                // a name for a dead agent denotes nothing: the binder is
                // trivially true, whatever the body says
                if (side.live(at).count(f.agent)) {
                    Assignment next = sigma;
                    next[f.var] = f.agent;
                    result = eval(at, *f.left, next);
                }
                break;
            case Op::Know: {
                std::set<AgentId> group;
                for (const VarId& x : f.group) group.insert(sigma.at(x));
                for (const auto& to : side.successors(at, group))
                    if (!eval(to, *f.left, sigma)) { result = false; break; }
                break;  // no successors (or an empty group over one point): true
            }
        }
        if (cacheable) memo[{&f, at}] = result;
        return result;
    }
};

struct SimplicialSide {
    using Point = int;
    const SimplicialModel& C;

    const std::set<AgentId>& live(int i) const { return C.live(i); }
    std::vector<int> successors(int i, const std::set<AgentId>& A) const {
        return C.successors(i, A);
    }
    bool atom(int i, const PredId& p, const AgentId& a) const {
        auto lt = C.labeling.find(p);
        if (lt == C.labeling.end()) return false;
        const auto& by_color = C.facet_vertex_by_color[i];
        auto vt = by_color.find(a);
        return vt != by_color.end() && lt->second.count(vt->second) != 0;
    }
};

struct KripkeSide {
    using Point = WorldId;
    const KripkeModel& M;

    const std::set<AgentId>& live(const WorldId& w) const { return M.live(w); }
    std::vector<WorldId> successors(const WorldId& w, const std::set<AgentId>& A) const {
        return M.successors(w, A);
    }
    bool atom(const WorldId& w, const PredId& p, const AgentId& a) const {
        auto it = M.interp.find(p);
        if (it == M.interp.end()) return false;
        auto jt = it->second.find(w);
        return jt != it->second.end() && jt->second.count(a) != 0;
    }
};

}  // namespace

bool eval_simplicial(const SimplicialModel& C, int facet, const FormulaPtr& f,
                     const Assignment& sigma) {
    if (facet < 0 || facet >= C.facet_count())
        throw ModelError("facet index " + std::to_string(facet) + " out of range");
    require_admissible(*f, sigma, C.live(facet), "facet " + C.facet_label(facet));
    Evaluator<SimplicialSide> ev{SimplicialSide{C}, {}};
    return ev.eval(facet, *f, sigma);
}

bool eval_kripke(const KripkeModel& M, const WorldId& w, const FormulaPtr& f,
                 const Assignment& sigma) {
    if (!M.has_world(w)) throw ModelError("unknown world '" + w + "'");
    require_admissible(*f, sigma, M.live(w), "world " + w);
    Evaluator<KripkeSide> ev{KripkeSide{M}, {}};
    return ev.eval(w, *f, sigma);
}

ValidityCheck valid_on_model(const SimplicialModel& C, const FormulaPtr& f) {
    if (!f->closed())
        throw Error("validity on a model is only defined for sentences");
    Evaluator<SimplicialSide> ev{SimplicialSide{C}, {}};
    for (int i = 0; i < C.facet_count(); ++i)
        if (!ev.eval(i, *f, {})) return {false, C.facet_label(i)};
    return {};
}

ValidityCheck valid_on_model(const KripkeModel& M, const FormulaPtr& f) {
    if (!f->closed())
        throw Error("validity on a model is only defined for sentences");
    Evaluator<KripkeSide> ev{KripkeSide{M}, {}};
    for (const WorldId& w : M.worlds)
        if (!ev.eval(w, *f, {})) return {false, w};
    return {};
}

}  // namespace simpla
