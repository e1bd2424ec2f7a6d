#include "simpla/bisim.hpp"

#include <algorithm>
#include <limits>

#include "simpla/errors.hpp"
#include "simpla/semantics.hpp"

namespace simpla {

namespace {

constexpr int kAlive = std::numeric_limits<int>::max();

// A model kind reduced to what the fixpoint needs: per-point live sets and
// atom extensions, and for each ordered point pair the agents that make the
// second an {a}-successor of the first.  A-successor = all of A in the link.
struct Side {
    std::vector<std::set<AgentId>> live;
    std::vector<std::map<PredId, std::set<AgentId>>> atoms;
    std::vector<std::vector<std::set<AgentId>>> link;
    std::vector<std::string> label;

    int size() const { return static_cast<int>(live.size()); }

    std::vector<int> successors(int i, const std::set<AgentId>& A) const {
        std::vector<int> out;
        for (int j = 0; j < size(); ++j) {
            const auto& l = link[i][j];
            if (std::includes(l.begin(), l.end(), A.begin(), A.end())) out.push_back(j);
        }
        return out;
    }
};

Side make_side(const SimplicialModel& C) {
    Side s;
    int n = C.facet_count();
    s.live.resize(n);
    s.atoms.resize(n);
    s.link.assign(n, std::vector<std::set<AgentId>>(n));
    for (int i = 0; i < n; ++i) {
        s.live[i] = C.live(i);
        s.label.push_back(C.facet_label(i));
        for (const auto& [p, vs] : C.labeling) s.atoms[i][p] = C.atom_extension(p, i);
        for (int j = 0; j < n; ++j) s.link[i][j] = C.link(i, j);
    }
    return s;
}

Side make_side(const KripkeModel& M) {
    Side s;
    int n = static_cast<int>(M.worlds.size());
    s.live.resize(n);
    s.atoms.resize(n);
    s.link.assign(n, std::vector<std::set<AgentId>>(n));
    for (int i = 0; i < n; ++i) {
        const WorldId& w = M.worlds[i];
        s.live[i] = M.live(w);
        s.label.push_back(w);
        for (const auto& [p, pw] : M.interp) s.atoms[i][p] = M.atom_extension(p, w);
        for (int j = 0; j < n; ++j)
            for (const AgentId& a : M.agents)
                if (M.reachable(a, w).count(M.worlds[j])) s.link[i][j].insert(a);
    }
    return s;
}

std::set<PredId> pred_universe(const Side& l, const Side& r) {
    std::set<PredId> preds;
    for (const auto& per : l.atoms)
        for (const auto& [p, e] : per) preds.insert(p);
    for (const auto& per : r.atoms)
        for (const auto& [p, e] : per) preds.insert(p);
    return preds;
}

bool inv_holds(const Side& l, int i, const Side& r, int j, const std::set<PredId>& preds) {
    if (l.live[i] != r.live[j]) return false;
    for (const PredId& p : preds) {
        static const std::set<AgentId> none;
        auto it = l.atoms[i].find(p);
        auto jt = r.atoms[j].find(p);
        if ((it == l.atoms[i].end() ? none : it->second) !=
            (jt == r.atoms[j].end() ? none : jt->second))
            return false;
    }
    return true;
}

std::vector<std::set<AgentId>> subsets_of(const std::set<AgentId>& live) {
    std::vector<AgentId> as(live.begin(), live.end());
    std::vector<std::set<AgentId>> out;
    for (std::uint32_t mask = 0; mask < (1u << as.size()); ++mask) {
        std::set<AgentId> A;
        for (std::size_t k = 0; k < as.size(); ++k)
            if (mask & (1u << k)) A.insert(as[k]);
        out.push_back(std::move(A));
    }
    return out;
}

// rank[i][j]: 0 if (Inv) already fails, k >= 1 if the pair died in round k of
// the refinement, kAlive if it is in the greatest bisimulation.  The pairs
// present when round k runs are exactly those with rank >= k.
struct Fixpoint {
    Side left, right;
    std::vector<std::vector<int>> rank;

    bool matched(const Side& from, int p, const Side& to, int q,
                 const std::set<AgentId>& A, int round, bool swap) const {
        for (int p2 : from.successors(p, A)) {
            bool found = false;
            for (int q2 : to.successors(q, A)) {
                int r = swap ? rank[q2][p2] : rank[p2][q2];
                if (r >= round) { found = true; break; }
            }
            if (!found) return false;
        }
        return true;
    }

    void run() {
        auto preds = pred_universe(left, right);
        rank.assign(left.size(), std::vector<int>(right.size(), kAlive));
        for (int i = 0; i < left.size(); ++i)
            for (int j = 0; j < right.size(); ++j)
                if (!inv_holds(left, i, right, j, preds)) rank[i][j] = 0;

        for (int round = 1;; ++round) {
            std::vector<std::pair<int, int>> doomed;
            for (int i = 0; i < left.size(); ++i)
                for (int j = 0; j < right.size(); ++j) {
                    if (rank[i][j] < round) continue;
                    for (const auto& A : subsets_of(left.live[i])) {
                        if (!matched(left, i, right, j, A, round, false) ||
                            !matched(right, j, left, i, A, round, true)) {
                            doomed.push_back({i, j});
                            break;
                        }
                    }
                }
            if (doomed.empty()) break;
            for (auto [i, j] : doomed) rank[i][j] = round;
        }
    }
};

// ---- distinguishing sentences --------------------------------------------

// Recursive construction along the refinement run.  `build(s, p, q)` returns
// a sentence true at point p of side s and false at point q of the other
// side; the rank of the pair strictly decreases into the recursion, so this
// terminates.
struct Distinguisher {
    const Fixpoint& fx;
    std::vector<AgentId> all_agents;  // union of both models' agent sets
    std::set<PredId> preds;

    const Side& side(int s) const { return s == 0 ? fx.left : fx.right; }
    int rank_of(int s, int p, int q) const {
        return s == 0 ? fx.rank[p][q] : fx.rank[q][p];
    }

    static FormulaPtr conjoin(const std::vector<FormulaPtr>& fs) {
        if (fs.empty()) return Formula::top();
        FormulaPtr out = fs.front();
        for (std::size_t k = 1; k < fs.size(); ++k) out = Formula::conj(out, fs[k]);
        return out;
    }

    // live sets differ: say exactly which agents are alive
    FormulaPtr alive_profile(const std::set<AgentId>& A) const {
        std::vector<FormulaPtr> parts;
        for (const AgentId& a : all_agents)
            parts.push_back(A.count(a)
                                ? Formula::dual_assign("x", a, Formula::top())
                                : Formula::assign("x", a, Formula::bot()));
        return conjoin(parts);
    }

    // atom extensions differ: say exactly which live agents satisfy p
    FormulaPtr atom_profile(const PredId& p, const std::set<AgentId>& ext) const {
        std::vector<FormulaPtr> parts;
        for (const AgentId& a : all_agents)
            parts.push_back(ext.count(a)
                                ? Formula::dual_assign("x", a, Formula::atom(p, "x"))
                                : Formula::assign("x", a, Formula::neg(Formula::atom(p, "x"))));
        return conjoin(parts);
    }

    FormulaPtr build(int s, int p, int q) const {
        const Side& mine = side(s);
        const Side& other = side(1 - s);
        int k = rank_of(s, p, q);

        if (k == 0) {
            if (mine.live[p] != other.live[q]) return alive_profile(mine.live[p]);
            for (const PredId& pr : preds) {
                static const std::set<AgentId> none;
                auto it = mine.atoms[p].find(pr);
                auto jt = other.atoms[q].find(pr);
                const auto& ep = it == mine.atoms[p].end() ? none : it->second;
                const auto& eq = jt == other.atoms[q].end() ? none : jt->second;
                if (ep != eq) return atom_profile(pr, ep);
            }
            throw Error("distinguisher: rank-0 pair with matching invariants");
        }

        // find the witnessing A and unmatched successor for round k
        for (const auto& A : subsets_of(mine.live[p])) {
            for (int p2 : mine.successors(p, A)) {
                bool unmatched = true;
                for (int q2 : other.successors(q, A))
                    if (rank_of(s, p2, q2) >= k) { unmatched = false; break; }
                if (!unmatched) continue;
                // forth-clause failure: p2 has no partner among q's A-successors
                std::vector<FormulaPtr> parts;
                for (int q2 : other.successors(q, A))
                    parts.push_back(build(s, p2, q2));
                return wrap(A, conjoin(parts));
            }
            for (int q2 : other.successors(q, A)) {
                bool unmatched = true;
                for (int p2 : mine.successors(p, A))
                    if (rank_of(s, p2, q2) >= k) { unmatched = false; break; }
                if (!unmatched) continue;
                // back-clause failure: mirror the construction and negate it
                std::vector<FormulaPtr> parts;
                for (int p2 : mine.successors(p, A))
                    parts.push_back(build(1 - s, q2, p2));
                return Formula::neg(wrap(A, conjoin(parts)));
            }
        }
        throw Error("distinguisher: deleted pair with no failing subset");
    }

    // <x0:=a0>...<xn:=an> Khat{x0..xn} body
    static FormulaPtr wrap(const std::set<AgentId>& A, FormulaPtr body) {
        std::vector<std::pair<VarId, AgentId>> binds;
        std::set<VarId> xs;
        for (const AgentId& a : A) {
            VarId x = fresh_var(xs);
            xs.insert(x);
            binds.push_back({x, a});
        }
        FormulaPtr f = Formula::dual_know(xs, std::move(body));
        for (auto it = binds.rbegin(); it != binds.rend(); ++it)
            f = Formula::dual_assign(it->first, it->second, f);
        return f;
    }
};

Fixpoint run_fixpoint(Side l, Side r) {
    Fixpoint fx{std::move(l), std::move(r), {}};
    fx.run();
    return fx;
}

BisimRelation harvest(const Fixpoint& fx, BisimRelation::Kind kind) {
    BisimRelation rel;
    rel.kind = kind;
    for (int i = 0; i < fx.left.size(); ++i)
        for (int j = 0; j < fx.right.size(); ++j)
            if (fx.rank[i][j] == kAlive) rel.pairs.insert({fx.left.label[i], fx.right.label[j]});
    return rel;
}

std::vector<AgentId> agent_union(const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
    std::set<AgentId> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    return {u.begin(), u.end()};
}

template <typename Model, typename Point>
FormulaPtr distinguish_impl(const Model& A, const Point& p, const Model& B, const Point& q,
                            int pi, int qi,
                            bool (*eval)(const Model&, const Point&, const FormulaPtr&)) {
    Fixpoint fx = run_fixpoint(make_side(A), make_side(B));
    if (fx.rank[pi][qi] == kAlive) return nullptr;
    Distinguisher d{fx, agent_union(A.agents, B.agents), pred_universe(fx.left, fx.right)};
    FormulaPtr out = d.build(0, pi, qi);
    if (!eval(A, p, out) || eval(B, q, out))
        throw Error("distinguisher failed its own evaluation check: " + print(out));
    return out;
}

}  // namespace

BisimRelation greatest_bisim(const SimplicialModel& A, const SimplicialModel& B) {
    return harvest(run_fixpoint(make_side(A), make_side(B)), BisimRelation::Kind::Simplicial);
}

BisimRelation greatest_bisim(const KripkeModel& A, const KripkeModel& B) {
    return harvest(run_fixpoint(make_side(A), make_side(B)), BisimRelation::Kind::Kripke);
}

bool bisimilar(const SimplicialModel& A, int i, const SimplicialModel& B, int j) {
    Fixpoint fx = run_fixpoint(make_side(A), make_side(B));
    return fx.rank[i][j] == kAlive;
}

bool bisimilar(const KripkeModel& A, const WorldId& w, const KripkeModel& B, const WorldId& v) {
    auto wi = std::find(A.worlds.begin(), A.worlds.end(), w);
    auto vi = std::find(B.worlds.begin(), B.worlds.end(), v);
    if (wi == A.worlds.end()) throw ModelError("unknown world '" + w + "'");
    if (vi == B.worlds.end()) throw ModelError("unknown world '" + v + "'");
    Fixpoint fx = run_fixpoint(make_side(A), make_side(B));
    return fx.rank[wi - A.worlds.begin()][vi - B.worlds.begin()] == kAlive;
}

FormulaPtr distinguishing_sentence(const SimplicialModel& A, int i,
                                   const SimplicialModel& B, int j) {
    auto ev = +[](const SimplicialModel& M, const int& at, const FormulaPtr& f) {
        return eval_simplicial(M, at, f);
    };
    return distinguish_impl<SimplicialModel, int>(A, i, B, j, i, j, ev);
}

FormulaPtr distinguishing_sentence(const KripkeModel& A, const WorldId& w,
                                   const KripkeModel& B, const WorldId& v) {
    auto wi = std::find(A.worlds.begin(), A.worlds.end(), w);
    auto vi = std::find(B.worlds.begin(), B.worlds.end(), v);
    if (wi == A.worlds.end()) throw ModelError("unknown world '" + w + "'");
    if (vi == B.worlds.end()) throw ModelError("unknown world '" + v + "'");
    auto ev = +[](const KripkeModel& M, const WorldId& at, const FormulaPtr& f) {
        return eval_kripke(M, at, f);
    };
    return distinguish_impl<KripkeModel, WorldId>(A, w, B, v,
                                                  static_cast<int>(wi - A.worlds.begin()),
                                                  static_cast<int>(vi - B.worlds.begin()), ev);
}

}  // namespace simpla
