#include "simpla/validity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "simpla/correspondence.hpp"
#include "simpla/enumerate.hpp"
#include "simpla/errors.hpp"
#include "simpla/semantics.hpp"

namespace simpla {

namespace {

const char* kSchemaNames[] = {
    "TAUT",   "T^K",    "K^K",    "MONO^K", "KNI",    "EPI",    "K^:=",
    "API",    "DET^:=", "ENI",    "TR^:=",  "SUB^:=", "COM^:=", "UI^:=",
    "R^:=",   "KPI",    "ANI",    "ELM^TR", "ELM^~",  "ELM^&",  "ELM^:=",
};

constexpr int kSchemaCount = 21;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    int upto(int n) { return n > 0 ? static_cast<int>(g() % n) : 0; }
    bool coin(int percent) { return static_cast<int>(g() % 100) < percent; }
    std::uint64_t fork() { return g(); }
};

const std::vector<PredId> kPreds = {"p", "q"};

// Wrap every remaining free variable in a binder; binding a free variable
// to any agent preserves validity, so closed instances stay representative.
FormulaPtr close_up(FormulaPtr f, Rng& r, const std::vector<AgentId>& pool) {
    while (!f->closed()) {
        VarId v = *f->fv.begin();
        f = Formula::assign(v, pool[r.upto(static_cast<int>(pool.size()))], f);
    }
    return f;
}

FormulaPtr iff(const FormulaPtr& a, const FormulaPtr& b) {
    return Formula::conj(Formula::implies(a, b), Formula::implies(b, a));
}

FormulaPtr sentence(Rng& r, const std::vector<AgentId>& pool) {
    return random_formula(pool, kPreds, 2, r.fork());
}

FormulaPtr open_over(Rng& r, const std::vector<AgentId>& pool,
                     const std::vector<VarId>& vars) {
    return random_formula_open(pool, kPreds, vars, 2, r.fork());
}

AgentId pick(Rng& r, const std::vector<AgentId>& pool) {
    return pool[r.upto(static_cast<int>(pool.size()))];
}

// A vector of distinct variables x1..xn drawn from a fixed pool, n <= 2.
std::vector<VarId> var_vector(Rng& r, int n) {
    static const std::vector<VarId> vpool = {"x", "y"};
    std::vector<VarId> out(vpool.begin(), vpool.begin() + n);
    if (n == 2 && r.coin(50)) std::swap(out[0], out[1]);
    return out;
}

FormulaPtr prefix_assign(const std::vector<VarId>& xs,
                         const std::vector<AgentId>& as, FormulaPtr body) {
    for (std::size_t i = xs.size(); i-- > 0;)
        body = Formula::assign(xs[i], as[i], body);
    return body;
}

// A finite group term needs a closed body; random closed sentences supply
// them throughout.
std::set<VarId> group_of(const std::vector<VarId>& xs) {
    return std::set<VarId>(xs.begin(), xs.end());
}

// /\_{b in B} [z:=b]bot -- "everyone outside {as} is absent".
FormulaPtr absence_conj(const std::vector<AgentId>& as,
                        const std::vector<AgentId>& pool) {
    std::set<AgentId> present(as.begin(), as.end());
    FormulaPtr acc;
    for (const AgentId& b : pool) {
        if (present.count(b)) continue;
        FormulaPtr one = Formula::assign("z", b, Formula::bot());
        acc = acc ? Formula::conj(acc, one) : one;
    }
    return acc ? acc : Formula::top();
}

FormulaPtr build_instance(Schema s, Rng& r, const std::vector<AgentId>& pool) {
    switch (s) {
        case Schema::Taut: {
            FormulaPtr f = sentence(r, pool), g = sentence(r, pool);
            switch (r.upto(5)) {
                case 0: return Formula::implies(f, f);
                case 1: return Formula::implies(f, Formula::implies(g, f));
                case 2: return Formula::implies(Formula::conj(f, g), f);
                case 3:
                    return Formula::implies(Formula::neg(Formula::neg(f)), f);
                default: return Formula::disj(f, Formula::neg(f));
            }
        }
        case Schema::TK: {
            auto xs = var_vector(r, r.upto(3));
            FormulaPtr a = sentence(r, pool);
            FormulaPtr body =
                Formula::implies(Formula::know(group_of(xs), a), a);
            return close_up(body, r, pool);
        }
        case Schema::KK: {
            auto xs = var_vector(r, r.upto(3));
            auto X = group_of(xs);
            FormulaPtr a = sentence(r, pool), b = sentence(r, pool);
            FormulaPtr body = Formula::implies(
                Formula::know(X, Formula::implies(a, b)),
                Formula::implies(Formula::know(X, a), Formula::know(X, b)));
            return close_up(body, r, pool);
        }
        case Schema::MonoK: {
            auto ys = var_vector(r, 1 + r.upto(2));
            auto Y = group_of(ys);
            std::set<VarId> X;
            for (const VarId& v : Y)
                if (r.coin(50)) X.insert(v);
            FormulaPtr a = sentence(r, pool);
            FormulaPtr body = Formula::implies(Formula::know(X, a),
                                               Formula::know(Y, a));
            return close_up(body, r, pool);
        }
        case Schema::Kni: {
            int n = r.upto(3);
            auto xs = var_vector(r, n);
            std::vector<AgentId> as;
            for (int i = 0; i < n; ++i) as.push_back(pick(r, pool));
            auto X = group_of(xs);
            FormulaPtr nk = Formula::neg(Formula::know(X, sentence(r, pool)));
            FormulaPtr body = Formula::implies(
                nk, Formula::know(X, prefix_assign(xs, as, nk)));
            return prefix_assign(xs, as, body);
        }
        case Schema::Epi: {
            AgentId a = pick(r, pool);
            return Formula::assign(
                "x", a,
                Formula::know({"x"}, Formula::dual_assign("x", a,
                                                           Formula::top())));
        }
        case Schema::KAssign: {
            AgentId a = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x"});
            FormulaPtr g = open_over(r, pool, {"x"});
            return Formula::implies(
                Formula::assign("x", a, Formula::implies(f, g)),
                Formula::implies(Formula::assign("x", a, f),
                                 Formula::assign("x", a, g)));
        }
        case Schema::Api: {
            AgentId a = pick(r, pool);
            PredId p = kPreds[r.upto(static_cast<int>(kPreds.size()))];
            FormulaPtr px = Formula::atom(p, "x");
            return Formula::assign(
                "x", a,
                Formula::implies(
                    px, Formula::know({"x"}, Formula::assign("x", a, px))));
        }
        case Schema::Det: {
            AgentId a = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x"});
            return Formula::implies(Formula::dual_assign("x", a, f),
                                    Formula::assign("x", a, f));
        }
        case Schema::Eni: {
            int n = r.upto(3);
            auto xs = var_vector(r, n);
            std::vector<AgentId> as;
            for (int i = 0; i < n; ++i) as.push_back(pick(r, pool));
            FormulaPtr dead = absence_conj(as, pool);
            FormulaPtr body = Formula::implies(
                dead, Formula::know(group_of(xs), dead));
            return prefix_assign(xs, as, body);
        }
        case Schema::Tr: {
            AgentId a = pick(r, pool);
            FormulaPtr f =
                r.coin(50) ? sentence(r, pool) : open_over(r, pool, {"y"});
            FormulaPtr body =
                Formula::implies(f, Formula::assign("x", a, f));
            return close_up(body, r, pool);
        }
        case Schema::Sub: {
            AgentId a = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x"});
            auto avoid = collect_vars(f);
            avoid.insert("x");
            VarId y = fresh_var(avoid);
            FormulaPtr body = Formula::assign(
                y, a,
                Formula::implies(Formula::assign("x", a, f),
                                 substitute(f, y, "x")));
            return body;
        }
        case Schema::Com: {
            AgentId a = pick(r, pool), b = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x", "y"});
            return Formula::implies(
                Formula::assign("x", a, Formula::assign("y", b, f)),
                Formula::assign("y", b, Formula::assign("x", a, f)));
        }
        case Schema::Ui: {
            FormulaPtr f = open_over(r, pool, {"x"});
            FormulaPtr acc;
            for (const AgentId& a : pool) {
                FormulaPtr one = Formula::assign("x", a, f);
                acc = acc ? Formula::conj(acc, one) : one;
            }
            return close_up(Formula::implies(acc, f), r, pool);
        }
        case Schema::Rename: {
            AgentId a = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x"});
            auto avoid = collect_vars(f);
            avoid.insert("x");
            VarId y = fresh_var(avoid);
            return iff(Formula::assign("x", a, f),
                       Formula::assign(y, a, substitute(f, y, "x")));
        }
        case Schema::Kpi: {
            int n = r.upto(3);
            auto xs = var_vector(r, n);
            std::vector<AgentId> as;
            for (int i = 0; i < n; ++i) as.push_back(pick(r, pool));
            auto X = group_of(xs);
            FormulaPtr k = Formula::know(X, sentence(r, pool));
            FormulaPtr body = Formula::implies(
                k, Formula::know(X, prefix_assign(xs, as, k)));
            return prefix_assign(xs, as, body);
        }
        case Schema::Ani: {
            AgentId a = pick(r, pool);
            PredId p = kPreds[r.upto(static_cast<int>(kPreds.size()))];
            FormulaPtr npx = Formula::neg(Formula::atom(p, "x"));
            return Formula::assign(
                "x", a,
                Formula::implies(
                    npx, Formula::know({"x"}, Formula::assign("x", a, npx))));
        }
        case Schema::ElmTr: {
            AgentId a = pick(r, pool);
            FormulaPtr f =
                r.coin(50) ? sentence(r, pool) : open_over(r, pool, {"y"});
            FormulaPtr body =
                iff(Formula::assign("x", a, f),
                    Formula::disj(Formula::assign("x", a, Formula::bot()), f));
            return close_up(body, r, pool);
        }
        case Schema::ElmNeg: {
            AgentId a = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x"});
            return iff(
                Formula::assign("x", a, Formula::neg(f)),
                Formula::disj(Formula::assign("x", a, Formula::bot()),
                              Formula::neg(Formula::assign("x", a, f))));
        }
        case Schema::ElmAnd: {
            AgentId a = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x"});
            FormulaPtr g = open_over(r, pool, {"x"});
            return iff(Formula::assign("x", a, Formula::conj(f, g)),
                       Formula::conj(Formula::assign("x", a, f),
                                     Formula::assign("x", a, g)));
        }
        case Schema::ElmAssign: {
            AgentId a = pick(r, pool), b = pick(r, pool);
            FormulaPtr f = open_over(r, pool, {"x", "y"});
            return iff(
                Formula::assign("x", a, Formula::assign("y", b, f)),
                Formula::assign("y", b, Formula::assign("x", a, f)));
        }
    }
    throw Error("unknown schema");
}

}  // namespace

const std::vector<Schema>& all_schemas() {
    static const std::vector<Schema> table = [] {
        std::vector<Schema> out;
        for (int i = 0; i < kSchemaCount; ++i)
            out.push_back(static_cast<Schema>(i));
        return out;
    }();
    return table;
}

std::string schema_name(Schema s) {
    return kSchemaNames[static_cast<int>(s)];
}

std::optional<Schema> schema_by_name(const std::string& name) {
    for (int i = 0; i < kSchemaCount; ++i)
        if (name == kSchemaNames[i]) return static_cast<Schema>(i);
    return std::nullopt;
}

FormulaPtr instantiate(Schema s, std::uint64_t seed,
                       const std::vector<AgentId>& pool) {
    if (pool.empty()) throw Error("instantiate: empty agent pool");
    Rng r(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(s));
    FormulaPtr f = build_instance(s, r, pool);
    if (!f->closed()) throw Error("instantiate: produced an open formula");
    return f;
}

FormulaPtr instantiate_guardless_eni(std::uint64_t seed) {
    const std::vector<AgentId> pool = {"a", "b", "c"};
    Rng r(seed * 0x9E3779B97F4A7C15ULL + 0xE1);
    int n = 1 + r.upto(2);
    auto xs = var_vector(r, n);
    std::vector<AgentId> as;
    for (int i = 0; i < n; ++i) as.push_back(pick(r, pool));
    FormulaPtr dead = absence_conj(as, pool);
    return prefix_assign(xs, as, Formula::know(group_of(xs), dead));
}

SimplicialModel random_simplicial_model(const GenParams& gp) {
    static const std::vector<AgentId> letters = {"a", "b", "c", "d"};
    int n = std::min(std::max(gp.agent_count, 1), 4);
    std::vector<AgentId> agents(letters.begin(), letters.begin() + n);
    static const std::vector<PredId> predletters = {"p", "q", "r", "s"};
    int np = std::min(std::max(gp.pred_count, 0), 4);
    std::vector<PredId> preds(predletters.begin(), predletters.begin() + np);

    Rng r(gp.seed * 0x9E3779B97F4A7C15ULL + 0xC0FFEE);
    int nf = 1 + r.upto(std::max(gp.facet_budget, 1));

    std::map<AgentId, std::vector<VertexId>> pools;
    std::map<VertexId, AgentId> color;
    int created = 0;
    std::vector<std::set<VertexId>> raw;
    for (int i = 0; i < nf; ++i) {
        int mask = 1 + r.upto((1 << n) - 1);
        std::set<VertexId> facet;
        for (int ai = 0; ai < n; ++ai) {
            if (!(mask & (1 << ai))) continue;
            auto& pl = pools[agents[ai]];
            bool reuse = !pl.empty() &&
                         (created >= gp.vertex_budget || r.coin(45));
            VertexId v;
            if (reuse) {
                v = pl[r.upto(static_cast<int>(pl.size()))];
            } else {
                v = agents[ai] + std::to_string(pl.size());
                pl.push_back(v);
                color[v] = agents[ai];
                ++created;
            }
            facet.insert(v);
        }
        raw.push_back(facet);
    }

    // Faces of other facets would fail validation; keep only the maximal
    // ones (first copy wins among duplicates).
    std::vector<std::set<VertexId>> kept;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        bool nested = false;
        for (std::size_t j = 0; j < raw.size() && !nested; ++j) {
            if (j == i) continue;
            bool subset = std::includes(raw[j].begin(), raw[j].end(),
                                        raw[i].begin(), raw[i].end());
            if (subset && (raw[i] != raw[j] || j < i)) nested = true;
        }
        if (!nested) kept.push_back(raw[i]);
    }

    SimplicialModel C;
    C.agents = agents;
    C.facet_list = kept;
    std::set<VertexId> used;
    for (const auto& f : kept) used.insert(f.begin(), f.end());
    C.vertices.assign(used.begin(), used.end());
    for (const VertexId& v : C.vertices) C.color[v] = color.at(v);
    for (const PredId& p : preds) {
        std::set<VertexId>& ext = C.labeling[p];
        for (const VertexId& v : C.vertices)
            if (r.coin(35)) ext.insert(v);
    }
    C.finalize();
    return C;
}

KripkeModel random_local_epistemic_model(const GenParams& gp) {
    return lem(random_simplicial_model(gp));
}

int SoundnessReport::total_failures() const {
    int t = 0;
    for (const auto& row : rows) t += row.failures;
    return t;
}

std::string SoundnessReport::to_text() const {
    std::ostringstream os;
    for (const auto& row : rows)
        os << row.schema << "," << row.instances << "," << row.models << ","
           << row.failures << "\n";
    return os.str();
}

SoundnessReport soundness_suite(const std::vector<Schema>& schemas, int trials,
                                const GenParams& gp, int models) {
    std::vector<AgentId> pool;
    {
        static const std::vector<AgentId> letters = {"a", "b", "c", "d"};
        int n = std::min(std::max(gp.agent_count, 1), 4);
        pool.assign(letters.begin(), letters.begin() + n);
    }

    // One fixed bank of models shared by every schema keeps the run cheap
    // and the report reproducible.
    std::vector<SimplicialModel> bank;
    std::vector<KripkeModel> kbank;
    for (int m = 0; m < models; ++m) {
        GenParams g2 = gp;
        g2.seed = gp.seed + 104729u * static_cast<std::uint64_t>(m) + 1;
        bank.push_back(random_simplicial_model(g2));
        kbank.push_back(lem(bank.back()));
    }

    SoundnessReport report;
    for (Schema s : schemas) {
        SoundnessRow row;
        row.schema = schema_name(s);
        row.instances = trials;
        row.models = models;
        for (int t = 0; t < trials; ++t) {
            FormulaPtr inst =
                instantiate(s, gp.seed + 7919u * static_cast<std::uint64_t>(t),
                            pool);
            for (int m = 0; m < models; ++m) {
                ValidityCheck vc = valid_on_model(bank[m], inst);
                ValidityCheck vk = valid_on_model(kbank[m], inst);
                if (vc.valid && vk.valid) continue;
                ++row.failures;
                if (row.failure_notes.size() < 5) {
                    std::ostringstream os;
                    os << row.schema << " instance " << print(inst)
                       << " false at "
                       << (vc.valid ? vk.failing_point : vc.failing_point)
                       << (vc.valid ? " (kripke side)" : "")
                       << " [model seed "
                       << gp.seed + 104729u * static_cast<std::uint64_t>(m) + 1
                       << "]";
                    row.failure_notes.push_back(os.str());
                }
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

SatResult sat_bounded(const FormulaPtr& alpha, int max_facets) {
    if (!alpha->closed())
        throw Error("sat_bounded: formula has free variables");
    std::set<AgentId> aset = collect_agents(alpha);
    // One agent beyond the formula's own lets models mention an outsider;
    // witnesses like "someone else is present" need it.
    for (char c = 'a'; c <= 'z'; ++c) {
        std::string cand(1, c);
        if (!aset.count(cand)) {
            aset.insert(cand);
            break;
        }
    }
    std::vector<AgentId> agents(aset.begin(), aset.end());
    std::set<PredId> pset = collect_preds(alpha);
    std::vector<PredId> preds(pset.begin(), pset.end());

    SatResult res;
    res.bound = max_facets;
    forall_enumerated(agents, preds, max_facets, [&](const SimplicialModel& C) {
        ++res.models_checked;
        for (int i = 0; i < C.facet_count(); ++i) {
            if (eval_simplicial(C, i, alpha)) {
                res.sat = true;
                res.witness = C;
                res.witness_point = C.facet_label(i);
                return false;
            }
        }
        return true;
    });
    if (res.sat) {
        auto idx = res.witness.find_facet(res.witness_point);
        if (!idx || !eval_simplicial(res.witness, *idx, alpha))
            throw Error("sat_bounded: witness failed re-evaluation");
    }
    return res;
}

int default_sat_bound(const FormulaPtr& alpha) {
    int knows = 0;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
        if (f->op == Op::Know) ++knows;
        if (f->left) walk(f->left);
        if (f->right) walk(f->right);
    };
    walk(alpha);
    int exponent = static_cast<int>(collect_agents(alpha).size()) + knows;
    if (exponent > 10) exponent = 10;  // keep the search finishable
    return 1 << exponent;
}

}  // namespace simpla
