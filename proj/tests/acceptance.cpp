// Acceptance harness: ten end-to-end checks over the whole library, run in
// order, one "criterion N: PASS/FAIL" line each.  Every count, seed and time
// budget is pinned below; the binary exits nonzero if any line fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "simpla/bisim.hpp"
#include "simpla/correspondence.hpp"
#include "simpla/enumerate.hpp"
#include "simpla/intensional.hpp"
#include "simpla/models.hpp"
#include "simpla/normalform.hpp"
#include "simpla/semantics.hpp"
#include "simpla/syntax.hpp"
#include "simpla/validity.hpp"
#include "fixtures.hpp"

using namespace simpla;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome ok(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

// Clone world `w0` of a proper model with every edge mirrored and the two
// copies mutually related under w0's live agents: the result stays a local
// epistemic model but loses properness.
KripkeModel with_duplicated_world(KripkeModel M, const WorldId& w0) {
    WorldId copy = w0 + "_dup";
    M.worlds.push_back(copy);
    M.domain[copy] = M.domain[w0];
    for (auto& [p, by_world] : M.interp)
        if (by_world.count(w0)) by_world[copy] = by_world[w0];
    for (auto& [a, edges] : M.rel) {
        std::set<std::pair<WorldId, WorldId>> add;
        for (const auto& [u, v] : edges) {
            if (u == w0) add.insert({copy, v});
            if (v == w0) add.insert({u, copy});
        }
        edges.insert(add.begin(), add.end());
        if (M.domain[w0].count(a)) {
            edges.insert({w0, copy});
            edges.insert({copy, w0});
            edges.insert({copy, copy});
        }
    }
    M.finalize();
    return M;
}

// Same complex with every vertex renamed; bisimilar to the original at the
// matching facet by construction.
SimplicialModel renamed_copy(const SimplicialModel& C) {
    SimplicialModel R;
    R.agents = C.agents;
    auto rn = [](const VertexId& v) { return v + "_r"; };
    for (const VertexId& v : C.vertices) {
        R.vertices.push_back(rn(v));
        R.color[rn(v)] = C.color.at(v);
    }
    for (const auto& facet : C.facet_list) {
        std::set<VertexId> f;
        for (const VertexId& v : facet) f.insert(rn(v));
        R.facet_list.push_back(f);
    }
    for (const auto& [p, vs] : C.labeling)
        for (const VertexId& v : vs) R.labeling[p].insert(rn(v));
    R.finalize();
    return R;
}

// ---- criterion 1: the worked example ---------------------------------------

Outcome criterion1() {
    const char* readings[4] = {
        "<x:=a> K{x} [y:=b] K{y} [z:=c] p(z)",
        "<x:=a> K{x} [y:=b] K{y} <z:=c> p(z)",
        "<x:=a> K{x} <y:=b> K{y} [z:=c] p(z)",
        "<x:=a> K{x} <y:=b> K{y} <z:=c> p(z)",
    };
    const bool expected[4] = {true, true, false, false};
    SimplicialModel C = load_simplicial("intro.json");
    KripkeModel M = lem(C);
    for (int i = 0; i < 4; ++i) {
        FormulaPtr f = parse(readings[i]);
        if (eval_simplicial(C, 0, f) != expected[i])
            return fail(std::string("simplicial verdict wrong for ") + readings[i]);
        if (eval_kripke(M, "F", f) != expected[i])
            return fail(std::string("kripke verdict wrong for ") + readings[i]);
    }
    return ok("4 readings x 2 semantics match");
}

// ---- criterion 2: hexagon round trips --------------------------------------

Outcome criterion2() {
    SimplicialModel HS = load_simplicial("hex_simplicial.json");
    KripkeModel HK = load_kripke("hex_kripke.json");
    if (!isomorphic(sc(lem(HS)), HS)) return fail("sc(lem(hex)) != hex");
    if (!isomorphic(lem(sc(HK)), HK)) return fail("lem(sc(hexk)) != hexk");
    if (!isomorphic(lem(HS), HK)) return fail("lem(hex) != hexk");
    return ok("3 isomorphisms hold");
}

// ---- criterion 3: truth transfer across the translation --------------------

Outcome criterion3() {
    const int kModels = 100, kSentences = 50, kDepth = 3;
    std::vector<PredId> preds = {"p", "q"};
    long points = 0;
    for (int m = 1; m <= kModels; ++m) {
        GenParams gp;
        gp.agent_count = 3;
        gp.facet_budget = 6;
        gp.seed = 10000 + static_cast<std::uint64_t>(m);
        SimplicialModel C = random_simplicial_model(gp);
        KripkeModel M = lem(C);
        for (int s = 0; s < kSentences; ++s) {
            FormulaPtr f =
                random_formula(C.agents, preds, kDepth, gp.seed * 131 + s);
            for (int i = 0; i < C.facet_count(); ++i) {
                ++points;
                if (eval_simplicial(C, i, f) !=
                    eval_kripke(M, C.facet_label(i), f)) {
                    std::ostringstream os;
                    os << "mismatch: model seed " << gp.seed << ", " << print(f)
                       << " at " << C.facet_label(i);
                    return fail(os.str());
                }
            }
        }
    }
    std::ostringstream os;
    os << points << " point-evaluations agree";
    return ok(os.str());
}

// ---- criterion 4: schema soundness battery + mutant ------------------------

Outcome criterion4() {
    const int kTrials = 200, kModels = 50;
    GenParams gp;
    gp.agent_count = 3;
    gp.seed = 20000;
    SoundnessReport rep = soundness_suite(all_schemas(), kTrials, gp, kModels);
    if (rep.total_failures() != 0) {
        std::string first;
        for (const auto& row : rep.rows)
            if (!row.failure_notes.empty()) {
                first = row.failure_notes[0];
                break;
            }
        return fail("schema battery: " + std::to_string(rep.total_failures()) +
                    " failures; first: " + first);
    }

    // the same bank of models must refute the guard-stripped variant
    std::vector<SimplicialModel> bank;
    for (int m = 0; m < kModels; ++m) {
        GenParams bp = gp;
        bp.seed = gp.seed + 104729u * static_cast<std::uint64_t>(m) + 1;
        bank.push_back(random_simplicial_model(bp));
    }
    int mutants_caught = 0;
    for (int t = 0; t < kTrials; ++t) {
        FormulaPtr bad =
            instantiate_guardless_eni(gp.seed + 7919u * static_cast<std::uint64_t>(t));
        for (const SimplicialModel& C : bank)
            if (!valid_on_model(C, bad).valid) {
                ++mutants_caught;
                break;
            }
    }
    if (mutants_caught < 1) return fail("mutant never refuted");
    std::ostringstream os;
    os << "21 schemas x " << kTrials << " x " << kModels << " clean; mutant caught "
       << mutants_caught << "/" << kTrials;
    return ok(os.str());
}

// ---- criterion 5: properization --------------------------------------------

Outcome criterion5() {
    const int kModels = 100;
    for (int m = 1; m <= kModels; ++m) {
        GenParams gp;
        gp.seed = 30000 + static_cast<std::uint64_t>(m);
        KripkeModel base = lem(random_simplicial_model(gp));
        KripkeModel M = with_duplicated_world(
            base, base.worlds[static_cast<std::size_t>(m) % base.worlds.size()]);
        if (!check_local_epistemic(M).local_epistemic())
            return fail("duplication broke the input, seed " +
                        std::to_string(gp.seed));
        Properization pr = properize(M);
        if (!check_local_epistemic(pr.model).proper())
            return fail("quotient not proper, seed " + std::to_string(gp.seed));
        BisimRelation rel = greatest_bisim(M, pr.model);
        for (const WorldId& w : M.worlds)
            if (!rel.contains(w, pr.cell_of.at(w)))
                return fail("world " + w + " not bisimilar to its cell, seed " +
                            std::to_string(gp.seed));
    }
    return ok(std::to_string(kModels) + " improper models quotient cleanly");
}

// ---- criterion 6: distinguishers iff not bisimilar -------------------------

Outcome criterion6() {
    const int kPairs = 100;
    int separated = 0, matched = 0;
    for (int t = 1; t <= kPairs; ++t) {
        GenParams gp;
        gp.seed = 40000 + static_cast<std::uint64_t>(t);
        SimplicialModel A = random_simplicial_model(gp);
        SimplicialModel B;
        int i = t % A.facet_count(), j;
        if (t % 2 == 0) {  // half the pairs are renamed copies: bisimilar
            B = renamed_copy(A);
            j = i;
        } else {
            gp.seed += 500000;
            B = random_simplicial_model(gp);
            j = (t * 7) % B.facet_count();
        }
        bool bis = bisimilar(A, i, B, j);
        FormulaPtr d = distinguishing_sentence(A, i, B, j);
        if (bis != (d == nullptr))
            return fail("verdict/distinguisher disagree, seed " +
                        std::to_string(gp.seed));
        if (d != nullptr) {
            ++separated;
            if (!eval_simplicial(A, i, d) || eval_simplicial(B, j, d))
                return fail("distinguisher does not verify, seed " +
                            std::to_string(gp.seed));
        } else {
            ++matched;
        }
    }
    if (separated == 0 || matched == 0)
        return fail("degenerate mix: " + std::to_string(separated) + " separated, " +
                    std::to_string(matched) + " matched");
    std::ostringstream os;
    os << kPairs << " pairs consistent (" << separated << " separated, " << matched
       << " bisimilar)";
    return ok(os.str());
}

// ---- criterion 7: assignment normal form -----------------------------------

Outcome criterion7() {
    const int kSentences = 200, kModels = 20, kDepth = 3;
    std::vector<AgentId> agents = {"a", "b", "c"};
    std::vector<PredId> preds = {"p", "q"};
    for (int s = 0; s < kSentences; ++s) {
        FormulaPtr f = random_formula(agents, preds, kDepth, 50000 + s);
        FormulaPtr g = anf(f);
        if (!is_anf(g))
            return fail("not normal: " + print(f) + "  =>  " + print(g));
        for (int m = 0; m < kModels; ++m) {
            GenParams gp;
            gp.seed = 60000 + static_cast<std::uint64_t>(s) * 100 + m;
            SimplicialModel C = random_simplicial_model(gp);
            for (int i = 0; i < C.facet_count(); ++i)
                if (eval_simplicial(C, i, f) != eval_simplicial(C, i, g))
                    return fail("truth changed: " + print(f) + " at facet " +
                                C.facet_label(i) + ", seed " +
                                std::to_string(gp.seed));
        }
    }
    std::ostringstream os;
    os << kSentences << " sentences normalize and agree on " << kModels
       << " models each";
    return ok(os.str());
}

// ---- criterion 8: described-group knowledge, two implementations -----------

Outcome criterion8() {
    const int kModels = 30, kPhis = 20, kAlphas = 10;
    std::vector<PredId> preds = {"p", "q"};
    GroupFormula everybody = group_formula("top");
    long agreements = 0;
    for (int m = 1; m <= kModels; ++m) {
        GenParams gp;
        gp.seed = 70000 + static_cast<std::uint64_t>(m);
        SimplicialModel C = random_simplicial_model(gp);
        for (int ph = 0; ph < kPhis; ++ph) {
            GroupFormula phi = group_formula(
                random_formula_open(C.agents, preds, {"x"}, 1, gp.seed * 53 + ph));
            for (int al = 0; al < kAlphas; ++al) {
                FormulaPtr alpha =
                    random_formula(C.agents, preds, 2, gp.seed * 97 + al);
                FormulaPtr big = expand_k_phi(phi, alpha, C.agents);
                for (int i = 0; i < C.facet_count(); ++i) {
                    bool direct = eval_k_phi_direct(phi, alpha, C, i);
                    if (direct != eval_simplicial(C, i, big))
                        return fail("expansion disagrees, model seed " +
                                    std::to_string(gp.seed) + " phi " +
                                    print(phi.body) + " alpha " + print(alpha));
                    ++agreements;
                    bool truth = eval_simplicial(C, i, alpha);
                    if (direct && !truth)
                        return fail("described-group knowledge not factive, seed " +
                                    std::to_string(gp.seed));
                    if (truth && !eval_k_phi_direct(everybody, alpha, C, i))
                        return fail("full-group introspection of truth failed, seed " +
                                    std::to_string(gp.seed));
                }
            }
        }
    }
    std::ostringstream os;
    os << agreements << " pointwise agreements, factivity and full-group closure";
    return ok(os.str());
}

// ---- criterion 9: introspection --------------------------------------------

Outcome criterion9() {
    const int kModels = 50;
    const char* chis[20] = {
        "p(x)", "q(x)", "~p(x)", "~q(x)",
        "(p(x) & q(x))", "(p(x) & ~q(x))", "(~p(x) & q(x))", "(~p(x) & ~q(x))",
        "~(p(x) & q(x))", "(q(x) & ~p(x))",
        "K{x} <z:=a> top", "K{x} <z:=b> top", "K{x} <z:=a> p(z)",
        "K{x} K{} <z:=a> top", "~K{x} <z:=a> top",
        "(p(x) & K{x} <z:=a> top)", "(K{x} <z:=a> top & K{x} <z:=b> top)",
        "~(p(x) & ~q(x))", "K{x} <z:=c> q(z)", "(~q(x) & K{x} <z:=b> p(z))",
    };
    std::vector<SimplicialModel> bank;
    for (int m = 1; m <= kModels; ++m) {
        GenParams gp;
        gp.seed = 80000 + static_cast<std::uint64_t>(m);
        bank.push_back(random_simplicial_model(gp));
    }
    std::vector<FormulaPtr> alphas = {
        parse("top"), parse("<z:=a> top"), parse("<z:=b> p(z)"),
        parse("K{} <z:=a> top"), parse("[z:=c] q(z)")};
    for (const char* chi : chis) {
        IntrospectionReport rep =
            check_pos_introspection(group_formula(chi), alphas, bank);
        if (!rep.within_grammar)
            return fail(std::string("outside the guaranteed fragment: ") + chi);
        if (!rep.all_pass())
            return fail(std::string("positive introspection failed for ") + chi +
                        ": " + rep.failures[0]);
    }

    auto wit = search_neg_introspection_counterexample(group_formula("p(x)"), 4);
    if (!wit) return fail("no negative-introspection witness up to 4 facets");
    GroupFormula phi = group_formula("p(x)");
    auto idx = wit->model.find_facet(wit->point);
    if (!idx) return fail("witness names an unknown facet");
    if (eval_k_phi_direct(phi, wit->alpha, wit->model, *idx))
        return fail("witness point already knows alpha");
    std::set<AgentId> ext = group_extension(phi, wit->model, *idx);
    bool some_successor_knows = false;
    for (int j : wit->model.successors(*idx, ext))
        if (eval_k_phi_direct(phi, wit->alpha, wit->model, j))
            some_successor_knows = true;
    if (!some_successor_knows)
        return fail("witness does not refute the introspection step");
    std::ostringstream os;
    os << "20 descriptions introspect on " << kModels
       << " models; negative witness verified (" << wit->model.facet_count()
       << " facets, alpha " << print(wit->alpha) << ")";
    return ok(os.str());
}

// ---- criterion 10: bounded satisfiability coherence ------------------------

Outcome criterion10() {
    const int kSentences = 50, kBound = 2;
    for (int s = 0; s < kSentences; ++s) {
        FormulaPtr alpha = random_formula({"a", "b"}, {"p"}, 2, 90000 + s);
        SatResult r = sat_bounded(alpha, kBound);

        // replay the search's signature rule, then ask whether ~alpha is
        // valid across the very same model space
        std::set<AgentId> aset = collect_agents(alpha);
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
        FormulaPtr nalpha = Formula::neg(alpha);
        bool neg_everywhere = true;
        forall_enumerated(agents, preds, kBound, [&](const SimplicialModel& C) {
            if (!valid_on_model(C, nalpha).valid) {
                neg_everywhere = false;
                return false;
            }
            return true;
        });
        if (r.sat == neg_everywhere)
            return fail("sat verdict inconsistent with negation validity: " +
                        print(alpha));
        if (r.sat) {
            auto idx = r.witness.find_facet(r.witness_point);
            if (!idx || !eval_simplicial(r.witness, *idx, alpha))
                return fail("witness does not re-verify: " + print(alpha));
        }
    }
    return ok(std::to_string(kSentences) +
              " sentences coherent with the exhaustive sweep");
}

}  // namespace

int main() {
    struct Entry {
        long budget_ms;
        Outcome (*fn)();
    };
    const Entry entries[10] = {
        {1000, criterion1},   {1000, criterion2},  {120000, criterion3},
        {300000, criterion4}, {60000, criterion5}, {120000, criterion6},
        {120000, criterion7}, {120000, criterion8}, {180000, criterion9},
        {180000, criterion10},
    };
    int failures = 0;
    for (int n = 0; n < 10; ++n) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = entries[n].fn();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        if (o.pass && ms > entries[n].budget_ms) {
            o = fail("over budget: " + std::to_string(ms) + "ms > " +
                     std::to_string(entries[n].budget_ms) + "ms");
        }
        std::cout << "criterion " << (n + 1) << ": " << (o.pass ? "PASS" : "FAIL")
                  << " — " << o.detail << " [" << ms << " ms]" << std::endl;
        if (!o.pass) ++failures;
    }
    if (failures > 0) {
        std::cout << failures << " of 10 criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all 10 criteria passed" << std::endl;
    return 0;
}
