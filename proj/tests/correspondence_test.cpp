#include "simpla/correspondence.hpp"

#include <gtest/gtest.h>

#include "simpla/errors.hpp"
#include "simpla/semantics.hpp"
#include "simpla/syntax.hpp"
#include "simpla/validity.hpp"
#include "fixtures.hpp"

using namespace simpla;

TEST(Lem, IntroStructure) {
    SimplicialModel C = load_simplicial("intro.json");
    KripkeModel M = lem(C);
    ASSERT_EQ(M.worlds.size(), 2u);
    EXPECT_EQ(M.domain.at("F"), (std::set<AgentId>{"a", "b", "c"}));
    EXPECT_EQ(M.domain.at("G"), (std::set<AgentId>{"a", "c", "d"}));
    // related exactly through the shared a-vertex
    EXPECT_TRUE(M.rel.at("a").count({"F", "G"}));
    EXPECT_TRUE(M.rel.at("a").count({"G", "F"}));
    EXPECT_FALSE(M.rel.at("c").count({"F", "G"}));  // distinct c-vertices
    for (const AgentId a : {"a", "b", "c"}) EXPECT_TRUE(M.rel.at(a).count({"F", "F"}));
    EXPECT_FALSE(M.rel.count("d") && M.rel.at("d").count({"F", "F"}));
    EXPECT_EQ(M.atom_extension("p", "F"), (std::set<AgentId>{"c"}));
    EXPECT_TRUE(M.atom_extension("p", "G").empty());
    EXPECT_TRUE(validate_kripke(M).empty());
}

TEST(Lem, SingleFacet) {
    SimplicialModel C;
    C.agents = {"a", "b"};
    C.vertices = {"u", "v"};
    C.color = {{"u", "a"}, {"v", "b"}};
    C.facet_list = {{"u", "v"}};
    C.finalize();
    KripkeModel M = lem(C);
    EXPECT_EQ(M.worlds.size(), 1u);
    EXPECT_EQ(M.domain.at(M.worlds[0]), (std::set<AgentId>{"a", "b"}));
    EXPECT_TRUE(check_local_epistemic(M).proper());
}

TEST(Lem, OutputsAreProper) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenParams gp;
        gp.seed = seed;
        SimplicialModel C = random_simplicial_model(gp);
        LepReport rep = check_local_epistemic(lem(C));
        EXPECT_TRUE(rep.proper()) << "seed " << seed;
    }
}

TEST(Lem, HexMatchesItsKripkeCounterpart) {
    SimplicialModel C = load_simplicial("hex_simplicial.json");
    KripkeModel M = load_kripke("hex_kripke.json");
    EXPECT_TRUE(isomorphic(lem(C), M));
}

TEST(RoundTrip, ComplexSurvivesBothTranslations) {
    SimplicialModel C = load_simplicial("intro.json");
    EXPECT_TRUE(isomorphic(sc(lem(C)), C));
    SimplicialModel H = load_simplicial("hex_simplicial.json");
    EXPECT_TRUE(isomorphic(sc(lem(H)), H));
}

TEST(RoundTrip, ProperKripkeModelSurvives) {
    KripkeModel M = load_kripke("hex_kripke.json");
    EXPECT_TRUE(isomorphic(lem(sc(M)), M));
}

TEST(Sc, RejectsNonLocalEpistemic) {
    KripkeModel M;
    M.agents = {"a"};
    M.worlds = {"w", "v"};
    M.domain["w"] = {"a"};
    M.domain["v"] = {"a"};
    M.rel["a"] = {{"w", "w"}, {"w", "v"}, {"v", "v"}};  // not symmetric
    M.finalize();
    EXPECT_THROW(sc(M), NotLocalEpistemic);
}

TEST(Sc, SingleWorld) {
    KripkeModel M;
    M.agents = {"a", "b"};
    M.worlds = {"w"};
    M.domain["w"] = {"a", "b"};
    M.rel["a"] = {{"w", "w"}};
    M.rel["b"] = {{"w", "w"}};
    M.interp["p"]["w"] = {"b"};
    M.finalize();
    SimplicialModel C = sc(M);
    EXPECT_EQ(C.facet_count(), 1);
    EXPECT_EQ(C.live(0), (std::set<AgentId>{"a", "b"}));
    EXPECT_EQ(C.atom_extension("p", 0), (std::set<AgentId>{"b"}));
    EXPECT_TRUE(validate_simplicial(C).empty());
}

TEST(Iso, DetectsColorAndLabelingDifferences) {
    SimplicialModel A;
    A.agents = {"a", "b"};
    A.vertices = {"u", "v"};
    A.color = {{"u", "a"}, {"v", "b"}};
    A.facet_list = {{"u", "v"}};
    A.finalize();

    SimplicialModel B = A;  // same shape, different color multiset
    B.color = {{"u", "a"}, {"v", "a"}};
    B.agents = {"a"};
    B.facet_list = {{"u"}, {"v"}};
    B.finalize();
    EXPECT_FALSE(isomorphic(A, B));

    SimplicialModel D = A;  // same shape, p marked on one side only
    D.labeling = {{"p", {"u"}}};
    D.finalize();
    EXPECT_FALSE(isomorphic(A, D));
    EXPECT_TRUE(isomorphic(D, D));
}

TEST(Iso, WitnessIsATotalBijection) {
    KripkeModel M = load_kripke("hex_kripke.json");
    KripkeModel R = M;  // rename every world with a suffix
    R.worlds.clear();
    R.domain.clear();
    R.rel.clear();
    R.interp.clear();
    auto rn = [](const WorldId& w) { return w + "_r"; };
    for (const WorldId& w : M.worlds) {
        R.worlds.push_back(rn(w));
        R.domain[rn(w)] = M.domain.at(w);
    }
    for (const auto& [a, edges] : M.rel)
        for (const auto& [u, v] : edges) R.rel[a].insert({rn(u), rn(v)});
    R.finalize();

    auto wit = isomorphism(M, R);
    ASSERT_TRUE(wit.has_value());
    EXPECT_EQ(wit->size(), M.worlds.size());
    for (const WorldId& w : M.worlds) EXPECT_EQ(wit->at(w), rn(w));
}

TEST(Iso, SimplicialWitnessUsesFacetLabels) {
    SimplicialModel C = load_simplicial("intro.json");
    auto wit = isomorphism(C, C);
    ASSERT_TRUE(wit.has_value());
    EXPECT_EQ(wit->at("F"), "F");
    EXPECT_EQ(wit->at("G"), "G");
}

TEST(TruthTransfer, RandomModelsAgreeWithTranslation) {
    std::vector<PredId> preds = {"p", "q"};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenParams gp;
        gp.seed = seed;
        SimplicialModel C = random_simplicial_model(gp);
        KripkeModel M = lem(C);
        for (std::uint64_t fs = 0; fs < 10; ++fs) {
            FormulaPtr f = random_formula(C.agents, preds, 2, seed * 1000 + fs);
            for (int i = 0; i < C.facet_count(); ++i)
                EXPECT_EQ(eval_simplicial(C, i, f),
                          eval_kripke(M, C.facet_label(i), f))
                    << "seed " << seed << " formula " << print(f);
        }
    }
}
