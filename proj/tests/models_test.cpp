#include "simpla/models.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "simpla/errors.hpp"
#include "fixtures.hpp"

using namespace simpla;

namespace {

// Two worlds where the cell of w contains a world with a larger domain:
// breaks Collectively Decreasing Domain (and properness) but nothing else.
KripkeModel cdd_violation() {
    KripkeModel M;
    M.agents = {"a", "b"};
    M.worlds = {"w", "v"};
    M.domain["w"] = {"a"};
    M.domain["v"] = {"a", "b"};
    M.rel["a"] = {{"w", "w"}, {"w", "v"}, {"v", "w"}, {"v", "v"}};
    M.rel["b"] = {{"v", "v"}};
    M.finalize();
    return M;
}

}  // namespace

TEST(SimplicialModel, IntroFixture) {
    SimplicialModel C = load_simplicial("intro.json");
    EXPECT_TRUE(validate_simplicial(C).empty());
    EXPECT_EQ(C.facet_count(), 2);
    EXPECT_EQ(C.find_facet("F"), std::optional<int>(0));
    EXPECT_EQ(C.find_facet("G"), std::optional<int>(1));
    EXPECT_EQ(C.find_facet("no-such"), std::nullopt);
    EXPECT_EQ(C.live(0), (std::set<AgentId>{"a", "b", "c"}));
    EXPECT_EQ(C.live(1), (std::set<AgentId>{"a", "c", "d"}));
    // the two facets share exactly their a-vertex
    EXPECT_EQ(C.link(0, 1), (std::set<AgentId>{"a"}));
    EXPECT_EQ(C.atom_extension("p", 0), (std::set<AgentId>{"c"}));
    EXPECT_TRUE(C.atom_extension("p", 1).empty());
}

TEST(SimplicialModel, HexFixtureFacets) {
    SimplicialModel C = load_simplicial("hex_simplicial.json");
    EXPECT_TRUE(validate_simplicial(C).empty());
    EXPECT_EQ(C.facet_count(), 6);
    int triangles = 0, edges = 0;
    for (int i = 0; i < C.facet_count(); ++i) {
        if (C.live(i).count("d")) {
            ++triangles;
            EXPECT_EQ(C.live(i).size(), 3u);
        } else {
            ++edges;
            EXPECT_EQ(C.live(i).size(), 2u);
        }
    }
    EXPECT_EQ(triangles, 3);
    EXPECT_EQ(edges, 3);
}

TEST(SimplicialModel, AllFacesOfIntro) {
    SimplicialModel C = load_simplicial("intro.json");
    auto faces = C.all_faces();
    // 7 faces per triangle, minus the shared a-vertex counted once
    EXPECT_EQ(faces.size(), 13u);
    EXPECT_TRUE(std::count(faces.begin(), faces.end(),
                           std::set<VertexId>{"va"}) == 1);
}

TEST(ValidateSimplicial, NestedFacet) {
    SimplicialModel C;
    C.agents = {"a", "b"};
    C.vertices = {"v1", "v2"};
    C.color = {{"v1", "a"}, {"v2", "b"}};
    C.facet_list = {{"v1", "v2"}, {"v1"}};
    C.finalize();
    auto errs = validate_simplicial(C);
    ASSERT_FALSE(errs.empty());
    bool found = false;
    for (const auto& e : errs)
        if (e.find("contained in") != std::string::npos) found = true;
    EXPECT_TRUE(found);
}

TEST(ValidateSimplicial, ColorClashInFacet) {
    SimplicialModel C;
    C.agents = {"a"};
    C.vertices = {"v1", "v2"};
    C.color = {{"v1", "a"}, {"v2", "a"}};
    C.facet_list = {{"v1", "v2"}};
    C.finalize();
    auto errs = validate_simplicial(C);
    ASSERT_FALSE(errs.empty());
    EXPECT_NE(errs[0].find("v1"), std::string::npos);
    EXPECT_NE(errs[0].find("v2"), std::string::npos);
}

TEST(ValidateSimplicial, UnusedVertexAndBadLabeling) {
    SimplicialModel C;
    C.agents = {"a", "b"};
    C.vertices = {"v1", "v2"};
    C.color = {{"v1", "a"}, {"v2", "b"}};
    C.facet_list = {{"v1"}};
    C.labeling = {{"p", {"ghost"}}};
    C.finalize();
    auto errs = validate_simplicial(C);
    bool unused = false, range = false;
    for (const auto& e : errs) {
        if (e.find("v2") != std::string::npos) unused = true;
        if (e.find("ghost") != std::string::npos) range = true;
    }
    EXPECT_TRUE(unused);
    EXPECT_TRUE(range);
}

TEST(ValidateKripke, HexFixture) {
    KripkeModel M = load_kripke("hex_kripke.json");
    EXPECT_TRUE(validate_kripke(M).empty());
    EXPECT_EQ(M.worlds.size(), 6u);
}

TEST(ValidateKripke, EdgeFromDeadAgent) {
    KripkeModel M;
    M.agents = {"a", "b"};
    M.worlds = {"w", "v"};
    M.domain["w"] = {"a"};
    M.domain["v"] = {"a", "b"};
    M.rel["a"] = {{"w", "w"}, {"v", "v"}};
    M.rel["b"] = {{"w", "v"}, {"v", "v"}};  // b is dead at w
    M.finalize();
    auto errs = validate_kripke(M);
    ASSERT_FALSE(errs.empty());
    bool found = false;
    for (const auto& e : errs)
        if (e.find("b") != std::string::npos && e.find("w") != std::string::npos)
            found = true;
    EXPECT_TRUE(found);
}

TEST(ValidateKripke, InterpOutsideDomain) {
    KripkeModel M;
    M.agents = {"a", "b"};
    M.worlds = {"w"};
    M.domain["w"] = {"a"};
    M.rel["a"] = {{"w", "w"}};
    M.interp["p"]["w"] = {"b"};  // b not alive at w
    M.finalize();
    EXPECT_FALSE(validate_kripke(M).empty());
}

TEST(LocalEpistemic, HexPassesAllFive) {
    LepReport rep = check_local_epistemic(load_kripke("hex_kripke.json"));
    EXPECT_TRUE(rep.local_s5.pass) << rep.local_s5.witness;
    EXPECT_TRUE(rep.indiv_increasing.pass) << rep.indiv_increasing.witness;
    EXPECT_TRUE(rep.local_predicates.pass) << rep.local_predicates.witness;
    EXPECT_TRUE(rep.coll_decreasing.pass) << rep.coll_decreasing.witness;
    EXPECT_TRUE(rep.properness.pass) << rep.properness.witness;
    EXPECT_TRUE(rep.proper());
}

TEST(LocalEpistemic, DroppedReflexivePairFailsS5) {
    KripkeModel M = load_kripke("hex_kripke.json");
    M.rel["d"].erase({"abd", "abd"});
    M.finalize();
    LepReport rep = check_local_epistemic(M);
    EXPECT_FALSE(rep.local_s5.pass);
    EXPECT_NE(rep.local_s5.witness.find("abd"), std::string::npos);
}

TEST(LocalEpistemic, HandBuiltCddViolation) {
    LepReport rep = check_local_epistemic(cdd_violation());
    EXPECT_TRUE(rep.local_s5.pass) << rep.local_s5.witness;
    EXPECT_TRUE(rep.indiv_increasing.pass) << rep.indiv_increasing.witness;
    EXPECT_FALSE(rep.coll_decreasing.pass);
    EXPECT_FALSE(rep.properness.pass);
}

TEST(Properize, ProperInputKeepsItsWorlds) {
    KripkeModel M = load_kripke("hex_kripke.json");
    Properization pr = properize(M);
    EXPECT_EQ(pr.model.worlds.size(), 6u);
    // singleton cells keep the original ids
    for (const WorldId& w : M.worlds) EXPECT_EQ(pr.cell_of.at(w), w);
    EXPECT_TRUE(check_local_epistemic(pr.model).proper());
}

TEST(Properize, MergesDuplicatedWorld) {
    KripkeModel M = load_kripke("hex_kripke.json");
    // clone "ab" into "ab2": same domain and valuation, every relation edge
    // mirrored, and the two copies related under both live agents
    M.worlds.push_back("ab2");
    M.domain["ab2"] = M.domain["ab"];
    for (auto& [p, by_world] : M.interp)
        if (by_world.count("ab")) by_world["ab2"] = by_world["ab"];
    for (auto& [a, edges] : M.rel) {
        std::set<std::pair<WorldId, WorldId>> add;
        for (const auto& [u, v] : edges) {
            if (u == "ab") add.insert({"ab2", v});
            if (v == "ab") add.insert({u, "ab2"});
        }
        edges.insert(add.begin(), add.end());
        if (M.domain["ab"].count(a)) {
            edges.insert({"ab", "ab2"});
            edges.insert({"ab2", "ab"});
            edges.insert({"ab2", "ab2"});
        }
    }
    M.finalize();
    ASSERT_TRUE(validate_kripke(M).empty());
    LepReport before = check_local_epistemic(M);
    EXPECT_TRUE(before.local_epistemic());
    EXPECT_FALSE(before.properness.pass);

    Properization pr = properize(M);
    EXPECT_EQ(pr.model.worlds.size(), 6u);
    EXPECT_EQ(pr.cell_of.at("ab"), pr.cell_of.at("ab2"));
    EXPECT_TRUE(check_local_epistemic(pr.model).proper());
}

TEST(Properize, SingleReflexiveWorld) {
    KripkeModel M;
    M.agents = {"a"};
    M.worlds = {"w"};
    M.domain["w"] = {"a"};
    M.rel["a"] = {{"w", "w"}};
    M.finalize();
    Properization pr = properize(M);
    EXPECT_EQ(pr.model.worlds.size(), 1u);
    EXPECT_EQ(pr.cell_of.at("w"), pr.model.worlds[0]);
}

TEST(Properize, RejectsNonLocalEpistemic) {
    try {
        properize(cdd_violation());
        FAIL() << "expected NotLocalEpistemic";
    } catch (const NotLocalEpistemic& e) {
        EXPECT_NE(std::string(e.what()).find("larger domain"), std::string::npos);
    }
}

TEST(KripkeModel, SuccessorsConventions) {
    KripkeModel M = load_kripke("hex_kripke.json");
    // empty agent set: every world is a successor
    EXPECT_EQ(M.successors("ab", {}).size(), 6u);
    auto d_succ = M.successors("abd", {"d"});
    EXPECT_EQ(std::set<WorldId>(d_succ.begin(), d_succ.end()),
              (std::set<WorldId>{"abd", "acd", "bcd"}));
}
