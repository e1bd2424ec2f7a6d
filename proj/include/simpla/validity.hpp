#pragma once

#include <cstdint>
#include <optional>

#include "simpla/models.hpp"
#include "simpla/syntax.hpp"

// The proof system as test data: every axiom schema (and the derived
// theorems worth keeping an eye on) can be instantiated with random
// parameters, and a battery of generated models must validate every
// instance.  A deliberately broken schema is included so the battery can
// prove it would notice a falsehood.

namespace simpla {

enum class Schema {
    // primitive
    Taut,        // a propositional tautology shape over random sentences
    TK,          // K{X}a -> a
    KK,          // K{X}(a->b) -> (K{X}a -> K{X}b)
    MonoK,       // K{X}a -> K{Y}a for X subset of Y
    Kni,         // [xs:=as](~K{xs}a -> K{xs}[xs:=as]~K{xs}a)
    Epi,         // [x:=a]K{x}<x:=a>top
    KAssign,     // [x:=a](f->g) -> ([x:=a]f -> [x:=a]g)
    Api,         // [x:=a](p(x) -> K{x}[x:=a]p(x))
    Det,         // <x:=a>f -> [x:=a]f
    Eni,         // [xs:=as](AND_b [x:=b]bot -> K{xs} AND_b [x:=b]bot), b over the other agents
    Tr,          // f -> [x:=a]f when x not free in f
    Sub,         // [y:=a]([x:=a]f -> f[y/x])
    Com,         // [x:=a][y:=b]f -> [y:=b][x:=a]f, x != y
    Ui,          // AND_a [x:=a]f -> f
    // derived
    Rename,      // [x:=a]f <-> [y:=a]f[y/x], y not in f
    Kpi,         // [xs:=as](K{xs}a -> K{xs}[xs:=as]K{xs}a)
    Ani,         // [x:=a](~p(x) -> K{x}[x:=a]~p(x))
    ElmTr,       // [x:=a]f <-> ([x:=a]bot | f), x not free in f
    ElmNeg,      // [x:=a]~f <-> ([x:=a]bot | ~[x:=a]f)
    ElmAnd,      // [x:=a](f&g) <-> ([x:=a]f & [x:=a]g)
    ElmAssign,   // [x:=a][y:=b]f <-> [y:=b][x:=a]f, y != x
};

const std::vector<Schema>& all_schemas();
std::string schema_name(Schema s);
std::optional<Schema> schema_by_name(const std::string& name);

// A closed instance with random parameters; all side conditions hold by
// construction, and any residual free variables are wrapped in binders
// (which preserves validity).  Deterministic in the seed.  `pool` is the
// agent universe the instance quantifies over where a schema needs one;
// instances are valid on every model whose agents are drawn from it.
FormulaPtr instantiate(Schema s, std::uint64_t seed,
                       const std::vector<AgentId>& pool = {"a", "b", "c"});

// The self-test mutant: the liveness-profile schema with its antecedent
// dropped, claiming the group just knows who is absent.  Invalid on most
// models; the battery must catch it.
FormulaPtr instantiate_guardless_eni(std::uint64_t seed);

// --- generators -----------------------------------------------------------

struct GenParams {
    int agent_count = 3;    // at most 4
    int vertex_budget = 6;
    int facet_budget = 4;
    int pred_count = 2;
    std::uint64_t seed = 0;
};

// Deterministic in the seed; always passes validate_simplicial; impure
// facet combinations appear with healthy probability.
SimplicialModel random_simplicial_model(const GenParams& gp);

// lem of a random complex: passes every local-epistemic check including
// properness.
KripkeModel random_local_epistemic_model(const GenParams& gp);

// --- the battery ----------------------------------------------------------

struct SoundnessRow {
    std::string schema;
    int instances = 0;
    int models = 0;
    int failures = 0;
    std::vector<std::string> failure_notes;  // formula + point, for triage
};

struct SoundnessReport {
    std::vector<SoundnessRow> rows;
    int total_failures() const;
    std::string to_text() const;  // one "schema,instances,models,failures" line each
};

// For each schema: `trials` instances, each checked for validity on
// `models` random complexes (and their lem images, same verdict expected).
SoundnessReport soundness_suite(const std::vector<Schema>& schemas, int trials,
                                const GenParams& gp, int models = 50);

// --- bounded satisfiability -----------------------------------------------

struct SatResult {
    bool sat = false;
    int bound = 0;             // facets searched up to
    long models_checked = 0;
    SimplicialModel witness;   // meaningful when sat
    std::string witness_point;
};

// Enumerates models over alpha's own signature plus one spare agent, up to
// max_facets facets.  A hit is re-evaluated before being reported.  A miss
// means only "no model this small": the bound certifies nothing beyond
// itself.
SatResult sat_bounded(const FormulaPtr& alpha, int max_facets);

// Heuristic default bound (exponential in the signature); explicitly not a
// completeness threshold.
int default_sat_bound(const FormulaPtr& alpha);

}  // namespace simpla
