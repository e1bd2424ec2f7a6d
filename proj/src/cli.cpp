#include "simpla/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "simpla/bisim.hpp"
#include "simpla/correspondence.hpp"
#include "simpla/errors.hpp"
#include "simpla/intensional.hpp"
#include "simpla/json_io.hpp"
#include "simpla/normalform.hpp"
#include "simpla/semantics.hpp"
#include "simpla/validity.hpp"

namespace simpla::cli {

namespace {

using nlohmann::json;

// Thrown for bad invocations; the handler prints the message plus the
// synopsis and exits 2.
struct Usage : Error {
    using Error::Error;
};

const char kHelp[] =
    R"(usage: simpla <command> ...

commands
  check <model.json> --point P (--formula F | --formula-file PATH)
        [--assign x=a,...]           evaluate at a point; prints true/false
  validate <model.json>...           structural checks; prints diagnostics
  convert <model.json> --to kripke|simplicial
                                     translate between the model kinds
  properize <model.json> [--json]    collapse duplicate worlds (Kripke input)
  iso <a.json> <b.json> [--json]     isomorphism test with witness mapping
  bisim <a.json> P <b.json> Q        bisimilarity of two pointed models
  distinguish <a.json> P <b.json> Q  sentence true at P, false at Q, or none
  nf (--formula F | --formula-file PATH) [--var x --agent a]
        [--models N] [--seed N] [--simplify]
                                     assignment normal form (or one step)
  kphi <model.json> --phi PHI --point P [--formula A]
                                     extension of PHI, or truth of K_PHI A
  introspect --phi PHI [--neg] [--models N | --max-facets N] [--seed N]
                                     introspection checks for described groups
  axioms [--schema NAME] [--trials N] [--models N] [--seed N] [--json]
                                     validity battery over random models
  sat (--formula F | --formula-file PATH) [--max-facets N] [--json]
                                     bounded satisfiability search

formulas:  top | bot | p(x) | ~f | (f & g) | (f | g) | (f -> g)
           [x:=a]f | <x:=a>f | K{x,y}f | Khat{x,y}f
models:    JSON with "kind": "simplicial" (vertices/colors/facets/labeling)
           or "kripke" (worlds/domain/relations/interp)

SIMPLA_SEED in the environment supplies the default --seed.
exit codes: 0 affirmative or success, 1 negative answer, 2 usage/input error.
)";

struct Args {
    std::string command;
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags;
    std::set<std::string> switches;

    bool has(const std::string& f) const {
        return flags.count(f) || switches.count(f);
    }
};

Args parse_args(const std::vector<std::string>& argv) {
    static const std::set<std::string> value_flags = {
        "--point", "--formula", "--formula-file", "--assign", "--to",
        "--seed",  "--trials",  "--models",       "--max-facets",
        "--phi",   "--var",     "--agent",        "--schema"};
    static const std::set<std::string> switches = {"--json", "--neg",
                                                   "--simplify"};
    Args a;
    a.command = argv.empty() ? "" : argv[0];
    for (std::size_t i = 1; i < argv.size(); ++i) {
        const std::string& tok = argv[i];
        if (tok.rfind("--", 0) != 0) {
            a.positional.push_back(tok);
        } else if (switches.count(tok)) {
            a.switches.insert(tok);
        } else if (value_flags.count(tok)) {
            if (i + 1 >= argv.size())
                throw Usage("flag " + tok + " needs a value");
            a.flags[tok] = argv[++i];
        } else {
            throw Usage("unknown flag " + tok);
        }
    }
    return a;
}

int int_flag(const Args& a, const std::string& name, int dflt) {
    auto it = a.flags.find(name);
    if (it == a.flags.end()) return dflt;
    try {
        std::size_t pos;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw Usage("flag " + name + " needs an integer, got '" + it->second +
                    "'");
    }
}

std::uint64_t seed_of(const Args& a) {
    std::string text;
    if (auto it = a.flags.find("--seed"); it != a.flags.end()) {
        text = it->second;
    } else if (const char* env = std::getenv("SIMPLA_SEED")) {
        text = env;
    } else {
        return 0;
    }
    try {
        std::size_t pos;
        std::uint64_t v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw Usage("seed must be a non-negative integer, got '" + text + "'");
    }
}

FormulaPtr formula_arg(const Args& a) {
    bool inline_form = a.flags.count("--formula");
    bool file_form = a.flags.count("--formula-file");
    if (inline_form == file_form)
        throw Usage("need exactly one of --formula or --formula-file");
    if (inline_form) return parse(a.flags.at("--formula"));
    const std::string& path = a.flags.at("--formula-file");
    std::ifstream in(path);
    if (!in) throw Usage("cannot read formula file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

Assignment assign_arg(const std::string& text) {
    Assignment sigma;
    std::istringstream in(text);
    std::string pair;
    while (std::getline(in, pair, ',')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
            throw Usage("bad --assign entry '" + pair +
                        "' (expected var=agent)");
        sigma[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    if (sigma.empty()) throw Usage("--assign is empty");
    return sigma;
}

ModelVariant model_arg(const Args& a, std::size_t idx) {
    if (idx >= a.positional.size()) throw Usage("missing model file argument");
    return load_model(a.positional[idx]);
}

// Resolve a point name against either model kind; errors are usage errors
// because they come from the command line, not from the model file.
int facet_arg(const SimplicialModel& C, const std::string& label) {
    if (auto i = C.find_facet(label)) return *i;
    throw Usage("no facet named '" + label + "'");
}

const WorldId& world_arg(const KripkeModel& M, const std::string& w) {
    if (!M.has_world(w)) throw Usage("no world named '" + w + "'");
    for (const WorldId& x : M.worlds)
        if (x == w) return x;
    throw Usage("no world named '" + w + "'");  // unreachable
}

std::string point_arg(const Args& a) {
    auto it = a.flags.find("--point");
    if (it == a.flags.end()) throw Usage("missing --point");
    return it->second;
}

// ---- commands ------------------------------------------------------------

int cmd_check(const Args& a, std::ostream& out) {
    ModelVariant m = model_arg(a, 0);
    FormulaPtr f = formula_arg(a);
    std::string p = point_arg(a);
    Assignment sigma;
    if (!f->closed()) {
        // Sentences are assignment-independent, so --assign only matters --
        // and is only demanded -- for open formulas.
        auto it = a.flags.find("--assign");
        if (it == a.flags.end())
            throw Usage("formula has free variables; supply --assign x=a,...");
        sigma = assign_arg(it->second);
    }
    bool v = std::visit(
        [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, SimplicialModel>)
                return eval_simplicial(model, facet_arg(model, p), f, sigma);
            else
                return eval_kripke(model, world_arg(model, p), f, sigma);
        },
        m);
    out << (v ? "true" : "false") << "\n";
    return v ? 0 : 1;
}

int cmd_validate(const Args& a, std::ostream& out, std::ostream& err) {
    if (a.positional.empty()) throw Usage("validate needs model files");
    bool all_ok = true;
    for (const std::string& path : a.positional) {
        std::vector<std::string> complaints;
        try {
            ModelVariant m = load_model(path);
            complaints = std::visit(
                [](const auto& model) {
                    using T = std::decay_t<decltype(model)>;
                    if constexpr (std::is_same_v<T, SimplicialModel>)
                        return validate_simplicial(model);
                    else
                        return validate_kripke(model);
                },
                m);
        } catch (const ModelError& e) {
            complaints.push_back(e.what());
        }
        if (complaints.empty()) {
            out << path << ": ok\n";
        } else {
            all_ok = false;
            for (const std::string& c : complaints)
                err << path << ": " << c << "\n";
        }
    }
    return all_ok ? 0 : 2;
}

int cmd_convert(const Args& a, std::ostream& out) {
    ModelVariant m = model_arg(a, 0);
    auto it = a.flags.find("--to");
    if (it == a.flags.end()) throw Usage("convert needs --to kripke|simplicial");
    const std::string& to = it->second;
    if (to != "kripke" && to != "simplicial")
        throw Usage("--to must be kripke or simplicial, got '" + to + "'");
    if (std::holds_alternative<SimplicialModel>(m)) {
        if (to == "simplicial") throw Usage("model is already simplicial");
        out << dump_model(lem(std::get<SimplicialModel>(m)));
    } else {
        if (to == "kripke") throw Usage("model is already kripke");
        out << dump_model(sc(std::get<KripkeModel>(m)));
    }
    return 0;
}

int cmd_properize(const Args& a, std::ostream& out) {
    ModelVariant m = model_arg(a, 0);
    if (!std::holds_alternative<KripkeModel>(m))
        throw Usage("properize expects a kripke model");
    Properization pr = properize(std::get<KripkeModel>(m));
    if (a.switches.count("--json")) {
        json j;
        j["model"] = to_json(pr.model);
        j["cells"] = json::object();
        for (const auto& [w, cell] : pr.cell_of) j["cells"][w] = cell;
        out << j.dump(2) << "\n";
    } else {
        out << dump_model(pr.model);
    }
    return 0;
}

int cmd_iso(const Args& a, std::ostream& out) {
    ModelVariant ma = model_arg(a, 0);
    ModelVariant mb = model_arg(a, 1);
    if (ma.index() != mb.index())
        throw Usage("iso needs two models of the same kind");
    std::optional<std::map<std::string, std::string>> w;
    if (std::holds_alternative<SimplicialModel>(ma))
        w = isomorphism(std::get<SimplicialModel>(ma),
                        std::get<SimplicialModel>(mb));
    else
        w = isomorphism(std::get<KripkeModel>(ma), std::get<KripkeModel>(mb));
    if (a.switches.count("--json")) {
        json j;
        j["isomorphic"] = w.has_value();
        if (w) {
            j["witness"] = json::object();
            for (const auto& [l, r] : *w) j["witness"][l] = r;
        }
        out << j.dump(2) << "\n";
    } else if (w) {
        out << "true\n";
        for (const auto& [l, r] : *w) out << l << " -> " << r << "\n";
    } else {
        out << "false\n";
    }
    return w ? 0 : 1;
}

// Shared plumbing for bisim / distinguish: two pointed models of one kind.
template <class SimpFn, class KripFn>
int on_pointed_pair(const Args& a, SimpFn fs, KripFn fk) {
    if (a.positional.size() != 4)
        throw Usage(a.command + " needs: <a.json> P <b.json> Q");
    ModelVariant ma = load_model(a.positional[0]);
    ModelVariant mb = load_model(a.positional[2]);
    if (ma.index() != mb.index())
        throw Usage(a.command + " needs two models of the same kind");
    if (std::holds_alternative<SimplicialModel>(ma)) {
        const auto& A = std::get<SimplicialModel>(ma);
        const auto& B = std::get<SimplicialModel>(mb);
        return fs(A, facet_arg(A, a.positional[1]), B,
                  facet_arg(B, a.positional[3]));
    }
    const auto& A = std::get<KripkeModel>(ma);
    const auto& B = std::get<KripkeModel>(mb);
    return fk(A, world_arg(A, a.positional[1]), B,
              world_arg(B, a.positional[3]));
}

int cmd_bisim(const Args& a, std::ostream& out) {
    auto report = [&out](bool b) {
        out << (b ? "true" : "false") << "\n";
        return b ? 0 : 1;
    };
    return on_pointed_pair(
        a,
        [&](const SimplicialModel& A, int i, const SimplicialModel& B, int j) {
            return report(bisimilar(A, i, B, j));
        },
        [&](const KripkeModel& A, const WorldId& w, const KripkeModel& B,
            const WorldId& v) { return report(bisimilar(A, w, B, v)); });
}

int cmd_distinguish(const Args& a, std::ostream& out) {
    auto report = [&out](const FormulaPtr& f) {
        if (!f) {
            out << "none\n";
            return 1;
        }
        out << print(f) << "\n";
        return 0;
    };
    return on_pointed_pair(
        a,
        [&](const SimplicialModel& A, int i, const SimplicialModel& B, int j) {
            return report(distinguishing_sentence(A, i, B, j));
        },
        [&](const KripkeModel& A, const WorldId& w, const KripkeModel& B,
            const WorldId& v) {
            return report(distinguishing_sentence(A, w, B, v));
        });
}

int cmd_nf(const Args& a, std::ostream& out) {
    FormulaPtr f = formula_arg(a);
    bool has_var = a.flags.count("--var");
    bool has_agent = a.flags.count("--agent");
    if (has_var != has_agent) throw Usage("--var and --agent go together");
    FormulaPtr g;
    if (has_var) {
        g = nf_step(f, a.flags.at("--var"), a.flags.at("--agent"));
    } else {
        g = anf(f);
    }
    if (a.switches.count("--simplify")) g = simplify_constants(g);
    out << print(g) << "\n";

    // Optional spot check: the rewrite must not change truth anywhere.
    // Only meaningful for sentences, which is all anf accepts anyway.
    int models = int_flag(a, "--models", 0);
    if (models > 0 && f->closed()) {
        std::uint64_t seed = seed_of(a);
        for (int k = 0; k < models; ++k) {
            GenParams gp;
            gp.seed = seed + static_cast<std::uint64_t>(k);
            SimplicialModel C = random_simplicial_model(gp);
            for (int i = 0; i < C.facet_count(); ++i) {
                if (eval_simplicial(C, i, f) != eval_simplicial(C, i, g)) {
                    out << "MISMATCH at facet " << C.facet_label(i)
                        << " of model seed " << gp.seed << "\n";
                    return 1;
                }
            }
        }
        out << "equivalent on " << models << " random models\n";
    }
    return 0;
}

int cmd_kphi(const Args& a, std::ostream& out) {
    ModelVariant m = model_arg(a, 0);
    auto it = a.flags.find("--phi");
    if (it == a.flags.end()) throw Usage("kphi needs --phi");
    GroupFormula phi = group_formula(it->second);
    std::string p = point_arg(a);

    if (!a.has("--formula") && !a.has("--formula-file")) {
        std::set<AgentId> ext = std::visit(
            [&](const auto& model) {
                using T = std::decay_t<decltype(model)>;
                if constexpr (std::is_same_v<T, SimplicialModel>)
                    return group_extension(phi, model, facet_arg(model, p));
                else
                    return group_extension(phi, model, world_arg(model, p));
            },
            m);
        bool first = true;
        for (const AgentId& x : ext) {
            out << (first ? "" : " ") << x;
            first = false;
        }
        out << "\n";
        return 0;
    }

    FormulaPtr alpha = formula_arg(a);
    bool direct, expanded;
    std::visit(
        [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            FormulaPtr big = expand_k_phi(phi, alpha, model.agents);
            if constexpr (std::is_same_v<T, SimplicialModel>) {
                int i = facet_arg(model, p);
                direct = eval_k_phi_direct(phi, alpha, model, i);
                expanded = eval_simplicial(model, i, big);
            } else {
                const WorldId& w = world_arg(model, p);
                direct = eval_k_phi_direct(phi, alpha, model, w);
                expanded = eval_kripke(model, w, big);
            }
        },
        m);
    if (direct != expanded)
        throw Error("internal: expansion disagrees with direct evaluation");
    out << (direct ? "true" : "false") << "\n";
    return direct ? 0 : 1;
}

int cmd_introspect(const Args& a, std::ostream& out) {
    auto it = a.flags.find("--phi");
    if (it == a.flags.end()) throw Usage("introspect needs --phi");
    GroupFormula phi = group_formula(it->second);

    if (a.switches.count("--neg")) {
        int bound = int_flag(a, "--max-facets", 4);
        auto w = search_neg_introspection_counterexample(phi, bound);
        if (!w) {
            out << "none\n";
            return 1;
        }
        json j;
        j["model"] = to_json(w->model);
        j["point"] = w->point;
        j["alpha"] = print(w->alpha);
        out << j.dump(2) << "\n";
        return 0;
    }

    int nmodels = int_flag(a, "--models", 50);
    std::uint64_t seed = seed_of(a);
    std::vector<SimplicialModel> models;
    for (int k = 0; k < nmodels; ++k) {
        GenParams gp;
        gp.seed = seed + static_cast<std::uint64_t>(k);
        models.push_back(random_simplicial_model(gp));
    }
    std::set<PredId> pset = collect_preds(phi.body);
    pset.insert("p");
    std::vector<PredId> preds(pset.begin(), pset.end());
    std::vector<FormulaPtr> alphas;
    for (int i = 0; i < 5; ++i)
        alphas.push_back(
            random_formula({"a", "b", "c"}, preds, 2, seed + 977u * i));
    IntrospectionReport rep = check_pos_introspection(phi, alphas, models);
    out << "grammar: " << (rep.within_grammar ? "yes" : "no") << "\n";
    out << "points checked: " << rep.points_checked << "\n";
    out << "failures: " << rep.failures.size() << "\n";
    for (const std::string& f : rep.failures) out << "  " << f << "\n";
    return rep.all_pass() ? 0 : 1;
}

int cmd_axioms(const Args& a, std::ostream& out) {
    std::vector<Schema> schemas;
    if (auto it = a.flags.find("--schema"); it != a.flags.end()) {
        auto s = schema_by_name(it->second);
        if (!s) {
            std::string names;
            for (Schema x : all_schemas())
                names += (names.empty() ? "" : " ") + schema_name(x);
            throw Usage("unknown schema '" + it->second + "'; one of: " +
                        names);
        }
        schemas.push_back(*s);
    } else {
        schemas = all_schemas();
    }
    GenParams gp;
    gp.seed = seed_of(a);
    int trials = int_flag(a, "--trials", 25);
    int models = int_flag(a, "--models", 50);
    SoundnessReport rep = soundness_suite(schemas, trials, gp, models);
    if (a.switches.count("--json")) {
        json rows = json::array();
        for (const auto& row : rep.rows) {
            json r;
            r["schema"] = row.schema;
            r["instances"] = row.instances;
            r["models"] = row.models;
            r["failures"] = row.failures;
            r["notes"] = row.failure_notes;
            rows.push_back(r);
        }
        json j;
        j["rows"] = rows;
        j["total_failures"] = rep.total_failures();
        out << j.dump(2) << "\n";
    } else {
        out << rep.to_text();
        for (const auto& row : rep.rows)
            for (const auto& note : row.failure_notes)
                out << "  " << note << "\n";
    }
    return rep.total_failures() == 0 ? 0 : 1;
}

int cmd_sat(const Args& a, std::ostream& out) {
    FormulaPtr f = formula_arg(a);
    int bound = int_flag(a, "--max-facets", default_sat_bound(f));
    if (bound < 1) throw Usage("--max-facets must be positive");
    SatResult res = sat_bounded(f, bound);
    if (a.switches.count("--json")) {
        json j;
        j["sat"] = res.sat;
        j["bound"] = res.bound;
        j["models_checked"] = res.models_checked;
        if (res.sat) {
            j["witness"] = to_json(res.witness);
            j["point"] = res.witness_point;
        }
        out << j.dump(2) << "\n";
    } else if (res.sat) {
        out << "sat " << res.witness_point << "\n";
        out << dump_model(res.witness);
    } else {
        out << "unsat-up-to " << res.bound << " (" << res.models_checked
            << " models)\n";
    }
    return res.sat ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    if (args.empty()) {
        err << kHelp;
        return 2;
    }
    if (args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
        out << kHelp;
        return 0;
    }
    try {
        Args a = parse_args(args);
        if (a.command == "check") return cmd_check(a, out);
        if (a.command == "validate") return cmd_validate(a, out, err);
        if (a.command == "convert") return cmd_convert(a, out);
        if (a.command == "properize") return cmd_properize(a, out);
        if (a.command == "iso") return cmd_iso(a, out);
        if (a.command == "bisim") return cmd_bisim(a, out);
        if (a.command == "distinguish") return cmd_distinguish(a, out);
        if (a.command == "nf") return cmd_nf(a, out);
        if (a.command == "kphi") return cmd_kphi(a, out);
        if (a.command == "introspect") return cmd_introspect(a, out);
        if (a.command == "axioms") return cmd_axioms(a, out);
        if (a.command == "sat") return cmd_sat(a, out);
        throw Usage("unknown command '" + a.command + "'");
    } catch (const Usage& e) {
        err << "error: " << e.what() << "\n\n" << kHelp;
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace simpla::cli
