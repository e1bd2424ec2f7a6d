#include "simpla/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace simpla {

// --------------------------------------------------------------------------
// construction
// --------------------------------------------------------------------------

namespace {
FormulaPtr make(Op op) {
    struct Mk : Formula {};  // grants access to the private default ctor
    auto n = std::make_shared<Mk>();
    n->op = op;
    return n;
}
Formula& mut(const FormulaPtr& p) { return const_cast<Formula&>(*p); }
}  // namespace

FormulaPtr Formula::atom(PredId p, VarId x) {
    auto n = make(Op::Atom);
    mut(n).pred = std::move(p);
    mut(n).var = std::move(x);
    mut(n).fv = {mut(n).var};
    return n;
}

FormulaPtr Formula::top() {
    static const FormulaPtr t = make(Op::Top);
    return t;
}

FormulaPtr Formula::neg(FormulaPtr f) {
    auto n = make(Op::Neg);
    mut(n).fv = f->fv;
    mut(n).left = std::move(f);
    return n;
}

FormulaPtr Formula::conj(FormulaPtr f, FormulaPtr g) {
    auto n = make(Op::And);
    mut(n).fv = f->fv;
    mut(n).fv.insert(g->fv.begin(), g->fv.end());
    mut(n).left = std::move(f);
    mut(n).right = std::move(g);
    return n;
}

FormulaPtr Formula::assign(VarId x, AgentId a, FormulaPtr f) {
    auto n = make(Op::Assign);
    mut(n).fv = f->fv;
    mut(n).fv.erase(x);
    mut(n).var = std::move(x);
    mut(n).agent = std::move(a);
    mut(n).left = std::move(f);
    return n;
}

FormulaPtr Formula::know(std::set<VarId> xs, FormulaPtr f) {
    if (!f->fv.empty())
        throw FreeVariableUnderK(*f->fv.begin(), FreeVariableUnderK::npos);
    auto n = make(Op::Know);
    mut(n).group.assign(xs.begin(), xs.end());  // std::set iterates sorted
    mut(n).fv = std::move(xs);
    mut(n).left = std::move(f);
    return n;
}

FormulaPtr Formula::bot() {
    static const FormulaPtr b = neg(top());
    return b;
}
FormulaPtr Formula::disj(FormulaPtr f, FormulaPtr g) {
    return neg(conj(neg(std::move(f)), neg(std::move(g))));
}
FormulaPtr Formula::implies(FormulaPtr f, FormulaPtr g) {
    return neg(conj(std::move(f), neg(std::move(g))));
}
FormulaPtr Formula::dual_assign(VarId x, AgentId a, FormulaPtr f) {
    return neg(assign(std::move(x), std::move(a), neg(std::move(f))));
}
FormulaPtr Formula::dual_know(std::set<VarId> xs, FormulaPtr f) {
    return neg(know(std::move(xs), neg(std::move(f))));
}

bool Formula::is_bot() const {
    return op == Op::Neg && left->op == Op::Top;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->op != b->op) return false;
    switch (a->op) {
        case Op::Top: return true;
        case Op::Atom: return a->pred == b->pred && a->var == b->var;
        case Op::Neg: return equal(a->left, b->left);
        case Op::And: return equal(a->left, b->left) && equal(a->right, b->right);
        case Op::Assign:
            return a->var == b->var && a->agent == b->agent &&
                   equal(a->left, b->left);
        case Op::Know:
            return a->group == b->group && equal(a->left, b->left);
    }
    return false;  // unreachable
}

// --------------------------------------------------------------------------
// parser
// --------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw SyntaxError(std::string("expected '") + c + "'", i);
    }
    void expect_assign_arrow() {  // the ':=' between variable and agent
        skip_ws();
        if (i + 1 < s.size() && s[i] == ':' && s[i + 1] == '=') {
            i += 2;
            return;
        }
        throw SyntaxError("expected ':='", i);
    }

    // lowercase-initial identifier: variables, agents, predicates
    std::string ident() {
        skip_ws();
        std::size_t start = i;
        if (i >= s.size() || !std::islower(static_cast<unsigned char>(s[i])))
            throw SyntaxError("expected identifier", i);
        ++i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return s.substr(start, i - start);
    }

    bool keyword(const char* kw) {  // matched greedily, no partial backtrack
        skip_ws();
        std::size_t n = std::string(kw).size();
        if (s.compare(i, n, kw) != 0) return false;
        // keywords made of letters must not continue as an identifier
        std::size_t after = i + n;
        if (after < s.size() &&
            (std::isalnum(static_cast<unsigned char>(s[after])) || s[after] == '_'))
            return false;
        i += n;
        return true;
    }

    std::set<VarId> var_group() {
        expect('{');
        std::set<VarId> xs;
        while (peek() != '}') {
            xs.insert(ident());
            eat(',');  // commas between variables are optional
        }
        expect('}');
        return xs;
    }

    FormulaPtr formula() {
        skip_ws();
        std::size_t here = i;
        if (keyword("top")) return Formula::top();
        if (keyword("bot")) return Formula::bot();
        if (eat('~')) return Formula::neg(formula());
        if (eat('(')) {
            FormulaPtr lhs = formula();
            skip_ws();
            FormulaPtr result;
            if (eat('&')) result = Formula::conj(lhs, formula());
            else if (eat('|')) result = Formula::disj(lhs, formula());
            else if (i + 1 < s.size() && s[i] == '-' && s[i + 1] == '>') {
                i += 2;
                result = Formula::implies(lhs, formula());
            } else
                throw SyntaxError("expected '&', '|' or '->'", i);
            expect(')');
            return result;
        }
        if (eat('[')) {
            VarId x = ident();
            expect_assign_arrow();
            AgentId a = ident();
            expect(']');
            return Formula::assign(x, a, formula());
        }
        if (eat('<')) {
            VarId x = ident();
            expect_assign_arrow();
            AgentId a = ident();
            expect('>');
            return Formula::dual_assign(x, a, formula());
        }
        bool hat = keyword("Khat");
        if (hat || keyword("K")) {
            std::size_t kpos = here;
            std::set<VarId> xs = var_group();
            FormulaPtr body = formula();
            if (!body->fv.empty())
                throw FreeVariableUnderK(*body->fv.begin(), kpos);
            return hat ? Formula::dual_know(xs, body) : Formula::know(xs, body);
        }
        // must be an atom: pred(var)
        std::string p = ident();
        expect('(');
        VarId x = ident();
        expect(')');
        return Formula::atom(p, x);
    }
};

}  // namespace

FormulaPtr parse(const std::string& text) {
    Parser p(text);
    FormulaPtr f = p.formula();
    if (!p.at_end()) throw SyntaxError("trailing input after formula", p.i);
    return f;
}

// --------------------------------------------------------------------------
// printer
// --------------------------------------------------------------------------

namespace {

void print_group(std::ostringstream& out, const std::vector<VarId>& xs) {
    out << "K{";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out << ",";
        out << xs[k];
    }
    out << "} ";
}

void print_rec(std::ostringstream& out, const FormulaPtr& f) {
    switch (f->op) {
        case Op::Top: out << "top"; return;
        case Op::Atom: out << f->pred << "(" << f->var << ")"; return;
        case Op::Assign:
            out << "[" << f->var << ":=" << f->agent << "] ";
            print_rec(out, f->left);
            return;
        case Op::Know:
            print_group(out, f->group);
            print_rec(out, f->left);
            return;
        case Op::And:
            out << "(";
            print_rec(out, f->left);
            out << " & ";
            print_rec(out, f->right);
            out << ")";
            return;
        case Op::Neg: break;  // sugar patterns below
    }
    const FormulaPtr& g = f->left;
    if (g->op == Op::Top) {  // ~top = bot
        out << "bot";
        return;
    }
    if (g->op == Op::Assign && g->left->op == Op::Neg) {  // ~[x:=a]~f
        out << "<" << g->var << ":=" << g->agent << "> ";
        print_rec(out, g->left->left);
        return;
    }
    if (g->op == Op::Know && g->left->op == Op::Neg) {  // ~K{X}~f
        out << "Khat";
        std::ostringstream tmp;
        print_group(tmp, g->group);
        out << tmp.str().substr(1);  // drop the leading 'K'
        print_rec(out, g->left->left);
        return;
    }
    if (g->op == Op::And) {
        // ~(~f & ~g) = (f | g);  ~(f & ~g) = (f -> g)
        bool lneg = g->left->op == Op::Neg;
        bool rneg = g->right->op == Op::Neg;
        if (rneg) {
            out << "(";
            print_rec(out, lneg ? g->left->left : g->left);
            out << (lneg ? " | " : " -> ");
            print_rec(out, g->right->left);
            out << ")";
            return;
        }
    }
    out << "~";
    print_rec(out, g);
}

}  // namespace

std::string print(const FormulaPtr& f) {
    std::ostringstream out;
    print_rec(out, f);
    return out.str();
}

// --------------------------------------------------------------------------
// substitution
// --------------------------------------------------------------------------

namespace {

FormulaPtr subst_rec(const FormulaPtr& f, const VarId& y, const VarId& x) {
    if (!f->fv.count(x)) return f;  // no free x below: nothing to do
    switch (f->op) {
        case Op::Atom:
            return Formula::atom(f->pred, y);
        case Op::Neg:
            return Formula::neg(subst_rec(f->left, y, x));
        case Op::And:
            return Formula::conj(subst_rec(f->left, y, x),
                                 subst_rec(f->right, y, x));
        case Op::Assign:
            // f->var != x here (otherwise x would not be free in f); a free x
            // under a [y:=_] binder is exactly the inadmissible case.
            if (f->var == y)
                throw InadmissibleSubstitution(
                    "free '" + x + "' occurs inside the scope of [" + y + ":=" +
                    f->agent + "]");
            return Formula::assign(f->var, f->agent, subst_rec(f->left, y, x));
        case Op::Know: {
            // the body is closed; the only free occurrence of x is in the group
            std::set<VarId> xs(f->group.begin(), f->group.end());
            xs.erase(x);
            xs.insert(y);
            return Formula::know(std::move(xs), f->left);
        }
        case Op::Top: break;
    }
    return f;  // unreachable: top has no free variables
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const VarId& y, const VarId& x) {
    if (x == y) return f;
    return subst_rec(f, y, x);
}

VarId fresh_var(const std::set<VarId>& avoid) {
    for (int k = 0;; ++k) {
        VarId candidate = "x" + std::to_string(k);
        if (!avoid.count(candidate)) return candidate;
    }
}

// --------------------------------------------------------------------------
// random generation
// --------------------------------------------------------------------------

namespace {

// Pool of binder names used by the generator, extended with fresh_var-style
// names if a deep formula exhausts it.
const char* kVarNames[] = {"x", "y", "z", "u", "v"};

struct Gen {
    const std::vector<AgentId>& agents;
    const std::vector<PredId>& preds;
    std::mt19937_64 rng;
    int budget;  // node budget, to keep Boolean towers finite

    // NB: all draws go through rng() % n rather than std::uniform_int_
    // distribution, so output is identical across standard libraries.
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

    VarId some_var(const std::vector<VarId>& pool) {
        // choose among the pool plus one not-yet-used name (allows both
        // shadowing and genuinely new binders)
        std::set<VarId> used(pool.begin(), pool.end());
        VarId next;
        for (const char* name : kVarNames)
            if (!used.count(name)) { next = name; break; }
        if (next.empty()) next = fresh_var(used);
        std::size_t k = pick(pool.size() + 1);
        return k < pool.size() ? pool[k] : next;
    }

    FormulaPtr leaf(const std::vector<VarId>& pool) {
        if (!pool.empty() && !preds.empty() && pick(2) == 0)
            return Formula::atom(preds[pick(preds.size())], pool[pick(pool.size())]);
        return pick(4) == 0 ? Formula::bot() : Formula::top();
    }

    FormulaPtr gen(int depth, std::vector<VarId> pool) {
        if (--budget <= 0) return leaf(pool);
        // weights: leaf 2, neg 2, and 2, assign 3, know 2 (modal arms only
        // when depth remains)
        std::size_t arms = depth > 0 ? 11 : 6;
        std::size_t roll = pick(arms);
        if (roll < 2) return leaf(pool);
        if (roll < 4) return Formula::neg(gen(depth, pool));
        if (roll < 6) {
            FormulaPtr lhs = gen(depth, pool);
            return Formula::conj(std::move(lhs), gen(depth, pool));
        }
        if (roll < 9) {
            VarId x = some_var(pool);
            AgentId a = agents[pick(agents.size())];
            std::vector<VarId> inner = pool;
            if (std::find(inner.begin(), inner.end(), x) == inner.end())
                inner.push_back(x);
            return Formula::assign(x, a, gen(depth - 1, std::move(inner)));
        }
        // K{X} body with X a random subset of the pool and a closed body
        std::set<VarId> xs;
        for (const VarId& v : pool)
            if (pick(2) == 0) xs.insert(v);
        FormulaPtr body = gen(depth - 1, {});
        return Formula::know(std::move(xs), std::move(body));
    }
};

}  // namespace

FormulaPtr random_formula(const std::vector<AgentId>& agents,
                          const std::vector<PredId>& preds,
                          int depth, std::uint64_t seed) {
    return random_formula_open(agents, preds, {}, depth, seed);
}

FormulaPtr random_formula_open(const std::vector<AgentId>& agents,
                               const std::vector<PredId>& preds,
                               const std::vector<VarId>& pool,
                               int depth, std::uint64_t seed) {
    Gen g{agents, preds, std::mt19937_64(seed), 0};
    g.budget = 6 + static_cast<int>(g.rng() % 20);
    return g.gen(depth, pool);
}

// --------------------------------------------------------------------------
// signature helpers
// --------------------------------------------------------------------------

namespace {
template <typename F>
void walk(const FormulaPtr& f, F&& visit) {
    visit(f);
    if (f->left) walk(f->left, visit);
    if (f->right) walk(f->right, visit);
}
}  // namespace

std::set<AgentId> collect_agents(const FormulaPtr& f) {
    std::set<AgentId> out;
    walk(f, [&](const FormulaPtr& n) {
        if (n->op == Op::Assign) out.insert(n->agent);
    });
    return out;
}

std::set<PredId> collect_preds(const FormulaPtr& f) {
    std::set<PredId> out;
    walk(f, [&](const FormulaPtr& n) {
        if (n->op == Op::Atom) out.insert(n->pred);
    });
    return out;
}

std::set<VarId> collect_vars(const FormulaPtr& f) {
    std::set<VarId> out;
    walk(f, [&](const FormulaPtr& n) {
        if (n->op == Op::Atom || n->op == Op::Assign) out.insert(n->var);
        if (n->op == Op::Know) out.insert(n->group.begin(), n->group.end());
    });
    return out;
}

}  // namespace simpla
