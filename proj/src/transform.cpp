#include <skolem/error.hpp>
#include <skolem/transform.hpp>

#include <algorithm>
#include <map>

namespace skolem {

std::string FreshNameSource::claim(const std::string& base)
{
    if (reserved_.insert(base).second)
        return base;
    return fresh(base);
}

std::string FreshNameSource::fresh(const std::string& base)
{
    for (std::size_t k = 1;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (reserved_.insert(candidate).second)
            return candidate;
    }
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& env)
{
    switch (t.kind()) {
    case Term::Kind::Variable: {
        auto it = env.find(t.name());
        return it == env.end() ? t : Term::variable(it->second);
    }
    case Term::Kind::Apply: {
        std::vector<Term> args;
        for (const auto& a : t.args())
            args.push_back(rename_term(a, env));
        return Term::apply(t.name(), std::move(args));
    }
    default: return t;
    }
}

class Rectifier {
public:
    explicit Rectifier(const Formula& f)
    {
        for (const auto& name : all_names(f))
            names_.reserve(name);
        for (const auto& v : free_vars(f))
            used_.insert(v);
    }

    Formula run(const Formula& f, std::map<std::string, std::string>& env)
    {
        switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return f;
        case Formula::Kind::Atom: {
            std::vector<Term> args;
            for (const auto& a : f.args())
                args.push_back(rename_term(a, env));
            return Formula::atom(f.name(), std::move(args));
        }
        case Formula::Kind::Not: return Formula::negate(run(f.lhs(), env));
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            const std::string& x = f.name();
            std::string target = x;
            if (used_.count(x)) {
                do
                    target = names_.fresh(x);
                while (used_.count(target));
            }
            used_.insert(target);
            auto saved = env.find(x) == env.end() ? std::optional<std::string>{} : std::optional{env[x]};
            if (target != x || saved)
                env[x] = target;
            Formula body = run(f.body(), env);
            if (saved)
                env[x] = *saved;
            else
                env.erase(x);
            return Formula::quantifier(f.kind(), target, body);
        }
        default: {
            Formula a = run(f.lhs(), env);
            Formula b = run(f.rhs(), env);
            switch (f.kind()) {
            case Formula::Kind::And: return Formula::conj(a, b);
            case Formula::Kind::Or: return Formula::disj(a, b);
            case Formula::Kind::Implies: return Formula::implies(a, b);
            default: return Formula::iff(a, b);
            }
        }
        }
    }

private:
    FreshNameSource names_;
    std::set<std::string> used_;
};

Formula nnf(const Formula& f, bool negated)
{
    switch (f.kind()) {
    case Formula::Kind::True: return negated ? Formula::falsity() : f;
    case Formula::Kind::False: return negated ? Formula::truth() : f;
    case Formula::Kind::Atom: return negated ? Formula::negate(f) : f;
    case Formula::Kind::Not: return nnf(f.lhs(), ! negated);
    case Formula::Kind::And:
        return negated ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                       : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Formula::Kind::Or:
        return negated ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                       : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Formula::Kind::Implies:
        return negated ? Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                       : Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Formula::Kind::Iff:
        if (negated)
            return Formula::disj(Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true)),
                Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), false)));
        return Formula::disj(Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false)),
            Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true)));
    case Formula::Kind::Exists:
        return negated ? Formula::forall(f.name(), nnf(f.body(), true)) : Formula::exists(f.name(), nnf(f.body(), false));
    case Formula::Kind::Forall:
        return negated ? Formula::exists(f.name(), nnf(f.body(), true)) : Formula::forall(f.name(), nnf(f.body(), false));
    }
    return f;
}

// Input is rectified NNF, so hoisting never captures.
Formula hoist(const Formula& f, std::vector<QuantifiedVar>& prefix)
{
    switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        prefix.push_back({f.kind() == Formula::Kind::Exists ? Quantifier::Exists : Quantifier::Forall, f.name()});
        return hoist(f.body(), prefix);
    case Formula::Kind::And: {
        Formula a = hoist(f.lhs(), prefix);
        return Formula::conj(a, hoist(f.rhs(), prefix));
    }
    case Formula::Kind::Or: {
        Formula a = hoist(f.lhs(), prefix);
        return Formula::disj(a, hoist(f.rhs(), prefix));
    }
    default: return f;
    }
}

using Clause = std::vector<Formula>;

bool tautology(const Clause& c)
{
    for (const auto& lit : c) {
        if (lit.kind() == Formula::Kind::True)
            return true;
        if (lit.kind() == Formula::Kind::Not && std::find(c.begin(), c.end(), lit.lhs()) != c.end())
            return true;
    }
    return false;
}

void add_clause(std::vector<Clause>& cs, Clause c)
{
    if (std::find(cs.begin(), cs.end(), c) == cs.end())
        cs.push_back(std::move(c));
}

std::vector<Clause> clauses(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::And: {
        auto a = clauses(f.lhs());
        auto b = clauses(f.rhs());
        for (auto& c : b)
            add_clause(a, std::move(c));
        return a;
    }
    case Formula::Kind::Or: {
        auto a = clauses(f.lhs());
        auto b = clauses(f.rhs());
        std::vector<Clause> out;
        for (const auto& ca : a)
            for (const auto& cb : b) {
                Clause c = ca;
                for (const auto& lit : cb)
                    if (std::find(c.begin(), c.end(), lit) == c.end())
                        c.push_back(lit);
                if (! tautology(c))
                    add_clause(out, std::move(c));
            }
        return out;
    }
    default: return {{f}};
    }
}

// Iterative: distribution can produce chains too long for recursion.
bool spine_all(const Formula& f, Formula::Kind joint, bool (*leaf)(const Formula&))
{
    std::vector<Formula> todo{f};
    while (! todo.empty()) {
        Formula g = std::move(todo.back());
        todo.pop_back();
        if (g.kind() == joint) {
            todo.push_back(g.lhs());
            todo.push_back(g.rhs());
        }
        else if (! leaf(g))
            return false;
    }
    return true;
}

bool is_literal_leaf(const Formula& f) { return f.is_literal(); }

bool is_clause(const Formula& f) { return spine_all(f, Formula::Kind::Or, is_literal_leaf); }

}  // namespace

Formula rectify(const Formula& f)
{
    Rectifier r(f);
    std::map<std::string, std::string> env;
    return r.run(f, env);
}

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Not: return f.lhs().kind() == Formula::Kind::Atom;
    case Formula::Kind::And:
    case Formula::Kind::Or: return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return is_nnf(f.body());
    default: return false;
    }
}

PrenexFormula to_prenex(const Formula& f)
{
    PrenexFormula p;
    p.free_vars = free_vars(f);
    // NNF duplicates both sides of an iff, so rectify once more afterwards.
    Formula normal = rectify(to_nnf(rectify(f)));
    p.matrix = hoist(normal, p.prefix);
    return p;
}

bool is_cnf(const Formula& f) { return spine_all(f, Formula::Kind::And, is_clause); }

Formula to_cnf_matrix(const Formula& matrix)
{
    if (! is_quantifier_free(matrix))
        throw Error("to_cnf_matrix: matrix is not quantifier-free");
    if (is_cnf(matrix))
        return matrix;
    std::vector<Clause> cs = clauses(to_nnf(matrix));
    Formula out = Formula::truth();
    bool first = true;
    for (const auto& c : cs) {
        Formula clause = c.front();
        for (std::size_t i = 1; i < c.size(); ++i)
            clause = Formula::disj(clause, c[i]);
        out = first ? clause : Formula::conj(out, clause);
        first = false;
    }
    return out;
}

}  // namespace skolem
