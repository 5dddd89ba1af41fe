#pragma once

// Test-side oracles and generators. Nothing here calls the library's
// evaluators, deciders or normal-form code; formulas are only read through
// the AST accessors.

#include <skolem/logic.hpp>
#include <skolem/number.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace test {

using skolem::Formula;
using skolem::Term;

/// Structure over the signature P/1, R/2.
struct Model {
    std::size_t size = 1;
    std::vector<bool> p;
    std::vector<bool> r;  // row-major size x size

    skolem::FiniteStructure to_structure() const
    {
        skolem::FiniteStructure s;
        s.universe_size = size;
        auto& P = s.predicates["P"];
        auto& R = s.predicates["R"];
        P.arity = 1;
        R.arity = 2;
        for (std::size_t i = 0; i < size; ++i) {
            if (p[i])
                P.tuples.insert({i});
            for (std::size_t j = 0; j < size; ++j)
                if (r[i * size + j])
                    R.tuples.insert({i, j});
        }
        return s;
    }
};

/// Every P/R structure with 1 <= size <= max_size.
inline std::vector<Model> all_models(std::size_t max_size)
{
    std::vector<Model> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        const std::size_t bits = n + n * n;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            Model m;
            m.size = n;
            m.p.resize(n);
            m.r.resize(n * n);
            for (std::size_t i = 0; i < n; ++i)
                m.p[i] = mask >> i & 1;
            for (std::size_t i = 0; i < n * n; ++i)
                m.r[i] = mask >> (n + i) & 1;
            out.push_back(std::move(m));
        }
    }
    return out;
}

/// Raised when evaluation reaches an unassigned Skolem table entry.
struct NeedEntry {
    std::string fn;
    std::vector<std::size_t> args;
};

/// Partial function tables keyed by symbol, then argument tuple.
using Tables = std::map<std::string, std::map<std::vector<std::size_t>, std::size_t>>;

/// Brute-force truth over a Model, with optional partial Skolem tables.
class ModelEval {
public:
    using ReadHook = std::function<void(const std::string&, const std::vector<std::size_t>&)>;

    ModelEval(const Model& m, const Tables* tables = nullptr, ReadHook on_read = {}) :
        m_(m), tables_(tables), on_read_(std::move(on_read))
    {
    }

    std::size_t term(const Term& t, std::map<std::string, std::size_t>& env) const
    {
        if (t.kind() == Term::Kind::Variable) {
            auto it = env.find(t.name());
            if (it == env.end())
                throw std::runtime_error("oracle: unbound " + t.name());
            return it->second;
        }
        if (t.kind() == Term::Kind::Element)
            return t.element_index();
        if (t.kind() != Term::Kind::Apply || ! tables_)
            throw std::runtime_error("oracle: unsupported term");
        std::vector<std::size_t> args;
        for (const auto& a : t.args())
            args.push_back(term(a, env));
        auto fn = tables_->find(t.name());
        if (fn != tables_->end()) {
            auto row = fn->second.find(args);
            if (row != fn->second.end()) {
                if (on_read_)
                    on_read_(t.name(), args);
                return row->second;
            }
        }
        throw NeedEntry{t.name(), args};
    }

    bool holds(const Formula& f, std::map<std::string, std::size_t>& env) const
    {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: {
            std::vector<std::size_t> a;
            for (const auto& t : f.args())
                a.push_back(term(t, env));
            if (f.name() == "=")
                return a.at(0) == a.at(1);
            if (f.name() == "P")
                return m_.p.at(a.at(0));
            if (f.name() == "R")
                return m_.r.at(a.at(0) * m_.size + a.at(1));
            throw std::runtime_error("oracle: unknown predicate " + f.name());
        }
        case K::Not: return ! holds(f.lhs(), env);
        case K::And: return holds(f.lhs(), env) && holds(f.rhs(), env);
        case K::Or: return holds(f.lhs(), env) || holds(f.rhs(), env);
        case K::Implies: return ! holds(f.lhs(), env) || holds(f.rhs(), env);
        case K::Iff: return holds(f.lhs(), env) == holds(f.rhs(), env);
        case K::Exists:
        case K::Forall: {
            const bool want = f.kind() == K::Exists;
            std::optional<std::size_t> saved;
            if (auto it = env.find(f.name()); it != env.end())
                saved = it->second;
            bool result = ! want;
            for (std::size_t k = 0; k < m_.size && result != want; ++k) {
                env[f.name()] = k;
                if (holds(f.body(), env) == want)
                    result = want;
            }
            if (saved)
                env[f.name()] = *saved;
            else
                env.erase(f.name());
            return result;
        }
        }
        return false;
    }

    bool holds(const Formula& f) const
    {
        std::map<std::string, std::size_t> env;
        return holds(f, env);
    }

private:
    const Model& m_;
    const Tables* tables_;
    ReadHook on_read_;
};

/// Whether some Skolem tables make `forall universals. matrix` true in `m`.
/// Entries are assigned lazily, only when evaluation reaches them, and every
/// value of every reached entry is tried, so the search is exhaustive.
/// Failures record the entries they read; a choice that took no part in a
/// failure is not retried (conflict-directed backjumping).
inline bool skolem_tables_exist(const Model& m, const std::vector<std::string>& universals, const Formula& matrix)
{
    using Key = std::pair<std::string, std::vector<std::size_t>>;
    using Conflict = std::set<std::size_t>;

    std::size_t total = 1;
    for (std::size_t i = 0; i < universals.size(); ++i)
        total *= m.size;
    Tables tables;
    std::map<Key, std::size_t> level;
    Conflict reads;
    ModelEval ev(m, &tables, [&](const std::string& fn, const std::vector<std::size_t>& args) {
        reads.insert(level.at(Key{fn, args}));
    });

    // nullopt: solved; otherwise the levels of a failing partial assignment
    std::function<std::optional<Conflict>(std::size_t)> solve = [&](std::size_t index) -> std::optional<Conflict> {
        if (index == total)
            return std::nullopt;
        std::map<std::string, std::size_t> env;
        std::size_t rest = index;
        for (std::size_t i = universals.size(); i-- > 0;) {
            env[universals[i]] = rest % m.size;
            rest /= m.size;
        }
        reads.clear();
        try {
            if (ev.holds(matrix, env))
                return solve(index + 1);
            return reads;
        }
        catch (const NeedEntry& need) {
            const Conflict reason = reads;
            const Key key{need.fn, need.args};
            const std::size_t here = level.size();
            Conflict merged = reason;
            for (std::size_t v = 0; v < m.size; ++v) {
                tables[need.fn][need.args] = v;
                level[key] = here;
                auto sub = solve(index);
                if (! sub) {
                    return std::nullopt;
                }
                level.erase(key);
                tables[need.fn].erase(need.args);
                if (! sub->count(here))
                    return sub;
                sub->erase(here);
                merged.insert(sub->begin(), sub->end());
            }
            return merged;
        }
    };
    return ! solve(0).has_value();
}

/// Deterministic random formulas over P/1, R/2 and `=`.
class FormulaGen {
public:
    explicit FormulaGen(std::uint64_t seed, std::vector<std::string> pool = {"x", "y", "z"}) :
        rng_(seed), pool_(std::move(pool))
    {
    }

    /// Every atom only uses variables bound above it.
    Formula sentence(int depth)
    {
        std::vector<std::string> scope;
        return gen(depth, scope, true);
    }

    /// Free variables are drawn from the pool.
    Formula formula(int depth)
    {
        std::vector<std::string> scope = pool_;
        return gen(depth, scope, false);
    }

    /// Quantifier-free, over the given 0-ary atoms only.
    Formula propositional(int depth, const std::vector<std::string>& atoms)
    {
        if (depth == 0 || pick(4) == 0)
            return pick(5) == 0 ? Formula::negate(Formula::atom(atoms[pick(atoms.size())], {}))
                                : Formula::atom(atoms[pick(atoms.size())], {});
        switch (pick(5)) {
        case 0: return Formula::negate(propositional(depth - 1, atoms));
        case 1: return Formula::conj(propositional(depth - 1, atoms), propositional(depth - 1, atoms));
        case 2: return Formula::disj(propositional(depth - 1, atoms), propositional(depth - 1, atoms));
        case 3: return Formula::implies(propositional(depth - 1, atoms), propositional(depth - 1, atoms));
        default: return Formula::iff(propositional(depth - 1, atoms), propositional(depth - 1, atoms));
        }
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::mt19937_64& rng() { return rng_; }

private:
    Formula atom(const std::vector<std::string>& scope)
    {
        auto v = [&] { return Term::variable(scope[pick(scope.size())]); };
        switch (pick(3)) {
        case 0: return Formula::atom("P", {v()});
        case 1: return Formula::atom("R", {v(), v()});
        default: return Formula::atom("=", {v(), v()});
        }
    }

    Formula gen(int depth, std::vector<std::string>& scope, bool closed)
    {
        if (depth <= 0) {
            if (scope.empty())
                return pick(2) ? Formula::truth() : Formula::falsity();
            return atom(scope);
        }
        const std::size_t choice = scope.empty() ? 6 + pick(2) : pick(8);
        switch (choice) {
        case 0: return atom(scope);
        case 1: return Formula::negate(gen(depth - 1, scope, closed));
        case 2: return Formula::conj(gen(depth - 1, scope, closed), gen(depth - 1, scope, closed));
        case 3: return Formula::disj(gen(depth - 1, scope, closed), gen(depth - 1, scope, closed));
        case 4: return Formula::implies(gen(depth - 1, scope, closed), gen(depth - 1, scope, closed));
        case 5: return Formula::iff(gen(depth - 1, scope, closed), gen(depth - 1, scope, closed));
        default: {
            const std::string v = pool_[pick(pool_.size())];
            scope.push_back(v);
            Formula body = gen(depth - 1, scope, closed);
            scope.pop_back();
            return choice == 6 ? Formula::exists(v, body) : Formula::forall(v, body);
        }
        }
    }

    std::mt19937_64 rng_;
    std::vector<std::string> pool_;
};

/// Integer evaluation of Presburger terms under an environment.
inline skolem::Integer nat_term(const Term& t, const std::map<std::string, skolem::Integer>& env)
{
    switch (t.kind()) {
    case Term::Kind::Variable: return env.at(t.name());
    case Term::Kind::Number: return boost::multiprecision::numerator(t.value());
    case Term::Kind::Apply:
        if (t.name() == "+")
            return nat_term(t.args()[0], env) + nat_term(t.args()[1], env);
        if (t.name() == "*")
            return nat_term(t.args()[0], env) * nat_term(t.args()[1], env);
        break;
    default: break;
    }
    throw std::runtime_error("oracle: unsupported Presburger term");
}

/// Truth of a quantifier-free Presburger formula.
inline bool nat_holds(const Formula& f, const std::map<std::string, skolem::Integer>& env)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: {
        const auto a = nat_term(f.args()[0], env);
        const auto b = nat_term(f.args()[1], env);
        if (f.name() == "<")
            return a < b;
        if (f.name() == "=")
            return a == b;
        return b % a == 0;
    }
    case K::Not: return ! nat_holds(f.lhs(), env);
    case K::And: return nat_holds(f.lhs(), env) && nat_holds(f.rhs(), env);
    case K::Or: return nat_holds(f.lhs(), env) || nat_holds(f.rhs(), env);
    case K::Implies: return ! nat_holds(f.lhs(), env) || nat_holds(f.rhs(), env);
    case K::Iff: return nat_holds(f.lhs(), env) == nat_holds(f.rhs(), env);
    default: throw std::runtime_error("oracle: quantifier in matrix");
    }
}

/// Peels a leading block of existentials; returns the variables and the body.
inline std::pair<std::vector<std::string>, Formula> existential_block(Formula f)
{
    std::vector<std::string> vars;
    while (f.kind() == Formula::Kind::Exists) {
        vars.push_back(f.name());
        f = f.body();
    }
    return {vars, f};
}

/// Whether some tuple with every component <= bound satisfies `body`.
inline bool bounded_nat_search(const std::vector<std::string>& vars, const Formula& body, unsigned bound)
{
    std::map<std::string, skolem::Integer> env;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == vars.size())
            return nat_holds(body, env);
        for (unsigned v = 0; v <= bound; ++v) {
            env[vars[i]] = v;
            if (go(i + 1))
                return true;
        }
        return false;
    };
    return go(0);
}

}  // namespace test
