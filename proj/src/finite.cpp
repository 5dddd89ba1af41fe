#include "theory_internal.hpp"

#include <skolem/error.hpp>
#include <skolem/syntax.hpp>
#include <skolem/theory.hpp>

#include <map>

namespace skolem {

namespace detail {

namespace {

void check_finite_term(const FiniteStructure& s, const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Variable: return;
    case Term::Kind::Number: throw UnsupportedSymbol("finite", "numeric literal " + print_term(t) + " (use #k)");
    case Term::Kind::Element:
        if (t.element_index() >= s.universe_size)
            throw DomainError("element " + print_term(t) + " out of range for universe of size "
                + std::to_string(s.universe_size));
        return;
    case Term::Kind::Apply: {
        auto it = s.functions.find(t.name());
        if (it == s.functions.end())
            throw UnsupportedSymbol("finite", "function '" + t.name() + "' has no table in the structure");
        if (it->second.arity != t.args().size())
            throw ArityError("function '" + t.name() + "' has arity " + std::to_string(it->second.arity)
                + " in the structure");
        for (const auto& a : t.args())
            check_finite_term(s, a);
        return;
    }
    }
}

}  // namespace

void check_finite_language(const FiniteStructure& s, const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    case Formula::Kind::Atom: {
        if (f.name() == "=") {
            if (f.args().size() != 2)
                throw ArityError("'=' takes two arguments");
        }
        else {
            auto it = s.predicates.find(f.name());
            if (it == s.predicates.end())
                throw UnsupportedSymbol("finite", "predicate '" + f.name() + "' has no table in the structure");
            if (it->second.arity && *it->second.arity != f.args().size())
                throw ArityError("predicate '" + f.name() + "' has arity " + std::to_string(*it->second.arity)
                    + " in the structure");
        }
        for (const auto& a : f.args())
            check_finite_term(s, a);
        return;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: check_finite_language(s, f.lhs()); return;
    default:
        check_finite_language(s, f.lhs());
        check_finite_language(s, f.rhs());
    }
}

}  // namespace detail

namespace {

/// Evaluator over index environments; bound variables shadow outer bindings.
class FiniteEvaluator {
public:
    explicit FiniteEvaluator(const FiniteStructure& s) : s_(s) {}

    std::size_t term(const Term& t)
    {
        switch (t.kind()) {
        case Term::Kind::Variable: {
            auto it = env_.find(t.name());
            if (it == env_.end() || it->second.empty())
                throw UnboundVariable(t.name());
            return it->second.back();
        }
        case Term::Kind::Number: throw UnknownSymbol(print_term(t));
        case Term::Kind::Element:
            if (t.element_index() >= s_.universe_size)
                throw DomainError("element " + print_term(t) + " out of range");
            return t.element_index();
        case Term::Kind::Apply: {
            auto it = s_.functions.find(t.name());
            if (it == s_.functions.end())
                throw UnknownSymbol(t.name());
            Tuple args;
            args.reserve(t.args().size());
            for (const auto& a : t.args())
                args.push_back(term(a));
            auto row = it->second.rows.find(args);
            if (row == it->second.rows.end())
                throw DomainError("function '" + t.name() + "' undefined on argument tuple");
            return row->second;
        }
        }
        return 0;
    }

    bool formula(const Formula& f)
    {
        switch (f.kind()) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Atom: {
            if (f.name() == "=" && f.args().size() == 2)
                return term(f.args()[0]) == term(f.args()[1]);
            auto it = s_.predicates.find(f.name());
            if (it == s_.predicates.end() || (it->second.arity && *it->second.arity != f.args().size()))
                throw UnknownSymbol(f.name());
            Tuple args;
            args.reserve(f.args().size());
            for (const auto& a : f.args())
                args.push_back(term(a));
            return it->second.tuples.count(args) != 0;
        }
        case Formula::Kind::Not: return ! formula(f.lhs());
        case Formula::Kind::And: return formula(f.lhs()) && formula(f.rhs());
        case Formula::Kind::Or: return formula(f.lhs()) || formula(f.rhs());
        case Formula::Kind::Implies: return ! formula(f.lhs()) || formula(f.rhs());
        case Formula::Kind::Iff: return formula(f.lhs()) == formula(f.rhs());
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            const bool want = f.kind() == Formula::Kind::Exists;
            auto& slot = env_[f.name()];
            slot.push_back(0);
            bool result = ! want;
            for (std::size_t k = 0; k < s_.universe_size; ++k) {
                env_[f.name()].back() = k;
                if (formula(f.body()) == want) {
                    result = want;
                    break;
                }
            }
            env_[f.name()].pop_back();
            return result;
        }
        }
        return false;
    }

    void bind(const std::string& var, std::size_t value) { env_[var].push_back(value); }

private:
    const FiniteStructure& s_;
    std::map<std::string, std::vector<std::size_t>> env_;
};

}  // namespace

bool finite_eval(const FiniteStructure& s, const Valuation& v, const Formula& f)
{
    FiniteEvaluator ev(s);
    for (const auto& [var, value] : v.bindings()) {
        if (! value.is_fin())
            throw DomainError("variable '" + var + "' is bound to a non-finite element");
        if (value.as_fin() >= s.universe_size)
            throw DomainError("variable '" + var + "' is bound outside the universe");
        ev.bind(var, value.as_fin());
    }
    return ev.formula(f);
}

bool finite_decide(const FiniteStructure& s, const Formula& sentence)
{
    detail::require_sentence(sentence, "finite");
    detail::check_finite_language(s, sentence);
    return finite_eval(s, Valuation{}, sentence);
}

}  // namespace skolem
