#include <skolem/error.hpp>
#include <skolem/logic.hpp>

#include <algorithm>
#include <functional>

namespace skolem {

struct Term::Node {
    Kind kind;
    std::string name;
    Rational value;
    std::size_t element = 0;
    std::vector<Term> args;
};

Term Term::variable(std::string name)
{
    return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), 0, 0, {}}));
}

Term Term::number(Rational value)
{
    return Term(std::make_shared<const Node>(Node{Kind::Number, {}, std::move(value), 0, {}}));
}

Term Term::element(std::size_t index)
{
    return Term(std::make_shared<const Node>(Node{Kind::Element, {}, 0, index, {}}));
}

Term Term::apply(std::string function, std::vector<Term> args)
{
    return Term(std::make_shared<const Node>(Node{Kind::Apply, std::move(function), 0, 0, std::move(args)}));
}

auto Term::kind() const -> Kind { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Rational& Term::value() const { return node_->value; }
std::size_t Term::element_index() const { return node_->element; }
std::span<const Term> Term::args() const { return node_->args; }

bool Term::operator==(const Term& other) const
{
    if (node_ == other.node_)
        return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case Kind::Variable: return a.name == b.name;
    case Kind::Number: return a.value == b.value;
    case Kind::Element: return a.element == b.element;
    case Kind::Apply: return a.name == b.name && a.args == b.args;
    }
    return false;
}

struct Formula::Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
};

namespace {

const std::string empty_name;

}  // namespace

Formula Formula::truth()
{
    static const Formula t(std::make_shared<const Node>(Node{Kind::True, {}, {}, {}}));
    return t;
}

Formula Formula::falsity()
{
    static const Formula f(std::make_shared<const Node>(Node{Kind::False, {}, {}, {}}));
    return f;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::negate(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::conj(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::disj(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::implies(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::iff(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Iff, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::exists(std::string var, Formula body) { return quantifier(Kind::Exists, std::move(var), std::move(body)); }

Formula Formula::forall(std::string var, Formula body) { return quantifier(Kind::Forall, std::move(var), std::move(body)); }

Formula Formula::quantifier(Kind kind, std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(Node{kind, std::move(var), {}, {std::move(body)}}));
}

auto Formula::kind() const -> Kind { return node_->kind; }

bool Formula::is_binary() const
{
    switch (kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: return true;
    default: return false;
    }
}

bool Formula::is_literal() const
{
    switch (kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom: return true;
    case Kind::Not: return lhs().kind() == Kind::Atom;
    default: return false;
    }
}

const std::string& Formula::name() const { return node_->name; }
std::span<const Term> Formula::args() const { return node_->args; }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }

bool Formula::operator==(const Formula& other) const
{
    if (node_ == other.node_)
        return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    return a.kind == b.kind && a.name == b.name && a.args == b.args && a.children == b.children;
}

Formula PrenexFormula::to_formula(std::size_t from) const
{
    Formula f = matrix;
    for (std::size_t i = prefix.size(); i > from; --i) {
        const auto& q = prefix[i - 1];
        f = q.quantifier == Quantifier::Exists ? Formula::exists(q.var, f) : Formula::forall(q.var, f);
    }
    return f;
}

DomainElement DomainElement::nat(Integer value)
{
    if (value < 0)
        throw DomainError("natural number must be nonnegative: " + value.str());
    return DomainElement(Nat{std::move(value)});
}

DomainElement DomainElement::rat(Rational value) { return DomainElement(Rat{std::move(value)}); }

DomainElement DomainElement::fin(std::size_t index) { return DomainElement(Fin{index}); }

std::string DomainElement::to_string() const
{
    if (is_nat())
        return as_nat().str();
    if (is_rat())
        return skolem::to_string(as_rat());
    return "#" + std::to_string(as_fin());
}

void Valuation::bind(const std::string& var, DomainElement value)
{
    if (! bindings_.emplace(var, std::move(value)).second)
        throw Error("variable '" + var + "' bound twice in valuation");
}

Valuation Valuation::extended(const std::string& var, DomainElement value) const
{
    Valuation v = *this;
    v.bindings_.insert_or_assign(var, std::move(value));
    return v;
}

const DomainElement& Valuation::at(const std::string& var) const
{
    auto it = bindings_.find(var);
    if (it == bindings_.end())
        throw UnboundVariable(var);
    return it->second;
}

void FiniteStructure::validate() const
{
    if (universe_size == 0)
        throw DomainError("universe size must be positive");
    for (const auto& [name, table] : predicates)
        for (const auto& tuple : table.tuples) {
            if (table.arity && tuple.size() != *table.arity)
                throw DomainError("predicate " + name + ": tuple arity mismatch");
            for (auto c : tuple)
                if (c >= universe_size)
                    throw DomainError("predicate " + name + ": tuple out of range");
        }
    for (const auto& [name, table] : functions) {
        std::size_t expected = 1;
        for (std::size_t i = 0; i < table.arity; ++i)
            expected *= universe_size;
        for (const auto& [args, value] : table.rows) {
            if (args.size() != table.arity)
                throw DomainError("function " + name + ": row arity mismatch");
            for (auto c : args)
                if (c >= universe_size)
                    throw DomainError("function " + name + ": tuple out of range");
            if (value >= universe_size)
                throw DomainError("function " + name + ": value out of range");
        }
        if (table.rows.size() != expected)
            throw DomainError("function " + name + ": partial function table");
    }
}

namespace {

void collect_term_vars(const Term& t, std::vector<std::string>& out)
{
    switch (t.kind()) {
    case Term::Kind::Variable:
        if (std::find(out.begin(), out.end(), t.name()) == out.end())
            out.push_back(t.name());
        break;
    case Term::Kind::Apply:
        for (const auto& a : t.args())
            collect_term_vars(a, out);
        break;
    default: break;
    }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: break;
    case Formula::Kind::Atom: {
        std::vector<std::string> vars;
        for (const auto& a : f.args())
            collect_term_vars(a, vars);
        for (auto& v : vars)
            if (std::find(bound.begin(), bound.end(), v) == bound.end()
                && std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
        break;
    }
    case Formula::Kind::Not: collect_free(f.lhs(), bound, out); break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        bound.push_back(f.name());
        collect_free(f.body(), bound, out);
        bound.pop_back();
        break;
    default:
        collect_free(f.lhs(), bound, out);
        collect_free(f.rhs(), bound, out);
        break;
    }
}

bool is_builtin(const std::string& name)
{
    return name == "+" || name == "*" || name == "<" || name == "=" || name == "divides";
}

void collect_term_names(const Term& t, std::set<std::string>& out)
{
    if (t.kind() == Term::Kind::Variable || t.kind() == Term::Kind::Apply)
        out.insert(t.name());
    for (const auto& a : t.args())
        collect_term_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: break;
    case Formula::Kind::Atom:
        out.insert(f.name());
        for (const auto& a : f.args())
            collect_term_names(a, out);
        break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        out.insert(f.name());
        collect_names(f.body(), out);
        break;
    case Formula::Kind::Not: collect_names(f.lhs(), out); break;
    default:
        collect_names(f.lhs(), out);
        collect_names(f.rhs(), out);
    }
}

void collect_term_symbols(const Term& t, std::vector<Symbol>& out)
{
    if (t.kind() != Term::Kind::Apply)
        return;
    if (! is_builtin(t.name())) {
        Symbol s{t.name(), SymbolKind::Function, t.args().size()};
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    for (const auto& a : t.args())
        collect_term_symbols(a, out);
}

void collect_symbols(const Formula& f, std::vector<Symbol>& out)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: break;
    case Formula::Kind::Atom: {
        if (! is_builtin(f.name())) {
            Symbol s{f.name(), SymbolKind::Predicate, f.args().size()};
            if (std::find(out.begin(), out.end(), s) == out.end())
                out.push_back(s);
        }
        for (const auto& a : f.args())
            collect_term_symbols(a, out);
        break;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: collect_symbols(f.lhs(), out); break;
    default:
        collect_symbols(f.lhs(), out);
        collect_symbols(f.rhs(), out);
    }
}

bool term_mentions(const Term& t, const std::string& var)
{
    if (t.kind() == Term::Kind::Variable)
        return t.name() == var;
    for (const auto& a : t.args())
        if (term_mentions(a, var))
            return true;
    return false;
}

Term substitute_term(const Term& t, const std::map<std::string, Term>& repl)
{
    switch (t.kind()) {
    case Term::Kind::Variable: {
        auto it = repl.find(t.name());
        return it == repl.end() ? t : it->second;
    }
    case Term::Kind::Apply: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        bool changed = false;
        for (const auto& a : t.args()) {
            args.push_back(substitute_term(a, repl));
            changed = changed || ! (args.back() == a);
        }
        return changed ? Term::apply(t.name(), std::move(args)) : t;
    }
    default: return t;
    }
}

Formula substitute_formula(const Formula& f, const std::map<std::string, Term>& repl)
{
    if (repl.empty())
        return f;
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom: {
        std::vector<Term> args;
        for (const auto& a : f.args())
            args.push_back(substitute_term(a, repl));
        return Formula::atom(f.name(), std::move(args));
    }
    case Formula::Kind::Not: return Formula::negate(substitute_formula(f.lhs(), repl));
    case Formula::Kind::And: return Formula::conj(substitute_formula(f.lhs(), repl), substitute_formula(f.rhs(), repl));
    case Formula::Kind::Or: return Formula::disj(substitute_formula(f.lhs(), repl), substitute_formula(f.rhs(), repl));
    case Formula::Kind::Implies:
        return Formula::implies(substitute_formula(f.lhs(), repl), substitute_formula(f.rhs(), repl));
    case Formula::Kind::Iff: return Formula::iff(substitute_formula(f.lhs(), repl), substitute_formula(f.rhs(), repl));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        const std::string& x = f.name();
        std::map<std::string, Term> inner;
        for (const auto& [v, t] : repl)
            if (v != x && occurs_free(f.body(), v))
                inner.emplace(v, t);
        if (inner.empty())
            return f;
        bool captured = false;
        for (const auto& [v, t] : inner)
            captured = captured || term_mentions(t, x);
        if (! captured)
            return Formula::quantifier(f.kind(), x, substitute_formula(f.body(), inner));
        std::set<std::string> avoid = all_names(f.body());
        for (const auto& [v, t] : inner) {
            avoid.insert(v);
            for (auto& n : term_vars(t))
                avoid.insert(n);
        }
        std::string fresh = x + "'";
        while (avoid.count(fresh))
            fresh += "'";
        inner.emplace(x, Term::variable(fresh));
        return Formula::quantifier(f.kind(), fresh, substitute_formula(f.body(), inner));
    }
    }
    return f;
}

}  // namespace

std::vector<std::string> term_vars(const Term& t)
{
    std::vector<std::string> out;
    collect_term_vars(t, out);
    return out;
}

std::vector<std::string> free_vars(const Formula& f)
{
    std::vector<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

bool occurs_free(const Formula& f, const std::string& var)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom:
        for (const auto& a : f.args())
            if (term_mentions(a, var))
                return true;
        return false;
    case Formula::Kind::Not: return occurs_free(f.lhs(), var);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return f.name() != var && occurs_free(f.body(), var);
    default: return occurs_free(f.lhs(), var) || occurs_free(f.rhs(), var);
    }
}

bool is_quantifier_free(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Not: return is_quantifier_free(f.lhs());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return false;
    default: return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
    }
}

std::size_t node_count(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return 1;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 1 + node_count(f.lhs());
    default: return 1 + node_count(f.lhs()) + node_count(f.rhs());
    }
}

std::size_t quantifier_count(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return 0;
    case Formula::Kind::Not: return quantifier_count(f.lhs());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 1 + quantifier_count(f.body());
    default: return quantifier_count(f.lhs()) + quantifier_count(f.rhs());
    }
}

std::set<std::string> all_names(const Formula& f)
{
    std::set<std::string> out;
    collect_names(f, out);
    return out;
}

std::vector<Symbol> signature(const Formula& f)
{
    std::vector<Symbol> out;
    collect_symbols(f, out);
    return out;
}

Term substitute(const Term& t, const std::string& var, const Term& replacement)
{
    return substitute_term(t, {{var, replacement}});
}

Formula substitute(const Formula& f, const std::string& var, const Term& replacement)
{
    return substitute_formula(f, {{var, replacement}});
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& replacements)
{
    return substitute_formula(f, replacements);
}

DomainElement eval_term(const FiniteStructure& s, const Valuation& v, const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Variable: return v.at(t.name());
    case Term::Kind::Element:
        if (t.element_index() >= s.universe_size)
            throw DomainError("element #" + std::to_string(t.element_index()) + " outside universe");
        return DomainElement::fin(t.element_index());
    case Term::Kind::Number: throw UnknownSymbol(to_string(t.value()));
    case Term::Kind::Apply: {
        auto it = s.functions.find(t.name());
        if (it == s.functions.end() || it->second.arity != t.args().size())
            throw UnknownSymbol(t.name());
        Tuple args;
        for (const auto& a : t.args()) {
            auto e = eval_term(s, v, a);
            if (! e.is_fin())
                throw DomainError("non-finite element in finite structure");
            args.push_back(e.as_fin());
        }
        auto row = it->second.rows.find(args);
        if (row == it->second.rows.end())
            throw DomainError("function " + t.name() + ": no table row");
        return DomainElement::fin(row->second);
    }
    }
    throw Error("unreachable term kind");
}

bool eval_qf(const FiniteStructure& s, const Valuation& v, const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: {
        if (f.name() == "=" && f.args().size() == 2)
            return eval_term(s, v, f.args()[0]) == eval_term(s, v, f.args()[1]);
        auto it = s.predicates.find(f.name());
        if (it == s.predicates.end() || (it->second.arity && *it->second.arity != f.args().size()))
            throw UnknownSymbol(f.name());
        Tuple args;
        for (const auto& a : f.args()) {
            auto e = eval_term(s, v, a);
            if (! e.is_fin())
                throw DomainError("non-finite element in finite structure");
            args.push_back(e.as_fin());
        }
        return it->second.tuples.count(args) != 0;
    }
    case Formula::Kind::Not: return ! eval_qf(s, v, f.lhs());
    case Formula::Kind::And: return eval_qf(s, v, f.lhs()) && eval_qf(s, v, f.rhs());
    case Formula::Kind::Or: return eval_qf(s, v, f.lhs()) || eval_qf(s, v, f.rhs());
    case Formula::Kind::Implies: return ! eval_qf(s, v, f.lhs()) || eval_qf(s, v, f.rhs());
    case Formula::Kind::Iff: return eval_qf(s, v, f.lhs()) == eval_qf(s, v, f.rhs());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: throw Error("eval_qf: formula is not quantifier-free");
    }
    return false;
}

}  // namespace skolem
