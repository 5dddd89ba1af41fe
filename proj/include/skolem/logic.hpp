#pragma once

#include <skolem/number.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace skolem {

enum class SymbolKind { Predicate, Function, Variable };

struct Symbol {
    std::string name;
    SymbolKind kind = SymbolKind::Variable;
    std::size_t arity = 0;

    auto operator<=>(const Symbol&) const = default;
};

/// Immutable term tree with shared structure. Copies are cheap.
class Term {
public:
    enum class Kind { Variable, Number, Element, Apply };

    static Term variable(std::string name);
    static Term number(Rational value);
    /// Reserved constant naming element `index` of a finite universe; written `#index`.
    static Term element(std::size_t index);
    static Term apply(std::string function, std::vector<Term> args);

    Kind kind() const;
    bool is_variable() const { return kind() == Kind::Variable; }
    bool is_number() const { return kind() == Kind::Number; }

    /// Variable or function name.
    const std::string& name() const;
    const Rational& value() const;
    std::size_t element_index() const;
    std::span<const Term> args() const;

    bool operator==(const Term& other) const;

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

class Formula {
public:
    enum class Kind { True, False, Atom, Not, And, Or, Implies, Iff, Exists, Forall };

    static Formula truth();
    static Formula falsity();
    static Formula atom(std::string predicate, std::vector<Term> args);
    static Formula negate(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);
    static Formula quantifier(Kind kind, std::string var, Formula body);

    Kind kind() const;
    bool is_quantifier() const { return kind() == Kind::Exists || kind() == Kind::Forall; }
    bool is_binary() const;
    bool is_literal() const;

    /// Predicate name for atoms, bound variable for quantifiers.
    const std::string& name() const;
    std::span<const Term> args() const;
    /// Operand of Not, body of a quantifier, left side of a binary connective.
    const Formula& lhs() const;
    const Formula& rhs() const;
    const Formula& body() const { return lhs(); }

    bool operator==(const Formula& other) const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

enum class Quantifier { Exists, Forall };

struct QuantifiedVar {
    Quantifier quantifier;
    std::string var;

    bool operator==(const QuantifiedVar&) const = default;
};

struct PrenexFormula {
    std::vector<QuantifiedVar> prefix;
    Formula matrix = Formula::truth();
    std::vector<std::string> free_vars;

    /// Rebuilds the quantified formula prefix[from..] matrix.
    Formula to_formula(std::size_t from = 0) const;
    bool operator==(const PrenexFormula&) const = default;
};

class DomainElement {
public:
    struct Nat {
        Integer value;
        bool operator==(const Nat&) const = default;
    };
    struct Rat {
        Rational value;
        bool operator==(const Rat&) const = default;
    };
    struct Fin {
        std::size_t index;
        bool operator==(const Fin&) const = default;
    };

    static DomainElement nat(Integer value);
    static DomainElement rat(Rational value);
    static DomainElement fin(std::size_t index);

    bool is_nat() const { return std::holds_alternative<Nat>(value_); }
    bool is_rat() const { return std::holds_alternative<Rat>(value_); }
    bool is_fin() const { return std::holds_alternative<Fin>(value_); }
    const Integer& as_nat() const { return std::get<Nat>(value_).value; }
    const Rational& as_rat() const { return std::get<Rat>(value_).value; }
    std::size_t as_fin() const { return std::get<Fin>(value_).index; }

    /// Decimal natural, `p/q` rational, or `#k` finite index.
    std::string to_string() const;

    bool operator==(const DomainElement&) const = default;

private:
    explicit DomainElement(std::variant<Nat, Rat, Fin> v) : value_(std::move(v)) {}
    std::variant<Nat, Rat, Fin> value_;
};

class Valuation {
public:
    Valuation() = default;

    /// Throws if `var` is already bound.
    void bind(const std::string& var, DomainElement value);
    Valuation extended(const std::string& var, DomainElement value) const;

    bool contains(const std::string& var) const { return bindings_.count(var) != 0; }
    /// Throws UnboundVariable.
    const DomainElement& at(const std::string& var) const;
    const std::map<std::string, DomainElement>& bindings() const { return bindings_; }
    std::size_t size() const { return bindings_.size(); }

    bool operator==(const Valuation&) const = default;

private:
    std::map<std::string, DomainElement> bindings_;
};

using Tuple = std::vector<std::size_t>;

struct PredicateTable {
    /// Unknown only when the table was declared without any tuple.
    std::optional<std::size_t> arity;
    std::set<Tuple> tuples;

    bool operator==(const PredicateTable&) const = default;
};

struct FunctionTable {
    std::size_t arity = 0;
    std::map<Tuple, std::size_t> rows;

    bool operator==(const FunctionTable&) const = default;
};

/// Finite model over universe {0, ..., universe_size - 1}. `=` is always
/// interpreted as identity and never appears in the tables.
struct FiniteStructure {
    std::size_t universe_size = 1;
    std::map<std::string, PredicateTable> predicates;
    std::map<std::string, FunctionTable> functions;

    /// Throws DomainError on out-of-range components or partial function tables.
    void validate() const;

    bool operator==(const FiniteStructure&) const = default;
};

/// Variables with a free occurrence, in first-occurrence order.
std::vector<std::string> free_vars(const Formula& f);
std::vector<std::string> term_vars(const Term& t);
bool occurs_free(const Formula& f, const std::string& var);
bool is_quantifier_free(const Formula& f);
std::size_t node_count(const Formula& f);
std::size_t quantifier_count(const Formula& f);
/// Every identifier occurring in `f`: variables (free or bound) and symbols.
std::set<std::string> all_names(const Formula& f);
/// Predicate and function symbols of `f`, excluding the arithmetic built-ins.
std::vector<Symbol> signature(const Formula& f);

Term substitute(const Term& t, const std::string& var, const Term& replacement);
/// Capture-avoiding: a binder whose variable occurs in `replacement` is
/// renamed (primed) before descending.
Formula substitute(const Formula& f, const std::string& var, const Term& replacement);
/// Simultaneous version of the above.
Formula substitute(const Formula& f, const std::map<std::string, Term>& replacements);

DomainElement eval_term(const FiniteStructure& s, const Valuation& v, const Term& t);
bool eval_qf(const FiniteStructure& s, const Valuation& v, const Formula& f);

}  // namespace skolem
