#pragma once

#include <skolem/logic.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skolem {

enum class TheoryKind { Finite, Dlo, Presburger, Lra };

struct QeStep {
    std::string variable;
    std::string method;
    /// Node count of the formula produced by this step.
    std::size_t size = 0;
};

struct QeTrace {
    Formula input = Formula::truth();
    Formula output = Formula::truth();
    std::vector<QeStep> steps;
};

/// A decidable theory with a recursively enumerable domain and computable
/// interpretations. Values are immutable and may be shared across threads.
///
/// Sentences handed to decide() may mention domain-element literals
/// (numbers, or `#k` for finite theories) besides the theory's own syntax.
class Theory {
public:
    virtual ~Theory() = default;

    virtual TheoryKind kind() const = 0;
    std::string_view name() const;

    /// Throws UnsupportedSymbol (or NonLinearTerm) when `f` leaves the language.
    virtual void check_language(const Formula& f) const = 0;

    /// Throws Error when `sentence` has free variables.
    virtual bool decide(const Formula& sentence) const = 0;

    /// Fixed enumeration of the domain; injective, and onto the domain.
    virtual DomainElement enumerate(std::uint64_t index) const = 0;
    /// Number of domain elements, or nullopt when infinite.
    virtual std::optional<std::uint64_t> domain_size() const { return std::nullopt; }

    /// Exact truth of an atom whose arguments are all literals.
    virtual bool eval_ground_atom(const Formula& atom) const = 0;

    /// Literal term that denotes `e` in formulas.
    virtual Term element_term(const DomainElement& e) const = 0;
    /// Parses a user-written element (`5`, `-1/2`, `#3` or `3`).
    virtual DomainElement parse_element(std::string_view text) const = 0;

    /// Quantifier elimination; the finite theory throws (use decide).
    virtual QeTrace eliminate(const Formula& f) const;
};

TheoryKind parse_theory_kind(std::string_view name);
std::string_view theory_name(TheoryKind kind);

/// `structure` is required for the finite theory and ignored otherwise.
std::shared_ptr<const Theory> make_theory(TheoryKind kind, std::optional<FiniteStructure> structure = std::nullopt);
std::shared_ptr<const Theory> make_theory(std::string_view name, std::optional<FiniteStructure> structure = std::nullopt);

DomainElement enum_nat(std::uint64_t k);
/// 0, q1, -q1, q2, -q2, ... where q is the Calkin-Wilf sequence.
DomainElement enum_rat(std::uint64_t k);
DomainElement enum_fin(const FiniteStructure& s, std::uint64_t k);

/// k-th positive rational in Calkin-Wilf order, 1-based.
Rational calkin_wilf(std::uint64_t n);

/// Truth in `s` by exhaustive quantifier expansion.
bool finite_decide(const FiniteStructure& s, const Formula& sentence);
/// Truth in `s` under `v` for formulas with quantifiers.
bool finite_eval(const FiniteStructure& s, const Valuation& v, const Formula& f);

QeTrace dlo_qe(const Formula& f);
bool dlo_decide(const Formula& sentence);

/// Variables range over the naturals.
QeTrace cooper_qe(const Formula& f);
bool presburger_decide(const Formula& sentence);

QeTrace fr_qe(const Formula& f);
bool lra_decide(const Formula& sentence);

bool eval_ground_atom(const Theory& th, const Formula& atom);

}  // namespace skolem
