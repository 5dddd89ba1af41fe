#include "theory_internal.hpp"

#include <skolem/error.hpp>
#include <skolem/syntax.hpp>
#include <skolem/theory.hpp>

namespace skolem {

namespace detail {

void require_sentence(const Formula& f, const std::string& who)
{
    auto fv = free_vars(f);
    if (fv.empty())
        return;
    std::string names;
    for (const auto& v : fv)
        names += (names.empty() ? "" : ", ") + v;
    throw Error(who + ": not a sentence (free variables: " + names + ")");
}

bool eval_ground(const Formula& f, const std::function<bool(const Formula&)>& atom)
{
    switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: return atom(f);
    case Formula::Kind::Not: return ! eval_ground(f.lhs(), atom);
    case Formula::Kind::And: return eval_ground(f.lhs(), atom) && eval_ground(f.rhs(), atom);
    case Formula::Kind::Or: return eval_ground(f.lhs(), atom) || eval_ground(f.rhs(), atom);
    case Formula::Kind::Implies: return ! eval_ground(f.lhs(), atom) || eval_ground(f.rhs(), atom);
    case Formula::Kind::Iff: return eval_ground(f.lhs(), atom) == eval_ground(f.rhs(), atom);
    default: throw Error("eval_ground: formula has quantifiers");
    }
}

}  // namespace detail

namespace {

void require_ground_atom(const Formula& atom)
{
    if (atom.kind() != Formula::Kind::Atom)
        throw Error("eval_ground_atom: not an atom: " + print_formula(atom));
    if (! free_vars(atom).empty())
        throw Error("eval_ground_atom: atom is not ground: " + print_formula(atom));
}

std::optional<Rational> parse_number(std::string_view text)
{
    while (! text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (! text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    return parse_rational(text);
}

class DloTheory : public Theory {
public:
    TheoryKind kind() const override { return TheoryKind::Dlo; }
    void check_language(const Formula& f) const override { detail::check_dlo_language(f); }
    bool decide(const Formula& sentence) const override { return dlo_decide(sentence); }
    DomainElement enumerate(std::uint64_t index) const override { return enum_rat(index); }
    bool eval_ground_atom(const Formula& atom) const override
    {
        require_ground_atom(atom);
        detail::check_dlo_language(atom);
        return detail::eval_dlo_atom(atom);
    }
    Term element_term(const DomainElement& e) const override { return Term::number(e.as_rat()); }
    DomainElement parse_element(std::string_view text) const override
    {
        auto r = parse_number(text);
        if (! r)
            throw DomainError("not a rational: '" + std::string(text) + "'");
        return DomainElement::rat(*r);
    }
    QeTrace eliminate(const Formula& f) const override { return dlo_qe(f); }
};

class LraTheory : public Theory {
public:
    TheoryKind kind() const override { return TheoryKind::Lra; }
    void check_language(const Formula& f) const override { detail::check_lra_language(f); }
    bool decide(const Formula& sentence) const override { return lra_decide(sentence); }
    DomainElement enumerate(std::uint64_t index) const override { return enum_rat(index); }
    bool eval_ground_atom(const Formula& atom) const override
    {
        require_ground_atom(atom);
        detail::check_lra_language(atom);
        return detail::eval_lra_atom(atom);
    }
    Term element_term(const DomainElement& e) const override { return Term::number(e.as_rat()); }
    DomainElement parse_element(std::string_view text) const override
    {
        auto r = parse_number(text);
        if (! r)
            throw DomainError("not a rational: '" + std::string(text) + "'");
        return DomainElement::rat(*r);
    }
    QeTrace eliminate(const Formula& f) const override { return fr_qe(f); }
};

class PresburgerTheory : public Theory {
public:
    TheoryKind kind() const override { return TheoryKind::Presburger; }
    void check_language(const Formula& f) const override { detail::check_presburger_language(f); }
    bool decide(const Formula& sentence) const override { return presburger_decide(sentence); }
    DomainElement enumerate(std::uint64_t index) const override { return enum_nat(index); }
    bool eval_ground_atom(const Formula& atom) const override
    {
        require_ground_atom(atom);
        detail::check_presburger_language(atom);
        return detail::eval_presburger_atom(atom);
    }
    Term element_term(const DomainElement& e) const override { return Term::number(Rational(e.as_nat())); }
    DomainElement parse_element(std::string_view text) const override
    {
        auto r = parse_number(text);
        if (! r || ! is_integral(*r) || *r < 0)
            throw DomainError("not a natural number: '" + std::string(text) + "'");
        return DomainElement::nat(boost::multiprecision::numerator(*r));
    }
    QeTrace eliminate(const Formula& f) const override { return cooper_qe(f); }
};

class FiniteTheory : public Theory {
public:
    explicit FiniteTheory(FiniteStructure s) : structure_(std::move(s)) { structure_.validate(); }

    TheoryKind kind() const override { return TheoryKind::Finite; }
    void check_language(const Formula& f) const override { detail::check_finite_language(structure_, f); }
    bool decide(const Formula& sentence) const override { return finite_decide(structure_, sentence); }
    DomainElement enumerate(std::uint64_t index) const override { return enum_fin(structure_, index); }
    std::optional<std::uint64_t> domain_size() const override { return structure_.universe_size; }
    bool eval_ground_atom(const Formula& atom) const override
    {
        require_ground_atom(atom);
        return finite_eval(structure_, Valuation{}, atom);
    }
    Term element_term(const DomainElement& e) const override { return Term::element(e.as_fin()); }
    DomainElement parse_element(std::string_view text) const override
    {
        std::string_view digits = text;
        if (! digits.empty() && digits.front() == '#')
            digits.remove_prefix(1);
        if (digits.empty() || digits.size() > 18 || digits.find_first_not_of("0123456789") != std::string_view::npos)
            throw DomainError("not a universe element: '" + std::string(text) + "'");
        const std::uint64_t k = std::stoull(std::string(digits));
        return enum_fin(structure_, k);
    }

private:
    FiniteStructure structure_;
};

}  // namespace

std::string_view Theory::name() const { return theory_name(kind()); }

QeTrace Theory::eliminate(const Formula&) const
{
    throw Error("quantifier elimination is not available for theory " + std::string(name()) + " (use decide)");
}

TheoryKind parse_theory_kind(std::string_view name)
{
    if (name == "finite")
        return TheoryKind::Finite;
    if (name == "dlo")
        return TheoryKind::Dlo;
    if (name == "presburger")
        return TheoryKind::Presburger;
    if (name == "lra")
        return TheoryKind::Lra;
    throw Error("unknown theory '" + std::string(name) + "' (expected finite, dlo, presburger or lra)");
}

std::string_view theory_name(TheoryKind kind)
{
    switch (kind) {
    case TheoryKind::Finite: return "finite";
    case TheoryKind::Dlo: return "dlo";
    case TheoryKind::Presburger: return "presburger";
    case TheoryKind::Lra: return "lra";
    }
    return "?";
}

std::shared_ptr<const Theory> make_theory(TheoryKind kind, std::optional<FiniteStructure> structure)
{
    switch (kind) {
    case TheoryKind::Finite:
        if (! structure)
            throw Error("theory finite requires a structure");
        return std::make_shared<FiniteTheory>(std::move(*structure));
    case TheoryKind::Dlo: return std::make_shared<DloTheory>();
    case TheoryKind::Presburger: return std::make_shared<PresburgerTheory>();
    case TheoryKind::Lra: return std::make_shared<LraTheory>();
    }
    throw Error("unknown theory");
}

std::shared_ptr<const Theory> make_theory(std::string_view name, std::optional<FiniteStructure> structure)
{
    return make_theory(parse_theory_kind(name), std::move(structure));
}

DomainElement enum_nat(std::uint64_t k) { return DomainElement::nat(Integer(k)); }

namespace {

/// Stern's diatomic sequence.
Integer fusc(std::uint64_t n)
{
    Integer a = 1, b = 0;
    while (n > 0) {
        if (n & 1)
            b += a;
        else
            a += b;
        n >>= 1;
    }
    return b;
}

}  // namespace

Rational calkin_wilf(std::uint64_t n)
{
    if (n == 0)
        throw DomainError("calkin_wilf: index starts at 1");
    return Rational(fusc(n), fusc(n + 1));
}

DomainElement enum_rat(std::uint64_t k)
{
    if (k == 0)
        return DomainElement::rat(0);
    const std::uint64_t n = (k + 1) / 2;
    Rational q = calkin_wilf(n);
    return DomainElement::rat(k % 2 == 1 ? q : Rational(-q));
}

DomainElement enum_fin(const FiniteStructure& s, std::uint64_t k)
{
    if (k >= s.universe_size)
        throw DomainError("element " + std::to_string(k) + " out of range for universe of size "
            + std::to_string(s.universe_size));
    return DomainElement::fin(static_cast<std::size_t>(k));
}

bool eval_ground_atom(const Theory& th, const Formula& atom) { return th.eval_ground_atom(atom); }

}  // namespace skolem
