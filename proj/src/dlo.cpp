#include "qe_driver.hpp"
#include "theory_internal.hpp"

#include <skolem/error.hpp>
#include <skolem/syntax.hpp>

#include <variant>

namespace skolem {

namespace detail {

namespace {

void check_dlo_term(const Term& t)
{
    if (t.kind() == Term::Kind::Variable || t.kind() == Term::Kind::Number)
        return;
    throw UnsupportedSymbol("dlo", "term " + print_term(t) + " (only variables and rational literals)");
}

}  // namespace

void check_dlo_language(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    case Formula::Kind::Atom:
        if ((f.name() != "<" && f.name() != "=") || f.args().size() != 2)
            throw UnsupportedSymbol("dlo", "predicate '" + f.name() + "'");
        for (const auto& a : f.args())
            check_dlo_term(a);
        return;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: check_dlo_language(f.lhs()); return;
    default:
        check_dlo_language(f.lhs());
        check_dlo_language(f.rhs());
    }
}

bool eval_dlo_atom(const Formula& atom)
{
    const Term& a = atom.args()[0];
    const Term& b = atom.args()[1];
    if (! a.is_number() || ! b.is_number())
        throw Error("eval_ground_atom: atom is not ground: " + print_formula(atom));
    return atom.name() == "<" ? a.value() < b.value() : a.value() == b.value();
}

namespace {

struct DloLiteral {
    bool equality = false;
    Term lhs;
    Term rhs;
};

class DloProcedure {
public:
    using Literal = DloLiteral;

    Dnf<Literal> literal(const Formula& f) const
    {
        const bool negative = f.kind() == Formula::Kind::Not;
        const Formula& atom = negative ? f.lhs() : f;
        const Term& a = atom.args()[0];
        const Term& b = atom.args()[1];
        const bool eq = atom.name() == "=";
        Dnf<Literal> out;
        auto add = [&](std::vector<DloLiteral> conj) {
            std::vector<DloLiteral> kept;
            for (auto& l : conj) {
                auto n = normalize(l);
                if (std::holds_alternative<bool>(n)) {
                    if (! std::get<bool>(n))
                        return;
                }
                else
                    kept.push_back(std::get<DloLiteral>(n));
            }
            out.push_back(std::move(kept));
        };
        if (! negative)
            add({{eq, a, b}});
        else if (eq) {
            // not (a = b)  <=>  a < b  or  b < a
            add({{false, a, b}});
            add({{false, b, a}});
        }
        else {
            // not (a < b)  <=>  b < a  or  a = b
            add({{false, b, a}});
            add({{true, a, b}});
        }
        for (auto& c : out)
            if (c.empty())
                return dnf_true<Literal>();
        return out;
    }

    Dnf<Literal> eliminate(const std::string& x, std::vector<Literal> lits, std::string& method) const
    {
        Dnf<Literal> out;
        std::vector<Literal> conj;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            const auto& l = lits[i];
            if (! l.equality)
                continue;
            Term t = is_var(l.lhs, x) ? l.rhs : l.lhs;
            method = "dlo-equality";
            for (std::size_t j = 0; j < lits.size(); ++j) {
                if (j == i)
                    continue;
                DloLiteral s{lits[j].equality, substitute(lits[j].lhs, x, t), substitute(lits[j].rhs, x, t)};
                auto n = normalize(s);
                if (std::holds_alternative<bool>(n)) {
                    if (! std::get<bool>(n))
                        return out;
                }
                else
                    conj.push_back(std::get<DloLiteral>(n));
            }
            out.push_back(std::move(conj));
            return out;
        }
        method = "dlo-density";
        std::vector<Term> lowers, uppers;
        for (const auto& l : lits)
            (is_var(l.rhs, x) ? lowers : uppers).push_back(is_var(l.rhs, x) ? l.lhs : l.rhs);
        for (const auto& lo : lowers)
            for (const auto& up : uppers) {
                auto n = normalize({false, lo, up});
                if (std::holds_alternative<bool>(n)) {
                    if (! std::get<bool>(n))
                        return out;
                }
                else
                    conj.push_back(std::get<DloLiteral>(n));
            }
        out.push_back(std::move(conj));
        return out;
    }

    Formula to_formula(const Literal& l) const { return Formula::atom(l.equality ? "=" : "<", {l.lhs, l.rhs}); }

    std::string key(const Literal& l) const
    {
        return (l.equality ? "= " : "< ") + print_term(l.lhs) + " " + print_term(l.rhs);
    }

    bool mentions(const Literal& l, const std::string& x) const { return is_var(l.lhs, x) || is_var(l.rhs, x); }

private:
    static bool is_var(const Term& t, const std::string& x) { return t.is_variable() && t.name() == x; }

    static std::variant<bool, DloLiteral> normalize(DloLiteral l)
    {
        if (l.lhs.is_number() && l.rhs.is_number())
            return l.equality ? l.lhs.value() == l.rhs.value() : l.lhs.value() < l.rhs.value();
        if (l.lhs == l.rhs)
            return l.equality;
        if (l.equality) {
            // Variables first, then by name or value.
            bool swap = false;
            if (l.lhs.is_number() && l.rhs.is_variable())
                swap = true;
            else if (l.lhs.is_variable() && l.rhs.is_variable())
                swap = l.rhs.name() < l.lhs.name();
            if (swap)
                std::swap(l.lhs, l.rhs);
        }
        return l;
    }
};

}  // namespace

}  // namespace detail

QeTrace dlo_qe(const Formula& f)
{
    detail::check_dlo_language(f);
    detail::DloProcedure proc;
    return detail::QeDriver<detail::DloProcedure>(proc).run(f);
}

bool dlo_decide(const Formula& sentence)
{
    detail::require_sentence(sentence, "dlo");
    QeTrace t = dlo_qe(sentence);
    return detail::eval_ground(t.output, detail::eval_dlo_atom);
}

}  // namespace skolem
