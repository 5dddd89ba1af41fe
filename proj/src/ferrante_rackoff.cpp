#include "qe_driver.hpp"
#include "theory_internal.hpp"

#include <skolem/error.hpp>
#include <skolem/linear.hpp>
#include <skolem/syntax.hpp>

#include <variant>

namespace skolem {

namespace detail {

namespace {

void check_lra_term(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Number: return;
    case Term::Kind::Element: throw UnsupportedSymbol("lra", "element literal " + print_term(t));
    case Term::Kind::Apply:
        if (t.name() == "+" && t.args().size() == 2) {
            check_lra_term(t.args()[0]);
            check_lra_term(t.args()[1]);
            return;
        }
        if (t.name() == "*" && t.args().size() == 2) {
            if (! t.args()[0].is_number())
                throw NonLinearTerm(print_term(t));
            check_lra_term(t.args()[1]);
            return;
        }
        throw UnsupportedSymbol("lra", "function '" + t.name() + "'");
    }
}

}  // namespace

void check_lra_language(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    case Formula::Kind::Atom:
        if ((f.name() != "<" && f.name() != "=") || f.args().size() != 2)
            throw UnsupportedSymbol("lra", "predicate '" + f.name() + "'");
        for (const auto& a : f.args())
            check_lra_term(a);
        return;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: check_lra_language(f.lhs()); return;
    default:
        check_lra_language(f.lhs());
        check_lra_language(f.rhs());
    }
}

namespace {

LinearAtom atom_of(const Formula& atom)
{
    LinearAtom out;
    out.rel = atom.name() == "<" ? Relation::Lt : Relation::Eq;
    out.form = linearize(atom.args()[0]) - linearize(atom.args()[1]);
    return out;
}

}  // namespace

bool eval_lra_atom(const Formula& atom) { return skolem::eval_ground(atom_of(atom)); }

namespace {

/// Scales so the first coefficient is +-1 (order relations) or +1 (equations).
std::variant<bool, LinearAtom> normalize(LinearAtom a)
{
    if (a.form.is_constant())
        return skolem::eval_ground(a);
    Rational lead = a.form.coeffs.begin()->second;
    if (a.rel == Relation::Lt || a.rel == Relation::Le)
        lead = abs(lead);
    a.form = a.form.scaled(1 / lead);
    return a;
}

class FerranteRackoffProcedure {
public:
    using Literal = LinearAtom;

    Dnf<Literal> literal(const Formula& f) const
    {
        const bool negative = f.kind() == Formula::Kind::Not;
        LinearAtom a = atom_of(negative ? f.lhs() : f);
        if (negative)
            a = negated(a);
        auto n = normalize(a);
        if (std::holds_alternative<bool>(n))
            return std::get<bool>(n) ? dnf_true<Literal>() : Dnf<Literal>{};
        return {{std::get<LinearAtom>(n)}};
    }

    Dnf<Literal> eliminate(const std::string& x, std::vector<Literal> lits, std::string& method) const
    {
        Dnf<Literal> out;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (lits[i].rel != Relation::Eq)
                continue;
            method = "fr-equality";
            std::vector<Literal> others;
            for (std::size_t j = 0; j < lits.size(); ++j)
                if (j != i)
                    others.push_back(lits[j]);
            push_substituted(out, others, x, solve(lits[i], x));
            return out;
        }

        method = "ferrante-rackoff";
        std::vector<LinearForm> points;
        std::set<std::string> seen;
        for (const auto& a : lits) {
            LinearForm t = solve(a, x);
            if (seen.insert(atom_key(LinearAtom{Relation::Eq, t, 0})).second)
                points.push_back(std::move(t));
        }

        push_at_infinity(out, lits, x, -1);
        push_at_infinity(out, lits, x, +1);
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i; j < points.size(); ++j)
                push_substituted(out, lits, x, (points[i] + points[j]).scaled(Rational(1, 2)));
        return out;
    }

    Formula to_formula(const Literal& a) const
    {
        auto [pos, neg] = split_sides(a.form);
        switch (a.rel) {
        case Relation::Lt: return Formula::atom("<", {to_term(pos), to_term(neg)});
        case Relation::Le: return Formula::negate(Formula::atom("<", {to_term(neg), to_term(pos)}));
        case Relation::Eq: return Formula::atom("=", {to_term(pos), to_term(neg)});
        default: return Formula::negate(Formula::atom("=", {to_term(pos), to_term(neg)}));
        }
    }

    std::string key(const Literal& a) const { return atom_key(a); }
    bool mentions(const Literal& a, const std::string& x) const { return a.form.mentions(x); }

private:
    /// Boundary point: c*x + r rel 0 crosses at x = -r/c.
    static LinearForm solve(const LinearAtom& a, const std::string& x)
    {
        const Rational c = a.form.coeff(x);
        return a.form.without(x).scaled(-1 / c);
    }

    /// direction -1 substitutes minus infinity, +1 plus infinity.
    static void push_at_infinity(Dnf<Literal>& out, const std::vector<Literal>& lits, const std::string& x,
        int direction)
    {
        std::vector<Literal> conj;
        for (const auto& a : lits) {
            const Rational c = a.form.coeff(x);
            switch (a.rel) {
            case Relation::Lt:
            case Relation::Le:
                // c*x + r < 0 holds at the infinity opposite to c's sign.
                if ((c > 0) != (direction < 0))
                    return;
                break;
            case Relation::Eq: return;
            default: break;
            }
        }
        out.push_back(std::move(conj));
    }

    static void push_substituted(Dnf<Literal>& out, const std::vector<Literal>& lits, const std::string& x,
        const LinearForm& value)
    {
        std::vector<Literal> conj;
        for (const auto& a : lits) {
            LinearAtom s = a;
            s.form = a.form.substituted(x, value);
            auto n = normalize(s);
            if (std::holds_alternative<bool>(n)) {
                if (! std::get<bool>(n))
                    return;
            }
            else
                conj.push_back(std::get<LinearAtom>(n));
        }
        out.push_back(std::move(conj));
    }
};

}  // namespace

}  // namespace detail

QeTrace fr_qe(const Formula& f)
{
    detail::check_lra_language(f);
    detail::FerranteRackoffProcedure proc;
    return detail::QeDriver<detail::FerranteRackoffProcedure>(proc).run(f);
}

bool lra_decide(const Formula& sentence)
{
    detail::require_sentence(sentence, "lra");
    QeTrace t = fr_qe(sentence);
    return detail::eval_ground(t.output, detail::eval_lra_atom);
}

}  // namespace skolem
