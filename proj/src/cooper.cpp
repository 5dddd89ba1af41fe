#include "qe_driver.hpp"
#include "theory_internal.hpp"

#include <skolem/error.hpp>
#include <skolem/linear.hpp>
#include <skolem/syntax.hpp>

#include <variant>

namespace skolem {

namespace detail {

namespace {

bool is_natural_literal(const Term& t) { return t.is_number() && is_integral(t.value()) && t.value() >= 0; }

void check_presburger_term(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Variable: return;
    case Term::Kind::Number:
        if (! is_natural_literal(t))
            throw UnsupportedSymbol("presburger", "literal " + print_term(t) + " (naturals only)");
        return;
    case Term::Kind::Element: throw UnsupportedSymbol("presburger", "element literal " + print_term(t));
    case Term::Kind::Apply:
        if (t.name() == "+" && t.args().size() == 2) {
            check_presburger_term(t.args()[0]);
            check_presburger_term(t.args()[1]);
            return;
        }
        if (t.name() == "*" && t.args().size() == 2) {
            if (! t.args()[0].is_number())
                throw NonLinearTerm(print_term(t));
            if (! is_natural_literal(t.args()[0]))
                throw UnsupportedSymbol("presburger", "scalar " + print_term(t.args()[0]) + " (naturals only)");
            check_presburger_term(t.args()[1]);
            return;
        }
        throw UnsupportedSymbol("presburger", "function '" + t.name() + "'");
    }
}

}  // namespace

void check_presburger_language(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    case Formula::Kind::Atom:
        if ((f.name() != "<" && f.name() != "=" && f.name() != "divides") || f.args().size() != 2)
            throw UnsupportedSymbol("presburger", "predicate '" + f.name() + "'");
        if (f.name() == "divides") {
            const Term& k = f.args()[0];
            if (! is_natural_literal(k) || k.value() == 0)
                throw UnsupportedSymbol("presburger", "divides needs a positive integer literal");
        }
        for (const auto& a : f.args())
            check_presburger_term(a);
        return;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: check_presburger_language(f.lhs()); return;
    default:
        check_presburger_language(f.lhs());
        check_presburger_language(f.rhs());
    }
}

namespace {

Integer as_integer(const Rational& r)
{
    if (! is_integral(r))
        throw Error("presburger: non-integral coefficient " + to_string(r));
    return boost::multiprecision::numerator(r);
}

LinearAtom atom_of(const Formula& atom)
{
    LinearAtom out;
    if (atom.name() == "divides") {
        out.rel = Relation::Div;
        out.modulus = as_integer(atom.args()[0].value());
        out.form = linearize(atom.args()[1]);
        return out;
    }
    out.rel = atom.name() == "<" ? Relation::Lt : Relation::Eq;
    out.form = linearize(atom.args()[0]) - linearize(atom.args()[1]);
    return out;
}

}  // namespace

bool eval_presburger_atom(const Formula& atom) { return skolem::eval_ground(atom_of(atom)); }

namespace {

Integer coefficient_gcd(const LinearForm& f)
{
    Integer g = 0;
    for (const auto& [v, c] : f.coeffs)
        g = gcd(g, as_integer(c));
    return g;
}

/// Canonical integer form. Every variable is assumed nonnegative, which is
/// sound wherever the driver calls this (see cooper_eliminate).
std::variant<bool, LinearAtom> normalize(LinearAtom a)
{
    if (a.rel == Relation::Le) {
        a.rel = Relation::Lt;
        a.form.constant -= 1;
    }
    if (a.rel == Relation::Ne || a.rel == Relation::NotDiv) {
        auto n = normalize(negated(a));
        if (std::holds_alternative<bool>(n))
            return ! std::get<bool>(n);
        return negated(std::get<LinearAtom>(n));
    }
    if (a.form.is_constant())
        return skolem::eval_ground(a);

    Integer c = as_integer(a.form.constant);
    if (a.rel == Relation::Div) {
        const Integer d = a.modulus;
        LinearForm reduced;
        for (const auto& [v, k] : a.form.coeffs) {
            Integer r = mod_floor(as_integer(k), d);
            if (r != 0)
                reduced.coeffs.emplace(v, Rational(r));
        }
        c = mod_floor(c, d);
        if (reduced.coeffs.empty())
            return c == 0;
        Integer g = gcd(d, gcd(coefficient_gcd(reduced), c));
        a.modulus = d / g;
        if (a.modulus == 1)
            return true;
        a.form = reduced.scaled(Rational(1, g));
        a.form.constant = Rational(c / g);
        return a;
    }

    Integer g = coefficient_gcd(a.form);
    if (a.rel == Relation::Lt) {
        // g*M + c < 0  <=>  M <= floor((-c - 1) / g)
        Integer bound = floor_div(-c - 1, g);
        a.form = a.form.scaled(Rational(1, g));
        a.form.constant = Rational(-bound - 1);
    }
    else {
        if (c % g != 0)
            return false;
        Rational scale(1, g);
        if (a.form.coeffs.begin()->second < 0)
            scale = -scale;
        a.form = a.form.scaled(scale);
    }

    bool all_nonneg = true, all_nonpos = true;
    for (const auto& [v, k] : a.form.coeffs) {
        all_nonneg = all_nonneg && k > 0;
        all_nonpos = all_nonpos && k < 0;
    }
    const Rational& k0 = a.form.constant;
    if (a.rel == Relation::Lt) {
        if (all_nonneg && k0 >= 0)
            return false;
        if (all_nonpos && k0 < 0)
            return true;
    }
    else if ((all_nonneg && k0 > 0) || (all_nonpos && k0 < 0))
        return false;
    return a;
}

Term side_term(const LinearForm& f) { return to_term(f); }

class CooperProcedure {
public:
    using Literal = LinearAtom;

    Dnf<Literal> literal(const Formula& f) const
    {
        const bool negative = f.kind() == Formula::Kind::Not;
        LinearAtom a = atom_of(negative ? f.lhs() : f);
        if (negative)
            a = negated(a);
        return single(normalize(a));
    }

    Dnf<Literal> eliminate(const std::string& x, std::vector<Literal> lits, std::string& method) const
    {
        // Relativize to the naturals: x >= 0  <=>  -x - 1 < 0. Not normalized,
        // since normalization assumes exactly this.
        LinearAtom nonneg;
        nonneg.rel = Relation::Lt;
        nonneg.form.coeffs.emplace(x, -1);
        nonneg.form.constant = -1;
        lits.push_back(nonneg);

        Integer l = 1;
        for (const auto& a : lits)
            l = lcm(l, abs(as_integer(a.form.coeff(x))));
        for (auto& a : lits) {
            Integer c = as_integer(a.form.coeff(x));
            Integer m = l / abs(c);
            a.form = a.form.scaled(Rational(m));
            if (a.rel == Relation::Div || a.rel == Relation::NotDiv)
                a.modulus *= m;
            a.form.coeffs[x] = c > 0 ? 1 : -1;
        }
        if (l > 1) {
            LinearAtom div;
            div.rel = Relation::Div;
            div.modulus = l;
            div.form = LinearForm::of_variable(x);
            lits.push_back(div);
        }

        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (lits[i].rel != Relation::Eq)
                continue;
            // s*x + r = 0 with s = +-1  =>  x = -s*r
            const Rational s = lits[i].form.coeff(x);
            LinearForm value = lits[i].form.without(x).scaled(-s);
            method = "cooper-equality";
            std::vector<Literal> others;
            for (std::size_t j = 0; j < lits.size(); ++j)
                if (j != i)
                    others.push_back(lits[j]);
            Dnf<Literal> out;
            push_substituted(out, others, x, value);
            return out;
        }

        method = "cooper";
        Integer delta = 1;
        std::vector<LinearForm> boundary;
        std::set<std::string> seen;
        auto add_point = [&](LinearForm b) {
            LinearAtom probe{Relation::Eq, b, 0};
            if (seen.insert(atom_key(probe)).second)
                boundary.push_back(std::move(b));
        };
        bool minus_inf_false = false;
        for (const auto& a : lits) {
            const Rational s = a.form.coeff(x);
            switch (a.rel) {
            case Relation::Div:
            case Relation::NotDiv: delta = lcm(delta, a.modulus); break;
            case Relation::Lt:
                // Upper bounds hold at minus infinity; lower bounds -x + r < 0 mean x > r.
                if (s < 0) {
                    add_point(a.form.without(x));
                    minus_inf_false = true;
                }
                break;
            case Relation::Ne:
                // s*x + r != 0  <=>  x != -s*r
                add_point(a.form.without(x).scaled(-s));
                break;
            default: minus_inf_false = true; break;
            }
        }

        Dnf<Literal> out;
        for (Integer j = 1; j <= delta; ++j) {
            const LinearForm shift = LinearForm::of_constant(Rational(j));
            if (! minus_inf_false) {
                std::vector<Literal> kept;
                for (const auto& a : lits)
                    if (a.rel == Relation::Div || a.rel == Relation::NotDiv)
                        kept.push_back(a);
                push_substituted(out, kept, x, shift);
            }
            for (const auto& b : boundary)
                push_substituted(out, lits, x, b + shift);
        }
        return out;
    }

    Formula to_formula(const Literal& a) const
    {
        switch (a.rel) {
        case Relation::Div:
        case Relation::NotDiv: {
            Formula d = Formula::atom("divides", {Term::number(Rational(a.modulus)), side_term(a.form)});
            return a.rel == Relation::Div ? d : Formula::negate(d);
        }
        case Relation::Lt: {
            auto [pos, neg] = split_sides(a.form);
            return Formula::atom("<", {side_term(pos), side_term(neg)});
        }
        default: {
            auto [pos, neg] = split_sides(a.form);
            Formula e = Formula::atom("=", {side_term(pos), side_term(neg)});
            return a.rel == Relation::Eq ? e : Formula::negate(e);
        }
        }
    }

    std::string key(const Literal& a) const { return atom_key(a); }
    bool mentions(const Literal& a, const std::string& x) const { return a.form.mentions(x); }

private:
    static Dnf<Literal> single(const std::variant<bool, LinearAtom>& n)
    {
        if (std::holds_alternative<bool>(n))
            return std::get<bool>(n) ? dnf_true<Literal>() : Dnf<Literal>{};
        return {{std::get<LinearAtom>(n)}};
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

QeTrace cooper_qe(const Formula& f)
{
    detail::check_presburger_language(f);
    detail::CooperProcedure proc;
    return detail::QeDriver<detail::CooperProcedure>(proc).run(f);
}

bool presburger_decide(const Formula& sentence)
{
    detail::require_sentence(sentence, "presburger");
    QeTrace t = cooper_qe(sentence);
    return detail::eval_ground(t.output, detail::eval_presburger_atom);
}

}  // namespace skolem
