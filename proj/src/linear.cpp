#include <skolem/error.hpp>
#include <skolem/linear.hpp>
#include <skolem/syntax.hpp>

namespace skolem {

LinearForm LinearForm::of_constant(Rational c)
{
    LinearForm f;
    f.constant = std::move(c);
    return f;
}

LinearForm LinearForm::of_variable(const std::string& v)
{
    LinearForm f;
    f.coeffs.emplace(v, 1);
    return f;
}

Rational LinearForm::coeff(const std::string& v) const
{
    auto it = coeffs.find(v);
    return it == coeffs.end() ? Rational(0) : it->second;
}

LinearForm LinearForm::operator+(const LinearForm& other) const
{
    LinearForm out = *this;
    out.constant += other.constant;
    for (const auto& [v, c] : other.coeffs) {
        Rational& slot = out.coeffs[v];
        slot += c;
        if (slot == 0)
            out.coeffs.erase(v);
    }
    return out;
}

LinearForm LinearForm::operator-(const LinearForm& other) const { return *this + other.scaled(-1); }

LinearForm LinearForm::scaled(const Rational& k) const
{
    LinearForm out;
    if (k == 0)
        return out;
    out.constant = constant * k;
    for (const auto& [v, c] : coeffs)
        out.coeffs.emplace(v, c * k);
    return out;
}

LinearForm LinearForm::substituted(const std::string& v, const LinearForm& replacement) const
{
    auto it = coeffs.find(v);
    if (it == coeffs.end())
        return *this;
    Rational c = it->second;
    return without(v) + replacement.scaled(c);
}

LinearForm LinearForm::without(const std::string& v) const
{
    LinearForm out = *this;
    out.coeffs.erase(v);
    return out;
}

LinearForm linearize(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Variable: return LinearForm::of_variable(t.name());
    case Term::Kind::Number: return LinearForm::of_constant(t.value());
    case Term::Kind::Element: throw UnknownSymbol(print_term(t));
    case Term::Kind::Apply:
        if (t.name() == "+" && t.args().size() == 2)
            return linearize(t.args()[0]) + linearize(t.args()[1]);
        if (t.name() == "*" && t.args().size() == 2) {
            LinearForm a = linearize(t.args()[0]);
            LinearForm b = linearize(t.args()[1]);
            if (a.is_constant())
                return b.scaled(a.constant);
            if (b.is_constant())
                return a.scaled(b.constant);
            throw NonLinearTerm(print_term(t));
        }
        throw UnknownSymbol(t.name());
    }
    throw Error("unreachable term kind");
}

Term to_term(const LinearForm& form)
{
    std::vector<Term> parts;
    for (const auto& [v, c] : form.coeffs)
        parts.push_back(c == 1 ? Term::variable(v) : Term::apply("*", {Term::number(c), Term::variable(v)}));
    if (form.constant != 0 || parts.empty())
        parts.push_back(Term::number(form.constant));
    Term out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        out = Term::apply("+", {out, parts[i]});
    return out;
}

std::pair<LinearForm, LinearForm> split_sides(const LinearForm& form)
{
    LinearForm pos, neg;
    for (const auto& [v, c] : form.coeffs)
        (c > 0 ? pos : neg).coeffs.emplace(v, c > 0 ? c : Rational(-c));
    if (form.constant > 0)
        pos.constant = form.constant;
    else
        neg.constant = -form.constant;
    return {pos, neg};
}

bool eval_ground(const LinearAtom& atom)
{
    if (! atom.form.is_constant())
        throw Error("eval_ground: atom has variables");
    const Rational& c = atom.form.constant;
    switch (atom.rel) {
    case Relation::Lt: return c < 0;
    case Relation::Le: return c <= 0;
    case Relation::Eq: return c == 0;
    case Relation::Ne: return c != 0;
    case Relation::Div:
    case Relation::NotDiv: {
        if (! is_integral(c))
            throw Error("divisibility of a non-integer");
        bool divides = boost::multiprecision::numerator(c) % atom.modulus == 0;
        return atom.rel == Relation::Div ? divides : ! divides;
    }
    }
    return false;
}

LinearAtom negated(const LinearAtom& atom)
{
    LinearAtom out = atom;
    switch (atom.rel) {
    case Relation::Lt:
        out.rel = Relation::Le;
        out.form = atom.form.scaled(-1);
        break;
    case Relation::Le:
        out.rel = Relation::Lt;
        out.form = atom.form.scaled(-1);
        break;
    case Relation::Eq: out.rel = Relation::Ne; break;
    case Relation::Ne: out.rel = Relation::Eq; break;
    case Relation::Div: out.rel = Relation::NotDiv; break;
    case Relation::NotDiv: out.rel = Relation::Div; break;
    }
    return out;
}

std::string atom_key(const LinearAtom& atom)
{
    static const char* names[] = {"<", "<=", "=", "!=", "|", "!|"};
    std::string key = names[static_cast<int>(atom.rel)];
    if (atom.rel == Relation::Div || atom.rel == Relation::NotDiv)
        key += atom.modulus.str();
    key += ' ';
    for (const auto& [v, c] : atom.form.coeffs)
        key += to_string(c) + "*" + v + " ";
    key += to_string(atom.form.constant);
    return key;
}

}  // namespace skolem
