#pragma once

#include <skolem/logic.hpp>

#include <map>
#include <string>
#include <utility>

namespace skolem {

/// sum(coeffs[v] * v) + constant, with no zero coefficients stored.
struct LinearForm {
    std::map<std::string, Rational> coeffs;
    Rational constant;

    static LinearForm of_constant(Rational c);
    static LinearForm of_variable(const std::string& v);

    bool is_constant() const { return coeffs.empty(); }
    Rational coeff(const std::string& v) const;
    bool mentions(const std::string& v) const { return coeffs.count(v) != 0; }

    LinearForm operator+(const LinearForm& other) const;
    LinearForm operator-(const LinearForm& other) const;
    LinearForm scaled(const Rational& k) const;
    /// Replaces `v` by `replacement`.
    LinearForm substituted(const std::string& v, const LinearForm& replacement) const;
    /// Drops `v`'s term.
    LinearForm without(const std::string& v) const;

    bool operator==(const LinearForm&) const = default;
};

/// Accepts variables, numeric literals, `+` and `*` with a literal factor.
LinearForm linearize(const Term& t);

/// Canonical term: variables in name order, coefficient-1 terms bare, then the constant.
Term to_term(const LinearForm& form);
/// Splits form into (P, N) with form = P - N and neither side carrying a negative coefficient.
std::pair<LinearForm, LinearForm> split_sides(const LinearForm& form);

enum class Relation { Lt, Le, Eq, Ne, Div, NotDiv };

/// `form rel 0`, or `modulus | form` for the divisibility relations.
struct LinearAtom {
    Relation rel = Relation::Lt;
    LinearForm form;
    Integer modulus = 0;

    bool operator==(const LinearAtom&) const = default;
};

/// Exact truth of an atom without variables.
bool eval_ground(const LinearAtom& atom);
LinearAtom negated(const LinearAtom& atom);
std::string atom_key(const LinearAtom& atom);

}  // namespace skolem
