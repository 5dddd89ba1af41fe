#pragma once

#include <skolem/logic.hpp>

#include <set>
#include <string>

namespace skolem {

/// Hands out `base_k` names (k = 1, 2, ...) that avoid every reserved name.
class FreshNameSource {
public:
    FreshNameSource() = default;
    explicit FreshNameSource(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}

    void reserve(const std::string& name) { reserved_.insert(name); }
    bool is_reserved(const std::string& name) const { return reserved_.count(name) != 0; }
    /// Returns `base` itself when unreserved, else the first free `base_k`. The result is reserved.
    std::string claim(const std::string& base);
    /// Always suffixed.
    std::string fresh(const std::string& base);

private:
    std::set<std::string> reserved_;
};

/// Renames bound variables so that every quantifier binds a distinct
/// variable that is also distinct from the free variables.
Formula rectify(const Formula& f);

/// Eliminates implies/iff and pushes negation down to atoms.
Formula to_nnf(const Formula& f);

/// rectify, then NNF, then hoist quantifiers outward left to right.
PrenexFormula to_prenex(const Formula& f);

/// Conjunction of disjunctions of literals, by distribution.
Formula to_cnf_matrix(const Formula& matrix);
bool is_cnf(const Formula& f);
bool is_nnf(const Formula& f);

}  // namespace skolem
