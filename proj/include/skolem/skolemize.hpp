#pragma once

#include <skolem/logic.hpp>

#include <string>
#include <vector>

namespace skolem {

/// One Skolem symbol F_a (or constant C_a) standing in for existential `a`.
struct SkolemDecl {
    Symbol symbol;
    std::string target_var;
    /// Free variables of the input followed by the universals left of `a`.
    std::vector<std::string> deps;
    /// Existentials preceding `a` in the prefix, in order.
    std::vector<std::string> left_existentials;
    /// Position of `a` in the input prefix.
    std::size_t prefix_position = 0;

    bool is_constant() const { return deps.empty(); }
    /// The replacement term F_a(deps...).
    Term application() const;

    bool operator==(const SkolemDecl&) const = default;
};

struct SkolemSystem {
    std::vector<SkolemDecl> decls;
    /// All-universal prefix over the Skolemized matrix.
    PrenexFormula skolemized;

    const SkolemDecl* find(const std::string& symbol_name) const;
    bool operator==(const SkolemSystem&) const = default;
};

/// Replaces each existential with its Skolem term and drops the existential
/// quantifiers. Expects a rectified prenex formula.
SkolemSystem skolemize(const PrenexFormula& p);

/// Same system with the matrix rewritten to CNF.
SkolemSystem to_skolem_normal_form(const SkolemSystem& s);

}  // namespace skolem
