#pragma once

#include <skolem/logic.hpp>

#include <functional>
#include <string>

namespace skolem::detail {

void check_dlo_language(const Formula& f);
void check_lra_language(const Formula& f);
void check_presburger_language(const Formula& f);
void check_finite_language(const FiniteStructure& s, const Formula& f);

/// Throws Error naming the free variables, if any.
void require_sentence(const Formula& f, const std::string& who);

/// Truth of a quantifier-free, variable-free formula given an atom evaluator.
bool eval_ground(const Formula& f, const std::function<bool(const Formula&)>& atom);

bool eval_dlo_atom(const Formula& atom);
bool eval_presburger_atom(const Formula& atom);
bool eval_lra_atom(const Formula& atom);

}  // namespace skolem::detail
