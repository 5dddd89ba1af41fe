#pragma once

#include <skolem/logic.hpp>

#include <string>
#include <string_view>

namespace skolem {

struct SourceText {
    std::string content;
    std::string origin = "<input>";
};

/// Reads a whole file; "-" reads stdin. Throws Error when unreadable.
SourceText read_source(const std::string& path);

/// S-expression formula syntax:
///
///   f ::= true | false | (not f) | (and f f...) | (or f f...) | (implies f f) | (iff f f)
///       | (exists (v...) f) | (forall (v...) f) | (p t...) | p
///   t ::= v | integer | p/q | #k | (+ t t) | (* k t) | (g t...)
///
/// Multi-variable binders and n-ary and/or desugar left to right. A symbol
/// must be used with one arity throughout. Built-ins: `<`, `=`, `divides`
/// (first argument a positive integer literal), `+`, `*` (first argument a
/// numeric literal).
Formula parse_formula(const SourceText& src);
Formula parse_formula(std::string_view text);

std::string print_term(const Term& t);
/// Canonical fully parenthesized form; parse_formula inverts it structurally.
std::string print_formula(const Formula& f);

/// (structure (size n) (pred P (t...)...) (fun g ((args...) val)...))
FiniteStructure parse_structure(const SourceText& src);
FiniteStructure parse_structure(std::string_view text);
std::string print_structure(const FiniteStructure& s);

}  // namespace skolem
