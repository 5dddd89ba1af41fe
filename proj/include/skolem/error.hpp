#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skolem {

/// Root of every error raised by the library. Callers that only need a
/// message catch this; the subclasses exist so tests and the CLI can tell
/// the failure modes apart.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& var) : Error("unbound variable '" + var + "'"), variable(var) {}
    std::string variable;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& sym) : Error("unknown symbol '" + sym + "'"), symbol(sym) {}
    std::string symbol;
};

/// Symbol outside the language of the selected theory.
class UnsupportedSymbol : public Error {
public:
    UnsupportedSymbol(const std::string& theory, const std::string& what) :
        Error("unsupported in theory " + theory + ": " + what)
    {
    }
};

class NonLinearTerm : public Error {
public:
    explicit NonLinearTerm(const std::string& term) : Error("non-linear term: " + term) {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string origin_, std::size_t line_, std::size_t column_, const std::string& msg) :
        Error(origin_ + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
        origin(std::move(origin_)),
        line(line_),
        column(column_),
        detail(msg)
    {
    }

    std::string origin;
    std::size_t line;
    std::size_t column;
    std::string detail;
};

}  // namespace skolem
