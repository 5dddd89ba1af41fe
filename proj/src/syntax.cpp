#include <skolem/error.hpp>
#include <skolem/syntax.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace skolem {

SourceText read_source(const std::string& path)
{
    if (path == "-") {
        std::string content{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
        return {std::move(content), "<stdin>"};
    }
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error("cannot read " + path);
    std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return {std::move(content), path};
}

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Reader {
public:
    explicit Reader(const SourceText& src) : src_(src) {}

    SExpr read_single()
    {
        skip_space();
        if (at_end())
            fail("empty input");
        SExpr e = read();
        skip_space();
        if (! at_end())
            fail("trailing input after expression");
        return e;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(src_.origin, line_, column_, msg); }

private:
    bool at_end() const { return pos_ >= src_.content.size(); }
    char peek() const { return src_.content[pos_]; }

    void advance()
    {
        if (peek() == '\n') {
            ++line_;
            column_ = 1;
        }
        else
            ++column_;
        ++pos_;
    }

    void skip_space()
    {
        while (! at_end()) {
            char c = peek();
            if (c == ';')
                while (! at_end() && peek() != '\n')
                    advance();
            else if (std::isspace(static_cast<unsigned char>(c)))
                advance();
            else
                break;
        }
    }

    SExpr read()
    {
        SExpr e;
        e.line = line_;
        e.column = column_;
        char c = peek();
        if (c == ')')
            fail("unexpected ')'");
        if (c == '(') {
            advance();
            e.is_list = true;
            for (;;) {
                skip_space();
                if (at_end())
                    throw ParseError(src_.origin, e.line, e.column, "unclosed '('");
                if (peek() == ')') {
                    advance();
                    break;
                }
                e.items.push_back(read());
            }
            return e;
        }
        while (! at_end()) {
            c = peek();
            if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
                break;
            e.atom.push_back(c);
            advance();
        }
        return e;
    }

    const SourceText& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

bool is_keyword(const std::string& s)
{
    static const std::set<std::string> keywords = {
        "not", "and", "or", "implies", "iff", "exists", "forall", "true", "false", "structure", "size", "pred", "fun"};
    return keywords.count(s) != 0;
}

bool looks_numeric(const std::string& s)
{
    std::size_t i = (! s.empty() && s[0] == '-') ? 1 : 0;
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

class FormulaBuilder {
public:
    explicit FormulaBuilder(std::string origin) : origin_(std::move(origin)) {}

    Formula formula(const SExpr& e)
    {
        if (! e.is_list) {
            if (e.atom == "true")
                return Formula::truth();
            if (e.atom == "false")
                return Formula::falsity();
            check_identifier(e);
            declare(e, e.atom, SymbolKind::Predicate, 0);
            return Formula::atom(e.atom, {});
        }
        if (e.items.empty())
            fail(e, "empty list in formula position");
        const SExpr& head = e.items[0];
        if (head.is_list)
            fail(head, "expected operator");
        const std::string& op = head.atom;
        const std::size_t argc = e.items.size() - 1;

        if (op == "not") {
            expect_arity(e, op, argc, 1);
            return Formula::negate(formula(e.items[1]));
        }
        if (op == "and" || op == "or") {
            if (argc < 2)
                throw ParseError(origin_, e.line, e.column, "arity mismatch: '" + op + "' expects at least 2 arguments");
            Formula acc = formula(e.items[1]);
            for (std::size_t i = 2; i < e.items.size(); ++i) {
                Formula next = formula(e.items[i]);
                acc = op == "and" ? Formula::conj(acc, next) : Formula::disj(acc, next);
            }
            return acc;
        }
        if (op == "implies" || op == "iff") {
            expect_arity(e, op, argc, 2);
            Formula a = formula(e.items[1]);
            Formula b = formula(e.items[2]);
            return op == "implies" ? Formula::implies(a, b) : Formula::iff(a, b);
        }
        if (op == "exists" || op == "forall") {
            expect_arity(e, op, argc, 2);
            const SExpr& binders = e.items[1];
            if (! binders.is_list || binders.items.empty())
                fail(binders, "expected nonempty variable list");
            std::vector<std::string> vars;
            for (const auto& b : binders.items) {
                if (b.is_list)
                    fail(b, "expected variable");
                check_identifier(b);
                declare(b, b.atom, SymbolKind::Variable, 0);
                vars.push_back(b.atom);
            }
            Formula body = formula(e.items[2]);
            for (auto it = vars.rbegin(); it != vars.rend(); ++it)
                body = op == "exists" ? Formula::exists(*it, body) : Formula::forall(*it, body);
            return body;
        }
        if (op == "true" || op == "false")
            fail(head, "'" + op + "' takes no arguments");
        if (op == "<" || op == "=") {
            expect_arity(e, op, argc, 2);
            return Formula::atom(op, {term(e.items[1]), term(e.items[2])});
        }
        if (op == "divides") {
            expect_arity(e, op, argc, 2);
            Term k = term(e.items[1]);
            if (! k.is_number() || ! is_integral(k.value()) || k.value() <= 0)
                fail(e.items[1], "divides expects a positive integer literal");
            return Formula::atom(op, {k, term(e.items[2])});
        }
        if (op == "+" || op == "*")
            fail(head, "unknown operator '" + op + "' in formula position");
        check_identifier(head);
        declare(head, op, SymbolKind::Predicate, argc);
        std::vector<Term> args;
        for (std::size_t i = 1; i < e.items.size(); ++i)
            args.push_back(term(e.items[i]));
        return Formula::atom(op, std::move(args));
    }

    Term term(const SExpr& e)
    {
        if (! e.is_list) {
            if (looks_numeric(e.atom)) {
                auto r = parse_rational(e.atom);
                if (! r)
                    fail(e, "malformed number '" + e.atom + "'");
                return Term::number(*r);
            }
            if (! e.atom.empty() && e.atom[0] == '#') {
                const std::string digits = e.atom.substr(1);
                if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                    fail(e, "malformed element literal '" + e.atom + "'");
                return Term::element(std::stoull(digits));
            }
            check_identifier(e);
            declare(e, e.atom, SymbolKind::Variable, 0);
            return Term::variable(e.atom);
        }
        if (e.items.empty())
            fail(e, "empty list in term position");
        const SExpr& head = e.items[0];
        if (head.is_list)
            fail(head, "expected function symbol");
        const std::string& op = head.atom;
        const std::size_t argc = e.items.size() - 1;
        if (op == "+") {
            expect_arity(e, op, argc, 2);
            return Term::apply("+", {term(e.items[1]), term(e.items[2])});
        }
        if (op == "*") {
            expect_arity(e, op, argc, 2);
            Term k = term(e.items[1]);
            if (! k.is_number())
                fail(e.items[1], "'*' expects a numeric literal as its first argument");
            return Term::apply("*", {k, term(e.items[2])});
        }
        if (op == "<" || op == "=" || op == "divides")
            fail(head, "predicate '" + op + "' in term position");
        check_identifier(head);
        declare(head, op, SymbolKind::Function, argc);
        std::vector<Term> args;
        for (std::size_t i = 1; i < e.items.size(); ++i)
            args.push_back(term(e.items[i]));
        return Term::apply(op, std::move(args));
    }

private:
    [[noreturn]] void fail(const SExpr& at, const std::string& msg) const
    {
        throw ParseError(origin_, at.line, at.column, msg);
    }

    void expect_arity(const SExpr& e, const std::string& op, std::size_t got, std::size_t want) const
    {
        if (got != want)
            fail(e, "arity mismatch: '" + op + "' expects " + std::to_string(want) + " argument(s), got "
                    + std::to_string(got));
    }

    void check_identifier(const SExpr& e) const
    {
        if (e.atom.empty())
            fail(e, "empty identifier");
        if (is_keyword(e.atom))
            fail(e, "unknown operator or misplaced keyword '" + e.atom + "'");
        if (e.atom[0] == '#' || looks_numeric(e.atom))
            fail(e, "expected identifier, got '" + e.atom + "'");
    }

    void declare(const SExpr& at, const std::string& name, SymbolKind kind, std::size_t arity)
    {
        auto [it, inserted] = symbols_.emplace(name, Symbol{name, kind, arity});
        if (inserted)
            return;
        if (it->second.kind != kind) {
            if (it->second.kind == SymbolKind::Variable || kind == SymbolKind::Variable)
                fail(at, "'" + name + "' used both as a variable and as a symbol");
            fail(at, "'" + name + "' used both as a predicate and as a function");
        }
        if (it->second.arity != arity)
            fail(at, "arity mismatch: '" + name + "' used with arity " + std::to_string(arity) + ", earlier with "
                         + std::to_string(it->second.arity));
    }

    std::string origin_;
    std::map<std::string, Symbol> symbols_;
};

void print_term_to(std::ostringstream& out, const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Variable: out << t.name(); break;
    case Term::Kind::Number: out << to_string(t.value()); break;
    case Term::Kind::Element: out << '#' << t.element_index(); break;
    case Term::Kind::Apply:
        out << '(' << t.name();
        for (const auto& a : t.args()) {
            out << ' ';
            print_term_to(out, a);
        }
        out << ')';
        break;
    }
}

void print_formula_to(std::ostringstream& out, const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True: out << "true"; return;
    case Formula::Kind::False: out << "false"; return;
    case Formula::Kind::Atom:
        if (f.args().empty()) {
            out << f.name();
            return;
        }
        out << '(' << f.name();
        for (const auto& a : f.args()) {
            out << ' ';
            print_term_to(out, a);
        }
        out << ')';
        return;
    case Formula::Kind::Not:
        out << "(not ";
        print_formula_to(out, f.lhs());
        out << ')';
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        out << (f.kind() == Formula::Kind::Exists ? "(exists (" : "(forall (") << f.name() << ") ";
        print_formula_to(out, f.body());
        out << ')';
        return;
    default: break;
    }
    const char* op = f.kind() == Formula::Kind::And   ? "and"
                     : f.kind() == Formula::Kind::Or  ? "or"
                     : f.kind() == Formula::Kind::Implies ? "implies"
                                                      : "iff";
    out << '(' << op << ' ';
    print_formula_to(out, f.lhs());
    out << ' ';
    print_formula_to(out, f.rhs());
    out << ')';
}

[[noreturn]] void fail_at(const std::string& origin, const SExpr& at, const std::string& msg)
{
    throw ParseError(origin, at.line, at.column, msg);
}

}  // namespace

Formula parse_formula(const SourceText& src)
{
    Reader reader(src);
    SExpr e = reader.read_single();
    FormulaBuilder builder(src.origin);
    return builder.formula(e);
}

Formula parse_formula(std::string_view text) { return parse_formula(SourceText{std::string(text), "<input>"}); }

std::string print_term(const Term& t)
{
    std::ostringstream out;
    print_term_to(out, t);
    return out.str();
}

std::string print_formula(const Formula& f)
{
    std::ostringstream out;
    print_formula_to(out, f);
    return out.str();
}

FiniteStructure parse_structure(const SourceText& src)
{
    Reader reader(src);
    SExpr e = reader.read_single();
    auto fail = [&](const SExpr& at, const std::string& msg) { fail_at(src.origin, at, msg); };
    auto index = [&](const SExpr& at) -> std::size_t {
        if (at.is_list || at.atom.empty() || at.atom.find_first_not_of("0123456789") != std::string::npos)
            fail_at(src.origin, at, "expected a nonnegative integer");
        return std::stoull(at.atom);
    };
    auto tuple = [&](const SExpr& at) -> Tuple {
        if (! at.is_list)
            fail(at, "expected a tuple");
        Tuple t;
        for (const auto& c : at.items)
            t.push_back(index(c));
        return t;
    };

    if (! e.is_list || e.items.empty() || e.items[0].is_list || e.items[0].atom != "structure")
        fail(e, "expected (structure ...)");
    FiniteStructure s;
    bool have_size = false;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const SExpr& clause = e.items[i];
        if (! clause.is_list || clause.items.empty() || clause.items[0].is_list)
            fail(clause, "expected (size ...), (pred ...) or (fun ...)");
        const std::string& kw = clause.items[0].atom;
        if (kw == "size") {
            if (clause.items.size() != 2 || have_size)
                fail(clause, "expected a single (size n)");
            s.universe_size = index(clause.items[1]);
            if (s.universe_size == 0)
                fail(clause, "universe size must be positive");
            have_size = true;
        }
        else if (kw == "pred" || kw == "fun") {
            if (! have_size)
                fail(clause, "(size n) must precede tables");
            if (clause.items.size() < 2 || clause.items[1].is_list || clause.items[1].atom.empty()
                || is_keyword(clause.items[1].atom) || clause.items[1].atom == "=")
                fail(clause, "expected symbol name");
            const std::string& name = clause.items[1].atom;
            if (s.predicates.count(name) || s.functions.count(name))
                fail(clause.items[1], "duplicate table for '" + name + "'");
            if (kw == "pred") {
                PredicateTable table;
                for (std::size_t j = 2; j < clause.items.size(); ++j) {
                    Tuple t = tuple(clause.items[j]);
                    if (table.arity && *table.arity != t.size())
                        fail(clause.items[j], "arity mismatch in table for '" + name + "'");
                    table.arity = t.size();
                    for (auto c : t)
                        if (c >= s.universe_size)
                            fail(clause.items[j], "tuple out of range");
                    table.tuples.insert(t);
                }
                s.predicates.emplace(name, std::move(table));
            }
            else {
                FunctionTable table;
                bool have_arity = false;
                for (std::size_t j = 2; j < clause.items.size(); ++j) {
                    const SExpr& row = clause.items[j];
                    if (! row.is_list || row.items.size() != 2)
                        fail(row, "expected ((args...) value)");
                    Tuple args = tuple(row.items[0]);
                    std::size_t value = index(row.items[1]);
                    if (have_arity && table.arity != args.size())
                        fail(row, "arity mismatch in table for '" + name + "'");
                    table.arity = args.size();
                    have_arity = true;
                    for (auto c : args)
                        if (c >= s.universe_size)
                            fail(row, "tuple out of range");
                    if (value >= s.universe_size)
                        fail(row.items[1], "tuple out of range");
                    if (! table.rows.emplace(args, value).second)
                        fail(row, "duplicate row in table for '" + name + "'");
                }
                if (! have_arity)
                    fail(clause, "function table for '" + name + "' has no rows");
                std::size_t expected = 1;
                for (std::size_t k = 0; k < table.arity; ++k)
                    expected *= s.universe_size;
                if (table.rows.size() != expected)
                    fail(clause, "partial function table for '" + name + "'");
                s.functions.emplace(name, std::move(table));
            }
        }
        else
            fail(clause, "unknown structure clause '" + kw + "'");
    }
    if (! have_size)
        fail(e, "missing (size n)");
    return s;
}

FiniteStructure parse_structure(std::string_view text)
{
    return parse_structure(SourceText{std::string(text), "<input>"});
}

std::string print_structure(const FiniteStructure& s)
{
    std::ostringstream out;
    auto tuple = [&](const Tuple& t) {
        out << '(';
        for (std::size_t i = 0; i < t.size(); ++i)
            out << (i ? " " : "") << t[i];
        out << ')';
    };
    out << "(structure (size " << s.universe_size << ")";
    for (const auto& [name, table] : s.predicates) {
        out << " (pred " << name;
        for (const auto& t : table.tuples) {
            out << ' ';
            tuple(t);
        }
        out << ')';
    }
    for (const auto& [name, table] : s.functions) {
        out << " (fun " << name;
        for (const auto& [args, value] : table.rows) {
            out << " (";
            tuple(args);
            out << ' ' << value << ')';
        }
        out << ')';
    }
    out << ')';
    return out.str();
}

}  // namespace skolem
