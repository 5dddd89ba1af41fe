#pragma once

#include <skolem/logic.hpp>
#include <skolem/skolemize.hpp>
#include <skolem/theory.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace skolem {

struct SynthesisOptions {
    /// Test hook: return the element one past the chosen index.
    bool sabotage = false;
    /// Re-scan indices below each witness and throw if one of them works.
    bool verify_minimality = false;
};

struct SkolemValue {
    DomainElement element = DomainElement::nat(0);
    /// Position of `element` in the theory's enumeration.
    std::uint64_t index = 0;
    /// False when the default element was returned because no witness exists.
    bool witness = false;
};

/// Skolem functions of one formula, each computed pointwise by deciding
/// whether a witness exists and then scanning the domain enumeration.
/// Immutable apart from an internal memo; safe to share across threads.
class SkolemEvaluator {
public:
    SkolemEvaluator(std::shared_ptr<const Theory> theory, Formula input, SynthesisOptions options = {});

    const Theory& theory() const { return *theory_; }
    const Formula& input() const { return input_; }
    const PrenexFormula& prenex() const { return prenex_; }
    const SkolemSystem& system() const { return system_; }
    const SynthesisOptions& options() const { return options_; }

    /// `args` must bind exactly decl.deps.
    SkolemValue evaluate(const SkolemDecl& decl, const Valuation& args) const;
    /// Looks the symbol up by name; `args` are in dependency order.
    SkolemValue evaluate(const std::string& symbol, const std::vector<DomainElement>& args) const;

    /// The sentence Q_rest matrix with dependencies bound to `args`, the
    /// preceding existentials replaced by their computed values, and the
    /// target variable left free.
    Formula residual(const SkolemDecl& decl, const Valuation& args) const;

    /// Number of decide calls issued so far (memo hits issue none).
    std::uint64_t decide_calls() const;

private:
    struct Memo;

    std::shared_ptr<const Theory> theory_;
    Formula input_;
    PrenexFormula prenex_;
    SkolemSystem system_;
    SynthesisOptions options_;
    std::shared_ptr<Memo> memo_;
};

/// Checks the language, then prenex form and Skolemization.
SkolemEvaluator synthesize(std::shared_ptr<const Theory> theory, const Formula& f, SynthesisOptions options = {});

DomainElement skolem_eval(const SkolemEvaluator& ev, const SkolemDecl& decl, const Valuation& args);

/// Tuples over N^arity ordered by sum, then lexicographically.
class DiagonalTuples {
public:
    explicit DiagonalTuples(std::size_t arity) : current_(arity, 0) {}

    const std::vector<std::uint64_t>& current() const { return current_; }
    /// False once a 0-ary sequence is exhausted; infinite otherwise.
    bool next();

private:
    std::vector<std::uint64_t> current_;
    bool done_ = false;
};

struct CheckFailure {
    Valuation valuation;
    /// Skolem symbol whose guarantee failed, or empty for the whole formula.
    std::string symbol;
    bool lhs = false;
    bool rhs = false;
};

struct CheckReport {
    std::uint64_t checked = 0;
    bool exhaustive = false;
    std::vector<CheckFailure> failures;

    bool passed() const { return failures.empty(); }
};

/// Samples valuations of the free and universal variables (all of them for
/// a finite theory, else the first `budget` diagonal tuples). At each one,
/// every decl must satisfy: exists a. chi(a) holds iff chi(F_a(args)) holds,
/// and the Skolemized matrix must hold wherever the input formula does.
/// A finite theory additionally compares the input with its Skolemized form
/// for every valuation of the free variables.
CheckReport check_equiv(const SkolemEvaluator& ev, std::uint64_t budget);

}  // namespace skolem
