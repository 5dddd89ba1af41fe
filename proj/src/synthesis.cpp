#include <skolem/error.hpp>
#include <skolem/synthesis.hpp>
#include <skolem/transform.hpp>

#include <atomic>
#include <map>
#include <mutex>

namespace skolem {

struct SkolemEvaluator::Memo {
    std::mutex mutex;
    std::map<std::string, SkolemValue> values;
    std::atomic<std::uint64_t> decide_calls{0};
};

namespace {

std::string memo_key(const SkolemDecl& decl, const Valuation& args)
{
    std::string key = decl.symbol.name;
    for (const auto& d : decl.deps)
        key += " " + args.at(d).to_string();
    return key;
}

Valuation restrict(const Valuation& v, const std::vector<std::string>& vars)
{
    Valuation out;
    for (const auto& x : vars)
        out.bind(x, v.at(x));
    return out;
}

}  // namespace

SkolemEvaluator::SkolemEvaluator(std::shared_ptr<const Theory> theory, Formula input, SynthesisOptions options) :
    theory_(std::move(theory)),
    input_(std::move(input)),
    options_(options),
    memo_(std::make_shared<Memo>())
{
    theory_->check_language(input_);
    prenex_ = to_prenex(input_);
    system_ = skolemize(prenex_);
}

std::uint64_t SkolemEvaluator::decide_calls() const { return memo_->decide_calls.load(); }

Formula SkolemEvaluator::residual(const SkolemDecl& decl, const Valuation& args) const
{
    if (args.size() != decl.deps.size())
        throw ArityError(decl.symbol.name + " expects " + std::to_string(decl.deps.size()) + " argument(s), got "
            + std::to_string(args.size()));
    std::map<std::string, Term> bind;
    for (const auto& d : decl.deps)
        bind.emplace(d, theory_->element_term(args.at(d)));
    for (const auto& e : decl.left_existentials) {
        const SkolemDecl* outer = nullptr;
        for (const auto& candidate : system_.decls)
            if (candidate.target_var == e)
                outer = &candidate;
        if (! outer)
            throw Error("internal: no Skolem symbol for existential '" + e + "'");
        bind.emplace(e, theory_->element_term(evaluate(*outer, restrict(args, outer->deps)).element));
    }
    return substitute(prenex_.to_formula(decl.prefix_position + 1), bind);
}

SkolemValue SkolemEvaluator::evaluate(const SkolemDecl& decl, const Valuation& args) const
{
    for (const auto& d : decl.deps)
        if (! args.contains(d))
            throw ArityError(decl.symbol.name + ": missing argument '" + d + "'");
    const std::string key = memo_key(decl, args);
    {
        std::lock_guard lock(memo_->mutex);
        if (auto it = memo_->values.find(key); it != memo_->values.end())
            return it->second;
    }

    const Formula chi = residual(decl, args);
    const std::string& a = decl.target_var;
    auto decide = [&](const Formula& f) {
        ++memo_->decide_calls;
        return theory_->decide(f);
    };
    auto instance = [&](std::uint64_t k) { return substitute(chi, a, theory_->element_term(theory_->enumerate(k))); };

    SkolemValue out;
    if (decide(Formula::exists(a, chi))) {
        const auto size = theory_->domain_size();
        std::uint64_t k = 0;
        while (! decide(instance(k))) {
            ++k;
            if (size && k >= *size)
                throw Error("internal: " + decl.symbol.name + " has a witness but none was enumerated");
        }
        if (options_.verify_minimality)
            for (std::uint64_t j = 0; j < k; ++j)
                if (decide(instance(j)))
                    throw Error("internal: witness index " + std::to_string(k) + " is not minimal");
        out.index = k;
        out.witness = true;
    }
    if (options_.sabotage) {
        out.index += 1;
        if (const auto size = theory_->domain_size())
            out.index %= *size;
    }
    out.element = theory_->enumerate(out.index);

    std::lock_guard lock(memo_->mutex);
    memo_->values.emplace(key, out);
    return out;
}

SkolemValue SkolemEvaluator::evaluate(const std::string& symbol, const std::vector<DomainElement>& args) const
{
    const SkolemDecl* decl = system_.find(symbol);
    if (! decl)
        throw UnknownSymbol(symbol);
    if (args.size() != decl->deps.size())
        throw ArityError(symbol + " expects " + std::to_string(decl->deps.size()) + " argument(s), got "
            + std::to_string(args.size()));
    Valuation v;
    for (std::size_t i = 0; i < args.size(); ++i)
        v.bind(decl->deps[i], args[i]);
    return evaluate(*decl, v);
}

SkolemEvaluator synthesize(std::shared_ptr<const Theory> theory, const Formula& f, SynthesisOptions options)
{
    return SkolemEvaluator(std::move(theory), f, options);
}

DomainElement skolem_eval(const SkolemEvaluator& ev, const SkolemDecl& decl, const Valuation& args)
{
    return ev.evaluate(decl, args).element;
}

bool DiagonalTuples::next()
{
    auto& t = current_;
    if (t.empty()) {
        done_ = true;
        return false;
    }
    if (done_)
        return false;
    const std::size_t m = t.size();
    // Rightmost position with a positive tail after it.
    std::uint64_t tail = t[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        if (tail > 0) {
            t[i] += 1;
            for (std::size_t j = i + 1; j < m; ++j)
                t[j] = 0;
            t[m - 1] = tail - 1;
            return true;
        }
        tail += t[i];
    }
    // Lexicographically last tuple of this sum: move to the next sum.
    const std::uint64_t sum = tail;
    std::fill(t.begin(), t.end(), 0);
    t[m - 1] = sum + 1;
    return true;
}

namespace {

class Checker {
public:
    explicit Checker(const SkolemEvaluator& ev) : ev_(ev), th_(ev.theory())
    {
        vars_ = ev.prenex().free_vars;
        for (const auto& q : ev.prenex().prefix)
            if (q.quantifier == Quantifier::Forall)
                vars_.push_back(q.var);
    }

    const std::vector<std::string>& vars() const { return vars_; }

    /// Checks one valuation. Returns the truth of the Skolemized matrix.
    bool check(const Valuation& sigma, CheckReport& report)
    {
        ++report.checked;
        std::map<std::string, Term> bind;
        for (const auto& [x, value] : sigma.bindings())
            bind.emplace(x, th_.element_term(value));

        for (const auto& decl : ev_.system().decls) {
            const Valuation args = restrict(sigma, decl.deps);
            const Formula chi = ev_.residual(decl, args);
            const SkolemValue value = ev_.evaluate(decl, args);
            const bool lhs = th_.decide(Formula::exists(decl.target_var, chi));
            const bool rhs = th_.decide(substitute(chi, decl.target_var, th_.element_term(value.element)));
            if (lhs != rhs)
                report.failures.push_back({sigma, decl.symbol.name, lhs, rhs});
            bind.emplace(decl.target_var, th_.element_term(value.element));
        }

        const bool matrix = th_.decide(substitute(ev_.prenex().matrix, bind));
        if (input_holds(sigma) && ! matrix)
            report.failures.push_back({sigma, "", true, false});
        return matrix;
    }

    bool input_holds(const Valuation& sigma)
    {
        const Valuation x = restrict(sigma, ev_.prenex().free_vars);
        const std::string key = key_of(x);
        if (auto it = input_truth_.find(key); it != input_truth_.end())
            return it->second;
        std::map<std::string, Term> bind;
        for (const auto& [v, value] : x.bindings())
            bind.emplace(v, th_.element_term(value));
        const bool truth = th_.decide(substitute(ev_.prenex().to_formula(), bind));
        input_truth_.emplace(key, truth);
        return truth;
    }

    static std::string key_of(const Valuation& v)
    {
        std::string key;
        for (const auto& [x, value] : v.bindings())
            key += x + "=" + value.to_string() + " ";
        return key;
    }

private:
    const SkolemEvaluator& ev_;
    const Theory& th_;
    std::vector<std::string> vars_;
    std::map<std::string, bool> input_truth_;
};

}  // namespace

CheckReport check_equiv(const SkolemEvaluator& ev, std::uint64_t budget)
{
    const Theory& th = ev.theory();
    Checker checker(ev);
    const auto& vars = checker.vars();
    CheckReport report;

    if (const auto size = th.domain_size()) {
        report.exhaustive = true;
        // Free variables come first in `vars`, so each free-variable block
        // is contiguous in this odometer order.
        std::vector<std::uint64_t> t(vars.size(), 0);
        std::map<std::string, bool> skolemized_truth;
        std::map<std::string, Valuation> representative;
        for (;;) {
            Valuation sigma;
            for (std::size_t i = 0; i < vars.size(); ++i)
                sigma.bind(vars[i], th.enumerate(t[i]));
            const bool matrix = checker.check(sigma, report);
            const Valuation x = restrict(sigma, ev.prenex().free_vars);
            const std::string key = Checker::key_of(x);
            auto [it, fresh] = skolemized_truth.emplace(key, true);
            it->second = it->second && matrix;
            if (fresh)
                representative.emplace(key, x);

            std::size_t i = vars.size();
            while (i > 0 && ++t[i - 1] == *size)
                t[--i] = 0;
            if (i == 0)
                break;
        }
        for (const auto& [key, star] : skolemized_truth) {
            const Valuation& x = representative.at(key);
            const bool xi = checker.input_holds(x);
            if (xi != star)
                report.failures.push_back({x, "*", xi, star});
        }
        return report;
    }

    DiagonalTuples tuples(vars.size());
    for (std::uint64_t n = 0; n < budget; ++n) {
        Valuation sigma;
        for (std::size_t i = 0; i < vars.size(); ++i)
            sigma.bind(vars[i], th.enumerate(tuples.current()[i]));
        checker.check(sigma, report);
        if (! tuples.next())
            break;
    }
    return report;
}

}  // namespace skolem
