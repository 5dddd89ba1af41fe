#include "cli.hpp"

#include <skolem/demos.hpp>
#include <skolem/error.hpp>
#include <skolem/skolemize.hpp>
#include <skolem/synthesis.hpp>
#include <skolem/syntax.hpp>
#include <skolem/theory.hpp>
#include <skolem/transform.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <ostream>

namespace skolem::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Config {
    std::string command;
    std::string theory;
    std::string input;
    std::string structure;
    std::string fn;
    std::string args;
    std::string x;
    std::string format = "text";
    bool cnf = false;
    bool trace = false;
    bool sabotage = false;
    std::uint64_t budget = 100;
    std::uint64_t fuel = 1000;
    std::size_t max_len = 10;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err)
{
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
    auto log = std::make_shared<spdlog::logger>("skolem-forge", sink);
    log->set_pattern("[%l] %v");
    const char* env = std::getenv("SKOLEM_FORGE_LOG");
    const std::string level = env ? env : "error";
    log->set_level(level == "debug" ? spdlog::level::debug
            : level == "info"       ? spdlog::level::info
                                    : spdlog::level::err);
    return log;
}

std::string join(const std::vector<std::string>& items, const std::string& sep)
{
    std::string out;
    for (const auto& s : items)
        out += (out.empty() ? "" : sep) + s;
    return out;
}

std::string signature_text(const SkolemDecl& d)
{
    return d.deps.empty() ? d.symbol.name : d.symbol.name + "(" + join(d.deps, ",") + ")";
}

Json decls_json(const std::vector<SkolemDecl>& decls)
{
    Json out = Json::array();
    for (const auto& d : decls)
        out.push_back({{"name", d.symbol.name}, {"target", d.target_var}, {"deps", d.deps}});
    return out;
}

class Runner {
public:
    Runner(Config cfg, std::ostream& out, std::ostream& err) :
        cfg_(std::move(cfg)), out_(out), err_(err), log_(make_logger(err))
    {
        doc_["command"] = cfg_.command;
        doc_["theory"] = cfg_.theory.empty() ? Json(nullptr) : Json(cfg_.theory);
        doc_["result"] = nullptr;
        doc_["decls"] = nullptr;
        doc_["report"] = nullptr;
    }

    int run()
    {
        int code = Success;
        const std::string& c = cfg_.command;
        if (c == "skolemize")
            code = skolemize_cmd();
        else if (c == "decide")
            code = decide_cmd();
        else if (c == "qe")
            code = qe_cmd();
        else if (c == "synth")
            code = synth_cmd();
        else if (c == "eval")
            code = eval_cmd();
        else if (c == "check")
            code = check_cmd();
        else if (c == "pcp")
            code = pcp_cmd();
        else
            code = dioph_cmd();
        if (cfg_.format == "json")
            out_ << doc_.dump(2) << "\n";
        else
            out_ << text_.str();
        return code;
    }

private:
    SourceText input() const
    {
        if (cfg_.input.empty())
            throw UsageError("'" + cfg_.command + "' needs --input");
        return read_source(cfg_.input);
    }

    Formula formula() const { return parse_formula(input()); }

    std::shared_ptr<const Theory> theory() const
    {
        if (cfg_.theory.empty())
            throw UsageError("'" + cfg_.command + "' needs --theory");
        const TheoryKind kind = parse_theory_kind(cfg_.theory);
        std::optional<FiniteStructure> s;
        if (kind == TheoryKind::Finite) {
            if (cfg_.structure.empty())
                throw UsageError("theory finite needs --structure");
            s = parse_structure(read_source(cfg_.structure));
        }
        log_->info("theory {}", cfg_.theory);
        return make_theory(kind, std::move(s));
    }

    SkolemEvaluator evaluator()
    {
        auto th = theory();
        Formula f = formula();
        SynthesisOptions opts;
        opts.sabotage = cfg_.sabotage;
        SkolemEvaluator ev = synthesize(th, f, opts);
        log_->info("{} Skolem symbol(s)", ev.system().decls.size());
        doc_["decls"] = decls_json(ev.system().decls);
        return ev;
    }

    int skolemize_cmd()
    {
        Formula f = formula();
        if (! cfg_.theory.empty())
            theory()->check_language(f);
        PrenexFormula p = to_prenex(f);
        SkolemSystem sys = skolemize(p);
        if (cfg_.cnf)
            sys = to_skolem_normal_form(sys);

        std::vector<std::string> prefix;
        for (const auto& q : sys.skolemized.prefix)
            prefix.push_back("forall " + q.var);
        const std::string matrix = print_formula(sys.skolemized.matrix);
        const std::string whole = print_formula(sys.skolemized.to_formula());

        if (! sys.skolemized.free_vars.empty())
            text_ << "free: " << join(sys.skolemized.free_vars, ", ") << "\n";
        text_ << "prefix: " << (prefix.empty() ? "(none)" : join(prefix, ", ")) << "\n";
        text_ << "matrix: " << matrix << "\n";
        text_ << "skolemized: " << whole << "\n";
        if (sys.decls.empty())
            text_ << "decls: none\n";
        else {
            text_ << "decls:\n";
            for (const auto& d : sys.decls)
                text_ << "  " << signature_text(d) << " for " << d.target_var << "\n";
        }

        std::vector<std::string> universals;
        for (const auto& q : sys.skolemized.prefix)
            universals.push_back(q.var);
        doc_["result"] = whole;
        doc_["free"] = sys.skolemized.free_vars;
        doc_["prefix"] = universals;
        doc_["matrix"] = matrix;
        doc_["decls"] = decls_json(sys.decls);
        return Success;
    }

    int decide_cmd()
    {
        auto th = theory();
        Formula f = formula();
        th->check_language(f);
        const bool truth = th->decide(f);
        text_ << (truth ? "TRUE" : "FALSE") << "\n";
        doc_["result"] = truth;
        return Success;
    }

    int qe_cmd()
    {
        auto th = theory();
        Formula f = formula();
        QeTrace t = th->eliminate(f);
        for (const auto& s : t.steps)
            log_->debug("eliminated {} by {} (size {})", s.variable, s.method, s.size);
        const std::string result = print_formula(t.output);
        text_ << result << "\n";
        Json steps = Json::array();
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            const auto& s = t.steps[i];
            if (cfg_.trace)
                text_ << "step " << i + 1 << ": " << s.variable << " by " << s.method << ", size " << s.size << "\n";
            steps.push_back({{"variable", s.variable}, {"method", s.method}, {"size", s.size}});
        }
        doc_["result"] = result;
        if (cfg_.trace)
            doc_["steps"] = steps;
        return Success;
    }

    int synth_cmd()
    {
        SkolemEvaluator ev = evaluator();
        const auto& decls = ev.system().decls;
        text_ << "skolemized: " << print_formula(ev.system().skolemized.to_formula()) << "\n";
        if (decls.empty())
            text_ << "no Skolem functions\n";
        for (const auto& d : decls)
            text_ << signature_text(d) << " for " << d.target_var << ": computable by decide-then-enumerate\n";
        doc_["result"] = print_formula(ev.system().skolemized.to_formula());
        return Success;
    }

    int eval_cmd()
    {
        if (cfg_.fn.empty())
            throw UsageError("'eval' needs --fn");
        SkolemEvaluator ev = evaluator();
        const SkolemDecl* decl = ev.system().find(cfg_.fn);
        if (! decl)
            throw UnknownSymbol(cfg_.fn);
        std::vector<DomainElement> args;
        if (! cfg_.args.empty()) {
            std::size_t start = 0;
            for (;;) {
                const auto comma = cfg_.args.find(',', start);
                args.push_back(ev.theory().parse_element(cfg_.args.substr(start, comma - start)));
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
        }
        const SkolemValue v = ev.evaluate(cfg_.fn, args);
        log_->info("{} decide call(s), witness index {}", ev.decide_calls(), v.index);
        if (! v.witness)
            err_ << "warning: no witness exists; default element returned\n";
        text_ << v.element.to_string() << "\n";
        doc_["result"] = v.element.to_string();
        doc_["witness"] = v.witness;
        doc_["index"] = v.index;
        return Success;
    }

    int check_cmd()
    {
        SkolemEvaluator ev = evaluator();
        CheckReport r = check_equiv(ev, cfg_.budget);
        log_->info("{} decide call(s) in the evaluator", ev.decide_calls());
        text_ << (r.exhaustive ? "exhaustive, " : "") << r.checked << " checked, " << r.failures.size()
              << " failures\n";
        Json failures = Json::array();
        for (const auto& f : r.failures) {
            std::vector<std::string> parts;
            Json valuation = Json::object();
            for (const auto& [var, value] : f.valuation.bindings()) {
                parts.push_back(var + "=" + value.to_string());
                valuation[var] = value.to_string();
            }
            const std::string what = f.symbol.empty() ? "matrix" : f.symbol == "*" ? "skolemized formula" : f.symbol;
            text_ << "  failure: " << what << " at " << (parts.empty() ? "()" : join(parts, " "))
                  << ": expected " << (f.lhs ? "true" : "false") << ", got " << (f.rhs ? "true" : "false") << "\n";
            failures.push_back({{"symbol", what}, {"valuation", valuation}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        }
        doc_["result"] = r.passed() ? "pass" : "fail";
        doc_["report"] = {{"checked", r.checked}, {"exhaustive", r.exhaustive}, {"failures", failures}};
        return r.passed() ? Success : CheckFailed;
    }

    int pcp_cmd()
    {
        PcpInstance pcp = parse_pcp(input());
        log_->info("{} tile(s), max length {}", pcp.tiles.size(), cfg_.max_len);
        auto sol = pcp_search(pcp, cfg_.max_len);
        if (! sol) {
            text_ << "none within bound\n";
            return Success;
        }
        std::vector<std::string> idx;
        for (auto i : sol->indices)
            idx.push_back(std::to_string(i));
        text_ << sol->word << " [" << join(idx, ",") << "]\n";
        doc_["result"] = {{"word", sol->word}, {"indices", sol->indices}};
        return Success;
    }

    int dioph_cmd()
    {
        PolynomialSpec p = parse_polynomial(input());
        if (cfg_.x.empty())
            throw UsageError("'dioph' needs --x");
        auto x = parse_rational(cfg_.x);
        if (! x || ! is_integral(*x) || *x < 0)
            throw UsageError("--x must be a natural number");
        DiophResult r = dioph_search(p, boost::multiprecision::numerator(*x), cfg_.fuel);
        log_->info("{} tuple(s) tried", r.tried);
        if (! r.found()) {
            text_ << "UNKNOWN (fuel exhausted)\n";
            doc_["result"] = {{"found", false}, {"tried", r.tried}};
            return Success;
        }
        const auto& y = *r.roots;
        std::vector<std::string> parts, values;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const std::string name = y.size() == 1 ? "y" : "y" + std::to_string(i + 1);
            parts.push_back(name + "=" + to_string(y[i]));
            values.push_back(to_string(y[i]));
        }
        text_ << "FOUND " << join(parts, " ") << "\n";
        doc_["result"] = {{"found", true}, {"y", values}, {"tried", r.tried}};
        return Success;
    }

    Config cfg_;
    std::ostream& out_;
    std::ostream& err_;
    std::shared_ptr<spdlog::logger> log_;
    std::ostringstream text_;
    Json doc_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Skolemization and Skolem function synthesis for decidable theories", "skolem-forge"};
    app.add_option("command", cfg.command, "skolemize | decide | qe | synth | eval | check | pcp | dioph")
        ->required()
        ->check(CLI::IsMember({"skolemize", "decide", "qe", "synth", "eval", "check", "pcp", "dioph"}));
    app.add_option("--theory", cfg.theory, "finite | dlo | presburger | lra")
        ->check(CLI::IsMember({"finite", "dlo", "presburger", "lra"}));
    app.add_option("--input", cfg.input, "Formula, tile or polynomial file ('-' for stdin)");
    app.add_option("--structure", cfg.structure, "Structure file for the finite theory");
    app.add_flag("--cnf", cfg.cnf, "Put the Skolemized matrix in CNF");
    app.add_flag("--trace", cfg.trace, "List the quantifier elimination steps");
    app.add_option("--fn", cfg.fn, "Skolem symbol to evaluate");
    app.add_option("--args", cfg.args, "Comma-separated argument values");
    app.add_option("--budget", cfg.budget, "Valuations to check for infinite theories")->check(CLI::PositiveNumber);
    app.add_option("--fuel", cfg.fuel, "Tuples to try before giving up")->check(CLI::PositiveNumber);
    app.add_option("--max-len", cfg.max_len, "Longest PCP word to try");
    app.add_option("--x", cfg.x, "Value of x for dioph");
    app.add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
#ifdef SKOLEM_FORGE_TEST_HOOKS
    app.add_flag("--sabotage", cfg.sabotage)->group("");
#endif

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    }
    catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }

    try {
        return Runner(cfg, out, err).run();
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
}

}  // namespace skolem::cli
