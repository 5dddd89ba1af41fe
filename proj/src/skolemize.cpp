#include <skolem/error.hpp>
#include <skolem/skolemize.hpp>
#include <skolem/transform.hpp>

#include <set>

namespace skolem {

Term SkolemDecl::application() const
{
    std::vector<Term> args;
    for (const auto& d : deps)
        args.push_back(Term::variable(d));
    return Term::apply(symbol.name, std::move(args));
}

const SkolemDecl* SkolemSystem::find(const std::string& symbol_name) const
{
    for (const auto& d : decls)
        if (d.symbol.name == symbol_name)
            return &d;
    return nullptr;
}

SkolemSystem skolemize(const PrenexFormula& p)
{
    std::set<std::string> seen(p.free_vars.begin(), p.free_vars.end());
    for (const auto& q : p.prefix)
        if (! seen.insert(q.var).second)
            throw Error("skolemize: prefix is not rectified ('" + q.var + "' bound twice or free)");

    FreshNameSource names(all_names(p.matrix));
    for (const auto& v : p.free_vars)
        names.reserve(v);
    for (const auto& q : p.prefix)
        names.reserve(q.var);

    SkolemSystem out;
    out.skolemized.free_vars = p.free_vars;
    std::vector<std::string> universals;
    std::vector<std::string> existentials;
    std::map<std::string, Term> replacements;

    for (std::size_t i = 0; i < p.prefix.size(); ++i) {
        const auto& q = p.prefix[i];
        if (q.quantifier == Quantifier::Forall) {
            universals.push_back(q.var);
            out.skolemized.prefix.push_back(q);
            continue;
        }
        SkolemDecl d;
        d.target_var = q.var;
        d.deps = p.free_vars;
        d.deps.insert(d.deps.end(), universals.begin(), universals.end());
        d.left_existentials = existentials;
        d.prefix_position = i;
        const std::string base = (d.deps.empty() ? "C_" : "F_") + q.var;
        d.symbol = Symbol{names.claim(base), SymbolKind::Function, d.deps.size()};
        replacements.emplace(q.var, d.application());
        existentials.push_back(q.var);
        out.decls.push_back(std::move(d));
    }
    // Skolem terms only mention free and universal variables, which are never rebound.
    out.skolemized.matrix = substitute(p.matrix, replacements);
    return out;
}

SkolemSystem to_skolem_normal_form(const SkolemSystem& s)
{
    SkolemSystem out = s;
    out.skolemized.matrix = to_cnf_matrix(s.skolemized.matrix);
    return out;
}

}  // namespace skolem
