#pragma once

// Shared quantifier-elimination skeleton. Each procedure supplies a literal
// type and three operations:
//
//   Dnf<Lit> literal(const Formula& lit)         atom or negated atom, normalized
//   Dnf<Lit> eliminate(x, std::vector<Lit>, method&)   exists x over a conjunction
//   Formula  to_formula(const Lit&)
//   std::string key(const Lit&)                  canonical text for deduplication
//   bool     mentions(const Lit&, x)
//
// The driver eliminates innermost quantifiers first, converting each body
// to DNF and eliminating per disjunct.

#include <skolem/logic.hpp>
#include <skolem/theory.hpp>
#include <skolem/transform.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace skolem::detail {

/// {} is false, {{}} is true.
template <typename Lit>
using Dnf = std::vector<std::vector<Lit>>;

template <typename Lit>
Dnf<Lit> dnf_true()
{
    return Dnf<Lit>{std::vector<Lit>{}};
}

inline Formula mk_and(const Formula& a, const Formula& b)
{
    if (a.kind() == Formula::Kind::False || b.kind() == Formula::Kind::False)
        return Formula::falsity();
    if (a.kind() == Formula::Kind::True)
        return b;
    if (b.kind() == Formula::Kind::True)
        return a;
    if (a == b)
        return a;
    return Formula::conj(a, b);
}

inline Formula mk_or(const Formula& a, const Formula& b)
{
    if (a.kind() == Formula::Kind::True || b.kind() == Formula::Kind::True)
        return Formula::truth();
    if (a.kind() == Formula::Kind::False)
        return b;
    if (b.kind() == Formula::Kind::False)
        return a;
    if (a == b)
        return a;
    return Formula::disj(a, b);
}

template <typename Proc>
class QeDriver {
public:
    using Lit = typename Proc::Literal;

    explicit QeDriver(const Proc& proc) : proc_(proc) {}

    QeTrace run(const Formula& f)
    {
        QeTrace trace;
        trace.input = f;
        trace.output = qe(f);
        trace.steps = std::move(steps_);
        return trace;
    }

    /// Adds `conj` to `out`, keeping both free of duplicates.
    void add_conjunct(Dnf<Lit>& out, std::vector<Lit> conj) const
    {
        if (out.size() == 1 && out.front().empty())
            return;
        std::vector<Lit> clean;
        std::set<std::string> keys;
        for (auto& l : conj)
            if (keys.insert(proc_.key(l)).second)
                clean.push_back(std::move(l));
        if (clean.empty()) {
            out = dnf_true<Lit>();
            return;
        }
        for (const auto& existing : out)
            if (same_set(existing, keys))
                return;
        out.push_back(std::move(clean));
    }

private:
    bool same_set(const std::vector<Lit>& conj, const std::set<std::string>& keys) const
    {
        if (conj.size() != keys.size())
            return false;
        for (const auto& l : conj)
            if (! keys.count(proc_.key(l)))
                return false;
        return true;
    }

    Formula render(const Dnf<Lit>& d) const
    {
        Formula out = Formula::falsity();
        for (const auto& conj : d) {
            Formula c = Formula::truth();
            for (const auto& l : conj)
                c = mk_and(c, proc_.to_formula(l));
            out = mk_or(out, c);
        }
        return out;
    }

    Dnf<Lit> dnf(const Formula& f) const
    {
        switch (f.kind()) {
        case Formula::Kind::True: return dnf_true<Lit>();
        case Formula::Kind::False: return {};
        case Formula::Kind::Atom: return proc_.literal(f);
        case Formula::Kind::Not:
            if (f.lhs().kind() == Formula::Kind::Atom)
                return proc_.literal(f);
            return dnf(to_nnf(f));
        case Formula::Kind::And: {
            Dnf<Lit> a = dnf(f.lhs());
            if (a.empty())
                return a;
            Dnf<Lit> b = dnf(f.rhs());
            Dnf<Lit> out;
            for (const auto& ca : a)
                for (const auto& cb : b) {
                    std::vector<Lit> c = ca;
                    c.insert(c.end(), cb.begin(), cb.end());
                    add_conjunct(out, std::move(c));
                }
            return out;
        }
        case Formula::Kind::Or: {
            Dnf<Lit> out;
            for (const auto* side : {&f.lhs(), &f.rhs()})
                for (auto& c : dnf(*side))
                    add_conjunct(out, std::move(c));
            return out;
        }
        default: return dnf(to_nnf(f));
        }
    }

    Formula qf(const Formula& f) const
    {
        switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return f;
        case Formula::Kind::Atom: return render(proc_.literal(f));
        case Formula::Kind::Not:
            if (f.lhs().kind() == Formula::Kind::Atom)
                return render(proc_.literal(f));
            return qf(to_nnf(f));
        case Formula::Kind::And: return mk_and(qf(f.lhs()), qf(f.rhs()));
        case Formula::Kind::Or: return mk_or(qf(f.lhs()), qf(f.rhs()));
        default: return qf(to_nnf(f));
        }
    }

    Formula qe(const Formula& f)
    {
        switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom: return qf(f);
        case Formula::Kind::Not: return qf(Formula::negate(qe(f.lhs())));
        case Formula::Kind::And: return mk_and(qe(f.lhs()), qe(f.rhs()));
        case Formula::Kind::Or: return mk_or(qe(f.lhs()), qe(f.rhs()));
        case Formula::Kind::Implies: return mk_or(qf(Formula::negate(qe(f.lhs()))), qe(f.rhs()));
        case Formula::Kind::Iff: return qf(Formula::iff(qe(f.lhs()), qe(f.rhs())));
        case Formula::Kind::Exists: return eliminate_exists(f.name(), qe(f.body()));
        case Formula::Kind::Forall: {
            Formula body = qe(f.body());
            return qf(Formula::negate(eliminate_exists(f.name(), Formula::negate(body))));
        }
        }
        return f;
    }

    Formula eliminate_exists(const std::string& x, const Formula& body)
    {
        if (! occurs_free(body, x)) {
            Formula out = qf(body);
            steps_.push_back({x, "degenerate", node_count(out)});
            return out;
        }
        Dnf<Lit> result;
        std::set<std::string> methods;
        for (auto& conj : dnf(body)) {
            std::vector<Lit> with_x, rest;
            for (auto& l : conj)
                (proc_.mentions(l, x) ? with_x : rest).push_back(std::move(l));
            if (with_x.empty()) {
                add_conjunct(result, std::move(rest));
                continue;
            }
            std::string method;
            Dnf<Lit> eliminated = proc_.eliminate(x, std::move(with_x), method);
            methods.insert(method);
            for (auto& c : eliminated) {
                std::vector<Lit> merged = rest;
                merged.insert(merged.end(), c.begin(), c.end());
                add_conjunct(result, std::move(merged));
            }
        }
        Formula out = render(result);
        std::string method;
        for (const auto& m : methods)
            method += (method.empty() ? "" : "+") + m;
        steps_.push_back({x, method.empty() ? "trivial" : method, node_count(out)});
        return out;
    }

    const Proc& proc_;
    std::vector<QeStep> steps_;
};

}  // namespace skolem::detail
