#include "support.hpp"

#include <skolem/error.hpp>
#include <skolem/logic.hpp>
#include <skolem/syntax.hpp>

#include <doctest.h>

using namespace skolem;

namespace {

Formula F(std::string_view text) { return parse_formula(text); }

Valuation fin_env(std::initializer_list<std::pair<const char*, std::size_t>> items)
{
    Valuation v;
    for (const auto& [k, i] : items)
        v.bind(k, DomainElement::fin(i));
    return v;
}

FiniteStructure g_swap3()
{
    FiniteStructure s;
    s.universe_size = 3;
    auto& g = s.functions["g"];
    g.arity = 1;
    g.rows = {{{0}, 1}, {{1}, 0}, {{2}, 0}};
    return s;
}

}  // namespace

TEST_SUITE("logic")
{
    TEST_CASE("free variables in first-occurrence order")
    {
        CHECK(free_vars(F("(exists (y) (P y))")).empty());
        CHECK(free_vars(F("(< x y)")) == std::vector<std::string>{"x", "y"});
        CHECK(free_vars(F("(forall (x) (< x y))")) == std::vector<std::string>{"y"});
        CHECK(free_vars(F("(and (R y x) (exists (y) (R y z)))")) == std::vector<std::string>{"y", "x", "z"});
    }

    TEST_CASE("substitution")
    {
        Term fa = Term::apply("F_a", {Term::variable("x")});
        CHECK(substitute(F("(P a)"), "a", fa) == F("(P (F_a x))"));
        CHECK(substitute(F("(P b)"), "a", Term::variable("t")) == F("(P b)"));

        Formula renamed = substitute(F("(forall (x) (< x y))"), "y", Term::variable("x"));
        REQUIRE(renamed.kind() == Formula::Kind::Forall);
        CHECK(renamed.name() == "x'");
        CHECK(renamed.body() == Formula::atom("<", {Term::variable("x'"), Term::variable("x")}));

        // bound occurrences are left alone
        CHECK(substitute(F("(and (P x) (exists (x) (P x)))"), "x", Term::variable("z"))
            == F("(and (P z) (exists (x) (P x)))"));
    }

    TEST_CASE("simultaneous substitution does not chain")
    {
        std::map<std::string, Term> m{{"x", Term::variable("y")}, {"y", Term::variable("x")}};
        CHECK(substitute(F("(R x y)"), m) == F("(R y x)"));
    }

    TEST_CASE("eval_term")
    {
        FiniteStructure s = g_swap3();
        CHECK(eval_term(s, fin_env({{"x", 2}}), Term::variable("x")) == DomainElement::fin(2));
        CHECK(eval_term(s, fin_env({{"x", 2}}), Term::apply("g", {Term::variable("x")})) == DomainElement::fin(0));
        CHECK(eval_term(s, fin_env({{"x", 2}}), Term::apply("g", {Term::apply("g", {Term::variable("x")})}))
            == DomainElement::fin(1));
        CHECK_THROWS_AS(eval_term(s, Valuation{}, Term::variable("x")), UnboundVariable);
        CHECK_THROWS_AS(eval_term(s, fin_env({{"x", 0}}), Term::apply("h", {Term::variable("x")})), UnknownSymbol);
    }

    TEST_CASE("eval_qf")
    {
        FiniteStructure s;
        s.universe_size = 2;
        s.predicates["P"] = PredicateTable{1, {{1}}};
        CHECK(eval_qf(s, Valuation{}, Formula::truth()));
        CHECK_FALSE(eval_qf(s, fin_env({{"x", 0}}), F("(P x)")));
        CHECK(eval_qf(s, fin_env({{"x", 1}}), F("(P x)")));
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(eval_qf(s, fin_env({{"x", i}}), F("(or (P x) (not (P x)))")));
        CHECK_THROWS_AS(eval_qf(s, fin_env({{"x", 0}}), F("(Q x)")), UnknownSymbol);
        CHECK_THROWS_AS(eval_qf(s, Valuation{}, F("(P x)")), UnboundVariable);
        CHECK_THROWS(eval_qf(s, Valuation{}, F("(exists (x) (P x))")));
    }

    TEST_CASE("valuations reject double binding")
    {
        Valuation v;
        v.bind("x", DomainElement::nat(1));
        CHECK_THROWS(v.bind("x", DomainElement::nat(2)));
        CHECK(v.extended("y", DomainElement::nat(2)).size() == 2);
        CHECK(v.size() == 1);
    }

    TEST_CASE("domain elements")
    {
        CHECK(DomainElement::nat(7).to_string() == "7");
        CHECK(DomainElement::rat(Rational(-3, 6)).to_string() == "-1/2");
        CHECK(DomainElement::fin(4).to_string() == "#4");
        CHECK_THROWS(DomainElement::nat(-1));
    }

    TEST_CASE("structure validation")
    {
        FiniteStructure s = g_swap3();
        CHECK_NOTHROW(s.validate());
        s.functions["g"].rows.erase({2});
        CHECK_THROWS_AS(s.validate(), DomainError);
        FiniteStructure t;
        t.universe_size = 2;
        t.predicates["P"] = PredicateTable{1, {{2}}};
        CHECK_THROWS_AS(t.validate(), DomainError);
    }

    TEST_CASE("substitution by the variable itself is the identity")
    {
        test::FormulaGen gen(11);
        for (int i = 0; i < 200; ++i) {
            Formula f = gen.formula(4);
            for (const char* v : {"x", "y", "z"})
                CHECK(substitute(f, v, Term::variable(v)) == f);
        }
    }

    TEST_CASE("substituting a fresh variable keeps the free variables")
    {
        test::FormulaGen gen(12);
        for (int i = 0; i < 200; ++i) {
            Formula f = gen.formula(4);
            CHECK(free_vars(substitute(f, "fresh", Term::variable("x"))) == free_vars(f));
        }
    }

    TEST_CASE("capture avoidance agrees with extended valuations")
    {
        // f[v := w] under env equals f under env with v set to env(w), for every
        // small structure and environment.
        test::FormulaGen gen(13);
        const auto models = test::all_models(2);
        for (int i = 0; i < 150; ++i) {
            Formula f = gen.formula(4);
            const std::string v = std::vector<std::string>{"x", "y", "z"}[gen.pick(3)];
            const std::string w = std::vector<std::string>{"x", "y", "z"}[gen.pick(3)];
            Formula g = substitute(f, v, Term::variable(w));
            for (const auto& m : models) {
                test::ModelEval ev(m);
                for (std::size_t a = 0; a < m.size; ++a)
                    for (std::size_t b = 0; b < m.size; ++b)
                        for (std::size_t c = 0; c < m.size; ++c) {
                            std::map<std::string, std::size_t> env{{"x", a}, {"y", b}, {"z", c}};
                            std::map<std::string, std::size_t> moved = env;
                            moved[v] = env[w];
                            REQUIRE(ev.holds(g, env) == ev.holds(f, moved));
                        }
            }
        }
    }

    TEST_CASE("signature excludes built-ins")
    {
        auto sig = signature(F("(and (< (+ x 1) (g x)) (P (h x y)))"));
        std::set<std::string> names;
        for (const auto& s : sig)
            names.insert(s.name);
        CHECK(names == std::set<std::string>{"g", "h", "P"});
    }
}
