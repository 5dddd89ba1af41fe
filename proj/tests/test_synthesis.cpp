#include "corpus.hpp"
#include "support.hpp"

#include <skolem/error.hpp>
#include <skolem/synthesis.hpp>
#include <skolem/syntax.hpp>

#include <doctest.h>

#include <thread>

using namespace skolem;

namespace {

Formula F(std::string_view text) { return parse_formula(text); }

/// The enumeration 0, q1, -q1, q2, -q2, ... rebuilt from the recurrence.
class RatWalk {
public:
    Rational at(std::uint64_t k)
    {
        if (k == 0)
            return 0;
        const std::uint64_t n = (k + 1) / 2;
        while (q_.size() < n) {
            const Rational& q = q_.back();
            const Integer fl = numerator(q) / denominator(q);
            q_.push_back(Rational(1) / (Rational(2 * fl) - q + 1));
        }
        return k % 2 ? q_[n - 1] : -q_[n - 1];
    }

    template <class Pred>
    std::uint64_t first(Pred pred)
    {
        for (std::uint64_t k = 0;; ++k)
            if (pred(at(k)))
                return k;
    }

private:
    std::vector<Rational> q_{Rational(1)};
};

SkolemValue eval1(const SkolemEvaluator& ev, const std::string& sym, std::vector<DomainElement> args)
{
    return ev.evaluate(sym, args);
}

FiniteStructure cycle3()
{
    FiniteStructure s;
    s.universe_size = 3;
    s.predicates["P"] = PredicateTable{1, {{0}, {2}}};
    s.predicates["R"] = PredicateTable{2, {{0, 1}, {1, 2}, {2, 0}, {1, 1}}};
    s.functions["g"] = FunctionTable{1, {{{0}, 1}, {{1}, 2}, {{2}, 0}}};
    return s;
}

}  // namespace

TEST_SUITE("synthesis")
{
    TEST_CASE("declarations")
    {
        auto halving = synthesize(make_theory("lra"), F("(forall (x) (exists (y) (= (+ y y) x)))"));
        REQUIRE(halving.system().decls.size() == 1);
        CHECK(halving.system().decls[0].symbol.name == "F_y");
        CHECK(halving.system().decls[0].deps == std::vector<std::string>{"x"});

        auto shape = synthesize(make_theory("dlo"), F("(exists (y) (forall (x) (exists (z) (and (< x z) (< y z)))))"));
        REQUIRE(shape.system().decls.size() == 2);
        CHECK(shape.system().decls[0].symbol == Symbol{"C_y", SymbolKind::Function, 0});
        CHECK(shape.system().decls[1].symbol == Symbol{"F_z", SymbolKind::Function, 1});

        CHECK(synthesize(make_theory("dlo"), F("(< x y)")).system().decls.empty());
        CHECK_THROWS_AS(synthesize(make_theory("dlo"), F("(exists (y) (< (+ y y) 1))")), UnsupportedSymbol);
    }

    TEST_CASE("betweenness")
    {
        auto ev = synthesize(
            make_theory("dlo"), F("(forall (x y) (exists (z) (implies (< x y) (and (< x z) (< z y)))))"));
        SkolemValue mid = eval1(ev, "F_z", {DomainElement::rat(0), DomainElement::rat(1)});
        CHECK(mid.element == DomainElement::rat(Rational(1, 2)));
        CHECK(mid.index == 3);
        CHECK(mid.witness);
        CHECK(eval1(ev, "F_z", {DomainElement::rat(1), DomainElement::rat(0)}).element == DomainElement::rat(0));

        RatWalk walk;
        std::mt19937_64 rng(61);
        for (int i = 0; i < 40; ++i) {
            const Rational a(long(rng() % 9) - 4, long(rng() % 3) + 1);
            const Rational b(long(rng() % 9) - 4, long(rng() % 3) + 1);
            const std::uint64_t want = walk.first([&](const Rational& z) { return ! (a < b) || (a < z && z < b); });
            CHECK(eval1(ev, "F_z", {DomainElement::rat(a), DomainElement::rat(b)}).index == want);
        }
    }

    TEST_CASE("halving")
    {
        auto pa = synthesize(make_theory("presburger"), F("(forall (x) (exists (y) (or (= (+ y y) x) (= (+ y y) (+ x 1)))))"));
        CHECK(eval1(pa, "F_y", {DomainElement::nat(5)}).element == DomainElement::nat(3));
        CHECK(eval1(pa, "F_y", {DomainElement::nat(4)}).element == DomainElement::nat(2));
        CHECK(eval1(pa, "F_y", {DomainElement::nat(0)}).element == DomainElement::nat(0));
        for (long x = 0; x <= 30; ++x) {
            long least = 0;
            while (! (2 * least == x || 2 * least == x + 1))
                ++least;
            CHECK(eval1(pa, "F_y", {DomainElement::nat(x)}).element == DomainElement::nat(least));
        }

        auto lra = synthesize(make_theory("lra"), F("(forall (x) (exists (y) (= (+ y y) x)))"));
        CHECK(eval1(lra, "F_y", {DomainElement::rat(1)}).element == DomainElement::rat(Rational(1, 2)));
        RatWalk walk;
        for (long p = -4; p <= 4; ++p) {
            const Rational x(p, 3);
            const std::uint64_t want = walk.first([&](const Rational& y) { return y + y == x; });
            SkolemValue v = eval1(lra, "F_y", {DomainElement::rat(x)});
            CHECK(v.index == want);
            CHECK(v.element == DomainElement::rat(x / 2));
        }
    }

    TEST_CASE("no witness falls back to the first element")
    {
        auto ev = synthesize(make_theory("presburger"), F("(forall (x) (exists (y) (= (+ y y) x)))"));
        SkolemValue v = eval1(ev, "F_y", {DomainElement::nat(3)});
        CHECK(v.element == DomainElement::nat(0));
        CHECK(v.index == 0);
        CHECK_FALSE(v.witness);
        CHECK(eval1(ev, "F_y", {DomainElement::nat(6)}).witness);
    }

    TEST_CASE("argument errors")
    {
        auto ev = synthesize(make_theory("presburger"), F("(forall (x) (exists (y) (= (+ y y) x)))"));
        CHECK_THROWS(ev.evaluate("F_y", {}));
        CHECK_THROWS(ev.evaluate("F_q", {DomainElement::nat(1)}));
        Valuation wrong;
        wrong.bind("z", DomainElement::nat(1));
        CHECK_THROWS(ev.evaluate(ev.system().decls[0], wrong));
    }

    TEST_CASE("repeated evaluation is consistent and sound")
    {
        for (const auto& e : test::corpus()) {
            auto th = make_theory(e.theory);
            auto ev = synthesize(th, F(e.text));
            auto fresh = synthesize(th, F(e.text));
            for (const auto& decl : ev.system().decls) {
                DiagonalTuples tuples(decl.deps.size());
                for (int i = 0; i < 6; ++i) {
                    Valuation args;
                    for (std::size_t j = 0; j < decl.deps.size(); ++j)
                        args.bind(decl.deps[j], th->enumerate(tuples.current()[j]));
                    const SkolemValue a = ev.evaluate(decl, args);
                    const SkolemValue b = ev.evaluate(decl, args);
                    const SkolemValue c = fresh.evaluate(decl, args);
                    CHECK(a.element == b.element);
                    CHECK(a.element == c.element);
                    CHECK(a.element == th->enumerate(a.index));
                    Formula chi = ev.residual(decl, args);
                    const bool exists = th->decide(Formula::exists(decl.target_var, chi));
                    CHECK_MESSAGE(a.witness == exists, e.text);
                    if (a.witness)
                        CHECK(th->decide(substitute(chi, decl.target_var, th->element_term(a.element))));
                    if (! tuples.next())
                        break;
                }
            }
        }
    }

    TEST_CASE("witnesses are minimal")
    {
        SynthesisOptions opts;
        opts.verify_minimality = true;
        for (const auto& e : test::corpus()) {
            auto th = make_theory(e.theory);
            auto ev = synthesize(th, F(e.text), opts);
            for (const auto& decl : ev.system().decls) {
                DiagonalTuples tuples(decl.deps.size());
                for (int i = 0; i < 4; ++i) {
                    Valuation args;
                    for (std::size_t j = 0; j < decl.deps.size(); ++j)
                        args.bind(decl.deps[j], th->enumerate(tuples.current()[j]));
                    SkolemValue v;
                    CHECK_NOTHROW(v = ev.evaluate(decl, args));
                    Formula chi = ev.residual(decl, args);
                    for (std::uint64_t k = 0; v.witness && k < v.index; ++k)
                        CHECK_FALSE(th->decide(substitute(chi, decl.target_var, th->element_term(th->enumerate(k)))));
                    if (! tuples.next())
                        break;
                }
            }
        }
    }

    TEST_CASE("outer values fix inner ones")
    {
        // y is chosen first (any value works, so index 0), then z per x.
        const char* text = "(exists (y) (forall (x) (exists (z) (and (< x z) (implies (< x y) (< z y))))))";
        auto th = make_theory("dlo");
        auto ev = synthesize(th, F(text));
        SkolemValue y = eval1(ev, "C_y", {});
        CHECK(y.element == DomainElement::rat(0));
        const Formula rest = F("(forall (x) (exists (z) (and (< x z) (implies (< x y) (< z y)))))");
        CHECK(th->decide(substitute(rest, "y", th->element_term(y.element))) == th->decide(F(text)));

        RatWalk walk;
        for (const Rational x : {Rational(0), Rational(-1), Rational(5), Rational(-1, 3), Rational(7, 2)}) {
            const std::uint64_t want = walk.first([&](const Rational& z) { return x < z && (! (x < 0) || z < 0); });
            SkolemValue z = eval1(ev, "F_z", {DomainElement::rat(x)});
            CHECK(z.index == want);
            CHECK(z.element == DomainElement::rat(walk.at(want)));
        }
        CHECK(eval1(ev, "F_z", {DomainElement::rat(-1)}).element == DomainElement::rat(Rational(-1, 2)));
        CHECK(eval1(ev, "F_z", {DomainElement::rat(0)}).element == DomainElement::rat(1));
    }

    TEST_CASE("diagonal tuples")
    {
        DiagonalTuples pairs(2);
        std::vector<std::vector<std::uint64_t>> seen;
        for (int i = 0; i < 6; ++i) {
            seen.push_back(pairs.current());
            CHECK(pairs.next());
        }
        CHECK(seen == std::vector<std::vector<std::uint64_t>>{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}});

        DiagonalTuples none(0);
        CHECK(none.current().empty());
        CHECK_FALSE(none.next());

        // every triple with sum <= 4 appears exactly once, in sum order
        DiagonalTuples triples(3);
        std::set<std::vector<std::uint64_t>> all;
        std::uint64_t last_sum = 0;
        for (int i = 0; i < 35; ++i) {
            const auto& t = triples.current();
            const std::uint64_t sum = t[0] + t[1] + t[2];
            CHECK(sum >= last_sum);
            last_sum = sum;
            CHECK(all.insert(t).second);
            triples.next();
        }
        CHECK(last_sum == 4);
        CHECK(triples.current() == std::vector<std::uint64_t>{0, 0, 5});
    }

    TEST_CASE("check examples")
    {
        auto lra = synthesize(make_theory("lra"), F("(forall (x) (exists (y) (= (+ y y) x)))"));
        CheckReport r = check_equiv(lra, 100);
        CHECK(r.checked == 100);
        CHECK(r.passed());
        CHECK_FALSE(r.exhaustive);

        auto pa = synthesize(make_theory("presburger"), F("(forall (x) (exists (y) (= (+ y y) x)))"));
        CHECK(check_equiv(pa, 50).passed());

        FiniteStructure two;
        two.universe_size = 2;
        two.predicates["R"] = PredicateTable{2, {{0, 1}, {1, 1}}};
        auto fin = synthesize(make_theory(TheoryKind::Finite, two), F("(forall (x) (exists (y) (R x y)))"));
        CheckReport fr = check_equiv(fin, 1);
        CHECK(fr.exhaustive);
        CHECK(fr.passed());
        CHECK(fr.checked >= 2);
    }

    TEST_CASE("finite checks on every small structure")
    {
        const auto models = test::all_models(2);
        for (const auto& text : test::finite_corpus()) {
            if (text.find("(g ") != std::string::npos) {
                auto ev = synthesize(make_theory(TheoryKind::Finite, cycle3()), F(text));
                CHECK_MESSAGE(check_equiv(ev, 1).passed(), text);
                continue;
            }
            for (const auto& m : models) {
                auto ev = synthesize(make_theory(TheoryKind::Finite, m.to_structure()), F(text));
                REQUIRE_MESSAGE(check_equiv(ev, 1).passed(), text);
            }
        }
    }

    TEST_CASE("sabotage is caught")
    {
        SynthesisOptions bad;
        bad.sabotage = true;
        auto lra = synthesize(make_theory("lra"), F("(forall (x) (exists (y) (= (+ y y) x)))"), bad);
        CHECK_FALSE(check_equiv(lra, 20).passed());

        auto between = synthesize(
            make_theory("dlo"), F("(forall (x y) (exists (z) (implies (< x y) (and (< x z) (< z y)))))"), bad);
        CHECK(between.evaluate("F_z", {DomainElement::rat(0), DomainElement::rat(1)}).element
            == DomainElement::rat(Rational(-1, 2)));
        CHECK_FALSE(check_equiv(between, 50).passed());

        FiniteStructure two;
        two.universe_size = 2;
        two.predicates["R"] = PredicateTable{2, {{0, 1}, {1, 1}}};
        auto fin = synthesize(make_theory(TheoryKind::Finite, two), F("(forall (x) (exists (y) (and (R x y) (not (= x y)))))"), bad);
        CHECK_FALSE(check_equiv(fin, 1).passed());
    }

    TEST_CASE("corpus passes the check at a small budget")
    {
        for (const auto& e : test::corpus()) {
            auto ev = synthesize(make_theory(e.theory), F(e.text));
            CheckReport r = check_equiv(ev, 15);
            CHECK_MESSAGE(r.passed(), e.text);
        }
    }

    TEST_CASE("concurrent evaluation")
    {
        auto ev = synthesize(make_theory("presburger"), F("(forall (x) (exists (y) (or (= (+ y y) x) (= (+ y y) (+ x 1)))))"));
        auto serial = synthesize(make_theory("presburger"), ev.input());
        std::vector<DomainElement> want;
        for (long x = 0; x < 40; ++x)
            want.push_back(serial.evaluate("F_y", {DomainElement::nat(x)}).element);

        std::vector<std::vector<DomainElement>> got(8);
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < got.size(); ++t)
            pool.emplace_back([&, t] {
                for (long x = 0; x < 40; ++x) {
                    const long xx = t % 2 ? 39 - x : x;
                    got[t].push_back(ev.evaluate("F_y", {DomainElement::nat(xx)}).element);
                }
                if (t % 2)
                    std::reverse(got[t].begin(), got[t].end());
            });
        for (auto& th : pool)
            th.join();
        for (const auto& g : got)
            CHECK(g == want);
        const auto calls = ev.decide_calls();
        ev.evaluate("F_y", {DomainElement::nat(7)});
        CHECK(ev.decide_calls() == calls);
    }
}
