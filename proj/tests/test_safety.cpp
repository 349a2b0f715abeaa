#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tel/error.hpp"
#include "tel/parser.hpp"
#include "tel/pipeline.hpp"
#include "tel/safety.hpp"

using namespace tel;
using namespace tel::syntax;
namespace f = tel::syntax::f;

TEST(Safety, CarRulesAreSafe) {
    const auto report = safety::check_safety(parse_program(oracles::read_data("cars.tel")));
    EXPECT_TRUE(report.all_safe());
    EXPECT_TRUE(report.unsafe_statements().empty());
}

TEST(Safety, BodylessVariable) {
    const auto report = safety::check_safety(parse_program("init p(X)."));
    ASSERT_EQ(report.unsafe_statements().size(), 1u);
    EXPECT_EQ(report.unsafe_statements()[0].unsafe_variables, std::vector<std::string>{"X"});
    EXPECT_THROW(safety::require_safe(parse_program("init p(X).")), DomainError);
}

TEST(Safety, InequalityDoesNotBind) {
    const auto report = safety::check_safety(parse_program("init q(X) :- p(X), X!=Y."));
    ASSERT_FALSE(report.all_safe());
    EXPECT_EQ(report.verdicts[0].unsafe_variables, std::vector<std::string>{"Y"});
}

TEST(Safety, NextBodyBinds) {
    EXPECT_TRUE(safety::check_safety(parse_program("o q(X) :- o p(X).")).all_safe());
    EXPECT_FALSE(safety::check_safety(parse_program("o q(X) :- not o p(X), r.")).all_safe());
}

TEST(Safety, AbbreviatedPairReportedOnce) {
    const auto report = safety::check_safety(parse_program("p(X) :- not q(X)."));
    EXPECT_EQ(report.verdicts.size(), 2u);
    EXPECT_EQ(report.unsafe_statements().size(), 1u);
}

TEST(GroundOperator, Singleton) {
    const auto phi = f::forall("x", f::atom(Atom{"p", {Term::variable("x")}}));
    EXPECT_EQ(to_string(*safety::ground_operator(phi, {"a"})), "p(a)");
}

TEST(GroundOperator, AlwaysCommutes) {
    const auto x = Term::variable("x");
    const auto phi = f::always(f::forall("x", f::impl(f::atom(Atom{"p", {x}}), f::next(f::atom(Atom{"q", {x}})))));
    const auto expected = f::always(f::conj(f::impl(f::atom(make_atom("p", {"a"})), f::next(f::atom(make_atom("q", {"a"})))),
                                            f::impl(f::atom(make_atom("p", {"b"})), f::next(f::atom(make_atom("q", {"b"}))))));
    EXPECT_TRUE(equal(*safety::ground_operator(phi, {"a", "b"}), *expected));
}

TEST(GroundOperator, Exists) {
    const auto phi = f::exists("x", f::atom(Atom{"p", {Term::variable("x")}}));
    EXPECT_TRUE(equal(*safety::ground_operator(phi, {"a", "b"}),
                      *f::disj(f::atom(make_atom("p", {"a"})), f::atom(make_atom("p", {"b"})))));
}

TEST(GroundOperator, EmptyDomain) {
    EXPECT_THROW(safety::ground_operator(f::bottom(), {}), DomainError);
}

TEST(GroundOperator, ConnectivesCommuteOnRandomFormulas) {
    oracles::Rng rng(5);
    const auto atoms = oracles::propositions(3);
    const auto x = Term::variable("x");
    for (int i = 0; i < 200; ++i) {
        // p(x) instances keep the quantifier meaningful
        const auto a = f::conj(oracles::random_formula(rng, atoms, 2), f::atom(Atom{"p", {x}}));
        const auto b = f::disj(oracles::random_formula(rng, atoms, 2), f::atom(Atom{"q", {x}}));
        const std::vector<std::string> d{"c1", "c2"};
        auto gr = [&](const FormulaPtr& g) { return safety::ground_operator(f::forall("x", g), d); };
        auto gr_each = [&](const FormulaPtr& g) { return f::conj(apply_substitution(g, {{"x", "c1"}}), apply_substitution(g, {{"x", "c2"}})); };
        EXPECT_TRUE(equal(*gr(f::impl(a, b)), *gr_each(f::impl(a, b))));
        EXPECT_TRUE(equal(*safety::ground_operator(f::always(f::forall("x", a)), d), *f::always(gr_each(a))));
        EXPECT_TRUE(equal(*safety::ground_operator(f::next(f::forall("x", a)), d), *f::next(gr_each(a))));
        EXPECT_TRUE(equal(*safety::ground_operator(f::eventually(f::forall("x", b)), d), *f::eventually(gr_each(b))));
        EXPECT_TRUE(equal(*safety::ground_operator(f::conj(f::forall("x", a), f::forall("x", b)), d),
                          *f::conj(gr_each(a), gr_each(b))));
        EXPECT_TRUE(equal(*safety::ground_operator(f::disj(f::forall("x", a), f::forall("x", b)), d),
                          *f::disj(gr_each(a), gr_each(b))));
    }
}

TEST(GroundProgram, VariableFreeIsItself) {
    const auto p = parse_program(oracles::read_data("pqr.tel"));
    const auto g = safety::ground_program(p, std::vector<std::string>(p.constants.begin(), p.constants.end()));
    EXPECT_EQ(g.rules, p.rules);
}

TEST(GroundProgram, ConstraintOverTwoCities) {
    // one car, two cities: ordered pairs with a != b
    const auto p = parse_program("static car/1, city/1.\ncar(1). city(madrid). city(ny).\n"
                                 ":- at(X,A), at(X,B), A!=B, car(X), city(A), city(B).");
    const auto b = pipeline::baseline_ground(p);
    ASSERT_EQ(b.per_rule.size(), 1u);
    EXPECT_EQ(b.per_rule.begin()->second, 2u);
    std::size_t instances = 0;
    safety::for_each_substitution({"A", "B"}, {"madrid", "ny"}, p.rules.back().ineqs, [&](const Substitution&) { ++instances; });
    EXPECT_EQ(instances, 2u);
}

TEST(GroundProgram, DriveRuleOverStaticExtents) {
    const auto p = parse_program(oracles::read_data("cars_typed.tel"));
    const auto b = pipeline::baseline_ground(p);
    // the always copy of the first temporal rule
    EXPECT_EQ(b.per_rule.at(0), 12u);
}

TEST(GroundProgram, FailedInequalitiesDropInstances) {
    const auto p = parse_program(":- at(X,A), at(X,B), A!=B.");
    const auto g = safety::ground_program(p, {"1", "madrid", "ny"});
    EXPECT_EQ(g.rules.size(), 2u * 3u * 3u * 2u);
    for (const auto& r : g.rules) EXPECT_TRUE(r.ineqs.empty());
}

TEST(Herbrand, ExtensionMustBeFresh) {
    const auto p = parse_program("init p(a).");
    EXPECT_THROW(safety::HerbrandDomain(p, {"a"}), DomainError);
    const safety::HerbrandDomain d(p, {"z1", "z2"});
    EXPECT_EQ(d.constants(), (std::vector<std::string>{"a", "z1", "z2"}));
}

TEST(Substitutions, CountMatchesEnumeration) {
    oracles::Rng rng(3);
    const std::vector<std::string> domain{"a", "b", "c", "d"};
    const std::vector<std::string> vars{"X", "Y", "Z"};
    for (int i = 0; i < 50; ++i) {
        std::vector<Inequality> ineqs;
        for (int q = static_cast<int>(rng() % 3); q > 0; --q)
            ineqs.push_back({Term::variable(vars[rng() % 3]), rng() % 2 ? Term::variable(vars[rng() % 3]) : Term::constant("a")});
        std::size_t n = 0;
        safety::for_each_substitution(vars, domain, ineqs, [&](const Substitution&) { ++n; });
        EXPECT_EQ(safety::count_substitutions(vars, domain, ineqs), n);
    }
}
