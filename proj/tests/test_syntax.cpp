#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tel/error.hpp"
#include "tel/formula.hpp"
#include "tel/parser.hpp"

using namespace tel;
using namespace tel::syntax;

namespace {

Atom A(const std::string& p, std::vector<std::string> args = {}) { return make_atom(p, args); }

Atom V(const std::string& p, std::vector<std::string> vars) {
    Atom a{p, {}};
    for (auto& v : vars) a.args.push_back(Term::variable(v));
    return a;
}

} // namespace

TEST(Parse, InitFact) {
    const auto p = parse_program("init at(c1,madrid).");
    ASSERT_EQ(p.rules.size(), 1u);
    EXPECT_EQ(p.rules[0].kind, RuleKind::init_present);
    EXPECT_TRUE(p.rules[0].body.empty());
    EXPECT_EQ(p.rules[0].head, std::vector<Atom>{A("at", {"c1", "madrid"})});
    EXPECT_EQ(p.constants, (std::set<std::string>{"c1", "madrid"}));
}

TEST(Parse, InertiaRule) {
    const auto p = parse_program("o at(X,A) :- at(X,A), not o no_at(X,A).");
    ASSERT_EQ(p.rules.size(), 1u);
    const auto& r = p.rules[0];
    EXPECT_EQ(r.kind, RuleKind::always_dyn);
    EXPECT_EQ(r.body, std::vector<Atom>{V("at", {"X", "A"})});
    EXPECT_EQ(r.next_neg, std::vector<Atom>{V("no_at", {"X", "A"})});
    EXPECT_EQ(r.next_head, std::vector<Atom>{V("at", {"X", "A"})});
    EXPECT_TRUE(r.neg.empty() && r.next_body.empty() && r.head.empty());
}

TEST(Parse, ConstraintIsExpanded) {
    const auto p = parse_program(":- at(X,A), at(X,B), A!=B.");
    ASSERT_EQ(p.rules.size(), 2u);
    EXPECT_EQ(p.rules[0].kind, RuleKind::init_present);
    EXPECT_EQ(p.rules[1].kind, RuleKind::always_dyn);
    for (const auto& r : p.rules) {
        EXPECT_TRUE(r.is_constraint());
        EXPECT_TRUE(r.abbreviated);
        ASSERT_EQ(r.ineqs.size(), 1u);
    }
    EXPECT_EQ(p.rules[1].next_body.size(), 2u);
    EXPECT_TRUE(p.rules[1].body.empty());
}

TEST(Parse, StaticDirectiveAndComments) {
    const auto p = parse_program("% header\nstatic city/1, car/1, road/2. % trailing\ncar(1).\n");
    ASSERT_EQ(p.static_decls.size(), 3u);
    EXPECT_EQ(p.static_decls[2].name, "road");
    EXPECT_EQ(p.static_decls[2].arity, 2u);
    EXPECT_TRUE(p.is_static_rule(p.rules[0]));
}

TEST(Parse, IntegersAreConstants) {
    const auto p = parse_program("init car(1).");
    EXPECT_EQ(p.constants, std::set<std::string>{"1"});
}

TEST(Parse, Errors) {
    auto error_at = [](const char* text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_program(text);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    EXPECT_EQ(error_at("o o p :- q."), std::make_pair(std::size_t{1}, std::size_t{3}));
    EXPECT_NE(error_at("p(a). p(a,b).").first, 0u);
    EXPECT_NE(error_at("not p :- q.").first, 0u);
    EXPECT_NE(error_at("o p v q :- r.").first, 0u);
    EXPECT_NE(error_at("p :- o q.").first, 0u);
    EXPECT_NE(error_at("p(X) :- q(X), X = a.").first, 0u);
    EXPECT_EQ(error_at("p.\nq :- .").first, 2u);
    EXPECT_NE(error_at("static p/1.\np(a,b).").first, 0u);
}

TEST(Classify, InitDynamicRule) {
    const auto p = parse_program("init o p :- q, not o r.");
    const auto& r = p.rules.at(0);
    EXPECT_EQ(r.kind, RuleKind::init_dyn);
    EXPECT_EQ(r.body, std::vector<Atom>{A("q")});
    EXPECT_EQ(r.next_neg, std::vector<Atom>{A("r")});
    EXPECT_EQ(r.next_head, std::vector<Atom>{A("p")});
}

TEST(Classify, DisjunctiveAlwaysRule) {
    const auto p = parse_program("o r v o q :- r, not o p.");
    const auto& r = p.rules.at(0);
    EXPECT_EQ(r.kind, RuleKind::always_dyn);
    EXPECT_EQ(r.body, std::vector<Atom>{A("r")});
    EXPECT_EQ(r.next_neg, std::vector<Atom>{A("p")});
    EXPECT_EQ(r.next_head, (std::vector<Atom>{A("r"), A("q")}));
}

TEST(Classify, BodylessInitRule) {
    const auto r = parse_program("init p(X).").rules.at(0);
    EXPECT_EQ(r.kind, RuleKind::init_present);
    EXPECT_TRUE(r.body.empty());
}

TEST(Classify, ReassemblyGivesBackTheRule) {
    oracles::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto p = parse_program(oracles::random_safe_program(rng));
        for (const auto& r : p.rules) {
            RawRule raw;
            raw.init = r.kind != RuleKind::always_dyn;
            for (const auto& a : r.head) raw.head.push_back({a, false, false});
            for (const auto& a : r.next_head) raw.head.push_back({a, true, false});
            for (const auto& a : r.body) raw.body.push_back({a, false, false});
            for (const auto& a : r.next_body) raw.body.push_back({a, true, false});
            for (const auto& a : r.neg) raw.body.push_back({a, false, true});
            for (const auto& a : r.next_neg) raw.body.push_back({a, true, true});
            raw.ineqs = r.ineqs;
            if (!raw.init && !raw.has_next()) continue;
            Rule again = classify(raw);
            again.statement = r.statement;
            again.line = r.line;
            again.abbreviated = r.abbreviated;
            EXPECT_EQ(again, r);
        }
    }
}

TEST(Expand, NegativeBody) {
    const auto [init, always] = expand_abbreviation(RawRule{false, {{A("q"), false, false}}, {{A("p"), false, true}}, {}, 0, 1});
    EXPECT_EQ(init.kind, RuleKind::init_present);
    EXPECT_EQ(init.neg, std::vector<Atom>{A("p")});
    EXPECT_EQ(init.head, std::vector<Atom>{A("q")});
    EXPECT_EQ(always.kind, RuleKind::always_dyn);
    EXPECT_EQ(always.next_neg, std::vector<Atom>{A("p")});
    EXPECT_EQ(always.next_head, std::vector<Atom>{A("q")});
    EXPECT_TRUE(always.neg.empty() && always.body.empty());
}

TEST(Expand, Fact) {
    const auto p = parse_program("p.");
    ASSERT_EQ(p.rules.size(), 2u);
    EXPECT_EQ(p.rules[0].head, std::vector<Atom>{A("p")});
    EXPECT_EQ(p.rules[1].next_head, std::vector<Atom>{A("p")});
    EXPECT_TRUE(p.rules[1].next_body.empty());
}

TEST(Expand, InequalityInBothCopies) {
    const auto p = parse_program("no_at(X,A) :- at(X,B), A!=B, city(A).");
    ASSERT_EQ(p.rules.size(), 2u);
    EXPECT_EQ(p.rules[0].ineqs, p.rules[1].ineqs);
    EXPECT_EQ(p.rules[1].next_body.size(), 2u);
    for (const auto& r : p.rules) EXPECT_FALSE(r.kind == RuleKind::always_dyn && !r.has_next());
}

TEST(Substitution, SatisfiedInequalityIsDropped) {
    const auto r = parse_program("no_at(X,A) :- at(X,B), A!=B, city(A).").rules[1];
    const auto g = apply_substitution(r, {{"X", "1"}, {"A", "paris"}, {"B", "ny"}});
    ASSERT_TRUE(g);
    EXPECT_TRUE(g->ineqs.empty());
    EXPECT_TRUE(g->is_ground());
    EXPECT_EQ(to_string(*g), "o no_at(1,paris) :- o at(1,ny), o city(paris).");
}

TEST(Substitution, FailedInequalityGivesTop) {
    const auto r = parse_program(":- at(X,A), at(X,B), A!=B.").rules[1];
    EXPECT_FALSE(apply_substitution(r, {{"X", "1"}, {"A", "ny"}, {"B", "ny"}}));
}

TEST(Substitution, DriveRule) {
    const auto r = parse_program("o at(X,A) :- driveto(X,A).").rules[0];
    const auto g = apply_substitution(r, {{"X", "1"}, {"A", "ny"}});
    ASSERT_TRUE(g);
    EXPECT_EQ(to_string(*g), "o at(1,ny) :- driveto(1,ny).");
    EXPECT_EQ(to_string(*to_formula(*g)), "[] (driveto(1,ny) -> o at(1,ny))");
}

TEST(Substitution, MustBeTotal) {
    const auto r = parse_program("o at(X,A) :- driveto(X,A).").rules[0];
    EXPECT_THROW(apply_substitution(r, {{"X", "1"}}), DomainError);
}

TEST(Substitution, Formula) {
    const auto phi = to_formula(parse_program("o at(X,A) :- driveto(X,A).").rules[0]);
    EXPECT_EQ(free_variables(*phi), std::set<std::string>{});
    const auto body = phi->left->left; // strip the two quantifiers
    EXPECT_EQ(free_variables(*body), (std::set<std::string>{"A", "X"}));
    const auto g = apply_substitution(body, {{"X", "1"}, {"A", "ny"}});
    EXPECT_TRUE(g->is_ground());
    // bound occurrences are untouched
    EXPECT_TRUE(equal(*apply_substitution(phi, {{"X", "1"}}), *phi));
}

TEST(Print, InitDynamicKeepsMarkers) {
    const auto p = parse_program("init o p :- q, not o r.");
    EXPECT_EQ(to_string(p.rules[0]), "init o p :- q, not o r.");
}

TEST(Print, RoundTripCorpus) {
    for (const char* name : {"pqr.tel", "cars_typed.tel", "cars.tel"}) {
        auto p = parse_program(oracles::read_data(name));
        auto again = parse_program(to_string(p));
        // comments and blank lines shift source lines
        for (auto* prog : {&p, &again})
            for (auto& r : prog->rules) r.line = 0;
        EXPECT_EQ(again, p) << name;
    }
}

TEST(Print, RoundTripRandom) {
    oracles::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto text = oracles::random_safe_program(rng);
        const auto p = parse_program(text);
        EXPECT_EQ(parse_program(to_string(p)), p) << text;
    }
}
