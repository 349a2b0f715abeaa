#include <gtest/gtest.h>

#include <algorithm>

#include "support/oracles.hpp"
#include "tel/error.hpp"
#include "tel/parser.hpp"
#include "tel/pipeline.hpp"
#include "tel/safety.hpp"
#include "tel/semantics/enumerate.hpp"

using namespace tel;
using namespace tel::pipeline;
using syntax::make_atom;

namespace {

syntax::Program cars() { return syntax::parse_program(oracles::read_data("cars.tel")); }
syntax::Program example() { return syntax::parse_program(oracles::read_data("pqr.tel")); }

std::vector<std::string> lines_of(const GroundTemporalProgram& p) {
    std::vector<std::string> out;
    for (const auto& r : p.rules) out.push_back(to_string(r));
    return out;
}

bool has_line(const GroundTemporalProgram& p, const std::string& line) {
    const auto lines = lines_of(p);
    return std::find(lines.begin(), lines.end(), line) != lines.end();
}

} // namespace

TEST(HeadSplit, Example) {
    const auto split = head_split(example());
    std::vector<std::string> printed;
    for (const auto& r : split.rules) printed.push_back(syntax::to_string(r));
    EXPECT_EQ(printed, (std::vector<std::string>{"init q.", "init o p :- q.", "o q :- q.", "o r :- r.", "o q :- r."}));
}

TEST(HeadSplit, ConstraintsVanish) {
    EXPECT_TRUE(head_split(syntax::parse_program(":- p, q.")).rules.empty());
}

TEST(Gamma, AlwaysRuleHasThreeCopies) {
    const auto g = gamma_flatten(syntax::parse_program("o q :- q."));
    std::vector<std::string> printed;
    for (const auto& r : g) printed.push_back(datalog::to_string(r));
    const auto q = [](int t) { return timed_predicate("q", t); };
    EXPECT_EQ(printed, (std::vector<std::string>{q(1) + " :- " + q(0) + ".", q(2) + " :- " + q(1) + ".",
                                                 q(2) + " :- " + q(2) + "."}));
}

TEST(Gamma, RejectsNegation) {
    EXPECT_THROW(gamma_flatten(syntax::parse_program("init q :- not p.")), DomainError);
}

TEST(Delta, Example) {
    const auto d = derivable_facts(example());
    EXPECT_EQ(d.at[0], (std::set<syntax::Atom>{make_atom("q")}));
    EXPECT_EQ(d.at[1], (std::set<syntax::Atom>{make_atom("p"), make_atom("q")}));
    EXPECT_EQ(d.at[2], (std::set<syntax::Atom>{make_atom("q")}));
    EXPECT_TRUE(d.contains(make_atom("q"), 7));
    EXPECT_FALSE(d.contains(make_atom("p"), 7));
}

TEST(Delta, CarsStayOnTheirContinent) {
    const auto d = derivable_facts(cars());
    for (int t = 0; t < 3; ++t) EXPECT_FALSE(d.at[t].contains(make_atom("at", {"1", "ny"})));
    std::set<std::string> car1, car2;
    for (const auto& a : d.at[2]) {
        if (a.predicate != "at") continue;
        (a.args[0].name == "1" ? car1 : car2).insert(a.args[1].name);
    }
    EXPECT_EQ(car1, (std::set<std::string>{"lisbon", "madrid", "paris"}));
    EXPECT_EQ(car2, (std::set<std::string>{"boston", "nj", "ny"}));
    EXPECT_EQ(d.at[0].count(make_atom("at", {"1", "madrid"})), 1u);
    EXPECT_FALSE(d.at[0].contains(make_atom("at", {"1", "paris"})));
}

TEST(Delta, UnsafeThrows) { EXPECT_THROW(derivable_facts(syntax::parse_program("init p(X).")), DomainError); }

TEST(Subst, DriveChoiceAtShiftTwo) {
    const auto program = cars();
    const auto g = emit_ground_program(program);
    std::size_t rule = program.rules.size();
    for (std::size_t i = 0; i < program.rules.size(); ++i)
        if (program.rules[i].statement == 1 && program.rules[i].kind == syntax::RuleKind::always_dyn) rule = i;
    ASSERT_LT(rule, program.rules.size());
    EXPECT_EQ(g.substitutions.at({rule, 2}).size(), 8u);
}

TEST(Emit, ExampleProgram) {
    const auto g = emit_ground_program(example());
    EXPECT_EQ(lines_of(g.program), (std::vector<std::string>{"[0] q.", "[0] o p :- q.", "[0] o q :- q, not o p.",
                                                             "[1] o q :- q.", "[2..] o q :- q."}));
    EXPECT_EQ(g.stats.emitted_total, 5u);
    EXPECT_EQ(g.stats.boxed_total, 1u);
    EXPECT_EQ(g.stats.dropped_literals, 4u);
}

TEST(Emit, UnreachableDriveIsDropped) {
    const auto g = emit_ground_program(cars());
    for (const char* tag : {"[0] ", "[1] ", "[2..] "}) {
        EXPECT_FALSE(has_line(g.program, std::string(tag) + "o at(1,ny) :- driveto(1,ny).")) << tag;
        EXPECT_FALSE(has_line(g.program, std::string(tag) + "o at(2,madrid) :- driveto(2,madrid).")) << tag;
    }
    EXPECT_TRUE(has_line(g.program, "[2..] o at(1,ny) :- driveto(1,ny).") == false);
    EXPECT_TRUE(has_line(g.program, "[0] o at(1,paris) :- driveto(1,paris)."));
    EXPECT_FALSE(has_line(g.program, "[0] o at(1,madrid) :- driveto(1,madrid)."));
    EXPECT_TRUE(has_line(g.program, "[1] o at(1,madrid) :- driveto(1,madrid)."));
}

TEST(Emit, BoxedCountsForCars) {
    const auto program = cars();
    const auto g = emit_ground_program(program);
    EXPECT_EQ(g.stats.boxed_total, 62u);
    std::vector<std::size_t> per;
    for (const auto& [statement, n] : g.stats.boxed_by_statement()) per.push_back(n);
    EXPECT_EQ(per, (std::vector<std::size_t>{6, 8, 6, 30, 12}));
    EXPECT_EQ(g.stats.static_boxed, 22u);
    EXPECT_EQ(g.stats.dropped_head_atoms, 0u);
}

TEST(Baseline, TypedCars) {
    const auto b = baseline_ground(syntax::parse_program(oracles::read_data("cars_typed.tel")));
    EXPECT_EQ(b.boxed_total, 160u);
    std::map<std::size_t, std::size_t> by_statement;
    const auto program = syntax::parse_program(oracles::read_data("cars_typed.tel"));
    for (const auto& [rule, n] : b.per_rule)
        if (program.rules[rule].kind == syntax::RuleKind::always_dyn) by_statement[program.rules[rule].statement] += n;
    std::vector<std::size_t> per;
    for (const auto& [statement, n] : by_statement) per.push_back(n);
    EXPECT_EQ(per, (std::vector<std::size_t>{12, 16, 12, 60, 60}));
    EXPECT_EQ(b.static_extents.size(), 16u);
}

TEST(Baseline, UntypedVariablesThrow) { EXPECT_THROW(baseline_ground(cars()), DomainError); }

TEST(Baseline, EmptyStaticExtents) {
    const auto b = baseline_ground(syntax::parse_program("static car/1.\no at(X) :- at(X), car(X)."));
    EXPECT_EQ(b.boxed_total, 0u);
    EXPECT_TRUE(b.program.rules.empty());
}

TEST(Emit, StaticOnlyProgram) {
    const auto program = syntax::parse_program("static e/2.\ne(a,b). e(b,c).");
    const auto g = emit_ground_program(program);
    EXPECT_EQ(g.stats.boxed_total, 0u);
    EXPECT_EQ(g.stats.static_boxed, 2u);
}

TEST(Emit, SoundOnRandomPrograms) {
    // every emitted atom is derivable at its collapsed time, every kept
    // negative literal too, and strict mode changes nothing
    oracles::Rng rng(29);
    for (int n = 0; n < 150; ++n) {
        const auto text = oracles::random_safe_program(rng);
        const auto program = syntax::parse_program(text);
        const auto g = emit_ground_program(program);
        for (const auto& r : g.program.rules) {
            const std::size_t now = r.shift == Shift::zero ? 0 : r.shift == Shift::one ? 1 : 2;
            for (const auto* part : {&r.rule.body, &r.rule.neg, &r.rule.head})
                for (const auto& a : *part) EXPECT_TRUE(g.facts.contains(a, now)) << text;
            for (const auto* part : {&r.rule.next_body, &r.rule.next_neg, &r.rule.next_head})
                for (const auto& a : *part) EXPECT_TRUE(g.facts.contains(a, now + 1)) << text;
        }
        EXPECT_EQ(emit_ground_program(program, {true}).program, g.program) << text;
        EXPECT_EQ(g.stats.dropped_head_atoms, 0u);
    }
}

TEST(Emit, SameModelsAsFullInstantiation) {
    oracles::Rng rng(31);
    int compared = 0;
    for (int n = 0; n < 100; ++n) {
        const auto text = oracles::random_safe_program(rng, 2, 2, 4);
        const auto program = syntax::parse_program(text);
        if (program.constants.empty()) continue;
        const auto g = emit_ground_program(program);
        const auto emitted = semantics::from_emitted(g.program);
        const auto full = semantics::ground(program, safety::HerbrandDomain(program).constants());
        semantics::EnumerateOptions opts;
        opts.max_prefix = 2;
        opts.max_loop = 2;
        opts.node_limit = 2'000'000;
        std::vector<semantics::LassoTrace> a, b;
        try {
            a = semantics::enumerate_tsm_serial(emitted, opts);
            b = semantics::enumerate_tsm_serial(full, opts);
        } catch (const ResourceLimit&) {
            ADD_FAILURE() << "node limit on " << text;
            continue;
        }
        EXPECT_EQ(a, b) << text;
        ++compared;
    }
    EXPECT_GE(compared, 60);
}
