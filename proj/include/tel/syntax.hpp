#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tel::syntax {

struct Term {
    enum class Kind : std::uint8_t { constant, variable };

    Kind kind = Kind::constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::variable, std::move(name)}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }

    auto operator<=>(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const noexcept;

    auto operator<=>(const Atom&) const = default;
};

/// Convenience for ground atoms: make_atom("at", {"1", "madrid"}).
Atom make_atom(std::string predicate, const std::vector<std::string>& constants = {});

struct Inequality {
    Term lhs;
    Term rhs;

    auto operator<=>(const Inequality&) const = default;
};

/// One body or head literal as written. `next` counts a single leading `o`.
struct Literal {
    Atom atom;
    bool next = false;
    bool negative = false;

    auto operator<=>(const Literal&) const = default;
};

enum class RuleKind : std::uint8_t {
    init_present, ///< B & N -> H
    init_dyn,     ///< B & oB' & N & oN' -> oH'
    always_dyn,   ///< [](B & oB' & N & oN' -> oH')
};

std::string_view to_string(RuleKind kind);

/// A classified splittable rule. Variables are implicitly universally
/// quantified. `head` is used only by init_present rules, `next_head` only by
/// the two dynamic kinds; both empty means the head is bottom.
struct Rule {
    RuleKind kind = RuleKind::init_present;
    std::vector<Atom> body;
    std::vector<Atom> next_body;
    std::vector<Atom> neg;
    std::vector<Atom> next_neg;
    std::vector<Inequality> ineqs;
    std::vector<Atom> head;
    std::vector<Atom> next_head;

    /// Index of the source statement this rule came from.
    std::size_t statement = 0;
    std::size_t line = 0;
    /// True for both halves of an expanded o-free always rule.
    bool abbreviated = false;

    bool is_constraint() const noexcept { return head.empty() && next_head.empty(); }
    bool is_ground() const noexcept;
    bool has_next() const noexcept;

    /// Variables in order of first occurrence (heads, bodies, inequalities).
    std::vector<std::string> variables() const;

    /// Visits every atom of the rule (heads and bodies, both depths).
    template <typename F>
    void for_each_atom(F&& f) const {
        for (const auto* part : {&head, &next_head, &body, &next_body, &neg, &next_neg})
            for (const auto& a : *part) f(a);
    }

    bool operator==(const Rule&) const = default;
};

struct PredicateSig {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredicateSig&) const = default;
};

struct Program {
    std::vector<Rule> rules;
    std::set<std::string> constants;
    std::vector<PredicateSig> static_decls;

    bool is_static_predicate(std::string_view name) const;
    /// A rule all of whose atoms use declared static predicates.
    bool is_static_rule(const Rule& rule) const;

    bool operator==(const Program&) const = default;
};

/// A rule as read, before classification.
struct RawRule {
    bool init = false;
    std::vector<Literal> head;
    std::vector<Literal> body;
    std::vector<Inequality> ineqs;
    std::size_t statement = 0;
    std::size_t line = 0;

    bool has_next() const noexcept;
};

/// Assigns a kind and splits literals into (B, B', N, N', H, H').
/// Throws DomainError for shapes outside forms (1)-(3); o-free rules without
/// `init` must go through expand_abbreviation instead.
Rule classify(const RawRule& raw);

/// [](B & N -> H) read as the pair  B & N -> H  and  [](oB & oN -> oH).
std::pair<Rule, Rule> expand_abbreviation(const RawRule& raw);

using Substitution = std::map<std::string, std::string>;

/// Grounds a rule. Inequalities are evaluated: satisfied ones are dropped and
/// a violated one turns the whole rule into top (nullopt).
/// Throws DomainError if the substitution misses a variable of the rule.
std::optional<Rule> apply_substitution(const Rule& rule, const Substitution& mu);
Atom apply_substitution(const Atom& atom, const Substitution& mu);

/// Collects the constant symbols of a rule set.
std::set<std::string> collect_constants(const std::vector<Rule>& rules);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Rule& rule);

/// Surface syntax; o-free always rules expanded at parse time are printed back
/// as the single statement they came from.
std::string to_string(const Program& program);

} // namespace tel::syntax
