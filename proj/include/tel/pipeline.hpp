#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tel/datalog.hpp"
#include "tel/syntax.hpp"

namespace tel::pipeline {

/// Time scope of an emitted ground rule. `from_two` rules hold at every time
/// point from 2 on; `from_zero` is only produced by the baseline grounder.
enum class Shift : std::uint8_t { zero, one, from_two, from_zero };

std::string_view tag(Shift shift); // "[0]", "[1]", "[2..]", "[0..]"

struct GroundRule {
    Shift shift = Shift::zero;
    syntax::Rule rule;
    std::size_t source = 0; // index into the input Program::rules

    bool operator==(const GroundRule&) const = default;
};

struct GroundTemporalProgram {
    std::vector<GroundRule> rules;

    bool operator==(const GroundTemporalProgram&) const = default;
};

/// Derivable ground facts at times 0, 1 and >= 2.
struct DerivableFacts {
    std::array<std::set<syntax::Atom>, 3> at;

    /// Time is collapsed: every t >= 2 reads the third set.
    bool contains(const syntax::Atom& atom, std::size_t time) const;
    const std::set<syntax::Atom>& state(std::size_t time) const { return at[time < 2 ? time : 2]; }
};

/// Substitutions enabled by Delta, per (rule index, shift 0/1/2).
using SubstTable = std::map<std::pair<std::size_t, int>, std::vector<syntax::Substitution>>;

struct RuleCounts {
    std::size_t rule = 0;
    std::size_t statement = 0;
    std::array<std::size_t, 3> by_shift{}; // [0], [1], [2..]
    bool is_static = false;
};

struct GroundingStats {
    std::vector<RuleCounts> per_rule;
    /// Emitted [2..] instances of rules that are not purely static.
    std::size_t boxed_total = 0;
    std::size_t static_boxed = 0;
    std::size_t emitted_total = 0;
    /// Instances a plain instantiation over the program constants would
    /// produce minus the emitted ones.
    std::size_t dropped_rules = 0;
    std::size_t dropped_literals = 0;
    std::size_t dropped_head_atoms = 0;
    std::optional<std::size_t> baseline_boxed;

    /// [2..] counts summed per source statement, non-static rules only.
    std::map<std::size_t, std::size_t> boxed_by_statement() const;
};

struct EmitOptions {
    /// Keep head disjuncts even when they are never derivable.
    bool strict_paper = false;
};

/// Pi^: one rule per head atom, negation dropped, constraints removed.
syntax::Program head_split(const syntax::Program& program);

/// Name of the time-tagged copy of a predicate inside the datalog program.
std::string timed_predicate(const std::string& name, int time);
std::string subst_predicate(std::size_t rule, int shift);

/// Three time copies of a positive normal program with time >= 2 collapsed.
/// Throws DomainError on negation or disjunction.
std::vector<datalog::Rule> gamma_flatten(const syntax::Program& positive);

/// One rule per (rule, shift) deriving the substitutions whose positive body
/// is derivable at the collapsed times. Variable order is Rule::variables().
std::vector<datalog::Rule> subst_rules(const syntax::Program& program);

/// Delta for a safe program. Throws DomainError if unsafe.
DerivableFacts derivable_facts(const syntax::Program& program);

struct Grounding {
    GroundTemporalProgram program;
    GroundingStats stats;
    DerivableFacts facts;
    SubstTable substitutions;
};

/// Delta-driven ground program. Negative literals and (unless strict) head
/// atoms outside Delta at their collapsed time are removed.
Grounding emit_ground_program(const syntax::Program& program, const EmitOptions& options = {});

struct BaselineGrounding {
    GroundTemporalProgram program;
    std::size_t boxed_total = 0;
    /// [0..] instances per rule index, non-static rules only.
    std::map<std::size_t, std::size_t> per_rule;
    std::set<syntax::Atom> static_extents;
};

/// Instantiation over static extents: every variable of a temporal rule must
/// occur in a static body atom. Throws DomainError for untyped variables.
BaselineGrounding baseline_ground(const syntax::Program& program);

std::string to_string(const GroundRule& rule);
std::string to_string(const GroundTemporalProgram& program);
std::string stats_table(const syntax::Program& program, const GroundingStats& stats);

} // namespace tel::pipeline
