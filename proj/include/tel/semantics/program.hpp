#pragma once

#include <cstddef>
#include <vector>

#include "tel/formula.hpp"
#include "tel/pipeline.hpp"
#include "tel/syntax.hpp"

namespace tel::semantics {

/// A ground rule anchored in time. The rule is read at `start` only, or at
/// every time from `start` on when `always` is set; its o-parts refer to the
/// following time point.
struct TimedRule {
    syntax::Rule rule;
    std::size_t start = 0;
    bool always = false;

    /// No o-scoped atom anywhere: the rule lives in a single layer.
    bool present_only() const noexcept;
    bool applies_at(std::size_t t) const noexcept { return t == start || (always && t >= start); }

    bool operator==(const TimedRule&) const = default;
};

struct GroundProgram {
    std::vector<TimedRule> rules;

    /// Largest start point; beyond horizon() + 1 every layer sees the same rules.
    std::size_t horizon() const noexcept;

    bool operator==(const GroundProgram&) const = default;
};

/// Kinds (1) and (2) start at 0 once, kind (3) from 0 on.
/// Throws DomainError if a rule is not ground.
GroundProgram from_program(const syntax::Program& program);

/// [0] starts at 0, [1] at 1, [2..] from 2 on, [0..] from 0 on.
GroundProgram from_emitted(const pipeline::GroundTemporalProgram& program);

/// Instances over `domain` of every rule, kept with their kinds.
GroundProgram ground(const syntax::Program& program, const std::vector<std::string>& domain);

/// Ground instance over the program constants of the head-split program.
GroundProgram ground_positive_split(const syntax::Program& program);

syntax::FormulaPtr to_formula(const TimedRule& rule);
/// Conjunction of all rules.
syntax::FormulaPtr to_formula(const GroundProgram& program);

struct Partition {
    std::vector<syntax::Rule> ini0; // kind (1)
    std::vector<syntax::Rule> ini1; // kind (2)
    std::vector<syntax::Rule> dyn;  // kind (3)
    /// Rules anchored elsewhere, as produced by the emitter for [1] and [2..].
    std::vector<TimedRule> other;
};

Partition partition(const GroundProgram& program);

} // namespace tel::semantics
