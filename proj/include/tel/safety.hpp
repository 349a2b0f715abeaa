#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "tel/formula.hpp"
#include "tel/syntax.hpp"

namespace tel::safety {

struct RuleVerdict {
    std::size_t rule = 0;       // index into Program::rules
    std::size_t statement = 0;
    std::size_t line = 0;
    std::vector<std::string> unsafe_variables;

    bool safe() const noexcept { return unsafe_variables.empty(); }
};

struct SafetyReport {
    std::vector<RuleVerdict> verdicts;

    bool all_safe() const noexcept;
    /// Only the unsafe verdicts, one per source statement.
    std::vector<RuleVerdict> unsafe_statements() const;
};

/// A variable is safe when it occurs in some positive body atom, now or
/// next. Inequalities never make a variable safe.
RuleVerdict check_rule(const syntax::Rule& rule);
SafetyReport check_safety(const syntax::Program& program);

/// Throws DomainError naming the first unsafe rule.
void require_safe(const syntax::Program& program);

/// Program constants plus fresh extension symbols, disjoint from them.
class HerbrandDomain {
public:
    explicit HerbrandDomain(const syntax::Program& program, std::vector<std::string> extension = {});

    const std::set<std::string>& base() const noexcept { return base_; }
    const std::set<std::string>& extension() const noexcept { return extension_; }
    std::vector<std::string> constants() const;

private:
    std::set<std::string> base_;
    std::set<std::string> extension_;
};

/// Grounding of a sentence over a finite domain: forall becomes a
/// conjunction, exists a disjunction; every other connective commutes.
syntax::FormulaPtr ground_operator(const syntax::FormulaPtr& phi, const std::vector<std::string>& domain);

/// Every rule replaced by its instances over `domain`. Instances with a
/// violated inequality are dropped.
syntax::Program ground_program(const syntax::Program& program, const std::vector<std::string>& domain);

/// Calls visit(mu) for every substitution of `vars` over `domain` that keeps
/// the inequalities satisfied, in lexicographic order.
template <typename Visit>
void for_each_substitution(const std::vector<std::string>& vars, const std::vector<std::string>& domain,
                           const std::vector<syntax::Inequality>& ineqs, Visit&& visit);

/// Same count as for_each_substitution visits, without enumerating
/// variables that no inequality mentions.
std::size_t count_substitutions(const std::vector<std::string>& vars, const std::vector<std::string>& domain,
                                const std::vector<syntax::Inequality>& ineqs);

} // namespace tel::safety

#include "tel/detail/substitutions.hpp"
