#include "tel/safety.hpp"

#include <algorithm>

#include "tel/error.hpp"

namespace tel::safety {

using syntax::Formula;
using syntax::FormulaPtr;
namespace f = syntax::f;

bool SafetyReport::all_safe() const noexcept {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const RuleVerdict& v) { return v.safe(); });
}

std::vector<RuleVerdict> SafetyReport::unsafe_statements() const {
    std::vector<RuleVerdict> out;
    for (const auto& v : verdicts) {
        if (v.safe()) continue;
        if (!out.empty() && out.back().statement == v.statement) continue;
        out.push_back(v);
    }
    return out;
}

RuleVerdict check_rule(const syntax::Rule& rule) {
    std::set<std::string> bound;
    for (const auto* part : {&rule.body, &rule.next_body})
        for (const auto& a : *part)
            for (const auto& t : a.args)
                if (t.is_variable()) bound.insert(t.name);

    RuleVerdict verdict;
    verdict.statement = rule.statement;
    verdict.line = rule.line;
    for (const auto& v : rule.variables())
        if (!bound.contains(v)) verdict.unsafe_variables.push_back(v);
    return verdict;
}

SafetyReport check_safety(const syntax::Program& program) {
    SafetyReport report;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        RuleVerdict v = check_rule(program.rules[i]);
        v.rule = i;
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

void require_safe(const syntax::Program& program) {
    for (const auto& v : check_safety(program).verdicts) {
        if (v.safe()) continue;
        std::string vars;
        for (const auto& x : v.unsafe_variables) vars += (vars.empty() ? "" : ", ") + x;
        throw DomainError("unsafe rule at line " + std::to_string(v.line) + ": " +
                          syntax::to_string(program.rules[v.rule]) + " (unsafe: " + vars + ")");
    }
}

HerbrandDomain::HerbrandDomain(const syntax::Program& program, std::vector<std::string> extension)
    : base_(program.constants) {
    for (auto& c : extension) {
        if (base_.contains(c)) throw DomainError("extension constant " + c + " already occurs in the program");
        extension_.insert(std::move(c));
    }
}

std::vector<std::string> HerbrandDomain::constants() const {
    std::vector<std::string> out(base_.begin(), base_.end());
    out.insert(out.end(), extension_.begin(), extension_.end());
    std::sort(out.begin(), out.end());
    return out;
}

FormulaPtr ground_operator(const FormulaPtr& phi, const std::vector<std::string>& domain) {
    if (domain.empty()) throw DomainError("grounding over an empty domain");
    using Op = Formula::Op;
    switch (phi->op) {
    case Op::atom:
    case Op::bottom:
    case Op::equal:
    case Op::not_equal: return phi;
    case Op::forall:
    case Op::exists: {
        std::vector<FormulaPtr> parts;
        for (const auto& d : domain)
            parts.push_back(ground_operator(syntax::apply_substitution(phi->left, {{phi->var, d}}), domain));
        return phi->op == Op::forall ? f::conj_all(parts) : f::disj_all(parts);
    }
    case Op::next: return f::next(ground_operator(phi->left, domain));
    case Op::always: return f::always(ground_operator(phi->left, domain));
    case Op::eventually: return f::eventually(ground_operator(phi->left, domain));
    case Op::conj: return f::conj(ground_operator(phi->left, domain), ground_operator(phi->right, domain));
    case Op::disj: return f::disj(ground_operator(phi->left, domain), ground_operator(phi->right, domain));
    case Op::impl: return f::impl(ground_operator(phi->left, domain), ground_operator(phi->right, domain));
    }
    return phi;
}

syntax::Program ground_program(const syntax::Program& program, const std::vector<std::string>& domain) {
    syntax::Program out;
    out.static_decls = program.static_decls;
    for (const auto& rule : program.rules) {
        for_each_substitution(rule.variables(), domain, rule.ineqs, [&](const syntax::Substitution& mu) {
            if (auto g = syntax::apply_substitution(rule, mu)) out.rules.push_back(std::move(*g));
        });
    }
    out.constants = syntax::collect_constants(out.rules);
    return out;
}

std::size_t count_substitutions(const std::vector<std::string>& vars, const std::vector<std::string>& domain,
                                const std::vector<syntax::Inequality>& ineqs) {
    std::vector<std::string> constrained;
    std::size_t free = 0;
    for (const auto& v : vars) {
        const bool used = std::any_of(ineqs.begin(), ineqs.end(), [&](const syntax::Inequality& q) {
            return (q.lhs.is_variable() && q.lhs.name == v) || (q.rhs.is_variable() && q.rhs.name == v);
        });
        if (used)
            constrained.push_back(v);
        else
            ++free;
    }
    std::size_t count = 0;
    for_each_substitution(constrained, domain, ineqs, [&](const syntax::Substitution&) { ++count; });
    for (std::size_t i = 0; i < free; ++i) count *= domain.size();
    return count;
}

} // namespace tel::safety
