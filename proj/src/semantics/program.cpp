#include "tel/semantics/program.hpp"

#include <algorithm>

#include "tel/error.hpp"
#include "tel/safety.hpp"

namespace tel::semantics {

using syntax::RuleKind;
namespace f = syntax::f;

bool TimedRule::present_only() const noexcept {
    return rule.next_body.empty() && rule.next_neg.empty() && rule.next_head.empty();
}

std::size_t GroundProgram::horizon() const noexcept {
    std::size_t h = 0;
    for (const auto& r : rules) h = std::max(h, r.start);
    return h;
}

GroundProgram from_program(const syntax::Program& program) {
    GroundProgram out;
    for (const auto& r : program.rules) {
        if (!r.is_ground()) throw DomainError("rule is not ground: " + syntax::to_string(r));
        if (!r.ineqs.empty()) {
            auto g = syntax::apply_substitution(r, {});
            if (g) out.rules.push_back({std::move(*g), 0, r.kind == RuleKind::always_dyn});
            continue;
        }
        out.rules.push_back({r, 0, r.kind == RuleKind::always_dyn});
    }
    return out;
}

GroundProgram from_emitted(const pipeline::GroundTemporalProgram& program) {
    GroundProgram out;
    for (const auto& g : program.rules) {
        TimedRule r{g.rule, 0, false};
        switch (g.shift) {
        case pipeline::Shift::zero: break;
        case pipeline::Shift::one: r.start = 1; break;
        case pipeline::Shift::from_two: r.start = 2; r.always = true; break;
        case pipeline::Shift::from_zero: r.always = true; break;
        }
        out.rules.push_back(std::move(r));
    }
    return out;
}

GroundProgram ground(const syntax::Program& program, const std::vector<std::string>& domain) {
    return from_program(safety::ground_program(program, domain));
}

GroundProgram ground_positive_split(const syntax::Program& program) {
    const std::vector<std::string> domain(program.constants.begin(), program.constants.end());
    return ground(pipeline::head_split(program), domain);
}

syntax::FormulaPtr to_formula(const TimedRule& timed) {
    const auto& r = timed.rule;
    std::vector<syntax::FormulaPtr> body, head;
    for (const auto& a : r.body) body.push_back(f::atom(a));
    for (const auto& a : r.next_body) body.push_back(f::next(f::atom(a)));
    for (const auto& a : r.neg) body.push_back(f::neg(f::atom(a)));
    for (const auto& a : r.next_neg) body.push_back(f::neg(f::next(f::atom(a))));
    for (const auto& q : r.ineqs) body.push_back(f::not_equal(q.lhs, q.rhs));
    for (const auto& a : r.head) head.push_back(f::atom(a));
    for (const auto& a : r.next_head) head.push_back(f::next(f::atom(a)));
    auto phi = f::impl(f::conj_all(body), f::disj_all(head));
    if (timed.always) phi = f::always(phi);
    return timed.start ? f::next(phi, timed.start) : phi;
}

syntax::FormulaPtr to_formula(const GroundProgram& program) {
    std::vector<syntax::FormulaPtr> parts;
    parts.reserve(program.rules.size());
    for (const auto& r : program.rules) parts.push_back(to_formula(r));
    return f::conj_all(parts);
}

Partition partition(const GroundProgram& program) {
    Partition p;
    for (const auto& r : program.rules) {
        if (r.start != 0) {
            p.other.push_back(r);
            continue;
        }
        if (r.always && !r.present_only())
            p.dyn.push_back(r.rule);
        else if (!r.always && r.present_only())
            p.ini0.push_back(r.rule);
        else if (!r.always)
            p.ini1.push_back(r.rule);
        else
            p.other.push_back(r);
    }
    return p;
}

} // namespace tel::semantics
