#include "tel/semantics/stable.hpp"

#include <algorithm>
#include <map>

#include "semantics/layer_solver.hpp"
#include "tel/error.hpp"
#include "tel/semantics/qht.hpp"

namespace tel::semantics {

using detail::AtomTable;
using detail::CompiledProgram;
using detail::IdRule;
using detail::IdState;

std::optional<PlainRule> simp(const syntax::Rule& rule, const State& x) {
    const bool body = std::all_of(rule.body.begin(), rule.body.end(), [&](const auto& a) { return x.contains(a); });
    const bool neg = std::none_of(rule.neg.begin(), rule.neg.end(), [&](const auto& a) { return x.contains(a); });
    if (!body || !neg) return std::nullopt;
    return PlainRule{rule.next_body, rule.next_neg, rule.next_head};
}

SliceProgram slice(const GroundProgram& program, const LassoTrace& trace, std::size_t i) {
    SliceProgram out;
    for (const auto& t : program.rules) {
        if (t.present_only()) {
            if (t.applies_at(i)) out.push_back({t.rule.body, t.rule.neg, t.rule.head});
            continue;
        }
        if (i == 0 || !t.applies_at(i - 1)) continue;
        if (auto r = simp(t.rule, trace.state(i - 1))) out.push_back(std::move(*r));
    }
    return out;
}

bool is_model(const SliceProgram& program, const State& x) {
    auto in = [&](const syntax::Atom& a) { return x.contains(a); };
    for (const auto& r : program) {
        if (!std::all_of(r.body.begin(), r.body.end(), in) || std::any_of(r.neg.begin(), r.neg.end(), in)) continue;
        if (std::none_of(r.head.begin(), r.head.end(), in)) return false;
    }
    return true;
}

bool is_stable_model(const SliceProgram& program, const State& x) {
    AtomTable table;
    std::vector<IdRule> rules;
    auto ids = [&](const std::vector<syntax::Atom>& atoms) {
        std::vector<detail::AtomId> out;
        for (const auto& a : atoms) out.push_back(table.intern(a));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    for (const auto& r : program) rules.push_back({ids(r.body), ids(r.neg), ids(r.head)});
    IdState xs;
    if (!table.encode(x, xs)) return false;
    return detail::is_stable_ids(rules, xs, table.size());
}

bool is_temporal_stable(const GroundProgram& program, const LassoTrace& trace) {
    if (!ltl_holds(*to_formula(program), trace)) return false;

    const CompiledProgram compiled(program);
    const std::size_t k = trace.prefix_length();
    const std::size_t l = trace.loop_length();
    std::vector<IdState> states(k + l);
    for (std::size_t i = 0; i < k + l; ++i)
        if (!compiled.atoms.encode(trace.state(i), states[i])) return false;

    const std::size_t n = compiled.atoms.size();
    const std::size_t last = std::max(k + 1, compiled.saturation()) + l;
    for (std::size_t j = 0; j < last; ++j) {
        detail::Mask prev;
        if (j > 0) prev = detail::to_mask(states[trace.fold(j - 1)], n);
        const auto rules = compiled.slice(j, j > 0 ? &prev : nullptr);
        if (!detail::is_stable_ids(rules, states[trace.fold(j)], n)) return false;
    }
    return true;
}

LassoTrace lm_lasso(const GroundProgram& program) {
    for (const auto& t : program.rules) {
        const auto& r = t.rule;
        if (!r.neg.empty() || !r.next_neg.empty() || r.head.size() + r.next_head.size() != 1)
            throw DomainError("program is not positive normal: " + syntax::to_string(r));
    }
    const CompiledProgram compiled(program);
    const std::size_t n = compiled.atoms.size();
    const std::size_t settle = compiled.saturation() - 1;

    std::vector<IdState> states{detail::least_model_ids(compiled.slice(0, nullptr), n)};
    // Past `settle` every state is computed from its predecessor by the same
    // rules, so the first repeat there closes the loop.
    std::map<IdState, std::size_t> seen;
    for (std::size_t j = 1;; ++j) {
        const detail::Mask prev = detail::to_mask(states.back(), n);
        IdState next = detail::least_model_ids(compiled.slice(j, &prev), n);
        if (auto it = seen.find(next); it != seen.end()) {
            LassoTrace out;
            out.loop.clear();
            for (std::size_t i = 0; i < j; ++i)
                (i < it->second ? out.prefix : out.loop).push_back(compiled.atoms.decode(states[i]));
            return canonical(std::move(out));
        }
        if (j >= settle) seen.emplace(next, j);
        states.push_back(std::move(next));
    }
}

std::string to_string(const PlainRule& rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) out += (i ? " v " : "") + syntax::to_string(rule.head[i]);
    std::vector<std::string> body;
    for (const auto& a : rule.body) body.push_back(syntax::to_string(a));
    for (const auto& a : rule.neg) body.push_back("not " + syntax::to_string(a));
    if (!body.empty()) {
        out += out.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) out += (i ? ", " : "") + body[i];
    }
    return out + ".";
}

} // namespace tel::semantics
