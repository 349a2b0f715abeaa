#include "tel/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "tel/error.hpp"
#include "tel/safety.hpp"

namespace tel::pipeline {

using syntax::Atom;
using syntax::Program;
using syntax::Rule;
using syntax::RuleKind;

std::string_view tag(Shift shift) {
    switch (shift) {
    case Shift::zero: return "[0]";
    case Shift::one: return "[1]";
    case Shift::from_two: return "[2..]";
    case Shift::from_zero: return "[0..]";
    }
    return "[?]";
}

bool DerivableFacts::contains(const Atom& atom, std::size_t time) const {
    return state(time).contains(atom);
}

std::map<std::size_t, std::size_t> GroundingStats::boxed_by_statement() const {
    std::map<std::size_t, std::size_t> out;
    for (const auto& c : per_rule)
        if (!c.is_static && c.by_shift[2] > 0) out[c.statement] += c.by_shift[2];
    return out;
}

Program head_split(const Program& program) {
    Program out;
    out.static_decls = program.static_decls;
    for (const auto& rule : program.rules) {
        const auto& heads = rule.kind == RuleKind::init_present ? rule.head : rule.next_head;
        for (const auto& p : heads) {
            Rule r = rule;
            r.neg.clear();
            r.next_neg.clear();
            r.head.clear();
            r.next_head.clear();
            (rule.kind == RuleKind::init_present ? r.head : r.next_head).push_back(p);
            out.rules.push_back(std::move(r));
        }
    }
    out.constants = syntax::collect_constants(out.rules);
    return out;
}

// '@' and '#' cannot occur in surface predicate names.
std::string timed_predicate(const std::string& name, int time) { return name + "@" + std::to_string(time); }

std::string subst_predicate(std::size_t rule, int shift) {
    return "#subst_" + std::to_string(rule) + "_" + std::to_string(shift);
}

namespace {

Atom timed(const Atom& a, int time) { return Atom{timed_predicate(a.predicate, time), a.args}; }

void append_timed(std::vector<Atom>& out, const std::vector<Atom>& atoms, int time) {
    for (const auto& a : atoms) out.push_back(timed(a, time));
}

datalog::Rule flat_rule(const Rule& r, int now, int next, const Atom& head, int head_time) {
    datalog::Rule d;
    append_timed(d.body, r.body, now);
    append_timed(d.body, r.next_body, next);
    d.ineqs = r.ineqs;
    d.head = timed(head, head_time);
    return d;
}

std::vector<int> shifts_of(const Rule& r) {
    return r.kind == RuleKind::always_dyn ? std::vector<int>{0, 1, 2} : std::vector<int>{0};
}

std::vector<syntax::Term> var_terms(const Rule& r) {
    std::vector<syntax::Term> out;
    for (const auto& v : r.variables()) out.push_back(syntax::Term::variable(v));
    return out;
}

// Splits "name@t" back; returns -1 for non-timed predicates.
int split_timed(const std::string& pred, std::string& name) {
    const auto at = pred.rfind('@');
    if (at == std::string::npos || pred.starts_with("#")) return -1;
    name = pred.substr(0, at);
    return std::stoi(pred.substr(at + 1));
}

DerivableFacts extract_delta(const datalog::FactSet& model) {
    DerivableFacts delta;
    for (const auto& fact : model) {
        std::string name;
        const int t = split_timed(fact.predicate, name);
        if (t < 0) continue;
        delta.at[static_cast<std::size_t>(t)].insert(Atom{name, fact.args});
    }
    return delta;
}

} // namespace

std::vector<datalog::Rule> gamma_flatten(const Program& positive) {
    std::vector<datalog::Rule> out;
    for (const auto& r : positive.rules) {
        if (!r.neg.empty() || !r.next_neg.empty())
            throw DomainError("gamma_flatten expects a positive program: " + syntax::to_string(r));
        const auto& heads = r.kind == RuleKind::init_present ? r.head : r.next_head;
        if (heads.size() != 1)
            throw DomainError("gamma_flatten expects exactly one head atom: " + syntax::to_string(r));
        const Atom& p = heads.front();
        switch (r.kind) {
        case RuleKind::init_present: out.push_back(flat_rule(r, 0, 0, p, 0)); break;
        case RuleKind::init_dyn: out.push_back(flat_rule(r, 0, 1, p, 1)); break;
        case RuleKind::always_dyn:
            out.push_back(flat_rule(r, 0, 1, p, 1));
            out.push_back(flat_rule(r, 1, 2, p, 2));
            out.push_back(flat_rule(r, 2, 2, p, 2));
            break;
        }
    }
    return out;
}

std::vector<datalog::Rule> subst_rules(const Program& program) {
    std::vector<datalog::Rule> out;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& r = program.rules[i];
        for (int s : shifts_of(r)) {
            datalog::Rule d;
            append_timed(d.body, r.body, std::min(s, 2));
            append_timed(d.body, r.next_body, std::min(s + 1, 2));
            d.ineqs = r.ineqs;
            d.head = Atom{subst_predicate(i, s), var_terms(r)};
            out.push_back(std::move(d));
        }
    }
    return out;
}

DerivableFacts derivable_facts(const Program& program) {
    safety::require_safe(program);
    const auto rules = gamma_flatten(head_split(program));
    return extract_delta(datalog::least_model(rules));
}

Grounding emit_ground_program(const Program& program, const EmitOptions& options) {
    safety::require_safe(program);

    auto rules = gamma_flatten(head_split(program));
    const auto extraction = subst_rules(program);
    rules.insert(rules.end(), extraction.begin(), extraction.end());
    const auto model = datalog::least_model(rules);

    Grounding g;
    g.facts = extract_delta(model);

    std::map<std::string, std::pair<std::size_t, int>> subst_names;
    for (std::size_t i = 0; i < program.rules.size(); ++i)
        for (int s : shifts_of(program.rules[i])) subst_names.emplace(subst_predicate(i, s), std::make_pair(i, s));
    for (const auto& fact : model) {
        auto it = subst_names.find(fact.predicate);
        if (it == subst_names.end()) continue;
        const auto vars = program.rules[it->second.first].variables();
        syntax::Substitution mu;
        for (std::size_t k = 0; k < vars.size(); ++k) mu.emplace(vars[k], fact.args[k].name);
        g.substitutions[it->second].push_back(std::move(mu));
    }

    const std::vector<std::string> constants(program.constants.begin(), program.constants.end());
    std::size_t full_total = 0;

    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& rule = program.rules[i];
        RuleCounts counts;
        counts.rule = i;
        counts.statement = rule.statement;
        counts.is_static = program.is_static_rule(rule);
        const std::size_t per_shift = safety::count_substitutions(rule.variables(), constants, rule.ineqs);

        for (int s : shifts_of(rule)) {
            full_total += per_shift;
            auto it = g.substitutions.find({i, s});
            if (it == g.substitutions.end()) continue;
            const std::size_t now = rule.kind == RuleKind::always_dyn ? static_cast<std::size_t>(s) : 0;
            const std::size_t next = now + 1;
            const std::size_t head_time = rule.kind == RuleKind::init_present ? now : next;

            for (const auto& mu : it->second) {
                auto ground = syntax::apply_substitution(rule, mu);
                if (!ground) continue;
                Rule& r = *ground;

                auto prune = [&](std::vector<Atom>& atoms, std::size_t time, std::size_t& counter) {
                    const auto before = atoms.size();
                    std::erase_if(atoms, [&](const Atom& a) { return !g.facts.contains(a, time); });
                    counter += before - atoms.size();
                };
                prune(r.neg, now, g.stats.dropped_literals);
                prune(r.next_neg, next, g.stats.dropped_literals);
                if (!options.strict_paper) {
                    prune(r.head, head_time, g.stats.dropped_head_atoms);
                    prune(r.next_head, head_time, g.stats.dropped_head_atoms);
                }

                GroundRule out;
                out.rule = std::move(r);
                out.source = i;
                out.shift = s == 0 ? Shift::zero : s == 1 ? Shift::one : Shift::from_two;
                g.program.rules.push_back(std::move(out));
                ++counts.by_shift[static_cast<std::size_t>(s)];
                ++g.stats.emitted_total;
            }
        }
        if (counts.is_static)
            g.stats.static_boxed += counts.by_shift[2];
        else
            g.stats.boxed_total += counts.by_shift[2];
        g.stats.per_rule.push_back(counts);
    }
    g.stats.dropped_rules = full_total - std::min(full_total, g.stats.emitted_total);
    return g;
}

BaselineGrounding baseline_ground(const Program& program) {
    std::vector<datalog::Rule> rules;
    for (const auto& r : program.rules) {
        if (!program.is_static_rule(r) || r.kind != RuleKind::init_present) continue;
        if (r.head.size() != 1 || !r.neg.empty())
            throw DomainError("static rules must be positive normal: " + syntax::to_string(r));
        rules.push_back(datalog::Rule{r.head.front(), r.body, r.ineqs});
    }

    std::map<std::string, std::size_t> base_names;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& r = program.rules[i];
        if (program.is_static_rule(r)) continue;
        datalog::Rule d;
        std::set<std::string> typed;
        for (const auto* part : {&r.body, &r.next_body})
            for (const auto& a : *part) {
                if (!program.is_static_predicate(a.predicate)) continue;
                d.body.push_back(a);
                for (const auto& t : a.args)
                    if (t.is_variable()) typed.insert(t.name);
            }
        for (const auto& v : r.variables())
            if (!typed.contains(v))
                throw DomainError("untyped variable " + v + " at line " + std::to_string(r.line) +
                                  ": no static body atom binds it");
        d.ineqs = r.ineqs;
        const std::string name = "#base_" + std::to_string(i);
        d.head = Atom{name, var_terms(r)};
        base_names.emplace(name, i);
        rules.push_back(std::move(d));
    }

    const auto model = datalog::least_model(rules);
    BaselineGrounding out;
    std::map<std::size_t, std::vector<syntax::Substitution>> subs;
    for (const auto& fact : model) {
        if (program.is_static_predicate(fact.predicate)) {
            out.static_extents.insert(fact);
            continue;
        }
        auto it = base_names.find(fact.predicate);
        if (it == base_names.end()) continue;
        const auto vars = program.rules[it->second].variables();
        syntax::Substitution mu;
        for (std::size_t k = 0; k < vars.size(); ++k) mu.emplace(vars[k], fact.args[k].name);
        subs[it->second].push_back(std::move(mu));
    }

    for (const auto& [i, list] : subs) {
        const Rule& rule = program.rules[i];
        for (const auto& mu : list) {
            auto ground = syntax::apply_substitution(rule, mu);
            if (!ground) continue;
            const bool boxed = rule.kind == RuleKind::always_dyn;
            out.program.rules.push_back({boxed ? Shift::from_zero : Shift::zero, std::move(*ground), i});
            if (boxed) {
                ++out.boxed_total;
                ++out.per_rule[i];
            }
        }
    }
    return out;
}

std::string to_string(const GroundRule& rule) {
    std::string text = syntax::to_string(rule.rule);
    if (text.starts_with("init ")) text.erase(0, 5);
    return std::string(tag(rule.shift)) + " " + text;
}

std::string to_string(const GroundTemporalProgram& program) {
    std::ostringstream out;
    for (const auto& r : program.rules) out << to_string(r) << '\n';
    return out.str();
}

std::string stats_table(const Program& program, const GroundingStats& stats) {
    struct Row {
        std::size_t line = 0;
        std::array<std::size_t, 3> counts{};
        bool is_static = true;
        std::string text;
    };
    std::map<std::size_t, Row> rows;
    for (const auto& c : stats.per_rule) {
        const Rule& r = program.rules[c.rule];
        auto [it, inserted] = rows.try_emplace(c.statement);
        Row& row = it->second;
        if (inserted) {
            row.line = r.line;
            Program single;
            single.rules.push_back(r);
            if (r.abbreviated) single.rules.back().kind = RuleKind::init_present;
            row.text = syntax::to_string(single);
            if (!row.text.empty() && row.text.back() == '\n') row.text.pop_back();
        }
        for (std::size_t k = 0; k < 3; ++k) row.counts[k] += c.by_shift[k];
        row.is_static = row.is_static && c.is_static;
    }

    std::ostringstream out;
    out << std::left << std::setw(6) << "line" << std::right << std::setw(7) << "[0]" << std::setw(7) << "[1]"
        << std::setw(7) << "[2..]" << "  rule\n";
    for (const auto& [stmt, row] : rows) {
        out << std::left << std::setw(6) << row.line << std::right;
        for (auto n : row.counts) out << std::setw(7) << n;
        out << "  " << row.text << (row.is_static ? "  (static)" : "") << '\n';
    }
    out << "boxed [2..] rules: " << stats.boxed_total << '\n';
    out << "static [2..] rules: " << stats.static_boxed << '\n';
    out << "emitted rules: " << stats.emitted_total << '\n';
    out << "dropped rules: " << stats.dropped_rules << '\n';
    out << "dropped negative literals: " << stats.dropped_literals << '\n';
    out << "dropped head atoms: " << stats.dropped_head_atoms << '\n';
    if (stats.baseline_boxed) out << "baseline boxed rules: " << *stats.baseline_boxed << '\n';
    return out.str();
}

} // namespace tel::pipeline
