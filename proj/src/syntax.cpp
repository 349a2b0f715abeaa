#include "tel/syntax.hpp"

#include <algorithm>
#include <sstream>

#include "tel/error.hpp"

namespace tel::syntax {

bool Atom::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

Atom make_atom(std::string predicate, const std::vector<std::string>& constants) {
    Atom atom{std::move(predicate), {}};
    atom.args.reserve(constants.size());
    for (const auto& c : constants) atom.args.push_back(Term::constant(c));
    return atom;
}

std::string_view to_string(RuleKind kind) {
    switch (kind) {
    case RuleKind::init_present: return "init-present";
    case RuleKind::init_dyn: return "init-dyn";
    case RuleKind::always_dyn: return "always-dyn";
    }
    return "?";
}

bool Rule::is_ground() const noexcept {
    bool ground = true;
    for_each_atom([&](const Atom& a) { ground = ground && a.is_ground(); });
    for (const auto& q : ineqs) ground = ground && !q.lhs.is_variable() && !q.rhs.is_variable();
    return ground;
}

bool Rule::has_next() const noexcept {
    return !next_body.empty() || !next_neg.empty() || !next_head.empty();
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> vars;
    auto note = [&](const Term& t) {
        if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end())
            vars.push_back(t.name);
    };
    for_each_atom([&](const Atom& a) {
        for (const auto& t : a.args) note(t);
    });
    for (const auto& q : ineqs) {
        note(q.lhs);
        note(q.rhs);
    }
    return vars;
}

bool Program::is_static_predicate(std::string_view name) const {
    return std::any_of(static_decls.begin(), static_decls.end(),
                       [&](const PredicateSig& s) { return s.name == name; });
}

bool Program::is_static_rule(const Rule& rule) const {
    if (static_decls.empty()) return false;
    bool all = true;
    bool any = false;
    rule.for_each_atom([&](const Atom& a) {
        any = true;
        all = all && is_static_predicate(a.predicate);
    });
    return any && all;
}

bool RawRule::has_next() const noexcept {
    auto nx = [](const Literal& l) { return l.next; };
    return std::any_of(head.begin(), head.end(), nx) || std::any_of(body.begin(), body.end(), nx);
}

namespace {

void split_body(const RawRule& raw, Rule& rule, bool force_next) {
    for (const auto& lit : raw.body) {
        const bool next = lit.next || force_next;
        if (lit.negative)
            (next ? rule.next_neg : rule.neg).push_back(lit.atom);
        else
            (next ? rule.next_body : rule.body).push_back(lit.atom);
    }
    rule.ineqs = raw.ineqs;
}

} // namespace

Rule classify(const RawRule& raw) {
    for (const auto& h : raw.head)
        if (h.negative)
            throw DomainError("negative literal in head: not " + to_string(h.atom));

    const bool head_next = std::any_of(raw.head.begin(), raw.head.end(), [](const Literal& l) { return l.next; });
    const bool head_now = std::any_of(raw.head.begin(), raw.head.end(), [](const Literal& l) { return !l.next; });
    if (head_next && head_now) {
        for (const auto& h : raw.head)
            if (!h.next)
                throw DomainError("head mixes o and non-o atoms at " + to_string(h.atom));
    }

    if (!raw.init && !raw.has_next())
        throw DomainError("o-free rule without init is an abbreviation; expand it first");

    Rule rule;
    rule.statement = raw.statement;
    rule.line = raw.line;

    if (raw.init && !raw.has_next()) {
        rule.kind = RuleKind::init_present;
        split_body(raw, rule, false);
        for (const auto& h : raw.head) rule.head.push_back(h.atom);
        return rule;
    }

    if (head_now) {
        // A present-time head with o in the body fits none of the forms.
        for (const auto& b : raw.body)
            if (b.next)
                throw DomainError("o in body requires an o head, offending literal " +
                                  std::string(b.negative ? "not " : "") + "o " + to_string(b.atom));
    }

    rule.kind = raw.init ? RuleKind::init_dyn : RuleKind::always_dyn;
    split_body(raw, rule, false);
    for (const auto& h : raw.head) rule.next_head.push_back(h.atom);
    return rule;
}

std::pair<Rule, Rule> expand_abbreviation(const RawRule& raw) {
    RawRule present = raw;
    present.init = true;
    Rule now = classify(present);
    now.abbreviated = true;

    Rule later;
    later.kind = RuleKind::always_dyn;
    later.statement = raw.statement;
    later.line = raw.line;
    later.abbreviated = true;
    split_body(raw, later, true);
    later.next_head = now.head;
    return {std::move(now), std::move(later)};
}

Atom apply_substitution(const Atom& atom, const Substitution& mu) {
    Atom out{atom.predicate, {}};
    out.args.reserve(atom.args.size());
    for (const auto& t : atom.args) {
        if (!t.is_variable()) {
            out.args.push_back(t);
            continue;
        }
        auto it = mu.find(t.name);
        if (it == mu.end()) throw DomainError("substitution does not bind variable " + t.name);
        out.args.push_back(Term::constant(it->second));
    }
    return out;
}

namespace {

Term substitute(const Term& t, const Substitution& mu) {
    if (!t.is_variable()) return t;
    auto it = mu.find(t.name);
    if (it == mu.end()) throw DomainError("substitution does not bind variable " + t.name);
    return Term::constant(it->second);
}

std::vector<Atom> substitute_all(const std::vector<Atom>& atoms, const Substitution& mu) {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(apply_substitution(a, mu));
    return out;
}

} // namespace

std::optional<Rule> apply_substitution(const Rule& rule, const Substitution& mu) {
    for (const auto& v : rule.variables())
        if (!mu.contains(v)) throw DomainError("substitution does not bind variable " + v);
    for (const auto& q : rule.ineqs)
        if (substitute(q.lhs, mu) == substitute(q.rhs, mu)) return std::nullopt;

    Rule out = rule;
    out.ineqs.clear();
    out.body = substitute_all(rule.body, mu);
    out.next_body = substitute_all(rule.next_body, mu);
    out.neg = substitute_all(rule.neg, mu);
    out.next_neg = substitute_all(rule.next_neg, mu);
    out.head = substitute_all(rule.head, mu);
    out.next_head = substitute_all(rule.next_head, mu);
    return out;
}

std::set<std::string> collect_constants(const std::vector<Rule>& rules) {
    std::set<std::string> out;
    auto note = [&](const Term& t) {
        if (!t.is_variable()) out.insert(t.name);
    };
    for (const auto& r : rules) {
        r.for_each_atom([&](const Atom& a) {
            for (const auto& t : a.args) note(t);
        });
        for (const auto& q : r.ineqs) {
            note(q.lhs);
            note(q.rhs);
        }
    }
    return out;
}

std::string to_string(const Term& term) { return term.name; }

std::string to_string(const Atom& atom) {
    std::string out = atom.predicate;
    if (!atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i) out += ',';
            out += atom.args[i].name;
        }
        out += ')';
    }
    return out;
}

namespace {

std::string render(const Rule& rule, bool as_abbreviation) {
    std::vector<std::string> head;
    std::vector<std::string> body;
    const char* next = as_abbreviation ? "" : "o ";
    for (const auto& a : rule.head) head.push_back(to_string(a));
    for (const auto& a : rule.next_head) head.push_back("o " + to_string(a));
    for (const auto& a : rule.body) body.push_back(to_string(a));
    for (const auto& a : rule.next_body) body.push_back(next + to_string(a));
    for (const auto& a : rule.neg) body.push_back("not " + to_string(a));
    for (const auto& a : rule.next_neg) body.push_back(std::string("not ") + next + to_string(a));
    for (const auto& q : rule.ineqs) body.push_back(to_string(q.lhs) + "!=" + to_string(q.rhs));

    std::string out;
    if (rule.kind != RuleKind::always_dyn && !as_abbreviation) out += "init";
    auto join = [](const std::vector<std::string>& parts, const char* sep) {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += sep;
            s += parts[i];
        }
        return s;
    };
    if (!head.empty()) {
        if (!out.empty()) out += ' ';
        out += join(head, " v ");
    }
    if (!body.empty()) {
        if (!out.empty()) out += ' ';
        out += ":- " + join(body, ", ");
    }
    out += '.';
    return out;
}

} // namespace

std::string to_string(const Rule& rule) { return render(rule, false); }

std::string to_string(const Program& program) {
    std::ostringstream out;
    if (!program.static_decls.empty()) {
        out << "static ";
        for (std::size_t i = 0; i < program.static_decls.size(); ++i) {
            if (i) out << ", ";
            out << program.static_decls[i].name << '/' << program.static_decls[i].arity;
        }
        out << ".\n";
    }
    for (const auto& rule : program.rules) {
        if (rule.abbreviated) {
            if (rule.kind == RuleKind::init_present) out << render(rule, true) << '\n';
            continue;
        }
        out << render(rule, false) << '\n';
    }
    return out.str();
}

} // namespace tel::syntax
