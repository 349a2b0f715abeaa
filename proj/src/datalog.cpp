#include "tel/datalog.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "tel/error.hpp"

namespace tel::datalog {

void require_safe(const Rule& rule) {
    std::set<std::string> bound;
    for (const auto& a : rule.body)
        for (const auto& t : a.args)
            if (t.is_variable()) bound.insert(t.name);
    auto check = [&](const syntax::Term& t) {
        if (t.is_variable() && !bound.contains(t.name))
            throw DomainError("unsafe datalog rule, variable " + t.name + " unbound: " + to_string(rule));
    };
    for (const auto& t : rule.head.args) check(t);
    for (const auto& q : rule.ineqs) {
        check(q.lhs);
        check(q.rhs);
    }
}

namespace {

using Tuple = std::vector<int>;

struct Arg {
    bool variable = false;
    int id = 0; // constant id or variable slot
};

struct CAtom {
    int pred = 0;
    std::vector<Arg> args;
};

struct CIneq {
    Arg lhs, rhs;
};

struct CRule {
    CAtom head;
    std::vector<CAtom> body;
    // checks[i] run once body[0..i-1] are matched; checks[0] before any join.
    std::vector<std::vector<CIneq>> checks;
    int slots = 0;
};

class Engine {
public:
    explicit Engine(std::span<const Rule> rules) {
        for (const auto& r : rules) {
            require_safe(r);
            compiled_.push_back(compile(r));
        }
        relations_.resize(pred_names_.size());
    }

    FactSet run() {
        std::vector<std::vector<Tuple>> delta(relations_.size());
        // Bodyless rules seed the first delta.
        for (const auto& r : compiled_) {
            if (!r.body.empty()) continue;
            std::vector<int> env(r.slots, -1);
            if (checks_pass(r.checks[0], env)) emit(r, env, delta);
        }
        while (std::any_of(delta.begin(), delta.end(), [](const auto& d) { return !d.empty(); })) {
            std::vector<std::vector<Tuple>> next(relations_.size());
            for (const auto& r : compiled_) {
                for (std::size_t d = 0; d < r.body.size(); ++d) {
                    if (delta[r.body[d].pred].empty()) continue;
                    std::vector<int> env(r.slots, -1);
                    if (!checks_pass(r.checks[0], env)) continue;
                    join(r, 0, d, delta, env, next);
                }
            }
            delta = std::move(next);
        }
        return export_facts();
    }

private:
    int intern_constant(const std::string& name) {
        auto [it, inserted] = const_ids_.emplace(name, static_cast<int>(const_names_.size()));
        if (inserted) const_names_.push_back(name);
        return it->second;
    }

    int intern_pred(const std::string& name, std::size_t arity) {
        const std::string key = name + "/" + std::to_string(arity);
        auto [it, inserted] = pred_ids_.emplace(key, static_cast<int>(pred_names_.size()));
        if (inserted) pred_names_.push_back(name);
        return it->second;
    }

    CRule compile(const Rule& r) {
        CRule c;
        std::map<std::string, int> slots;
        std::vector<std::set<int>> bound_after;
        auto arg = [&](const syntax::Term& t) {
            if (!t.is_variable()) return Arg{false, intern_constant(t.name)};
            auto [it, inserted] = slots.emplace(t.name, static_cast<int>(slots.size()));
            return Arg{true, it->second};
        };
        auto atom = [&](const syntax::Atom& a) {
            CAtom ca;
            ca.pred = intern_pred(a.predicate, a.args.size());
            for (const auto& t : a.args) ca.args.push_back(arg(t));
            return ca;
        };
        // Slot ids follow first occurrence in body order.
        std::set<int> bound;
        bound_after.push_back(bound);
        for (const auto& b : r.body) {
            c.body.push_back(atom(b));
            for (const auto& x : c.body.back().args)
                if (x.variable) bound.insert(x.id);
            bound_after.push_back(bound);
        }
        c.head = atom(r.head);
        c.checks.resize(r.body.size() + 1);
        for (const auto& q : r.ineqs) {
            CIneq ci{arg(q.lhs), arg(q.rhs)};
            std::size_t at = 0;
            while (at <= r.body.size()) {
                const auto& b = bound_after[at];
                if ((!ci.lhs.variable || b.contains(ci.lhs.id)) && (!ci.rhs.variable || b.contains(ci.rhs.id))) break;
                ++at;
            }
            c.checks[at].push_back(ci);
        }
        c.slots = static_cast<int>(slots.size());
        return c;
    }

    static int value(const Arg& a, const std::vector<int>& env) { return a.variable ? env[a.id] : a.id; }

    static bool checks_pass(const std::vector<CIneq>& checks, const std::vector<int>& env) {
        return std::all_of(checks.begin(), checks.end(),
                           [&](const CIneq& q) { return value(q.lhs, env) != value(q.rhs, env); });
    }

    void emit(const CRule& r, const std::vector<int>& env, std::vector<std::vector<Tuple>>& out) {
        Tuple t;
        t.reserve(r.head.args.size());
        for (const auto& a : r.head.args) t.push_back(value(a, env));
        if (relations_[r.head.pred].insert(t).second) out[r.head.pred].push_back(std::move(t));
    }

    void join(const CRule& r, std::size_t i, std::size_t delta_pos, const std::vector<std::vector<Tuple>>& delta,
              std::vector<int>& env, std::vector<std::vector<Tuple>>& out) {
        if (i == r.body.size()) {
            emit(r, env, out);
            return;
        }
        const CAtom& atom = r.body[i];
        auto try_tuple = [&](const Tuple& t) {
            std::vector<int> newly;
            bool ok = true;
            for (std::size_t k = 0; k < atom.args.size() && ok; ++k) {
                const Arg& a = atom.args[k];
                if (!a.variable) {
                    ok = a.id == t[k];
                } else if (env[a.id] < 0) {
                    env[a.id] = t[k];
                    newly.push_back(a.id);
                } else {
                    ok = env[a.id] == t[k];
                }
            }
            if (ok && checks_pass(r.checks[i + 1], env)) join(r, i + 1, delta_pos, delta, env, out);
            for (int s : newly) env[s] = -1;
        };
        if (i == delta_pos) {
            for (const auto& t : delta[atom.pred]) try_tuple(t);
        } else {
            // std::set iterators survive the inserts emit() may make here.
            for (const auto& t : relations_[atom.pred]) try_tuple(t);
        }
    }

    FactSet export_facts() const {
        FactSet out;
        for (std::size_t p = 0; p < relations_.size(); ++p) {
            for (const auto& t : relations_[p]) {
                syntax::Atom a{pred_names_[p], {}};
                for (int c : t) a.args.push_back(syntax::Term::constant(const_names_[c]));
                out.insert(std::move(a));
            }
        }
        return out;
    }

    std::vector<CRule> compiled_;
    std::unordered_map<std::string, int> const_ids_;
    std::vector<std::string> const_names_;
    std::map<std::string, int> pred_ids_;
    std::vector<std::string> pred_names_;
    std::vector<std::set<Tuple>> relations_;
};

// Naive matcher on syntax atoms, deliberately sharing nothing with Engine.
void match(const Rule& rule, std::size_t i, syntax::Substitution& mu, const FactSet& model, FactSet& out) {
    for (const auto& q : rule.ineqs) {
        auto val = [&](const syntax::Term& t) -> const std::string* {
            if (!t.is_variable()) return &t.name;
            auto it = mu.find(t.name);
            return it == mu.end() ? nullptr : &it->second;
        };
        const auto* l = val(q.lhs);
        const auto* r = val(q.rhs);
        if (l && r && *l == *r) return;
    }
    if (i == rule.body.size()) {
        out.insert(syntax::apply_substitution(rule.head, mu));
        return;
    }
    const syntax::Atom& pattern = rule.body[i];
    for (const auto& fact : model) {
        if (fact.predicate != pattern.predicate || fact.args.size() != pattern.args.size()) continue;
        syntax::Substitution extended = mu;
        bool ok = true;
        for (std::size_t k = 0; k < pattern.args.size() && ok; ++k) {
            const auto& t = pattern.args[k];
            if (!t.is_variable()) {
                ok = t.name == fact.args[k].name;
                continue;
            }
            auto [it, inserted] = extended.emplace(t.name, fact.args[k].name);
            ok = inserted || it->second == fact.args[k].name;
        }
        if (ok) match(rule, i + 1, extended, model, out);
    }
}

} // namespace

FactSet least_model(std::span<const Rule> rules) { return Engine(rules).run(); }

FactSet naive_fixpoint(std::span<const Rule> rules) {
    for (const auto& r : rules) require_safe(r);
    FactSet model;
    for (;;) {
        FactSet derived = model;
        for (const auto& r : rules) {
            syntax::Substitution mu;
            match(r, 0, mu, model, derived);
        }
        if (derived.size() == model.size()) return model;
        model = std::move(derived);
    }
}

std::string to_string(const Rule& rule) {
    std::string out = syntax::to_string(rule.head);
    if (rule.body.empty() && rule.ineqs.empty()) return out + ".";
    out += " :- ";
    bool first = true;
    for (const auto& a : rule.body) {
        out += (first ? "" : ", ") + syntax::to_string(a);
        first = false;
    }
    for (const auto& q : rule.ineqs) {
        out += (first ? "" : ", ") + q.lhs.name + "!=" + q.rhs.name;
        first = false;
    }
    return out + ".";
}

std::string to_string(const FactSet& facts) {
    std::ostringstream out;
    for (const auto& a : facts) out << syntax::to_string(a) << '\n';
    return out.str();
}

} // namespace tel::datalog
