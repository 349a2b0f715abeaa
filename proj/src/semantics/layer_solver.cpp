#include "semantics/layer_solver.hpp"

#include <algorithm>
#include <functional>

#include "tel/error.hpp"

namespace tel::semantics::detail {

AtomId AtomTable::intern(const syntax::Atom& atom) {
    auto [it, inserted] = ids_.emplace(atom, static_cast<AtomId>(atoms_.size()));
    if (inserted) atoms_.push_back(atom);
    return it->second;
}

const AtomId* AtomTable::find(const syntax::Atom& atom) const {
    auto it = ids_.find(atom);
    return it == ids_.end() ? nullptr : &it->second;
}

bool AtomTable::encode(const State& state, IdState& out) const {
    out.clear();
    for (const auto& a : state) {
        const AtomId* id = find(a);
        if (!id) return false;
        out.push_back(*id);
    }
    std::sort(out.begin(), out.end());
    return true;
}

State AtomTable::decode(const IdState& state) const {
    State out;
    for (AtomId id : state) out.insert(atoms_[id]);
    return out;
}

void Budget::spend(std::size_t n) {
    if (left_.fetch_sub(static_cast<std::int64_t>(n)) - static_cast<std::int64_t>(n) < 0)
        throw ResourceLimit("search node limit exceeded");
}

Mask to_mask(const IdState& state, std::size_t atoms) {
    Mask m(atoms, 0);
    for (AtomId a : state) m[a] = 1;
    return m;
}

CompiledProgram::CompiledProgram(const GroundProgram& program) : horizon(program.horizon()) {
    auto ids = [&](const std::vector<syntax::Atom>& atoms) {
        std::vector<AtomId> out;
        for (const auto& a : atoms) out.push_back(this->atoms.intern(a));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    for (const auto& t : program.rules) {
        const auto& r = t.rule;
        bool violated = false;
        for (const auto& q : r.ineqs) {
            if (q.lhs.is_variable() || q.rhs.is_variable()) throw DomainError("rule is not ground: " + syntax::to_string(r));
            violated = violated || q.lhs.name == q.rhs.name;
        }
        if (violated) continue;
        IdTimedRule c;
        c.now = {ids(r.body), ids(r.neg), ids(r.head)};
        c.next = {ids(r.next_body), ids(r.next_neg), ids(r.next_head)};
        c.present_only = t.present_only();
        c.start = t.start;
        c.always = t.always;
        rules.push_back(std::move(c));
    }
}

std::vector<IdRule> CompiledProgram::slice(std::size_t layer, const Mask* prev) const {
    std::vector<IdRule> out;
    for (const auto& r : rules) {
        if (r.present_only) {
            if (r.applies_at(layer)) out.push_back(r.now);
            continue;
        }
        if (layer == 0 || !r.applies_at(layer - 1)) continue;
        const bool fires = std::all_of(r.now.pos.begin(), r.now.pos.end(), [&](AtomId a) { return (*prev)[a]; }) &&
                           std::none_of(r.now.neg.begin(), r.now.neg.end(), [&](AtomId a) { return (*prev)[a]; });
        if (fires) out.push_back(r.next);
    }
    return out;
}

namespace {

bool holds_all(const std::vector<AtomId>& atoms, const Mask& x) {
    return std::all_of(atoms.begin(), atoms.end(), [&](AtomId a) { return x[a]; });
}

bool holds_none(const std::vector<AtomId>& atoms, const Mask& x) {
    return std::none_of(atoms.begin(), atoms.end(), [&](AtomId a) { return x[a]; });
}

// Is there a model Y of the clauses (body -> v heads), all over atoms of x,
// that is strictly smaller than x?
bool smaller_model_exists(const std::vector<std::pair<std::vector<AtomId>, std::vector<AtomId>>>& clauses,
                          const IdState& x) {
    std::map<AtomId, int> local;
    for (AtomId a : x) local.emplace(a, static_cast<int>(local.size()));
    const int n = static_cast<int>(local.size());
    struct Clause {
        std::vector<int> neg, pos;
    };
    std::vector<Clause> cnf;
    for (const auto& [body, heads] : clauses) {
        Clause c;
        for (AtomId a : body) c.neg.push_back(local.at(a));
        for (AtomId a : heads) c.pos.push_back(local.at(a));
        cnf.push_back(std::move(c));
    }
    Clause strict; // some atom of x is dropped
    for (int i = 0; i < n; ++i) strict.neg.push_back(i);
    cnf.push_back(strict);

    std::vector<signed char> v(n, -1);
    std::function<bool()> search = [&]() -> bool {
        std::vector<int> trail;
        auto undo = [&] {
            for (int a : trail) v[a] = -1;
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& c : cnf) {
                int unknown = 0, last = -1;
                bool last_pos = false, sat = false;
                for (int a : c.neg) {
                    if (v[a] == 0) sat = true;
                    else if (v[a] < 0) ++unknown, last = a, last_pos = false;
                }
                for (int a : c.pos) {
                    if (v[a] == 1) sat = true;
                    else if (v[a] < 0) ++unknown, last = a, last_pos = true;
                }
                if (sat) continue;
                if (unknown == 0) {
                    undo();
                    return false;
                }
                if (unknown == 1) {
                    v[last] = last_pos ? 1 : 0;
                    trail.push_back(last);
                    changed = true;
                }
            }
        }
        auto it = std::find(v.begin(), v.end(), -1);
        if (it == v.end()) return true;
        const int a = static_cast<int>(it - v.begin());
        for (signed char value : {0, 1}) {
            v[a] = value;
            if (search()) return true;
        }
        v[a] = -1;
        undo();
        return false;
    };
    return search();
}

bool is_minimal(const std::vector<IdRule>& rules, const Mask& xm, const IdState& x) {
    std::vector<std::pair<std::vector<AtomId>, std::vector<AtomId>>> clauses;
    bool horn = true;
    for (const auto& r : rules) {
        if (!holds_none(r.neg, xm) || !holds_all(r.pos, xm)) continue;
        std::vector<AtomId> heads;
        for (AtomId h : r.head)
            if (xm[h]) heads.push_back(h);
        horn = horn && heads.size() == 1;
        clauses.emplace_back(r.pos, std::move(heads));
    }
    if (!horn) return !smaller_model_exists(clauses, x);

    Mask derived(xm.size(), 0);
    std::size_t count = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [body, heads] : clauses) {
            if (derived[heads[0]] || !holds_all(body, derived)) continue;
            derived[heads[0]] = 1;
            ++count;
            changed = true;
        }
    }
    return count == x.size();
}

class LayerSearch {
public:
    LayerSearch(const std::vector<IdRule>& rules, std::size_t atoms, const Mask* allowed, Budget* budget)
        : rules_(rules), atoms_(atoms), budget_(budget) {
        std::vector<int> local(atoms, -1);
        auto loc = [&](AtomId a) {
            if (local[a] < 0) {
                local[a] = static_cast<int>(global_.size());
                global_.push_back(a);
            }
            return local[a];
        };
        for (const auto& r : rules) {
            Rule c;
            for (AtomId a : r.pos) c.pos.push_back(loc(a));
            for (AtomId a : r.neg) c.neg.push_back(loc(a));
            for (AtomId a : r.head) c.head.push_back(loc(a));
            rules_local_.push_back(std::move(c));
        }
        pos_of_.resize(global_.size());
        std::vector<char> in_head(global_.size(), 0);
        for (std::size_t i = 0; i < rules_local_.size(); ++i) {
            for (int h : rules_local_[i].head) in_head[h] = 1;
            for (int a : rules_local_[i].pos) pos_of_[a].push_back(i);
        }
        value_.assign(global_.size(), -1);
        for (std::size_t a = 0; a < global_.size(); ++a)
            if (!in_head[a] || (allowed && !(*allowed)[global_[a]])) value_[a] = 0;
    }

    std::vector<IdState> run() {
        search();
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
    }

private:
    struct Rule {
        std::vector<int> pos, neg, head;
    };

    bool body_false(const Rule& r) const {
        return std::any_of(r.pos.begin(), r.pos.end(), [&](int a) { return value_[a] == 0; }) ||
               std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return value_[a] == 1; });
    }

    bool set(int a, signed char v, std::vector<int>& trail) {
        value_[a] = v;
        trail.push_back(a);
        return true;
    }

    // Least fixpoint of the rules that may still support a head atom: body
    // not yet false, no other head atom true. Every stable model extending
    // the current assignment lies inside it.
    std::vector<char> reachable() const {
        std::vector<char> in(value_.size(), 0);
        std::vector<int> missing(rules_local_.size(), -1);
        std::vector<int> queue;
        auto add_heads = [&](std::size_t i) {
            const Rule& r = rules_local_[i];
            const int true_heads = static_cast<int>(
                std::count_if(r.head.begin(), r.head.end(), [&](int h) { return value_[h] == 1; }));
            for (int h : r.head) {
                if (in[h] || value_[h] == 0) continue;
                if (true_heads > 1 || (true_heads == 1 && value_[h] != 1)) continue;
                in[h] = 1;
                queue.push_back(h);
            }
        };
        for (std::size_t i = 0; i < rules_local_.size(); ++i) {
            const Rule& r = rules_local_[i];
            if (body_false(r)) continue;
            missing[i] = static_cast<int>(r.pos.size());
            if (missing[i] == 0) add_heads(i);
        }
        while (!queue.empty()) {
            const int a = queue.back();
            queue.pop_back();
            for (std::size_t i : pos_of_[a])
                if (missing[i] > 0 && --missing[i] == 0) add_heads(i);
        }
        return in;
    }

    bool propagate(std::vector<int>& trail) {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : rules_local_) {
                if (body_false(r)) continue;
                int body_unknown = 0, last = -1;
                bool last_pos = false;
                for (int a : r.pos)
                    if (value_[a] < 0) ++body_unknown, last = a, last_pos = true;
                for (int a : r.neg)
                    if (value_[a] < 0) ++body_unknown, last = a, last_pos = false;
                int head_unknown = 0, last_head = -1;
                bool head_true = false;
                for (int h : r.head) {
                    if (value_[h] == 1) head_true = true;
                    else if (value_[h] < 0) ++head_unknown, last_head = h;
                }
                if (head_true) continue;
                if (body_unknown == 0) {
                    if (head_unknown == 0) return false;
                    if (head_unknown == 1) changed = set(last_head, 1, trail);
                } else if (head_unknown == 0 && body_unknown == 1) {
                    changed = set(last, last_pos ? 0 : 1, trail);
                }
            }
            if (changed) continue;
            // Atoms outside the reachable support closure form an unfounded set.
            const auto reach = reachable();
            for (std::size_t a = 0; a < value_.size(); ++a) {
                if (value_[a] == 0 || reach[a]) continue;
                if (value_[a] == 1) return false;
                changed = set(static_cast<int>(a), 0, trail);
            }
        }
        return true;
    }

    void search() {
        if (budget_) budget_->spend();
        std::vector<int> trail;
        if (propagate(trail)) {
            auto it = std::find(value_.begin(), value_.end(), -1);
            if (it == value_.end()) {
                leaf();
            } else {
                const auto a = static_cast<std::size_t>(it - value_.begin());
                for (signed char v : {0, 1}) {
                    value_[a] = v;
                    search();
                }
                value_[a] = -1;
            }
        }
        for (int a : trail) value_[a] = -1;
    }

    void leaf() {
        IdState x;
        for (std::size_t a = 0; a < value_.size(); ++a)
            if (value_[a] == 1) x.push_back(global_[a]);
        std::sort(x.begin(), x.end());
        const Mask xm = to_mask(x, atoms_);
        if (is_model_ids(rules_, xm) && is_minimal(rules_, xm, x)) found_.push_back(std::move(x));
    }

    const std::vector<IdRule>& rules_;
    std::size_t atoms_;
    Budget* budget_;
    std::vector<AtomId> global_;
    std::vector<Rule> rules_local_;
    std::vector<std::vector<std::size_t>> pos_of_;
    std::vector<signed char> value_;
    std::vector<IdState> found_;
};

} // namespace

bool is_model_ids(const std::vector<IdRule>& rules, const Mask& x) {
    for (const auto& r : rules) {
        if (!holds_all(r.pos, x) || !holds_none(r.neg, x)) continue;
        if (holds_none(r.head, x)) return false;
    }
    return true;
}

bool is_stable_ids(const std::vector<IdRule>& rules, const IdState& x, std::size_t atoms) {
    const Mask xm = to_mask(x, atoms);
    return is_model_ids(rules, xm) && is_minimal(rules, xm, x);
}

std::vector<IdState> stable_models_ids(const std::vector<IdRule>& rules, std::size_t atoms, const Mask* allowed,
                                       Budget* budget) {
    return LayerSearch(rules, atoms, allowed, budget).run();
}

IdState least_model_ids(const std::vector<IdRule>& rules, std::size_t atoms) {
    Mask m(atoms, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : rules) {
            if (r.head.size() != 1 || !r.neg.empty()) throw DomainError("program is not positive normal");
            if (m[r.head[0]] || !holds_all(r.pos, m)) continue;
            m[r.head[0]] = 1;
            changed = true;
        }
    }
    IdState out;
    for (std::size_t a = 0; a < atoms; ++a)
        if (m[a]) out.push_back(static_cast<AtomId>(a));
    return out;
}

} // namespace tel::semantics::detail
