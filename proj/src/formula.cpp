#include "tel/formula.hpp"

#include "tel/error.hpp"

namespace tel::syntax {

namespace {

using Op = Formula::Op;

FormulaPtr make(Formula node) { return std::make_shared<const Formula>(std::move(node)); }

FormulaPtr unary(Op op, FormulaPtr a) {
    Formula node;
    node.op = op;
    node.left = std::move(a);
    return make(std::move(node));
}

FormulaPtr binary(Op op, FormulaPtr a, FormulaPtr b) {
    Formula node;
    node.op = op;
    node.left = std::move(a);
    node.right = std::move(b);
    return make(std::move(node));
}

} // namespace

bool Formula::is_ground() const {
    switch (op) {
    case Op::atom: return atom.is_ground();
    case Op::bottom: return true;
    case Op::equal:
    case Op::not_equal: return !lhs.is_variable() && !rhs.is_variable();
    case Op::forall:
    case Op::exists: return false;
    case Op::next:
    case Op::always:
    case Op::eventually: return left->is_ground();
    default: return left->is_ground() && right->is_ground();
    }
}

namespace f {

FormulaPtr atom(Atom a) {
    Formula node;
    node.op = Op::atom;
    node.atom = std::move(a);
    return make(std::move(node));
}

FormulaPtr bottom() {
    static const FormulaPtr b = make(Formula{});
    return b;
}

FormulaPtr top() { return neg(bottom()); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return binary(Op::conj, std::move(a), std::move(b)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Op::disj, std::move(a), std::move(b)); }
FormulaPtr impl(FormulaPtr a, FormulaPtr b) { return binary(Op::impl, std::move(a), std::move(b)); }
FormulaPtr neg(FormulaPtr a) { return impl(std::move(a), bottom()); }

FormulaPtr next(FormulaPtr a, std::size_t times) {
    for (std::size_t i = 0; i < times; ++i) a = unary(Op::next, std::move(a));
    return a;
}

FormulaPtr always(FormulaPtr a) { return unary(Op::always, std::move(a)); }
FormulaPtr eventually(FormulaPtr a) { return unary(Op::eventually, std::move(a)); }

FormulaPtr forall(std::string var, FormulaPtr a) {
    Formula node;
    node.op = Op::forall;
    node.var = std::move(var);
    node.left = std::move(a);
    return make(std::move(node));
}

FormulaPtr exists(std::string var, FormulaPtr a) {
    Formula node;
    node.op = Op::exists;
    node.var = std::move(var);
    node.left = std::move(a);
    return make(std::move(node));
}

FormulaPtr equal(Term a, Term b) {
    Formula node;
    node.op = Op::equal;
    node.lhs = std::move(a);
    node.rhs = std::move(b);
    return make(std::move(node));
}

FormulaPtr not_equal(Term a, Term b) {
    Formula node;
    node.op = Op::not_equal;
    node.lhs = std::move(a);
    node.rhs = std::move(b);
    return make(std::move(node));
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) return top();
    FormulaPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) return bottom();
    FormulaPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

} // namespace f

bool equal(const Formula& a, const Formula& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
    case Op::atom: return a.atom == b.atom;
    case Op::bottom: return true;
    case Op::equal:
    case Op::not_equal: return a.lhs == b.lhs && a.rhs == b.rhs;
    case Op::forall:
    case Op::exists: return a.var == b.var && equal(*a.left, *b.left);
    case Op::next:
    case Op::always:
    case Op::eventually: return equal(*a.left, *b.left);
    default: return equal(*a.left, *b.left) && equal(*a.right, *b.right);
    }
}

namespace {

void collect_free(const Formula& phi, std::set<std::string>& bound, std::set<std::string>& out) {
    auto term = [&](const Term& t) {
        if (t.is_variable() && !bound.contains(t.name)) out.insert(t.name);
    };
    switch (phi.op) {
    case Op::atom:
        for (const auto& t : phi.atom.args) term(t);
        return;
    case Op::bottom: return;
    case Op::equal:
    case Op::not_equal:
        term(phi.lhs);
        term(phi.rhs);
        return;
    case Op::forall:
    case Op::exists: {
        const bool fresh = bound.insert(phi.var).second;
        collect_free(*phi.left, bound, out);
        if (fresh) bound.erase(phi.var);
        return;
    }
    case Op::next:
    case Op::always:
    case Op::eventually: collect_free(*phi.left, bound, out); return;
    default:
        collect_free(*phi.left, bound, out);
        collect_free(*phi.right, bound, out);
    }
}

Term substitute(const Term& t, const Substitution& mu) {
    if (!t.is_variable()) return t;
    auto it = mu.find(t.name);
    return it == mu.end() ? t : Term::constant(it->second);
}

} // namespace

std::set<std::string> free_variables(const Formula& phi) {
    std::set<std::string> bound;
    std::set<std::string> out;
    collect_free(phi, bound, out);
    return out;
}

FormulaPtr apply_substitution(const FormulaPtr& phi, const Substitution& mu) {
    switch (phi->op) {
    case Op::atom: {
        Atom a{phi->atom.predicate, {}};
        for (const auto& t : phi->atom.args) a.args.push_back(substitute(t, mu));
        return f::atom(std::move(a));
    }
    case Op::bottom: return phi;
    case Op::equal: return f::equal(substitute(phi->lhs, mu), substitute(phi->rhs, mu));
    case Op::not_equal: return f::not_equal(substitute(phi->lhs, mu), substitute(phi->rhs, mu));
    case Op::forall:
    case Op::exists: {
        Substitution inner = mu;
        inner.erase(phi->var);
        auto body = apply_substitution(phi->left, inner);
        return phi->op == Op::forall ? f::forall(phi->var, body) : f::exists(phi->var, body);
    }
    case Op::next: return f::next(apply_substitution(phi->left, mu));
    case Op::always: return f::always(apply_substitution(phi->left, mu));
    case Op::eventually: return f::eventually(apply_substitution(phi->left, mu));
    default: return binary(phi->op, apply_substitution(phi->left, mu), apply_substitution(phi->right, mu));
    }
}

FormulaPtr to_formula(const Rule& rule) {
    std::vector<FormulaPtr> body;
    for (const auto& a : rule.body) body.push_back(f::atom(a));
    for (const auto& a : rule.next_body) body.push_back(f::next(f::atom(a)));
    for (const auto& a : rule.neg) body.push_back(f::neg(f::atom(a)));
    for (const auto& a : rule.next_neg) body.push_back(f::neg(f::next(f::atom(a))));
    for (const auto& q : rule.ineqs) body.push_back(f::not_equal(q.lhs, q.rhs));

    std::vector<FormulaPtr> head;
    for (const auto& a : rule.head) head.push_back(f::atom(a));
    for (const auto& a : rule.next_head) head.push_back(f::next(f::atom(a)));

    FormulaPtr phi = f::impl(f::conj_all(body), f::disj_all(head));
    if (rule.kind == RuleKind::always_dyn) phi = f::always(phi);
    const auto vars = rule.variables();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) phi = f::forall(*it, phi);
    return phi;
}

std::string to_string(const Formula& phi) {
    switch (phi.op) {
    case Op::atom: return to_string(phi.atom);
    case Op::bottom: return "#false";
    case Op::equal: return to_string(phi.lhs) + "=" + to_string(phi.rhs);
    case Op::not_equal: return to_string(phi.lhs) + "!=" + to_string(phi.rhs);
    case Op::forall: return "forall " + phi.var + " " + to_string(*phi.left);
    case Op::exists: return "exists " + phi.var + " " + to_string(*phi.left);
    case Op::next: return "o " + to_string(*phi.left);
    case Op::always: return "[] " + to_string(*phi.left);
    case Op::eventually: return "<> " + to_string(*phi.left);
    case Op::conj: return "(" + to_string(*phi.left) + " & " + to_string(*phi.right) + ")";
    case Op::disj: return "(" + to_string(*phi.left) + " | " + to_string(*phi.right) + ")";
    case Op::impl:
        if (phi.right->op == Op::bottom) {
            if (phi.left->op == Op::bottom) return "#true";
            return "not " + to_string(*phi.left);
        }
        return "(" + to_string(*phi.left) + " -> " + to_string(*phi.right) + ")";
    }
    return "?";
}

} // namespace tel::syntax
