#pragma once

#include <functional>

namespace tel::safety {

namespace detail {

inline bool ineqs_hold(const std::vector<syntax::Inequality>& ineqs, const syntax::Substitution& mu) {
    auto value = [&](const syntax::Term& t) -> const std::string* {
        if (!t.is_variable()) return &t.name;
        auto it = mu.find(t.name);
        return it == mu.end() ? nullptr : &it->second;
    };
    for (const auto& q : ineqs) {
        const std::string* l = value(q.lhs);
        const std::string* r = value(q.rhs);
        if (l && r && *l == *r) return false;
    }
    return true;
}

} // namespace detail

template <typename Visit>
void for_each_substitution(const std::vector<std::string>& vars, const std::vector<std::string>& domain,
                           const std::vector<syntax::Inequality>& ineqs, Visit&& visit) {
    syntax::Substitution mu;
    std::function<void(std::size_t)> step = [&](std::size_t i) {
        if (i == vars.size()) {
            visit(static_cast<const syntax::Substitution&>(mu));
            return;
        }
        for (const auto& c : domain) {
            mu[vars[i]] = c;
            if (detail::ineqs_hold(ineqs, mu)) step(i + 1);
        }
        mu.erase(vars[i]);
    };
    if (detail::ineqs_hold(ineqs, mu)) step(0);
}

} // namespace tel::safety
