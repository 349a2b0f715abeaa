#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "tel/syntax.hpp"

namespace tel::semantics {

using State = std::set<syntax::Atom>;

/// Ultimately periodic trace: state(i) = prefix[i] for i < k, otherwise
/// loop[(i - k) mod l]. The loop is never empty.
struct LassoTrace {
    std::vector<State> prefix;
    std::vector<State> loop{State{}};

    std::size_t prefix_length() const noexcept { return prefix.size(); }
    std::size_t loop_length() const noexcept { return loop.size(); }

    /// Smallest position with the same suffix as i; always < k + l.
    std::size_t fold(std::size_t i) const noexcept;
    const State& state(std::size_t i) const { return i < prefix.size() ? prefix[i] : loop[(i - prefix.size()) % loop.size()]; }

    bool operator==(const LassoTrace&) const = default;
    auto operator<=>(const LassoTrace&) const = default;
};

/// Unique representative: primitive loop, then the prefix folded into the
/// loop as far as it goes.
LassoTrace canonical(LassoTrace trace);

/// Same infinite unrolling.
bool same_trace(const LassoTrace& a, const LassoTrace& b);

/// Pointwise inclusion of the infinite unrollings.
bool included(const LassoTrace& smaller, const LassoTrace& larger);

/// "prefix: {a, b} ; {c} | loop: {}"
std::string to_string(const LassoTrace& trace);
std::string to_string(const State& state);

struct HTPair {
    LassoTrace here;
    LassoTrace there;

    /// Same shape and here <= there at every position.
    bool well_formed() const;
};

/// Facts(T) of one or several traces, kept as a lasso of states.
struct TemporalFactSet {
    LassoTrace trace{{}, {State{}}};

    bool contains(const syntax::Atom& atom, std::size_t time) const { return trace.state(time).contains(atom); }

    /// Sorted by first time, then atom: "p@0", "q@1", "r@2+" (every time from
    /// 2 on), "s@3/2+" (times 3, 5, 7, ...).
    std::vector<std::string> render() const;
};

TemporalFactSet facts_of(const LassoTrace& trace);

} // namespace tel::semantics
