#include "tel/semantics/trace.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace tel::semantics {

std::size_t LassoTrace::fold(std::size_t i) const noexcept {
    const std::size_t k = prefix.size();
    return i < k ? i : k + (i - k) % loop.size();
}

LassoTrace canonical(LassoTrace trace) {
    auto& loop = trace.loop;
    const std::size_t l = loop.size();
    for (std::size_t p = 1; p < l; ++p) {
        if (l % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < l && periodic; ++i) periodic = loop[i] == loop[i % p];
        if (periodic) {
            loop.resize(p);
            break;
        }
    }
    while (!trace.prefix.empty() && trace.prefix.back() == loop.back()) {
        std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
        loop.front() = std::move(trace.prefix.back());
        trace.prefix.pop_back();
    }
    return trace;
}

bool same_trace(const LassoTrace& a, const LassoTrace& b) { return canonical(a) == canonical(b); }

bool included(const LassoTrace& smaller, const LassoTrace& larger) {
    const std::size_t horizon = std::max(smaller.prefix_length(), larger.prefix_length()) +
                                std::lcm(smaller.loop_length(), larger.loop_length());
    for (std::size_t i = 0; i < horizon; ++i) {
        const State& s = smaller.state(i);
        const State& t = larger.state(i);
        if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) return false;
    }
    return true;
}

std::string to_string(const State& state) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : state) {
        if (!first) out += ", ";
        out += syntax::to_string(a);
        first = false;
    }
    return out + "}";
}

std::string to_string(const LassoTrace& trace) {
    std::string out = "prefix:";
    for (std::size_t i = 0; i < trace.prefix.size(); ++i) out += (i ? " ; " : " ") + to_string(trace.prefix[i]);
    out += " | loop:";
    for (std::size_t i = 0; i < trace.loop.size(); ++i) out += (i ? " ; " : " ") + to_string(trace.loop[i]);
    return out;
}

bool HTPair::well_formed() const {
    if (here.prefix_length() != there.prefix_length() || here.loop_length() != there.loop_length()) return false;
    return included(here, there);
}

TemporalFactSet facts_of(const LassoTrace& trace) { return TemporalFactSet{canonical(trace)}; }

std::vector<std::string> TemporalFactSet::render() const {
    const LassoTrace t = canonical(trace);
    const std::size_t k = t.prefix_length();
    const std::size_t l = t.loop_length();

    std::set<syntax::Atom> atoms;
    for (std::size_t i = 0; i < k + l; ++i) atoms.insert(t.state(i).begin(), t.state(i).end());

    std::vector<std::tuple<std::size_t, std::string, std::string>> entries;
    for (const auto& a : atoms) {
        const std::string name = syntax::to_string(a);
        auto holds = [&](std::size_t i) { return t.state(i).contains(a); };
        bool whole_loop = true;
        for (std::size_t i = k; i < k + l; ++i) whole_loop = whole_loop && holds(i);

        std::size_t from = k;
        if (whole_loop)
            while (from > 0 && holds(from - 1)) --from;
        for (std::size_t i = 0; i < std::min(from, k); ++i)
            if (holds(i)) entries.emplace_back(i, name, name + "@" + std::to_string(i));
        if (whole_loop) {
            entries.emplace_back(from, name, name + "@" + std::to_string(from) + "+");
            continue;
        }
        for (std::size_t i = k; i < k + l; ++i)
            if (holds(i))
                entries.emplace_back(i, name, name + "@" + std::to_string(i) + "/" + std::to_string(l) + "+");
    }
    std::sort(entries.begin(), entries.end());
    std::vector<std::string> out;
    for (auto& e : entries) out.push_back(std::move(std::get<2>(e)));
    return out;
}

} // namespace tel::semantics
