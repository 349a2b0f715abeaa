#include "tel/semantics/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <numeric>
#include <set>

#include "semantics/layer_solver.hpp"
#include "tel/error.hpp"

namespace tel::semantics {

namespace {

using detail::Budget;
using detail::CompiledProgram;
using detail::IdState;
using detail::Mask;

// Stable models of a layer keyed by (layer class, previous state).
using Memo = std::map<std::pair<std::size_t, IdState>, std::vector<IdState>>;

class Kernel {
public:
    Kernel(const GroundProgram& program, const EnumerateOptions& options)
        : compiled_(program), k_(options.max_prefix), bounded_(options.bound != nullptr) {
        if (options.max_prefix < 2) throw DomainError("prefix bound must be at least 2");
        if (options.max_loop < 1) throw DomainError("loop bound must be at least 1");
        if (!bounded_) return;
        for (std::size_t c = 0; c < 3; ++c) {
            allowed_[c].assign(compiled_.atoms.size(), 0);
            for (const auto& a : options.bound->at[c])
                if (const auto* id = compiled_.atoms.find(a)) allowed_[c][*id] = 1;
        }
    }

    const std::vector<IdState>& layer_models(std::size_t j, const IdState* prev, Memo& memo, Budget& budget) const {
        const std::size_t cls = std::min(j, compiled_.saturation());
        auto key = std::make_pair(cls, j == 0 ? IdState{} : *prev);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Mask mask;
        if (j > 0) mask = detail::to_mask(*prev, compiled_.atoms.size());
        const auto rules = compiled_.slice(cls, j > 0 ? &mask : nullptr);
        const Mask* allowed = bounded_ ? &allowed_[std::min<std::size_t>(j, 2)] : nullptr;
        auto models = detail::stable_models_ids(rules, compiled_.atoms.size(), allowed, &budget);
        return memo.emplace(std::move(key), std::move(models)).first->second;
    }

    void run(std::size_t l, const IdState& t0, Memo& memo, Budget& budget, std::set<LassoTrace>& out) const {
        std::vector<IdState> trace(k_ + l);
        trace[0] = t0;
        extend(1, l, trace, memo, budget, out);
    }

private:
    void extend(std::size_t j, std::size_t l, std::vector<IdState>& trace, Memo& memo, Budget& budget,
                std::set<LassoTrace>& out) const {
        if (j == trace.size()) {
            if (closes(l, trace, memo, budget)) out.insert(decode(l, trace));
            return;
        }
        for (const auto& m : layer_models(j, &trace[j - 1], memo, budget)) {
            budget.spend();
            trace[j] = m;
            extend(j + 1, l, trace, memo, budget, out);
        }
    }

    // Layers past the last explicit state wrap around into the loop.
    bool closes(std::size_t l, const std::vector<IdState>& trace, Memo& memo, Budget& budget) const {
        auto fold = [&](std::size_t i) { return i < k_ ? i : k_ + (i - k_) % l; };
        const std::size_t last = std::max(k_ + 1, compiled_.saturation()) + l;
        for (std::size_t j = trace.size(); j < last; ++j) {
            const auto& models = layer_models(j, &trace[fold(j - 1)], memo, budget);
            if (!std::binary_search(models.begin(), models.end(), trace[fold(j)])) return false;
        }
        return true;
    }

    LassoTrace decode(std::size_t l, const std::vector<IdState>& trace) const {
        LassoTrace t;
        t.loop.clear();
        for (std::size_t i = 0; i < k_ + l; ++i) (i < k_ ? t.prefix : t.loop).push_back(compiled_.atoms.decode(trace[i]));
        return canonical(std::move(t));
    }

    CompiledProgram compiled_;
    std::size_t k_;
    bool bounded_;
    Mask allowed_[3];
};

struct Task {
    std::size_t loop;
    std::size_t initial;
};

std::vector<Task> tasks_for(std::size_t max_loop, std::size_t initial_count) {
    std::vector<Task> tasks;
    for (std::size_t l = 1; l <= max_loop; ++l)
        for (std::size_t i = 0; i < initial_count; ++i) tasks.push_back({l, i});
    return tasks;
}

} // namespace

std::vector<LassoTrace> enumerate_tsm(const GroundProgram& program, const EnumerateOptions& options) {
    const Kernel kernel(program, options);
    Budget budget(options.node_limit);
    Memo first;
    const std::vector<IdState> initial = kernel.layer_models(0, nullptr, first, budget);
    const auto tasks = tasks_for(options.max_loop, initial.size());

    std::set<LassoTrace> results;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const auto count = static_cast<long>(tasks.size());

#pragma omp parallel
    {
        Memo memo;
        std::set<LassoTrace> local;
#pragma omp for schedule(dynamic)
        for (long t = 0; t < count; ++t) {
            if (failed.load()) continue;
            try {
                kernel.run(tasks[t].loop, initial[tasks[t].initial], memo, budget, local);
            } catch (...) {
#pragma omp critical(tel_enumerate_error)
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
#pragma omp critical(tel_enumerate_merge)
        results.merge(local);
    }
    if (error) std::rethrow_exception(error);
    return {results.begin(), results.end()};
}

std::vector<LassoTrace> enumerate_tsm_serial(const GroundProgram& program, const EnumerateOptions& options) {
    const Kernel kernel(program, options);
    Budget budget(options.node_limit);
    Memo memo;
    const std::vector<IdState> initial = kernel.layer_models(0, nullptr, memo, budget);
    std::set<LassoTrace> results;
    for (const auto& task : tasks_for(options.max_loop, initial.size()))
        kernel.run(task.loop, initial[task.initial], memo, budget, results);
    return {results.begin(), results.end()};
}

TemporalFactSet cred_facts(const std::vector<LassoTrace>& traces) {
    if (traces.empty()) return {};
    std::size_t k = 0, l = 1;
    for (const auto& t : traces) {
        k = std::max(k, t.prefix_length());
        l = std::lcm(l, t.loop_length());
    }
    LassoTrace u;
    u.prefix.resize(k);
    u.loop.assign(l, State{});
    for (std::size_t i = 0; i < k + l; ++i) {
        State& s = i < k ? u.prefix[i] : u.loop[i - k];
        for (const auto& t : traces) s.insert(t.state(i).begin(), t.state(i).end());
    }
    return facts_of(u);
}

} // namespace tel::semantics
