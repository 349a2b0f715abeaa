#pragma once

#include <cstddef>
#include <vector>

#include "tel/pipeline.hpp"
#include "tel/semantics/program.hpp"
#include "tel/semantics/trace.hpp"

namespace tel::semantics {

struct EnumerateOptions {
    std::size_t max_prefix = 2;
    std::size_t max_loop = 1;
    /// When set, T_i is searched among subsets of D_min(i,2) only.
    const pipeline::DerivableFacts* bound = nullptr;
    /// Search nodes (layer choices and solver decisions) before giving up.
    std::size_t node_limit = 5'000'000;
};

/// All temporal stable models representable with prefix <= max_prefix and
/// loop <= max_loop, canonical and sorted. Parallel over loop lengths and
/// initial states. Throws DomainError on bad bounds, ResourceLimit when the
/// node limit is hit.
std::vector<LassoTrace> enumerate_tsm(const GroundProgram& program, const EnumerateOptions& options = {});

/// Same search on one thread.
std::vector<LassoTrace> enumerate_tsm_serial(const GroundProgram& program, const EnumerateOptions& options = {});

/// Union of Facts(T) over the given traces.
TemporalFactSet cred_facts(const std::vector<LassoTrace>& traces);

} // namespace tel::semantics
