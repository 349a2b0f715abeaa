#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tel/semantics/program.hpp"
#include "tel/semantics/trace.hpp"

namespace tel::semantics {

/// Ground non-temporal rule  body & not neg -> head_1 v ... v head_n.
struct PlainRule {
    std::vector<syntax::Atom> body;
    std::vector<syntax::Atom> neg;
    std::vector<syntax::Atom> head;

    bool operator==(const PlainRule&) const = default;
    auto operator<=>(const PlainRule&) const = default;
};

/// Rules of one layer, atoms read at that layer.
using SliceProgram = std::vector<PlainRule>;

/// The layer-(t+1) remainder of a dynamic rule once time t is fixed to x;
/// nullopt stands for top.
std::optional<PlainRule> simp(const syntax::Rule& rule, const State& x);

/// Layer i of the program under `trace`: single-layer rules that apply at i,
/// plus simp(r, T_{i-1}) for o-rules that apply at i - 1.
SliceProgram slice(const GroundProgram& program, const LassoTrace& trace, std::size_t i);

bool is_model(const SliceProgram& program, const State& x);

/// x is a minimal model of the reduct of `program` with respect to x.
bool is_stable_model(const SliceProgram& program, const State& x);

/// Model check on (T, T), then every layer up to where (T_{i-1}, T_i) and the
/// applicable rules start repeating must be stable for its slice.
bool is_temporal_stable(const GroundProgram& program, const LassoTrace& trace);

/// Least LTL model of a positive normal program, as a canonical lasso.
/// Throws DomainError on negation or disjunctive / empty heads.
LassoTrace lm_lasso(const GroundProgram& program);

std::string to_string(const PlainRule& rule);

} // namespace tel::semantics
